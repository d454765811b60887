// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/report.hpp>

#include <sstream>

namespace snipesim {

using nlohmann::ordered_json;

namespace {

std::string Scalar(const ordered_json& v)
{
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string FlatObject(const ordered_json& obj)
{
    std::string out;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!out.empty()) out += ' ';
        if (it.value().is_array()) {
            out += it.key() + "=[";
            bool first = true;
            for (const auto& v : it.value()) {
                if (!first) out += ',';
                out += Scalar(v);
                first = false;
            }
            out += ']';
        } else {
            out += it.key() + '=' + Scalar(it.value());
        }
    }
    return out;
}

void RenderEvent(std::ostringstream& os, const ordered_json& event)
{
    os << "[step " << event.value("step", 0) << "] " << event.value("action", "?");
    if (event.contains("label")) os << " as=" << event["label"].get<std::string>();
    if (event.contains("wallet")) os << " wallet=" << event["wallet"].get<std::string>();
    os << '\n';

    for (auto it = event.begin(); it != event.end(); ++it) {
        const std::string& key = it.key();
        if (key == "step" || key == "action" || key == "label" || key == "wallet" ||
            key == "mempool" || key == "orders") {
            continue;
        }
        const ordered_json& value = it.value();
        if (key == "winner") {
            os << "  winner tx fee_sats=" << Scalar(value["fee_sats"]) << '\n';
            os << "  winner txid=" << Scalar(value["txid"]) << '\n';
        } else if (value.is_object()) {
            os << "  " << key << ": " << FlatObject(value) << '\n';
        } else if (value.is_array()) {
            if (value.empty()) {
                os << "  " << key << ": none\n";
            } else {
                os << "  " << key << ":\n";
                for (const auto& item : value) {
                    os << "    " << (item.is_object() ? FlatObject(item) : Scalar(item)) << '\n';
                }
            }
        } else {
            os << "  " << key << "=" << Scalar(value) << '\n';
        }
    }

    if (event.contains("mempool")) {
        const ordered_json& pool = event["mempool"];
        if (pool.empty()) {
            os << "  mempool: empty\n";
        } else {
            os << "  mempool:\n";
            for (const auto& line : pool) os << "    " << Scalar(line) << '\n';
        }
    }
    if (event.contains("orders")) {
        os << "  orders:\n";
        for (const auto& order : event["orders"]) os << "    " << FlatObject(order) << '\n';
    }
}

std::string RenderText(const ordered_json& doc)
{
    std::ostringstream os;
    os << "scenario=" << doc.value("scenario", "?") << " seed=" << Scalar(doc.value("seed", ordered_json(0)))
       << '\n';
    if (doc.contains("policy")) os << "policy " << FlatObject(doc["policy"]) << '\n';

    if (doc.contains("events")) {
        for (const auto& event : doc["events"]) {
            os << '\n';
            RenderEvent(os, event);
        }
    }

    auto section = [&os](const ordered_json& doc, const std::string& key, const std::string& title) {
        if (!doc.contains(key)) return;
        os << '\n' << title << ":\n";
        if (doc[key].empty()) {
            os << "  none\n";
            return;
        }
        for (const auto& row : doc[key]) {
            os << "  " << (row.is_object() ? FlatObject(row) : Scalar(row)) << '\n';
        }
    };
    section(doc, "fee_table", "fee table");
    section(doc, "attacks", "attacks");
    section(doc, "orders", "orders");
    section(doc, "final_balances", "final balances");

    if (doc.contains("expectations")) {
        os << "\nexpectations:\n";
        int passed = 0;
        int total = 0;
        for (const auto& check : doc["expectations"]) {
            bool ok = check.value("pass", false);
            ++total;
            if (ok) ++passed;
            os << "  [" << (ok ? "PASS" : "FAIL") << "] " << check.value("check", "?");
            if (!ok || check.contains("actual")) os << " (actual " << Scalar(check.value("actual", ordered_json(""))) << ")";
            os << '\n';
        }
        os << "result: " << (passed == total ? "PASS" : "FAIL") << " " << passed << "/" << total
           << '\n';
    }
    return os.str();
}

} // namespace

std::string RenderReportDoc(const ordered_json& doc, const std::string& format)
{
    if (format == "json") return doc.dump(2) + "\n";
    if (format == "text") return RenderText(doc);
    throw UnsupportedFormatError(format);
}

} // namespace snipesim
