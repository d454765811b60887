// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/inscription.hpp>

#include <snipesim/hex.hpp>

#include <nlohmann/json.hpp>

namespace snipesim {

using nlohmann::json;

std::string_view TokenOpName(TokenOp op)
{
    switch (op) {
    case TokenOp::Deploy: return "deploy";
    case TokenOp::Mint: return "mint";
    case TokenOp::Transfer: return "transfer";
    }
    return "?";
}

std::string_view InscriptionDecodeCodeName(InscriptionDecodeCode code)
{
    switch (code) {
    case InscriptionDecodeCode::NotHex: return "NotHex";
    case InscriptionDecodeCode::NotJson: return "NotJson";
    case InscriptionDecodeCode::UnknownOp: return "UnknownOp";
    case InscriptionDecodeCode::MissingField: return "MissingField";
    }
    return "?";
}

static std::optional<uint64_t> ParsePositive(const std::string& s)
{
    if (s.empty() || s.size() > 20) return std::nullopt;
    if (s[0] == '0') return std::nullopt; // zero and padded forms are not canonical
    uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        if (v > (UINT64_MAX - (c - '0')) / 10) return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

static bool ValidTick(const std::string& tick)
{
    if (tick.empty() || tick.size() > 8) return false;
    for (char c : tick) {
        if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) return false;
    }
    return true;
}

uint64_t Inscription::AmtValue() const { return ParsePositive(amt).value_or(0); }
uint64_t Inscription::MaxValue() const { return ParsePositive(max).value_or(0); }
uint64_t Inscription::LimValue() const { return ParsePositive(lim).value_or(0); }

std::vector<uint8_t> EncodeInscription(const Inscription& ins)
{
    if (!ValidTick(ins.tick)) throw InvalidInscriptionError("bad tick: '" + ins.tick + "'");
    std::string body = "{\"p:\"brc-20\",\"op\":\"";
    body += TokenOpName(ins.op);
    body += "\",\"tick\":\"";
    body += ins.tick;
    body += "\"";
    auto append = [&body](const char* key, const std::string& value) {
        if (!ParsePositive(value)) {
            throw InvalidInscriptionError(std::string("bad ") + key + ": '" + value + "'");
        }
        body += ",\"";
        body += key;
        body += "\":\"";
        body += value;
        body += "\"";
    };
    if (ins.op == TokenOp::Deploy) {
        append("max", ins.max);
        append("lim", ins.lim);
    } else {
        append("amt", ins.amt);
    }
    body += "}";
    return std::vector<uint8_t>(body.begin(), body.end());
}

std::string EncodeInscriptionHex(const Inscription& ins)
{
    return HexEncode(EncodeInscription(ins));
}

static std::optional<std::string> FieldString(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end()) return std::nullopt;
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_unsigned()) return std::to_string(it->get<uint64_t>());
    return std::nullopt;
}

Inscription DecodeInscription(std::span<const uint8_t> payload)
{
    std::string text(payload.begin(), payload.end());
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        // The canonical stream opens {"p:"value"... — the protocol key's quote
        // sits after the colon. Re-quote and retry before rejecting.
        if (text.rfind("{\"p:", 0) == 0) {
            j = json::parse("{\"p\":" + text.substr(4), nullptr, false);
        }
        if (j.is_discarded()) {
            throw InscriptionDecodeError(InscriptionDecodeCode::NotJson, "payload is not JSON");
        }
    }
    if (!j.is_object()) throw InscriptionDecodeError(InscriptionDecodeCode::NotJson, "payload is not an object");

    std::optional<std::string> p = FieldString(j, "p");
    if (!p || *p != "brc-20") {
        throw InscriptionDecodeError(InscriptionDecodeCode::MissingField, "field p missing or not brc-20");
    }
    std::optional<std::string> op = FieldString(j, "op");
    if (!op) throw InscriptionDecodeError(InscriptionDecodeCode::MissingField, "field op missing");

    Inscription ins;
    if (*op == "deploy") ins.op = TokenOp::Deploy;
    else if (*op == "mint") ins.op = TokenOp::Mint;
    else if (*op == "transfer") ins.op = TokenOp::Transfer;
    else throw InscriptionDecodeError(InscriptionDecodeCode::UnknownOp, "unknown op '" + *op + "'");

    std::optional<std::string> tick = FieldString(j, "tick");
    if (!tick || !ValidTick(*tick)) {
        throw InscriptionDecodeError(InscriptionDecodeCode::MissingField, "field tick missing or invalid");
    }
    ins.tick = *tick;

    auto need = [&j](const char* key) {
        std::optional<std::string> v = FieldString(j, key);
        if (!v || !ParsePositive(*v)) {
            throw InscriptionDecodeError(InscriptionDecodeCode::MissingField,
                                         std::string("field ") + key + " missing or invalid");
        }
        return *v;
    };
    if (ins.op == TokenOp::Deploy) {
        ins.max = need("max");
        ins.lim = need("lim");
    } else {
        ins.amt = need("amt");
    }
    return ins;
}

Inscription DecodeInscriptionHex(const std::string& hex)
{
    std::optional<std::vector<uint8_t>> payload = HexDecode(hex);
    if (!payload) throw InscriptionDecodeError(InscriptionDecodeCode::NotHex, "payload is not hex");
    return DecodeInscription(*payload);
}

std::vector<std::pair<size_t, Inscription>> ExtractInscriptions(const Transaction& tx)
{
    std::vector<std::pair<size_t, Inscription>> found;
    for (size_t i = 0; i < tx.outputs.size(); ++i) {
        if (tx.outputs[i].kind != OutputKind::Data) continue;
        try {
            found.emplace_back(i, DecodeInscription(tx.outputs[i].data));
        } catch (const InscriptionDecodeError&) {
            // Not a token operation; data outputs carry other payloads too.
        }
    }
    return found;
}

} // namespace snipesim
