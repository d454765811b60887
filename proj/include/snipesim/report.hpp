// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

namespace snipesim {

/** A finished run: the structured document (schema in the README) plus the
 *  overall verdict of its expectation checks. */
struct Report {
    nlohmann::ordered_json doc;
    bool expectations_pass{true};
};

class UnsupportedFormatError : public std::runtime_error {
public:
    explicit UnsupportedFormatError(const std::string& format)
        : std::runtime_error("unsupported report format: " + format) {}
};

/** Renders a report document in the given format ("text" or "json"). Both
 *  renderings are pure functions of the document, so they always agree. */
[[nodiscard]] std::string RenderReportDoc(const nlohmann::ordered_json& doc,
                                          const std::string& format);

[[nodiscard]] inline std::string EmitReport(const Report& report, const std::string& format)
{
    return RenderReportDoc(report.doc, format);
}

} // namespace snipesim
