// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace snipesim {

/** Standard base64 with '=' padding. */
[[nodiscard]] std::string Base64Encode(std::span<const uint8_t> data);

/** Returns nullopt on any character outside the alphabet or bad padding. */
[[nodiscard]] std::optional<std::vector<uint8_t>> Base64Decode(const std::string& text);

} // namespace snipesim
