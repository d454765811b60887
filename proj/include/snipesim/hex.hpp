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

/** Lowercase hex encoding. */
[[nodiscard]] std::string HexEncode(std::span<const uint8_t> data);

/** Decode hex (either case). Returns nullopt on odd length or a non-hex digit. */
[[nodiscard]] std::optional<std::vector<uint8_t>> HexDecode(const std::string& hex);

} // namespace snipesim
