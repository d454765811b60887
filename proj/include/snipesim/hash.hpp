// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace snipesim {

using Hash256 = std::array<uint8_t, 32>;

/** Single SHA-256 over `data`. */
[[nodiscard]] Hash256 Sha256(std::span<const uint8_t> data);

/** Double SHA-256 (the transaction/block id hash). */
[[nodiscard]] Hash256 Sha256d(std::span<const uint8_t> data);

[[nodiscard]] Hash256 Sha256(const std::string& data);

} // namespace snipesim
