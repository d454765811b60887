// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <cstdint>

namespace snipesim {

/** Monetary amount in satoshis. */
using Amount = int64_t;

static constexpr Amount COIN = 100'000'000;

/** Hard cap on any single amount and on total issuance: 21 million coins. */
static constexpr Amount MAX_MONEY = 21'000'000 * COIN;

[[nodiscard]] constexpr bool MoneyRange(Amount value) noexcept
{
    return value >= 0 && value <= MAX_MONEY;
}

} // namespace snipesim
