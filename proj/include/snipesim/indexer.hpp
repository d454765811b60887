// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <snipesim/inscription.hpp>
#include <snipesim/utxo.hpp>

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace snipesim {

struct TokenInfo {
    uint64_t max{0};
    uint64_t lim{0};
    Address deployer;
    /** Units credited so far (deploys credit the full supply up front). */
    uint64_t minted{0};

    auto operator<=>(const TokenInfo&) const = default;
};

/** Who moves tokens in a transaction: the payer is debited, the payee
 *  credited. Resolution from raw transactions is context-dependent (it needs
 *  the pre-block coin set, and marketplaces map listing addresses to their
 *  seller principal), so it is injected. */
struct TransferParties {
    Address payer;
    Address payee;
};

using PartyResolver = std::function<std::optional<TransferParties>(const Transaction&)>;

/** Baseline resolution against the coin set the block was mined on: the payer
 *  owns the first input; the payee owns the first address output paying
 *  someone else (falling back to the payer). Coinbases and transactions whose
 *  first input is unknown resolve to nullopt. */
[[nodiscard]] PartyResolver MakeUtxoResolver(UtxoSet pre_block_utxos);

/** Off-chain token state: per-tick registration and balances. */
struct TokenLedger {
    std::map<std::string, TokenInfo> tokens;
    /** (tick, address) -> balance. Never negative. */
    std::map<std::pair<std::string, Address>, uint64_t> balances;

    auto operator<=>(const TokenLedger&) const = default;
};

[[nodiscard]] uint64_t GetBalance(const TokenLedger& ledger, const Address& address,
                                  const std::string& tick);

/** Applies every inscription in the block, transactions in block order,
 *  inscriptions in output order:
 *    deploy   first deploy of a tick wins (repeats ignored); registers the
 *             token and credits the full supply to the payer;
 *    mint     credits min(amt, lim, remaining supply) to the payer — zero
 *             here, since deploys pre-credit everything;
 *    transfer moves amt from payer to payee only if the payer balance covers
 *             it; otherwise the inscription is ignored.
 *  Unresolvable parties make a transaction's inscriptions no-ops. */
[[nodiscard]] TokenLedger IndexBlock(TokenLedger ledger, const Block& block,
                                     const PartyResolver& resolver);

class IndexOutOfOrderError : public std::runtime_error {
public:
    explicit IndexOutOfOrderError(uint64_t expected, uint64_t got)
        : std::runtime_error("blocks out of order: expected height " + std::to_string(expected) +
                             ", got " + std::to_string(got)) {}
};

/** Rebuilds the ledger from scratch by replaying `blocks` (which must start
 *  at genesis and be consecutive), reconstructing each pre-block coin set.
 *  `wrap` lets callers layer extra resolution (marketplace listings) over the
 *  baseline resolver; identity when omitted. */
[[nodiscard]] TokenLedger RebuildLedger(
    std::span<const Block> blocks,
    const std::function<PartyResolver(PartyResolver baseline)>& wrap = {});

/** "tick address balance" lines, sorted lexicographically; zero balances are
 *  omitted. */
[[nodiscard]] std::vector<std::string> BalanceReport(const TokenLedger& ledger);

} // namespace snipesim
