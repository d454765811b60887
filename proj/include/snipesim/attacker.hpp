// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <snipesim/inscription.hpp>
#include <snipesim/mempool.hpp>
#include <snipesim/psbt.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

namespace snipesim {

/** Everything a mempool observer learns about a pending marketplace purchase:
 *  enough to rebuild a competing transaction with the same effect. */
struct VictimObservation {
    TxId victim_txid;
    std::vector<OutPoint> victim_inputs;
    Address seller_address;
    Amount seller_amount{0};
    /** The first token transfer the transaction carries. */
    Inscription inscription;
    /** Every data payload, in output order, byte-for-byte. */
    std::vector<std::vector<uint8_t>> data_payloads;
    Amount victim_fee{0};
    int64_t victim_vsize{0};
    uint64_t victim_seq{0};
    /** A fee-lock reveal travels with the submission, so observers see it. */
    std::optional<FeeCommitment> reveal;
};

/** One observation per pool entry carrying a token transfer inscription, in
 *  arrival order. Fees are computed against the confirmed coin set; entries
 *  whose seller output cannot be identified (no address output) are skipped. */
[[nodiscard]] std::vector<VictimObservation> ScanMempool(const Mempool& pool, const UtxoSet& utxos);

struct FeeStrategy {
    enum class Kind {
        Outbid,    // victim fee + margin (falls back to victim fee + 1 sat)
        Underbid,  // fixed low control fee
        FixedRate, // fixed_rate_sat_vb * signed virtual size
    };
    Kind kind{Kind::Outbid};
    Amount margin_sats{140'000};
    int64_t fixed_rate_sat_vb{0};
};

/** The control strategy's fixed fee. */
inline constexpr Amount UNDERBID_FEE_SATS = 100;

class InsufficientFundsError : public std::runtime_error {
public:
    InsufficientFundsError(Amount have, Amount need)
        : std::runtime_error("insufficient funds: have " + std::to_string(have) + " sats, need " +
                             std::to_string(need)) {}
};

/** Builds the replica purchase: spends every victim input the attacker can
 *  authorize (published listing inputs; requires `reuse_victim_inputs`) plus
 *  the attacker's own `funds`, and pays (a) the seller's address and amount
 *  verbatim, (b) change to `change_address`, (c) copies of every victim data
 *  payload, byte-identical and in order. The fee follows `strategy`; change
 *  absorbs the rest. Throws InsufficientFundsError when the inputs cannot
 *  cover seller amount plus target fee. */
[[nodiscard]] Psbt CraftSnipe(const VictimObservation& obs, const std::vector<OutPoint>& funds,
                              const UtxoSet& utxos, const FeeStrategy& strategy,
                              const KeyRing& attacker_keys, const Address& change_address,
                              bool reuse_victim_inputs = true);

struct AttackOutcome {
    TxId attack_txid;
    TxId victim_txid;
    Amount attack_fee{0};
    int64_t attack_vsize{0};
    std::string tick;
    uint64_t expected_tokens{0};
    SubmitResult submit;
    // Filled by VerifyAttack once a block has been mined and indexed.
    bool included{false};
    bool victim_evicted{false};
    uint64_t tokens_received{0};
    bool success{false};
};

/** Crafts, signs with `attacker_keys`, finalizes and submits. The victim's
 *  reveal (if any) is forwarded so fee-lock pools judge the replica under the
 *  same commitment it copied. Verification fields stay pending. */
[[nodiscard]] AttackOutcome ExecuteAttack(const VictimObservation& obs,
                                          const std::vector<OutPoint>& funds,
                                          const FeeStrategy& strategy, Mempool& pool,
                                          const UtxoSet& utxos, const KeyRing& attacker_keys,
                                          const Address& change_address,
                                          bool reuse_victim_inputs = true);

struct TokenLedger;

/** Settles the outcome after mining: included = attack tx in `block`;
 *  victim_evicted = victim neither pooled nor in `block`; tokens_received =
 *  ledger balance of (attacker_token_address, tick) minus `baseline`;
 *  success requires all three to line up with the inscribed amount. */
void VerifyAttack(AttackOutcome& outcome, const Block& block, const Mempool& pool,
                  const TokenLedger& ledger, const Address& attacker_token_address,
                  uint64_t baseline = 0);

} // namespace snipesim
