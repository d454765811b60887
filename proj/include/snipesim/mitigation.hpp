// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <snipesim/mempool.hpp>
#include <snipesim/psbt.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace snipesim {

enum class OrderState {
    Pending,         // created, nothing broadcast yet
    TopFee,          // current tier beats every conflicting pool entry
    GettingReplaced, // a conflict outbid the current tier (transitional)
    Confirmed,       // some tier made it into a block
    Exhausted,       // outbid with no tier left
};

/** Display strings ("Top Fee", "Getting Replaced", ...). */
[[nodiscard]] std::string_view OrderStateName(OrderState state);

struct OrderTier {
    int64_t rate_sat_vb{0};
    Amount fee{0};
    Transaction tx;
    TxId txid;
};

/** A purchase armed with pre-signed fee escalations: one fully signed
 *  transaction per tier, identical except that change shrinks as the fee
 *  rises. Broadcast rates over the order's lifetime are strictly increasing
 *  and capped by the final tier. */
struct ProtectedOrder {
    std::vector<OrderTier> tiers;
    size_t current_tier{0};
    OrderState state{OrderState::Pending};
    /** Every state entered, in order (reports show the transitions). */
    std::vector<OrderState> history;
};

enum class OrderErrorCode {
    NonIncreasingTiers,
    InsufficientChange,
};

class OrderError : public std::runtime_error {
public:
    OrderErrorCode code;
    OrderError(OrderErrorCode c, const std::string& what) : std::runtime_error(what), code(c) {}
};

/** Pre-signs one transaction per rate. `tier_rates` must be strictly
 *  increasing with `base_rate` first. The change output (the first address
 *  output the ring can spend) absorbs each tier's fee; every tier must leave
 *  it non-negative. The ring must cover every input. */
[[nodiscard]] ProtectedOrder CreateProtectedOrder(const Psbt& psbt, int64_t base_rate,
                                                  const std::vector<int64_t>& tier_rates,
                                                  const KeyRing& ring);

/** Broadcasts the current tier (the initial arming step). */
SubmitResult BroadcastCurrentTier(ProtectedOrder& order, Mempool& pool, const UtxoSet& utxos,
                                  const KeyRing& keys);

/** One monitoring tick. Confirmed if any tier is in `latest` (may be null);
 *  otherwise escalates while a conflicting pool entry outbids the current
 *  tier — submitting the next tier each step — until the order is top-fee or
 *  tiers run out (Exhausted). Returns the resulting state. */
OrderState MonitorAndEscalate(ProtectedOrder& order, Mempool& pool, const UtxoSet& utxos,
                              const KeyRing& keys, const Block* latest);

enum class BumpErrorCode {
    NotFound,
    NotOwner,
    RateNotHigher,
    InsufficientChange,
};

class BumpError : public std::runtime_error {
public:
    BumpErrorCode code;
    BumpError(BumpErrorCode c, const std::string& what) : std::runtime_error(what), code(c) {}
};

/** Manual fee override: rebuilds the pooled transaction `txid` with its
 *  change cut so the fee hits `new_rate`, re-signs every input with `signer`,
 *  and submits the replacement. The seller payment (and every non-change
 *  output) is preserved byte-identically. `new_rate` must strictly beat every
 *  conflicting pool entry, the original included. When `out_result` is given
 *  it receives the pool's verdict on the replacement. */
Transaction BumpFee(Mempool& pool, const TxId& txid, int64_t new_rate, const KeyRing& signer,
                    const UtxoSet& utxos, SubmitResult* out_result = nullptr);

} // namespace snipesim
