// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/mitigation.hpp>

#include <snipesim/serialize.hpp>

#include <set>

namespace snipesim {

std::string_view OrderStateName(OrderState state)
{
    switch (state) {
    case OrderState::Pending: return "Pending";
    case OrderState::TopFee: return "Top Fee";
    case OrderState::GettingReplaced: return "Getting Replaced";
    case OrderState::Confirmed: return "Confirmed";
    case OrderState::Exhausted: return "Exhausted";
    }
    return "?";
}

static void Enter(ProtectedOrder& order, OrderState state)
{
    order.state = state;
    order.history.push_back(state);
}

/** The first address output the ring can spend — the owner's change slot. */
static std::optional<size_t> FindChangeIndex(const std::vector<TxOutput>& outputs,
                                             const KeyRing& ring)
{
    for (size_t i = 0; i < outputs.size(); ++i) {
        if (outputs[i].kind == OutputKind::Address && ring.Contains(outputs[i].lock)) return i;
    }
    return std::nullopt;
}

static std::optional<size_t> FindChangeIndex(const std::vector<PsbtOutput>& outputs,
                                             const KeyRing& ring)
{
    for (size_t i = 0; i < outputs.size(); ++i) {
        if (outputs[i].output.kind == OutputKind::Address && ring.Contains(outputs[i].output.lock)) {
            return i;
        }
    }
    return std::nullopt;
}

ProtectedOrder CreateProtectedOrder(const Psbt& psbt, int64_t base_rate,
                                    const std::vector<int64_t>& tier_rates, const KeyRing& ring)
{
    if (tier_rates.empty() || tier_rates.front() != base_rate) {
        throw OrderError(OrderErrorCode::NonIncreasingTiers, "tier list must start at the base rate");
    }
    for (size_t i = 1; i < tier_rates.size(); ++i) {
        if (tier_rates[i] <= tier_rates[i - 1]) {
            throw OrderError(OrderErrorCode::NonIncreasingTiers,
                             "tier rates must strictly increase");
        }
    }

    std::optional<size_t> change_index = FindChangeIndex(psbt.outputs, ring);
    if (!change_index) {
        throw OrderError(OrderErrorCode::InsufficientChange, "no owned change output to draw fees from");
    }

    Amount in_total = 0;
    for (const PsbtInput& in : psbt.inputs) in_total += in.utxo_amount;
    Amount others = 0;
    for (size_t i = 0; i < psbt.outputs.size(); ++i) {
        if (i != *change_index) others += psbt.outputs[i].output.amount;
    }
    Amount budget = in_total - others; // change plus fee, split per tier

    int64_t vsize = SignedVirtualSize(SkeletonTx(psbt));
    ProtectedOrder order;
    for (int64_t rate : tier_rates) {
        Amount fee = rate * vsize;
        Amount change = budget - fee;
        if (change < 0) {
            throw OrderError(OrderErrorCode::InsufficientChange,
                             "tier at " + std::to_string(rate) + " sat/vB needs fee " +
                                 std::to_string(fee) + ", budget is " + std::to_string(budget));
        }
        Psbt tier_psbt = psbt;
        tier_psbt.outputs[*change_index].output.amount = change;
        auto [signed_psbt, complete] = SignPsbtWithRing(std::move(tier_psbt), ring);
        if (!complete) {
            throw OrderError(OrderErrorCode::InsufficientChange, "ring cannot sign every input");
        }
        OrderTier tier;
        tier.rate_sat_vb = rate;
        tier.fee = fee;
        tier.tx = FinalizePsbt(signed_psbt);
        tier.txid = ComputeTxId(tier.tx);
        order.tiers.push_back(std::move(tier));
    }
    Enter(order, OrderState::Pending);
    return order;
}

SubmitResult BroadcastCurrentTier(ProtectedOrder& order, Mempool& pool, const UtxoSet& utxos,
                                  const KeyRing& keys)
{
    SubmitResult result = pool.Submit(order.tiers[order.current_tier].tx, utxos, keys);
    if (result.Ok()) Enter(order, OrderState::TopFee);
    return result;
}

OrderState MonitorAndEscalate(ProtectedOrder& order, Mempool& pool, const UtxoSet& utxos,
                              const KeyRing& keys, const Block* latest)
{
    if (order.state == OrderState::Confirmed || order.state == OrderState::Exhausted) {
        return order.state;
    }

    if (latest) {
        std::set<TxId> mined;
        for (const Transaction& tx : latest->txs) mined.insert(ComputeTxId(tx));
        for (const OrderTier& tier : order.tiers) {
            if (mined.count(tier.txid)) {
                Enter(order, OrderState::Confirmed);
                return order.state;
            }
        }
    }

    std::set<TxId> own;
    for (const OrderTier& tier : order.tiers) own.insert(tier.txid);

    while (true) {
        const OrderTier& current = order.tiers[order.current_tier];
        const int64_t current_vsize = VirtualSize(current.tx);
        bool outbid = false;
        for (const TxId& id : pool.ConflictsOf(current.tx)) {
            if (own.count(id)) continue;
            const MempoolEntry* rival = pool.Get(id);
            if (rival && FeeRateGreater(rival->fee, rival->vsize, current.fee, current_vsize)) {
                outbid = true;
                break;
            }
        }
        if (!outbid) {
            if (order.state != OrderState::TopFee) Enter(order, OrderState::TopFee);
            return order.state;
        }
        Enter(order, OrderState::GettingReplaced);
        if (order.current_tier + 1 >= order.tiers.size()) {
            Enter(order, OrderState::Exhausted);
            return order.state;
        }
        ++order.current_tier;
        pool.Submit(order.tiers[order.current_tier].tx, utxos, keys);
    }
}

Transaction BumpFee(Mempool& pool, const TxId& txid, int64_t new_rate, const KeyRing& signer,
                    const UtxoSet& utxos, SubmitResult* out_result)
{
    const MempoolEntry* lookup = pool.Get(txid);
    if (!lookup) throw BumpError(BumpErrorCode::NotFound, "txid not in mempool: " + txid.ToHex());
    // Copy: the final Submit may erase the entry the pointer refers to.
    const MempoolEntry entry_copy = *lookup;
    const MempoolEntry* entry = &entry_copy;

    const Transaction& original = entry->tx;
    for (const TxInput& in : original.inputs) {
        auto it = utxos.find(in.prevout);
        if (it == utxos.end() || !signer.Contains(it->second.lock)) {
            throw BumpError(BumpErrorCode::NotOwner, "signer cannot authorize every input");
        }
    }
    std::optional<size_t> change_index = FindChangeIndex(original.outputs, signer);
    if (!change_index) {
        throw BumpError(BumpErrorCode::NotOwner, "no output owned by signer to draw the fee from");
    }

    Amount new_fee = new_rate * entry->vsize; // change width is fixed, vsize is unchanged
    for (const TxId& id : pool.ConflictsOf(original)) {
        const MempoolEntry* rival = pool.Get(id);
        if (rival && !FeeRateGreater(new_fee, entry->vsize, rival->fee, rival->vsize)) {
            throw BumpError(BumpErrorCode::RateNotHigher,
                            "new rate does not beat conflicting " + id.ToHex());
        }
    }

    Amount delta = new_fee - entry->fee;
    Amount change = original.outputs[*change_index].amount - delta;
    if (change < 0) {
        throw BumpError(BumpErrorCode::InsufficientChange,
                        "change cannot absorb a fee of " + std::to_string(new_fee));
    }

    std::vector<OutPoint> spends;
    for (const TxInput& in : original.inputs) spends.push_back(in.prevout);
    std::vector<TxOutput> outputs = original.outputs;
    outputs[*change_index].amount = change;

    Psbt psbt = CreatePsbt(spends, outputs, utxos);
    auto [signed_psbt, complete] = SignPsbtWithRing(std::move(psbt), signer);
    if (!complete) throw BumpError(BumpErrorCode::NotOwner, "signer cannot complete the replacement");
    Transaction replacement = FinalizePsbt(signed_psbt);

    SubmitResult result = pool.Submit(replacement, utxos, signer, entry->reveal);
    if (out_result) *out_result = result;
    if (!result.Ok()) {
        throw BumpError(BumpErrorCode::RateNotHigher, "replacement rejected: " + result.detail);
    }
    return replacement;
}

} // namespace snipesim
