// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/mempool.hpp>

#include <snipesim/serialize.hpp>

#include <algorithm>

namespace snipesim {

std::string_view PolicyModeName(PolicyMode mode)
{
    switch (mode) {
    case PolicyMode::Coexist: return "coexist";
    case PolicyMode::RbfReplace: return "rbf-replace";
    }
    return "?";
}

std::string_view RejectReasonName(RejectReason reason)
{
    switch (reason) {
    case RejectReason::InvalidTx: return "InvalidTx";
    case RejectReason::BelowMinFee: return "BelowMinFee";
    case RejectReason::RbfFeeTooLow: return "RbfFeeTooLow";
    case RejectReason::BadCommitment: return "BadCommitment";
    case RejectReason::FeeExceedsLock: return "FeeExceedsLock";
    }
    return "?";
}

std::string_view SubmitStatusName(SubmitResult::Status status)
{
    switch (status) {
    case SubmitResult::Status::Accepted: return "accepted";
    case SubmitResult::Status::Replaced: return "replaced";
    case SubmitResult::Status::Rejected: return "rejected";
    }
    return "?";
}

bool FeeRateGreater(Amount fee_a, int64_t size_a, Amount fee_b, int64_t size_b)
{
    // Cross-multiply in 128 bits; fees and sizes stay well inside 63 bits each.
    return static_cast<__int128>(fee_a) * size_b > static_cast<__int128>(fee_b) * size_a;
}

static std::set<OutPoint> InputSet(const Transaction& tx)
{
    std::set<OutPoint> s;
    for (const TxInput& in : tx.inputs) s.insert(in.prevout);
    return s;
}

SubmitResult Mempool::Submit(const Transaction& tx, const UtxoSet& utxos, const KeyRing& keys,
                             std::optional<FeeCommitment> reveal)
{
    SubmitResult result;
    result.txid = ComputeTxId(tx);

    auto reject = [&result](RejectReason reason, std::string detail) {
        result.status = SubmitResult::Status::Rejected;
        result.reason = reason;
        result.detail = std::move(detail);
        return result;
    };

    if (tx.IsCoinbase()) return reject(RejectReason::InvalidTx, "coinbase cannot be relayed");
    if (tx.outputs.empty()) return reject(RejectReason::InvalidTx, "no outputs");
    if (entries_.count(result.txid)) return reject(RejectReason::InvalidTx, "already in mempool");

    std::vector<TxError> errors = Validate(tx, utxos, keys);
    if (!errors.empty()) {
        const TxError& e = errors.front();
        std::string detail{TxErrorCodeName(e.code)};
        if (e.input_index >= 0) detail += " at input " + std::to_string(e.input_index);
        detail += ": " + e.detail;
        return reject(RejectReason::InvalidTx, detail);
    }

    MempoolEntry entry;
    entry.tx = tx;
    entry.txid = result.txid;
    entry.fee = ComputeFee(tx, utxos);
    entry.vsize = VirtualSize(tx);
    entry.reveal = reveal;

    // Fee floor: fee/vsize >= min_relay_fee_rate, compared exactly.
    if (static_cast<__int128>(entry.fee) < static_cast<__int128>(policy_.min_relay_fee_rate) * entry.vsize) {
        return reject(RejectReason::BelowMinFee,
                      "fee " + std::to_string(entry.fee) + " below floor of " +
                          std::to_string(policy_.min_relay_fee_rate) + " sat/vB");
    }

    if (policy_.fee_lock_enforced && FindFeeLockDigest(tx)) {
        switch (VerifyFeeLock(tx, utxos, reveal)) {
        case FeeLockStatus::Ok:
            break;
        case FeeLockStatus::BadCommitment:
            return reject(RejectReason::BadCommitment, "fee-lock reveal missing or digest mismatch");
        case FeeLockStatus::FeeExceedsLock:
            return reject(RejectReason::FeeExceedsLock,
                          "fee " + std::to_string(entry.fee) + " above committed ceiling");
        }
    }

    std::set<TxId> conflicts = ConflictsOf(tx);
    if (conflicts.empty() || policy_.mode == PolicyMode::Coexist) {
        entry.seq = next_seq_++;
        entries_[entry.txid] = std::move(entry);
        result.status = SubmitResult::Status::Accepted;
        return result;
    }

    // rbf-replace: replacement only, and only of entries spending the exact
    // same input set, at a strictly higher fee rate than each of them.
    std::set<OutPoint> candidate_inputs = InputSet(tx);
    for (const TxId& id : conflicts) {
        const MempoolEntry& existing = entries_.at(id);
        if (InputSet(existing.tx) != candidate_inputs) {
            return reject(RejectReason::InvalidTx,
                          "conflicts with " + id.ToHex() + " without replacing its input set");
        }
        if (!FeeRateGreater(entry.fee, entry.vsize, existing.fee, existing.vsize)) {
            return reject(RejectReason::RbfFeeTooLow,
                          "fee rate does not beat " + id.ToHex());
        }
    }
    // Evict in arrival order for deterministic reporting.
    std::vector<const MempoolEntry*> losing;
    for (const TxId& id : conflicts) losing.push_back(&entries_.at(id));
    std::sort(losing.begin(), losing.end(),
              [](const MempoolEntry* a, const MempoolEntry* b) { return a->seq < b->seq; });
    for (const MempoolEntry* e : losing) result.evicted.push_back(e->txid);
    for (const TxId& id : conflicts) entries_.erase(id);

    entry.seq = next_seq_++;
    entries_[entry.txid] = std::move(entry);
    result.status = SubmitResult::Status::Replaced;
    return result;
}

std::set<TxId> Mempool::ConflictsOf(const Transaction& tx) const
{
    std::set<OutPoint> candidate_inputs = InputSet(tx);
    std::set<TxId> conflicts;
    for (const auto& [txid, entry] : entries_) {
        for (const TxInput& in : entry.tx.inputs) {
            if (candidate_inputs.count(in.prevout)) {
                conflicts.insert(txid);
                break;
            }
        }
    }
    return conflicts;
}

std::vector<const MempoolEntry*> Mempool::EntriesBySeq() const
{
    std::vector<const MempoolEntry*> out;
    out.reserve(entries_.size());
    for (const auto& [txid, entry] : entries_) out.push_back(&entry);
    std::sort(out.begin(), out.end(),
              [](const MempoolEntry* a, const MempoolEntry* b) { return a->seq < b->seq; });
    return out;
}

std::vector<Transaction> Mempool::SelectForBlock(int64_t max_vbytes) const
{
    std::vector<const MempoolEntry*> order = EntriesBySeq();
    std::stable_sort(order.begin(), order.end(), [](const MempoolEntry* a, const MempoolEntry* b) {
        if (FeeRateGreater(a->fee, a->vsize, b->fee, b->vsize)) return true;
        if (FeeRateGreater(b->fee, b->vsize, a->fee, a->vsize)) return false;
        return a->seq < b->seq;
    });

    std::vector<Transaction> selected;
    std::set<OutPoint> spent;
    int64_t used = 0;
    for (const MempoolEntry* e : order) {
        if (used + e->vsize > max_vbytes) continue;
        bool conflict = false;
        for (const TxInput& in : e->tx.inputs) {
            if (spent.count(in.prevout)) {
                conflict = true;
                break;
            }
        }
        if (conflict) continue;
        for (const TxInput& in : e->tx.inputs) spent.insert(in.prevout);
        selected.push_back(e->tx);
        used += e->vsize;
    }
    return selected;
}

std::vector<TxId> Mempool::EvictForBlock(const Block& block)
{
    std::set<TxId> included;
    std::set<OutPoint> consumed;
    for (const Transaction& tx : block.txs) {
        included.insert(ComputeTxId(tx));
        for (const TxInput& in : tx.inputs) consumed.insert(in.prevout);
    }

    std::vector<const MempoolEntry*> order = EntriesBySeq();
    std::vector<TxId> removed;
    for (const MempoolEntry* e : order) {
        bool gone = included.count(e->txid) > 0;
        if (!gone) {
            for (const TxInput& in : e->tx.inputs) {
                if (consumed.count(in.prevout)) {
                    gone = true;
                    break;
                }
            }
        }
        if (gone) removed.push_back(e->txid);
    }
    for (const TxId& id : removed) entries_.erase(id);
    return removed;
}

std::vector<TxId> Mempool::GetRawMempool() const
{
    std::vector<TxId> out;
    for (const MempoolEntry* e : EntriesBySeq()) out.push_back(e->txid);
    return out;
}

const MempoolEntry* Mempool::Get(const TxId& txid) const
{
    auto it = entries_.find(txid);
    return it == entries_.end() ? nullptr : &it->second;
}

} // namespace snipesim
