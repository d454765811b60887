// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <snipesim/feelock.hpp>
#include <snipesim/utxo.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace snipesim {

enum class PolicyMode {
    Coexist,    // conflicting spends sit in the pool together; blocks arbitrate
    RbfReplace, // a conflict must replace: identical input set, strictly higher fee rate
};

[[nodiscard]] std::string_view PolicyModeName(PolicyMode mode);

struct MempoolPolicy {
    PolicyMode mode{PolicyMode::Coexist};
    /** Floor in sats per virtual byte; a fee rate exactly at the floor passes. */
    int64_t min_relay_fee_rate{1};
    /** When set, any transaction carrying a fee-lock output must come with a
     *  valid reveal and stay within its committed ceiling. */
    bool fee_lock_enforced{false};
};

struct MempoolEntry {
    Transaction tx;
    TxId txid;
    Amount fee{0};
    int64_t vsize{0};
    /** Arrival order, monotonically increasing. */
    uint64_t seq{0};
    std::optional<FeeCommitment> reveal;
};

/** Exact rational comparison: fee_a/size_a > fee_b/size_b. */
[[nodiscard]] bool FeeRateGreater(Amount fee_a, int64_t size_a, Amount fee_b, int64_t size_b);

enum class RejectReason {
    InvalidTx,
    BelowMinFee,
    RbfFeeTooLow,
    BadCommitment,
    FeeExceedsLock,
};

[[nodiscard]] std::string_view RejectReasonName(RejectReason reason);

struct SubmitResult {
    enum class Status { Accepted, Replaced, Rejected };
    Status status{Status::Rejected};
    TxId txid;
    /** Entries removed by an rbf replacement. */
    std::vector<TxId> evicted;
    std::optional<RejectReason> reason;
    std::string detail;

    [[nodiscard]] bool Ok() const { return status != Status::Rejected; }
};

[[nodiscard]] std::string_view SubmitStatusName(SubmitResult::Status status);

class Mempool {
public:
    explicit Mempool(MempoolPolicy policy = {}) : policy_(policy) {}

    /** Admission: full validation against `utxos`, the relay fee floor, the
     *  fee-lock check when enforced, then conflict handling per policy mode.
     *  Under rbf-replace a conflicting submission must spend exactly the same
     *  input set as every entry it displaces and carry a strictly higher fee
     *  rate, in which case those entries are evicted (Replaced). */
    SubmitResult Submit(const Transaction& tx, const UtxoSet& utxos, const KeyRing& keys,
                        std::optional<FeeCommitment> reveal = std::nullopt);

    /** Pool entries that share at least one input outpoint with `tx`. */
    [[nodiscard]] std::set<TxId> ConflictsOf(const Transaction& tx) const;

    /** Greedy block template: entries by descending fee rate (ties broken by
     *  arrival), skipping anything that conflicts with an already-selected
     *  entry or would push the total past `max_vbytes`. */
    [[nodiscard]] std::vector<Transaction> SelectForBlock(int64_t max_vbytes) const;

    /** Drops every entry included in `block` or conflicting with it; returns
     *  the removed txids in arrival order. */
    std::vector<TxId> EvictForBlock(const Block& block);

    /** Txids in arrival order. */
    [[nodiscard]] std::vector<TxId> GetRawMempool() const;

    [[nodiscard]] bool Contains(const TxId& txid) const { return entries_.count(txid) > 0; }
    [[nodiscard]] const MempoolEntry* Get(const TxId& txid) const;
    [[nodiscard]] size_t Size() const { return entries_.size(); }
    /** Entries in arrival order. */
    [[nodiscard]] std::vector<const MempoolEntry*> EntriesBySeq() const;
    [[nodiscard]] const MempoolPolicy& Policy() const { return policy_; }

private:
    MempoolPolicy policy_;
    std::map<TxId, MempoolEntry> entries_;
    uint64_t next_seq_{0};
};

} // namespace snipesim
