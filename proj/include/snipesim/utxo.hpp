// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <snipesim/keys.hpp>
#include <snipesim/tx.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace snipesim {

/** An unspent output. Data carriers sit in the set with amount 0 and no lock;
 *  they can never be spent (no signature verifies against an empty lock). */
struct Coin {
    Amount amount{0};
    OutputKind kind{OutputKind::Address};
    Address lock;

    auto operator<=>(const Coin&) const = default;
};

using UtxoSet = std::map<OutPoint, Coin>;

/** Inserts every output of `tx` into `utxos` keyed by (txid, index). */
void AddOutputs(UtxoSet& utxos, const Transaction& tx, const TxId& txid);

class MissingUtxoError : public std::runtime_error {
public:
    OutPoint outpoint;
    explicit MissingUtxoError(const OutPoint& op)
        : std::runtime_error("input spends unknown outpoint " + op.txid.ToHex()), outpoint(op) {}
};

class NegativeFeeError : public std::runtime_error {
public:
    NegativeFeeError() : std::runtime_error("outputs exceed inputs") {}
};

/** Fee = sum of spent coin amounts minus sum of output amounts.
 *  Throws MissingUtxoError / NegativeFeeError. Callers never pass coinbases. */
[[nodiscard]] Amount ComputeFee(const Transaction& tx, const UtxoSet& utxos);

enum class TxErrorCode {
    MissingUtxo,
    DuplicateInput,
    NegativeFee,
    BadSignature,
};

struct TxError {
    TxErrorCode code;
    /** Offending input index; -1 for transaction-wide errors (NegativeFee). */
    int input_index{-1};
    std::string detail;
};

[[nodiscard]] std::string_view TxErrorCodeName(TxErrorCode code);

/** Full validation of a non-coinbase transaction against `utxos`:
 *  every input exists, no duplicate outpoints, fee non-negative, and each
 *  input carries a witness record verifying against the spent coin's lock.
 *  Returns every error found (empty means valid). */
[[nodiscard]] std::vector<TxError> Validate(const Transaction& tx, const UtxoSet& utxos,
                                            const KeyRing& keys);

class InvalidBlockError : public std::runtime_error {
public:
    TxId txid;
    InvalidBlockError(const TxId& id, const std::string& why)
        : std::runtime_error("invalid block: tx " + id.ToHex() + ": " + why), txid(id) {}
};

/** The state transition: validates every non-coinbase transaction against the
 *  pre-block set, rejects intra-block double spends, then returns
 *  (utxos minus spent outpoints) plus all newly created outputs.
 *  Throws InvalidBlockError naming the offending transaction. */
[[nodiscard]] UtxoSet ApplyBlock(const UtxoSet& utxos, const Block& block, const KeyRing& keys);

/** The same set rewrite without any validation, for replaying an
 *  already-accepted chain (e.g. an indexer rebuild). */
[[nodiscard]] UtxoSet ApplyBlockUnchecked(const UtxoSet& utxos, const Block& block);

} // namespace snipesim
