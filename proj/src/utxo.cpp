// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/utxo.hpp>

#include <snipesim/hex.hpp>
#include <snipesim/serialize.hpp>

#include <set>

namespace snipesim {

void AddOutputs(UtxoSet& utxos, const Transaction& tx, const TxId& txid)
{
    for (uint32_t i = 0; i < tx.outputs.size(); ++i) {
        const TxOutput& out = tx.outputs[i];
        Coin coin;
        coin.amount = out.amount;
        coin.kind = out.kind;
        if (out.kind == OutputKind::Address) coin.lock = out.lock;
        utxos[OutPoint{txid, i}] = std::move(coin);
    }
}

Amount ComputeFee(const Transaction& tx, const UtxoSet& utxos)
{
    Amount in_total = 0;
    for (const TxInput& in : tx.inputs) {
        auto it = utxos.find(in.prevout);
        if (it == utxos.end()) throw MissingUtxoError(in.prevout);
        in_total += it->second.amount;
    }
    Amount out_total = 0;
    for (const TxOutput& out : tx.outputs) out_total += out.amount;
    if (out_total > in_total) throw NegativeFeeError();
    return in_total - out_total;
}

std::string_view TxErrorCodeName(TxErrorCode code)
{
    switch (code) {
    case TxErrorCode::MissingUtxo: return "MissingUtxo";
    case TxErrorCode::DuplicateInput: return "DuplicateInput";
    case TxErrorCode::NegativeFee: return "NegativeFee";
    case TxErrorCode::BadSignature: return "BadSignature";
    }
    return "?";
}

std::vector<TxError> Validate(const Transaction& tx, const UtxoSet& utxos, const KeyRing& keys)
{
    std::vector<TxError> errors;

    // The signing preimage covers everything but the witness section.
    Transaction skeleton = tx;
    skeleton.witness.clear();
    std::vector<uint8_t> preimage = Serialize(skeleton);

    std::set<OutPoint> seen;
    Amount in_total = 0;
    bool all_inputs_known = true;
    for (size_t i = 0; i < tx.inputs.size(); ++i) {
        const TxInput& in = tx.inputs[i];
        if (!seen.insert(in.prevout).second) {
            errors.push_back({TxErrorCode::DuplicateInput, static_cast<int>(i), "outpoint spent twice"});
            continue;
        }
        auto it = utxos.find(in.prevout);
        if (it == utxos.end()) {
            errors.push_back({TxErrorCode::MissingUtxo, static_cast<int>(i), "unknown outpoint"});
            all_inputs_known = false;
            continue;
        }
        const Coin& coin = it->second;
        in_total += coin.amount;
        if (coin.kind != OutputKind::Address) {
            errors.push_back({TxErrorCode::BadSignature, static_cast<int>(i), "coin is unspendable"});
            continue;
        }
        // Witness record: 32-byte signer-address digest followed by the 32-byte signature.
        if (i >= tx.witness.size() || tx.witness[i].size() != 64) {
            errors.push_back({TxErrorCode::BadSignature, static_cast<int>(i), "missing witness record"});
            continue;
        }
        const std::vector<uint8_t>& w = tx.witness[i];
        Address signer = HexEncode(std::span<const uint8_t>(w.data(), 32));
        Hash256 sig{};
        std::copy(w.begin() + 32, w.end(), sig.begin());
        if (signer != coin.lock || !keys.Verify(signer, sig, preimage)) {
            errors.push_back({TxErrorCode::BadSignature, static_cast<int>(i), "signature does not verify"});
        }
    }

    if (all_inputs_known) {
        Amount out_total = 0;
        for (const TxOutput& out : tx.outputs) out_total += out.amount;
        if (out_total > in_total) {
            errors.push_back({TxErrorCode::NegativeFee, -1, "outputs exceed inputs"});
        }
    }
    return errors;
}

UtxoSet ApplyBlock(const UtxoSet& utxos, const Block& block, const KeyRing& keys)
{
    if (!block.coinbase.IsCoinbase()) {
        throw InvalidBlockError(ComputeTxId(block.coinbase), "coinbase has inputs");
    }
    std::set<OutPoint> spent;
    for (const Transaction& tx : block.txs) {
        std::vector<TxError> errors = Validate(tx, utxos, keys);
        TxId txid = ComputeTxId(tx);
        if (!errors.empty()) {
            throw InvalidBlockError(txid, std::string(TxErrorCodeName(errors.front().code)) +
                                              ": " + errors.front().detail);
        }
        for (const TxInput& in : tx.inputs) {
            if (!spent.insert(in.prevout).second) {
                throw InvalidBlockError(txid, "double spend within block");
            }
        }
    }
    return ApplyBlockUnchecked(utxos, block);
}

UtxoSet ApplyBlockUnchecked(const UtxoSet& utxos, const Block& block)
{
    UtxoSet next = utxos;
    for (const Transaction& tx : block.txs) {
        for (const TxInput& in : tx.inputs) next.erase(in.prevout);
    }
    AddOutputs(next, block.coinbase, ComputeTxId(block.coinbase));
    for (const Transaction& tx : block.txs) AddOutputs(next, tx, ComputeTxId(tx));
    return next;
}

} // namespace snipesim
