// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/psbt.hpp>

#include <snipesim/base64.hpp>
#include <snipesim/hex.hpp>
#include <snipesim/serialize.hpp>

#include <set>

namespace snipesim {

Psbt CreatePsbt(const std::vector<OutPoint>& spends, const std::vector<TxOutput>& outputs,
                const UtxoSet& utxos)
{
    if (spends.empty()) throw PsbtError("psbt needs at least one input");
    Psbt psbt;
    std::set<OutPoint> seen;
    for (const OutPoint& op : spends) {
        if (!seen.insert(op).second) throw PsbtError("duplicate input outpoint");
        auto it = utxos.find(op);
        if (it == utxos.end()) throw PsbtError("unknown outpoint " + op.txid.ToHex());
        if (it->second.kind != OutputKind::Address) throw PsbtError("outpoint is unspendable");
        PsbtInput in;
        in.input.prevout = op;
        in.utxo_amount = it->second.amount;
        in.required_signer = it->second.lock;
        psbt.inputs.push_back(std::move(in));
    }
    for (const TxOutput& out : outputs) psbt.outputs.push_back(PsbtOutput{out, {}});
    return psbt;
}

Transaction SkeletonTx(const Psbt& psbt)
{
    Transaction tx;
    tx.version = psbt.version;
    for (const PsbtInput& in : psbt.inputs) tx.inputs.push_back(in.input);
    for (const PsbtOutput& out : psbt.outputs) tx.outputs.push_back(out.output);
    return tx;
}

bool IsComplete(const Psbt& psbt)
{
    for (const PsbtInput& in : psbt.inputs) {
        if (!in.partial_sigs.count(in.required_signer)) return false;
    }
    return !psbt.inputs.empty();
}

std::pair<Psbt, bool> SignPsbt(Psbt psbt, const Secret& secret)
{
    Address signer = AddressOf(secret);
    std::vector<uint8_t> preimage = Serialize(SkeletonTx(psbt));
    for (PsbtInput& in : psbt.inputs) {
        if (in.required_signer == signer) {
            in.partial_sigs[signer] = SignMessage(secret, preimage);
        }
    }
    bool complete = IsComplete(psbt);
    return {std::move(psbt), complete};
}

std::pair<Psbt, bool> SignPsbtWithRing(Psbt psbt, const KeyRing& ring)
{
    for (const PsbtInput& in : psbt.inputs) {
        std::optional<Secret> secret = ring.Lookup(in.required_signer);
        if (secret) psbt = SignPsbt(std::move(psbt), *secret).first;
    }
    bool complete = IsComplete(psbt);
    return {std::move(psbt), complete};
}

Transaction FinalizePsbt(const Psbt& psbt)
{
    std::vector<size_t> missing;
    for (size_t i = 0; i < psbt.inputs.size(); ++i) {
        if (!psbt.inputs[i].partial_sigs.count(psbt.inputs[i].required_signer)) missing.push_back(i);
    }
    if (psbt.inputs.empty() || !missing.empty()) throw PsbtIncompleteError(std::move(missing));

    Transaction tx = SkeletonTx(psbt);
    for (const PsbtInput& in : psbt.inputs) {
        std::optional<std::vector<uint8_t>> signer_bytes = HexDecode(in.required_signer);
        if (!signer_bytes || signer_bytes->size() != 32) throw PsbtError("malformed signer address");
        std::vector<uint8_t> record = *signer_bytes;
        const Hash256& sig = in.partial_sigs.at(in.required_signer);
        record.insert(record.end(), sig.begin(), sig.end());
        tx.witness.push_back(std::move(record));
    }
    return tx;
}

static constexpr const char* PSBT_PREFIX = "psbt1:";

std::string EncodePsbtText(const Psbt& psbt)
{
    std::vector<uint8_t> bytes = Serialize(SkeletonTx(psbt));
    // Signature records, input-index then signer order (both already sorted).
    std::vector<uint8_t> sigs;
    uint64_t count = 0;
    for (const PsbtInput& in : psbt.inputs) count += in.partial_sigs.size();
    WriteVarInt(sigs, count);
    for (size_t i = 0; i < psbt.inputs.size(); ++i) {
        for (const auto& [signer, sig] : psbt.inputs[i].partial_sigs) {
            WriteVarInt(sigs, i);
            std::optional<std::vector<uint8_t>> signer_bytes = HexDecode(signer);
            if (!signer_bytes || signer_bytes->size() != 32) throw PsbtError("malformed signer address");
            sigs.insert(sigs.end(), signer_bytes->begin(), signer_bytes->end());
            sigs.insert(sigs.end(), sig.begin(), sig.end());
        }
    }
    bytes.insert(bytes.end(), sigs.begin(), sigs.end());
    return PSBT_PREFIX + Base64Encode(bytes);
}

Psbt DecodePsbtText(const std::string& text, const UtxoSet& utxos, const KeyRing& keys)
{
    if (text.rfind(PSBT_PREFIX, 0) != 0) throw PsbtError("missing psbt1: prefix");
    std::optional<std::vector<uint8_t>> bytes = Base64Decode(text.substr(6));
    if (!bytes) throw PsbtError("bad base64 payload");

    // The skeleton occupies a prefix of the payload; signature records follow.
    size_t skeleton_len = 0;
    Transaction skeleton;
    try {
        skeleton = DeserializePrefix(*bytes, skeleton_len);
    } catch (const DeserializeError& e) {
        throw PsbtError(std::string("undecodable skeleton: ") + e.what());
    }
    if (!skeleton.witness.empty()) throw PsbtError("psbt skeleton carries witness data");

    std::vector<OutPoint> spends;
    for (const TxInput& in : skeleton.inputs) spends.push_back(in.prevout);
    Psbt psbt = CreatePsbt(spends, skeleton.outputs, utxos);
    psbt.version = skeleton.version;
    for (size_t i = 0; i < skeleton.inputs.size(); ++i) {
        psbt.inputs[i].input = skeleton.inputs[i];
    }

    std::vector<uint8_t> preimage = Serialize(SkeletonTx(psbt));
    std::span<const uint8_t> rest(bytes->data() + skeleton_len, bytes->size() - skeleton_len);
    size_t pos = 0;
    uint64_t count = 0;
    try {
        count = ReadVarInt(rest, pos);
    } catch (const DeserializeError&) {
        throw PsbtError("truncated signature section");
    }
    for (uint64_t n = 0; n < count; ++n) {
        uint64_t index = 0;
        try {
            index = ReadVarInt(rest, pos);
        } catch (const DeserializeError&) {
            throw PsbtError("truncated signature record");
        }
        if (index >= psbt.inputs.size()) throw PsbtError("signature names unknown input");
        if (rest.size() - pos < 64) throw PsbtError("truncated signature record");
        Address signer = HexEncode(rest.subspan(pos, 32));
        Hash256 sig{};
        std::copy(rest.begin() + pos + 32, rest.begin() + pos + 64, sig.begin());
        pos += 64;
        if (!keys.Verify(signer, sig, preimage)) throw PsbtError("carried signature does not verify");
        psbt.inputs[index].partial_sigs[signer] = sig;
    }
    if (pos != rest.size()) throw PsbtError("trailing bytes after signatures");
    return psbt;
}

} // namespace snipesim
