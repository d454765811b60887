// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/serialize.hpp>

#include <snipesim/hex.hpp>

namespace snipesim {

std::string TxId::ToHex() const
{
    return HexEncode(bytes);
}

void WriteVarInt(std::vector<uint8_t>& out, uint64_t value)
{
    while (true) {
        uint8_t byte = value & 0x7f;
        value >>= 7;
        if (value != 0) byte |= 0x80;
        out.push_back(byte);
        if (value == 0) return;
    }
}

uint64_t ReadVarInt(std::span<const uint8_t> bytes, size_t& pos)
{
    uint64_t value = 0;
    int shift = 0;
    while (true) {
        if (pos >= bytes.size()) throw DeserializeError("varint truncated");
        if (shift >= 64) throw DeserializeError("varint overflows 64 bits");
        uint8_t byte = bytes[pos++];
        uint64_t part = byte & 0x7f;
        if (shift == 63 && part > 1) throw DeserializeError("varint overflows 64 bits");
        value |= part << shift;
        if ((byte & 0x80) == 0) {
            // Minimal encoding: the final byte of a multi-byte varint must be non-zero.
            if (byte == 0 && shift != 0) throw DeserializeError("non-minimal varint");
            return value;
        }
        shift += 7;
    }
}

namespace {

void WriteU16(std::vector<uint8_t>& out, uint16_t v)
{
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

void WriteU32(std::vector<uint8_t>& out, uint32_t v)
{
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<uint8_t>(v >> shift));
}

void WriteU64(std::vector<uint8_t>& out, uint64_t v)
{
    for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<uint8_t>(v >> shift));
}

void WriteBytes(std::vector<uint8_t>& out, std::span<const uint8_t> bytes)
{
    WriteVarInt(out, bytes.size());
    out.insert(out.end(), bytes.begin(), bytes.end());
}

struct Reader {
    std::span<const uint8_t> bytes;
    size_t pos{0};

    uint16_t U16()
    {
        Need(2);
        uint16_t v = static_cast<uint16_t>((bytes[pos] << 8) | bytes[pos + 1]);
        pos += 2;
        return v;
    }

    uint32_t U32()
    {
        Need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | bytes[pos + i];
        pos += 4;
        return v;
    }

    uint64_t U64()
    {
        Need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | bytes[pos + i];
        pos += 8;
        return v;
    }

    uint64_t VarInt() { return ReadVarInt(bytes, pos); }

    std::vector<uint8_t> Blob()
    {
        uint64_t len = VarInt();
        Need(len);
        std::vector<uint8_t> v(bytes.begin() + pos, bytes.begin() + pos + len);
        pos += len;
        return v;
    }

    void Need(uint64_t n) const
    {
        if (n > bytes.size() - pos) throw DeserializeError("unexpected end of data");
    }
};

} // namespace

std::vector<uint8_t> Serialize(const Transaction& tx)
{
    std::vector<uint8_t> out;
    WriteU16(out, tx.version);
    WriteVarInt(out, tx.inputs.size());
    for (const TxInput& in : tx.inputs) {
        out.insert(out.end(), in.prevout.txid.bytes.begin(), in.prevout.txid.bytes.end());
        WriteU32(out, in.prevout.vout);
        WriteBytes(out, in.unlock);
        WriteU32(out, in.sequence);
    }
    WriteVarInt(out, tx.outputs.size());
    for (const TxOutput& txout : tx.outputs) {
        WriteU64(out, static_cast<uint64_t>(txout.amount));
        out.push_back(static_cast<uint8_t>(txout.kind));
        if (txout.kind == OutputKind::Address) {
            WriteBytes(out, std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(txout.lock.data()), txout.lock.size()));
        } else {
            WriteBytes(out, txout.data);
        }
    }
    WriteVarInt(out, tx.witness.size());
    for (const std::vector<uint8_t>& w : tx.witness) WriteBytes(out, w);
    return out;
}

Transaction Deserialize(std::span<const uint8_t> bytes)
{
    size_t pos = 0;
    Transaction tx = DeserializePrefix(bytes, pos);
    if (pos != bytes.size()) throw DeserializeError("trailing bytes");
    return tx;
}

Transaction DeserializePrefix(std::span<const uint8_t> bytes, size_t& pos)
{
    Reader r{bytes, pos};
    Transaction tx;
    tx.version = r.U16();
    uint64_t nin = r.VarInt();
    tx.inputs.reserve(nin);
    for (uint64_t i = 0; i < nin; ++i) {
        TxInput in;
        r.Need(32);
        std::copy(r.bytes.begin() + r.pos, r.bytes.begin() + r.pos + 32, in.prevout.txid.bytes.begin());
        r.pos += 32;
        in.prevout.vout = r.U32();
        in.unlock = r.Blob();
        in.sequence = r.U32();
        tx.inputs.push_back(std::move(in));
    }
    uint64_t nout = r.VarInt();
    tx.outputs.reserve(nout);
    for (uint64_t i = 0; i < nout; ++i) {
        TxOutput out;
        uint64_t amount = r.U64();
        if (amount > static_cast<uint64_t>(MAX_MONEY)) throw DeserializeError("amount out of range");
        out.amount = static_cast<Amount>(amount);
        uint8_t kind = 0;
        r.Need(1);
        kind = r.bytes[r.pos++];
        if (kind > 1) throw DeserializeError("unknown output kind");
        out.kind = static_cast<OutputKind>(kind);
        std::vector<uint8_t> payload = r.Blob();
        if (out.kind == OutputKind::Address) {
            out.lock.assign(payload.begin(), payload.end());
        } else {
            if (out.amount != 0) throw DeserializeError("data output carries value");
            out.data = std::move(payload);
        }
        tx.outputs.push_back(std::move(out));
    }
    uint64_t nwit = r.VarInt();
    tx.witness.reserve(nwit);
    for (uint64_t i = 0; i < nwit; ++i) tx.witness.push_back(r.Blob());
    pos = r.pos;
    return tx;
}

TxId ComputeTxId(const Transaction& tx)
{
    std::vector<uint8_t> bytes = Serialize(tx);
    return TxId{Sha256d(bytes)};
}

int64_t VirtualSize(const Transaction& tx)
{
    return static_cast<int64_t>(Serialize(tx).size());
}

int64_t SignedVirtualSize(const Transaction& skeleton)
{
    Transaction copy = skeleton;
    copy.witness.assign(copy.inputs.size(), std::vector<uint8_t>(64, 0));
    return VirtualSize(copy);
}

} // namespace snipesim
