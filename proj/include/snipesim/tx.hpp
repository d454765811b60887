// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <snipesim/amount.hpp>
#include <snipesim/hash.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace snipesim {

/** Transaction id: double SHA-256 of the canonical serialization. */
struct TxId {
    Hash256 bytes{};

    [[nodiscard]] std::string ToHex() const;
    auto operator<=>(const TxId&) const = default;
};

struct OutPoint {
    TxId txid;
    uint32_t vout{0};

    auto operator<=>(const OutPoint&) const = default;
};

struct TxInput {
    OutPoint prevout;
    /** Free-form unlock bytes (empty in the skeleton; unused by validation,
     *  which relies on the witness section). */
    std::vector<uint8_t> unlock;
    uint32_t sequence{0xffffffff};

    auto operator<=>(const TxInput&) const = default;
};

enum class OutputKind : uint8_t {
    Address = 0, // value payment locked to an address
    Data = 1,    // zero-amount data carrier (inscriptions, commitments)
};

struct TxOutput {
    Amount amount{0};
    OutputKind kind{OutputKind::Address};
    /** For Address outputs: the UTF-8 address string. */
    std::string lock;
    /** For Data outputs: the carried payload. */
    std::vector<uint8_t> data;

    [[nodiscard]] static TxOutput Payment(const std::string& address, Amount amount)
    {
        TxOutput out;
        out.amount = amount;
        out.kind = OutputKind::Address;
        out.lock = address;
        return out;
    }

    [[nodiscard]] static TxOutput DataCarrier(std::vector<uint8_t> payload)
    {
        TxOutput out;
        out.amount = 0;
        out.kind = OutputKind::Data;
        out.data = std::move(payload);
        return out;
    }

    auto operator<=>(const TxOutput&) const = default;
};

struct Transaction {
    uint16_t version{2};
    std::vector<TxInput> inputs;
    std::vector<TxOutput> outputs;
    /** One record per input once signed; element i authorizes input i. */
    std::vector<std::vector<uint8_t>> witness;

    [[nodiscard]] bool IsCoinbase() const { return inputs.empty(); }

    auto operator<=>(const Transaction&) const = default;
};

struct Block {
    Hash256 hash{};
    uint64_t height{0};
    Transaction coinbase;
    /** Non-coinbase transactions in inclusion order. */
    std::vector<Transaction> txs;

    auto operator<=>(const Block&) const = default;
};

} // namespace snipesim
