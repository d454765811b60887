// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <snipesim/tx.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace snipesim {

class DeserializeError : public std::runtime_error {
public:
    explicit DeserializeError(const std::string& what) : std::runtime_error(what) {}
};

/** Canonical wire form. Layout, all integers big-endian:
 *
 *    u16 version
 *    varint input_count
 *      per input:  32B prev txid | u32 prev vout | varint unlock_len | unlock | u32 sequence
 *    varint output_count
 *      per output: u64 amount | u8 kind (0 = address, 1 = data) | varint len | lock-or-data bytes
 *    varint witness_count
 *      per entry:  varint len | bytes
 *
 *  Varints are minimal LEB128. The encoding is a bijection over valid
 *  transactions: deserializing rejects trailing bytes, non-minimal varints,
 *  unknown kind bytes, out-of-range amounts and funded data outputs.
 */
[[nodiscard]] std::vector<uint8_t> Serialize(const Transaction& tx);

[[nodiscard]] Transaction Deserialize(std::span<const uint8_t> bytes);

/** Parses one transaction starting at `pos`, advancing `pos` past it.
 *  Composite encodings (the PSBT text form) append records after it. */
[[nodiscard]] Transaction DeserializePrefix(std::span<const uint8_t> bytes, size_t& pos);

/** Double SHA-256 of the canonical serialization. */
[[nodiscard]] TxId ComputeTxId(const Transaction& tx);

/** Virtual size: exactly the canonical serialization length in bytes. */
[[nodiscard]] int64_t VirtualSize(const Transaction& tx);

/** Virtual size the transaction will have once every input carries the
 *  fixed 64-byte witness record (65 serialized bytes per input). Lets fee
 *  targets be computed before signing. */
[[nodiscard]] int64_t SignedVirtualSize(const Transaction& skeleton);

/** Minimal LEB128 helpers, exposed for composite encodings (PSBT text form). */
void WriteVarInt(std::vector<uint8_t>& out, uint64_t value);
[[nodiscard]] uint64_t ReadVarInt(std::span<const uint8_t> bytes, size_t& pos);

} // namespace snipesim
