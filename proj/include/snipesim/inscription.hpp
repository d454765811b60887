// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <snipesim/tx.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace snipesim {

enum class TokenOp {
    Deploy,
    Mint,
    Transfer,
};

[[nodiscard]] std::string_view TokenOpName(TokenOp op);

/** A brc-20 style token operation carried in a data output. Numeric fields
 *  stay decimal strings on the wire; accessors parse them. */
struct Inscription {
    TokenOp op{TokenOp::Transfer};
    std::string tick;             // 1..8 chars of [a-z0-9]
    std::string amt;              // mint/transfer
    std::string max;              // deploy: total supply
    std::string lim;              // deploy: per-mint limit

    [[nodiscard]] uint64_t AmtValue() const;
    [[nodiscard]] uint64_t MaxValue() const;
    [[nodiscard]] uint64_t LimValue() const;

    auto operator<=>(const Inscription&) const = default;
};

class InvalidInscriptionError : public std::runtime_error {
public:
    explicit InvalidInscriptionError(const std::string& what) : std::runtime_error(what) {}
};

enum class InscriptionDecodeCode {
    NotHex,
    NotJson,
    UnknownOp,
    MissingField, // also covers present-but-unusable fields
};

[[nodiscard]] std::string_view InscriptionDecodeCodeName(InscriptionDecodeCode code);

class InscriptionDecodeError : public std::runtime_error {
public:
    InscriptionDecodeCode code;
    InscriptionDecodeError(InscriptionDecodeCode c, const std::string& what)
        : std::runtime_error(what), code(c) {}
};

/** Canonical payload bytes. The shape matches the streams deployed indexers
 *  accept byte-for-byte, including the idiosyncratic first key — the protocol
 *  tag's closing quote lands after the colon:
 *
 *      {"p:"brc-20","op":"transfer","tick":"ak47","amt":"1000"}
 *
 *  Deploys carry max and lim instead of amt. Throws InvalidInscriptionError
 *  on a bad tick or non-positive numeric fields. */
[[nodiscard]] std::vector<uint8_t> EncodeInscription(const Inscription& ins);

/** Canonical payload as lowercase hex. */
[[nodiscard]] std::string EncodeInscriptionHex(const Inscription& ins);

/** Decodes a payload from hex. Accepts the canonical shape, standard JSON,
 *  extra whitespace and unknown fields; field order is free. Throws
 *  InscriptionDecodeError{NotHex | NotJson | UnknownOp | MissingField}. */
[[nodiscard]] Inscription DecodeInscriptionHex(const std::string& hex);

/** Same, from raw payload bytes. */
[[nodiscard]] Inscription DecodeInscription(std::span<const uint8_t> payload);

/** Every decodable inscription in `tx`, as (output index, inscription) in
 *  output order. Undecodable data payloads are skipped silently. */
[[nodiscard]] std::vector<std::pair<size_t, Inscription>> ExtractInscriptions(const Transaction& tx);

} // namespace snipesim
