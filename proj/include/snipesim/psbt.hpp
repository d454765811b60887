// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <snipesim/keys.hpp>
#include <snipesim/utxo.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace snipesim {

class PsbtError : public std::runtime_error {
public:
    explicit PsbtError(const std::string& what) : std::runtime_error(what) {}
};

class PsbtIncompleteError : public PsbtError {
public:
    std::vector<size_t> unsigned_inputs;
    explicit PsbtIncompleteError(std::vector<size_t> indices)
        : PsbtError("psbt incomplete: " + std::to_string(indices.size()) + " unsigned input(s)"),
          unsigned_inputs(std::move(indices)) {}
};

struct PsbtInput {
    TxInput input; // unlock left empty until finalization
    /** Context of the coin being spent, copied in at creation time. */
    Amount utxo_amount{0};
    Address required_signer;
    /** Signer address -> signature over the skeleton preimage. Every record
     *  stored here has already been verified against its address. */
    std::map<Address, Hash256> partial_sigs;

    auto operator<=>(const PsbtInput&) const = default;
};

struct PsbtOutput {
    TxOutput output;
    /** Opaque script metadata (redeem scripts and the like); carried, never
     *  interpreted, and dropped by the text form. */
    std::vector<uint8_t> aux;

    auto operator<=>(const PsbtOutput&) const = default;
};

struct Psbt {
    uint16_t version{2};
    std::vector<PsbtInput> inputs;
    std::vector<PsbtOutput> outputs;

    auto operator<=>(const Psbt&) const = default;
};

/** Builds an unsigned PSBT. Each outpoint's amount and required signer are
 *  captured from `utxos`. Throws PsbtError on empty inputs, duplicate
 *  outpoints, unknown outpoints, or unspendable (data-carrier) coins. */
[[nodiscard]] Psbt CreatePsbt(const std::vector<OutPoint>& spends,
                              const std::vector<TxOutput>& outputs, const UtxoSet& utxos);

/** The unsigned transaction a PSBT describes (empty witness section).
 *  Its serialization is the signing preimage; its txid never changes as
 *  signatures are added. */
[[nodiscard]] Transaction SkeletonTx(const Psbt& psbt);

/** True once every input holds its required signer's signature. */
[[nodiscard]] bool IsComplete(const Psbt& psbt);

/** Adds `secret`'s signature to every input that requires it. Signing is
 *  idempotent; a secret matching no input changes nothing. Returns the
 *  updated PSBT and its completeness. */
[[nodiscard]] std::pair<Psbt, bool> SignPsbt(Psbt psbt, const Secret& secret);

/** Signs with every secret in `ring` that some input requires. */
[[nodiscard]] std::pair<Psbt, bool> SignPsbtWithRing(Psbt psbt, const KeyRing& ring);

/** Extracts the final transaction: the skeleton plus one 64-byte witness
 *  record per input. Throws PsbtIncompleteError listing unsigned inputs. */
[[nodiscard]] Transaction FinalizePsbt(const Psbt& psbt);

/** Text form: "psbt1:" followed by base64 of the skeleton serialization and
 *  the signature records. Round-trips exactly. */
[[nodiscard]] std::string EncodePsbtText(const Psbt& psbt);

/** Parses the text form; coin context is re-resolved from `utxos` and every
 *  carried signature is verified against `keys` before being accepted. */
[[nodiscard]] Psbt DecodePsbtText(const std::string& text, const UtxoSet& utxos,
                                  const KeyRing& keys);

} // namespace snipesim
