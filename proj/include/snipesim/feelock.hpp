// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <snipesim/tx.hpp>
#include <snipesim/utxo.hpp>

#include <array>
#include <optional>
#include <string>

namespace snipesim {

/** Nonce blinding a fee commitment. */
using CommitNonce = std::array<uint8_t, 32>;

/** Binding, hiding commitment to a maximum fee: the digest is the double
 *  SHA-256 of the 8-byte big-endian fee followed by the 32-byte nonce. The
 *  buyer embeds the digest in their transaction; the reveal (f_max, nonce)
 *  travels with the submission so admission can hold every spend of the same
 *  inputs to the committed ceiling. */
struct FeeCommitment {
    Hash256 digest{};
    Amount f_max{0};
    CommitNonce nonce{};

    auto operator<=>(const FeeCommitment&) const = default;
};

/** digest = SHA-256d(be64(f_max) || nonce). Throws std::invalid_argument
 *  unless f_max > 0. */
[[nodiscard]] Hash256 CommitFeeDigest(Amount f_max, const CommitNonce& nonce);

/** Convenience: a fully revealed commitment. */
[[nodiscard]] FeeCommitment MakeFeeCommitment(Amount f_max, const CommitNonce& nonce);

/** The on-chain carrier: a zero-amount data output holding "FLCK" plus the
 *  32-byte digest. */
[[nodiscard]] TxOutput MakeFeeLockOutput(const Hash256& digest);

/** The digest carried by `tx`'s fee-lock output, if one exists. */
[[nodiscard]] std::optional<Hash256> FindFeeLockDigest(const Transaction& tx);

enum class FeeLockStatus {
    Ok,
    BadCommitment,   // reveal absent or digest does not re-derive
    FeeExceedsLock,  // actual fee above the committed ceiling
};

[[nodiscard]] std::string_view FeeLockStatusName(FeeLockStatus status);

/** Checks `tx` (which carries a fee-lock output) against its reveal:
 *  the revealed (f_max, nonce) must re-derive the carried digest and the
 *  transaction's actual fee must not exceed f_max. */
[[nodiscard]] FeeLockStatus VerifyFeeLock(const Transaction& tx, const UtxoSet& utxos,
                                          const std::optional<FeeCommitment>& reveal);

} // namespace snipesim
