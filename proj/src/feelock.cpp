// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/feelock.hpp>

#include <stdexcept>

namespace snipesim {

static constexpr uint8_t FEELOCK_TAG[4] = {'F', 'L', 'C', 'K'};

Hash256 CommitFeeDigest(Amount f_max, const CommitNonce& nonce)
{
    if (f_max <= 0) throw std::invalid_argument("fee commitment needs a positive ceiling");
    std::vector<uint8_t> preimage;
    preimage.reserve(8 + nonce.size());
    uint64_t v = static_cast<uint64_t>(f_max);
    for (int shift = 56; shift >= 0; shift -= 8) preimage.push_back(static_cast<uint8_t>(v >> shift));
    preimage.insert(preimage.end(), nonce.begin(), nonce.end());
    return Sha256d(preimage);
}

FeeCommitment MakeFeeCommitment(Amount f_max, const CommitNonce& nonce)
{
    FeeCommitment c;
    c.digest = CommitFeeDigest(f_max, nonce);
    c.f_max = f_max;
    c.nonce = nonce;
    return c;
}

TxOutput MakeFeeLockOutput(const Hash256& digest)
{
    std::vector<uint8_t> payload(std::begin(FEELOCK_TAG), std::end(FEELOCK_TAG));
    payload.insert(payload.end(), digest.begin(), digest.end());
    return TxOutput::DataCarrier(std::move(payload));
}

std::optional<Hash256> FindFeeLockDigest(const Transaction& tx)
{
    for (const TxOutput& out : tx.outputs) {
        if (out.kind != OutputKind::Data || out.data.size() != 36) continue;
        if (!std::equal(std::begin(FEELOCK_TAG), std::end(FEELOCK_TAG), out.data.begin())) continue;
        Hash256 digest{};
        std::copy(out.data.begin() + 4, out.data.end(), digest.begin());
        return digest;
    }
    return std::nullopt;
}

std::string_view FeeLockStatusName(FeeLockStatus status)
{
    switch (status) {
    case FeeLockStatus::Ok: return "Ok";
    case FeeLockStatus::BadCommitment: return "BadCommitment";
    case FeeLockStatus::FeeExceedsLock: return "FeeExceedsLock";
    }
    return "?";
}

FeeLockStatus VerifyFeeLock(const Transaction& tx, const UtxoSet& utxos,
                            const std::optional<FeeCommitment>& reveal)
{
    std::optional<Hash256> digest = FindFeeLockDigest(tx);
    if (!digest) return FeeLockStatus::BadCommitment;
    if (!reveal || reveal->f_max <= 0) return FeeLockStatus::BadCommitment;
    if (CommitFeeDigest(reveal->f_max, reveal->nonce) != *digest) return FeeLockStatus::BadCommitment;
    if (ComputeFee(tx, utxos) > reveal->f_max) return FeeLockStatus::FeeExceedsLock;
    return FeeLockStatus::Ok;
}

} // namespace snipesim
