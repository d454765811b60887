// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/hash.hpp>

#include <openssl/evp.h>

#include <cassert>

namespace snipesim {

Hash256 Sha256(std::span<const uint8_t> data)
{
    Hash256 out{};
    unsigned int len = 0;
    int ok = EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
    assert(ok == 1 && len == out.size());
    (void)ok;
    return out;
}

Hash256 Sha256d(std::span<const uint8_t> data)
{
    Hash256 first = Sha256(data);
    return Sha256(std::span<const uint8_t>(first.data(), first.size()));
}

Hash256 Sha256(const std::string& data)
{
    return Sha256(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

} // namespace snipesim
