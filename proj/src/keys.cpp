// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/keys.hpp>

#include <snipesim/hex.hpp>

namespace snipesim {

Address AddressOf(const Secret& secret)
{
    return HexEncode(Sha256(std::span<const uint8_t>(secret.data(), secret.size())));
}

Hash256 SignMessage(const Secret& secret, std::span<const uint8_t> message)
{
    std::vector<uint8_t> preimage;
    preimage.reserve(secret.size() + message.size());
    preimage.insert(preimage.end(), secret.begin(), secret.end());
    preimage.insert(preimage.end(), message.begin(), message.end());
    return Sha256(preimage);
}

Address KeyRing::Add(const Secret& secret)
{
    Address address = AddressOf(secret);
    entries_[address] = secret;
    return address;
}

bool KeyRing::Contains(const Address& address) const
{
    return entries_.count(address) > 0;
}

std::optional<Secret> KeyRing::Lookup(const Address& address) const
{
    auto it = entries_.find(address);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

bool KeyRing::Verify(const Address& address, const Hash256& signature,
                     std::span<const uint8_t> message) const
{
    std::optional<Secret> secret = Lookup(address);
    if (!secret) return false;
    return SignMessage(*secret, message) == signature;
}

} // namespace snipesim
