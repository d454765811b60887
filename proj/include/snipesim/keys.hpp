// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <snipesim/hash.hpp>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace snipesim {

/** Opaque 32-byte signing secret. The scheme is a deterministic stand-in for
 *  real signatures: an address is hex(SHA-256(secret)) and a signature record
 *  is SHA-256(secret || message). Verification therefore needs a registry of
 *  secrets (KeyRing); the simulation's validator holds an omniscient one. */
using Secret = std::array<uint8_t, 32>;

/** 64-char lowercase hex of SHA-256(secret). */
using Address = std::string;

[[nodiscard]] Address AddressOf(const Secret& secret);

/** SHA-256(secret || message). */
[[nodiscard]] Hash256 SignMessage(const Secret& secret, std::span<const uint8_t> message);

/** A registry mapping addresses to their secrets. Doubles as the global
 *  verification oracle and as an actor's private wallet (own keys plus any
 *  published listing keys the actor has learned). */
class KeyRing {
public:
    /** Registers `secret`, returns its address. */
    Address Add(const Secret& secret);

    [[nodiscard]] bool Contains(const Address& address) const;
    [[nodiscard]] std::optional<Secret> Lookup(const Address& address) const;

    /** True iff `signature` is SHA-256(secret-of-address || message). Unknown
     *  addresses never verify. */
    [[nodiscard]] bool Verify(const Address& address, const Hash256& signature,
                              std::span<const uint8_t> message) const;

    [[nodiscard]] const std::map<Address, Secret>& Entries() const { return entries_; }

private:
    std::map<Address, Secret> entries_;
};

} // namespace snipesim
