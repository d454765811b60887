// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <snipesim/attacker.hpp>
#include <snipesim/indexer.hpp>
#include <snipesim/mempool.hpp>
#include <snipesim/mitigation.hpp>

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace snipesim {

class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

struct Wallet {
    std::string name;
    Secret secret;
    Address address;
    /** Published secrets (listing keys) are known to every actor. */
    bool published{false};
};

/** A marketplace listing: the seller pre-authorizes a sale by publishing the
 *  listing PSBT together with the one-time key of its zero-value anchor
 *  outpoint. Any taker funds and completes the purchase; every purchase of
 *  the same listing spends the anchor, so competing purchases conflict. */
struct Listing {
    std::string offer_wallet;
    OutPoint anchor;
    Address offer_address;
    Address seller_address;
    Amount price{0};
    Inscription inscription;
    std::vector<uint8_t> payload; // canonical transfer bytes, copied by takers
    std::string psbt_text;        // the published (incomplete) listing PSBT
};

struct SimConfig {
    std::string scenario_name{"adhoc"};
    uint64_t seed{1};
    MempoolPolicy policy{};
    Amount coinbase_reward{5'000'000'000};
    int64_t block_max_vbytes{1'000'000};
};

struct AttackRecord {
    std::string label;
    std::string wallet;
    uint64_t baseline_tokens{0};
    bool verified{false};
    AttackOutcome outcome;
};

struct OrderRecord {
    std::string label;
    std::string wallet;
    ProtectedOrder order;
};

/** One row of the per-action fee table. */
struct FeeRow {
    std::string label;
    std::string wallet;
    std::string role; // action verb
    TxId txid;
    Amount fee{0};
    int64_t vsize{0};
};

/** Layers marketplace knowledge over a baseline resolver: a payer address
 *  found in `offer_to_seller` is attributed to its seller principal, and the
 *  payee is re-derived as the first address output paying someone else. */
[[nodiscard]] PartyResolver ApplyOfferMap(PartyResolver baseline,
                                          std::map<Address, Address> offer_to_seller);

/** The simulation world: wallets, chain, confirmed coins, mempool, token
 *  ledger, listings, protected orders, and a structured event log. Actions
 *  run synchronously; escalation monitors tick after every submission and
 *  every block. */
class Simulation {
public:
    explicit Simulation(SimConfig config);

    // ----- setup ------------------------------------------------------------
    const Wallet& AddWallet(const std::string& name, bool published = false);
    /** Mines the height-0 block whose coinbase funds the given wallets. */
    void Genesis(const std::vector<std::pair<std::string, Amount>>& allocations);

    // ----- scripted actions (the label keys results in reports) -------------
    TxId Deploy(const std::string& label, const std::string& wallet, const std::string& tick,
                uint64_t max_supply, uint64_t mint_limit, Amount fee);
    const Listing& PublishListing(const std::string& label, const std::string& seller_wallet,
                                  const std::string& offer_wallet, const std::string& tick,
                                  uint64_t amt, Amount price);
    /** Funds and completes the published listing; fee = funding − price − change.
     *  With `lock_fee`, commits to that fee and carries the commitment. */
    TxId Buy(const std::string& label, const std::string& wallet, Amount change,
             bool lock_fee = false);
    const AttackOutcome& Snipe(const std::string& label, const std::string& wallet,
                               const FeeStrategy& strategy, const std::string& victim_label = {},
                               bool reuse_victim_inputs = true);
    const ProtectedOrder& Protect(const std::string& label, const std::string& wallet,
                                  const std::vector<int64_t>& tier_rates);
    TxId Bump(const std::string& label, const std::string& wallet,
              const std::string& target_label, int64_t new_rate);
    const Block& Mine(const std::string& miner_wallet);

    // ----- inspection --------------------------------------------------------
    [[nodiscard]] const Wallet& GetWallet(const std::string& name) const;
    [[nodiscard]] bool HasWallet(const std::string& name) const;
    [[nodiscard]] const UtxoSet& Utxos() const { return utxos_; }
    [[nodiscard]] Mempool& Pool() { return pool_; }
    [[nodiscard]] const Mempool& Pool() const { return pool_; }
    [[nodiscard]] const TokenLedger& Ledger() const { return ledger_; }
    [[nodiscard]] const std::vector<Block>& Chain() const { return chain_; }
    [[nodiscard]] const KeyRing& AllKeys() const { return all_keys_; }
    [[nodiscard]] const SimConfig& Config() const { return config_; }
    [[nodiscard]] std::optional<TxId> LabelTxId(const std::string& label) const;
    [[nodiscard]] const std::vector<AttackRecord>& Attacks() const { return attacks_; }
    [[nodiscard]] const std::vector<OrderRecord>& Orders() const { return orders_; }
    [[nodiscard]] const std::vector<FeeRow>& FeeTable() const { return fee_rows_; }
    [[nodiscard]] const Listing* ActiveListing() const;
    [[nodiscard]] uint64_t TokenBalance(const std::string& wallet, const std::string& tick) const;

    /** The wallet's confirmed coins, outpoint order. */
    [[nodiscard]] std::vector<OutPoint> OwnedUtxos(const Address& address) const;
    /** The actor's signing ring: own secret plus all published secrets. */
    [[nodiscard]] KeyRing RingFor(const std::string& wallet) const;
    /** Marketplace-aware party resolution for `RebuildLedger` cross-checks. */
    [[nodiscard]] std::function<PartyResolver(PartyResolver)> ResolverWrap() const;

    /** "txid fee_sats fee_rate seq" pool listing, arrival order. */
    [[nodiscard]] std::vector<std::string> MempoolLines() const;

    /** Everything but the expectations block, as an ordered document. */
    [[nodiscard]] nlohmann::ordered_json BuildReportDoc() const;

private:
    Secret DeriveSecret(const std::string& tag) const;
    CommitNonce DeriveNonce();
    OutPoint PickFunding(const Wallet& wallet, Amount minimum) const;
    SubmitResult SubmitTx(const Transaction& tx, std::optional<FeeCommitment> reveal);
    void TickOrders(const Block* latest);
    void RecordLabel(const std::string& label, const TxId& txid);
    nlohmann::ordered_json& NewEvent(const std::string& action, const std::string& label,
                                     const std::string& wallet);
    void FinishEvent(nlohmann::ordered_json& event);
    [[nodiscard]] nlohmann::ordered_json SubmitJson(const SubmitResult& result) const;

    SimConfig config_;
    KeyRing all_keys_;
    std::map<std::string, Wallet> wallets_;
    std::vector<Block> chain_;
    UtxoSet utxos_;
    Mempool pool_;
    TokenLedger ledger_;
    std::map<Address, Address> offer_to_seller_;
    std::vector<Listing> listings_;
    std::map<std::string, TxId> labels_;
    std::vector<AttackRecord> attacks_;
    std::vector<OrderRecord> orders_;
    std::vector<FeeRow> fee_rows_;
    nlohmann::ordered_json events_ = nlohmann::ordered_json::array();
    uint64_t nonce_counter_{0};
    int step_{0};
};

/** Exact fee rate as a decimal string with three fractional digits. */
[[nodiscard]] std::string FormatFeeRate(Amount fee, int64_t vsize);

} // namespace snipesim
