// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/sim.hpp>

#include <snipesim/feelock.hpp>
#include <snipesim/hex.hpp>
#include <snipesim/inscription.hpp>
#include <snipesim/psbt.hpp>
#include <snipesim/serialize.hpp>

#include <algorithm>
#include <cstdio>

namespace snipesim {

using nlohmann::ordered_json;

std::string FormatFeeRate(Amount fee, int64_t vsize)
{
    // Milli-sats per vbyte, floored: exact enough for display, fully deterministic.
    __int128 milli = vsize > 0 ? (static_cast<__int128>(fee) * 1000) / vsize : 0;
    int64_t whole = static_cast<int64_t>(milli / 1000);
    int64_t frac = static_cast<int64_t>(milli % 1000);
    char buf[48];
    snprintf(buf, sizeof(buf), "%lld.%03lld", static_cast<long long>(whole),
             static_cast<long long>(frac));
    return buf;
}

PartyResolver ApplyOfferMap(PartyResolver baseline, std::map<Address, Address> offer_to_seller)
{
    return [baseline = std::move(baseline), map = std::move(offer_to_seller)](
               const Transaction& tx) -> std::optional<TransferParties> {
        std::optional<TransferParties> parties = baseline(tx);
        if (!parties) return parties;
        auto it = map.find(parties->payer);
        if (it == map.end()) return parties;
        TransferParties mapped;
        mapped.payer = it->second;
        mapped.payee = mapped.payer;
        for (const TxOutput& out : tx.outputs) {
            if (out.kind == OutputKind::Address && out.lock != mapped.payer) {
                mapped.payee = out.lock;
                break;
            }
        }
        return mapped;
    };
}

static std::vector<uint8_t> HeightMarker(uint64_t height)
{
    std::vector<uint8_t> bytes(8);
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<uint8_t>(height >> (56 - 8 * i));
    return bytes;
}

static Hash256 BlockHash(uint64_t height, const Transaction& coinbase,
                         const std::vector<Transaction>& txs)
{
    std::vector<uint8_t> preimage = HeightMarker(height);
    TxId cb = ComputeTxId(coinbase);
    preimage.insert(preimage.end(), cb.bytes.begin(), cb.bytes.end());
    for (const Transaction& tx : txs) {
        TxId id = ComputeTxId(tx);
        preimage.insert(preimage.end(), id.bytes.begin(), id.bytes.end());
    }
    return Sha256d(preimage);
}

Simulation::Simulation(SimConfig config) : config_(std::move(config)), pool_(config_.policy) {}

Secret Simulation::DeriveSecret(const std::string& tag) const
{
    Hash256 h = Sha256("wallet/" + std::to_string(config_.seed) + "/" + tag);
    return h;
}

CommitNonce Simulation::DeriveNonce()
{
    Hash256 h = Sha256("nonce/" + std::to_string(config_.seed) + "/" + std::to_string(nonce_counter_++));
    return h;
}

const Wallet& Simulation::AddWallet(const std::string& name, bool published)
{
    if (wallets_.count(name)) throw SimError("wallet already declared: " + name);
    Wallet w;
    w.name = name;
    w.secret = DeriveSecret(name);
    w.address = all_keys_.Add(w.secret);
    w.published = published;
    return wallets_.emplace(name, std::move(w)).first->second;
}

const Wallet& Simulation::GetWallet(const std::string& name) const
{
    auto it = wallets_.find(name);
    if (it == wallets_.end()) throw SimError("unknown wallet: " + name);
    return it->second;
}

bool Simulation::HasWallet(const std::string& name) const
{
    return wallets_.count(name) > 0;
}

void Simulation::Genesis(const std::vector<std::pair<std::string, Amount>>& allocations)
{
    if (!chain_.empty()) throw SimError("genesis already mined");
    Transaction coinbase;
    for (const auto& [name, amount] : allocations) {
        coinbase.outputs.push_back(TxOutput::Payment(GetWallet(name).address, amount));
    }
    coinbase.outputs.push_back(TxOutput::DataCarrier(HeightMarker(0)));

    Block block;
    block.height = 0;
    block.coinbase = coinbase;
    block.hash = BlockHash(0, coinbase, {});
    utxos_ = ApplyBlock(utxos_, block, all_keys_);
    chain_.push_back(std::move(block));

    ordered_json& event = NewEvent("genesis", "", "");
    ordered_json allocs = ordered_json::array();
    for (const auto& [name, amount] : allocations) {
        allocs.push_back({{"wallet", name}, {"amount_sats", amount}});
    }
    event["allocations"] = std::move(allocs);
    event["block_hash"] = HexEncode(chain_.back().hash);
    FinishEvent(event);
}

OutPoint Simulation::PickFunding(const Wallet& wallet, Amount minimum) const
{
    for (const auto& [outpoint, coin] : utxos_) {
        if (coin.kind == OutputKind::Address && coin.lock == wallet.address &&
            coin.amount >= minimum) {
            return outpoint;
        }
    }
    throw SimError("wallet " + wallet.name + " has no confirmed coin of at least " +
                   std::to_string(minimum) + " sats");
}

std::vector<OutPoint> Simulation::OwnedUtxos(const Address& address) const
{
    std::vector<OutPoint> owned;
    for (const auto& [outpoint, coin] : utxos_) {
        if (coin.kind == OutputKind::Address && coin.lock == address) owned.push_back(outpoint);
    }
    return owned;
}

KeyRing Simulation::RingFor(const std::string& wallet) const
{
    KeyRing ring;
    ring.Add(GetWallet(wallet).secret);
    for (const auto& [name, w] : wallets_) {
        if (w.published) ring.Add(w.secret);
    }
    return ring;
}

std::function<PartyResolver(PartyResolver)> Simulation::ResolverWrap() const
{
    return [map = offer_to_seller_](PartyResolver baseline) {
        return ApplyOfferMap(std::move(baseline), map);
    };
}

SubmitResult Simulation::SubmitTx(const Transaction& tx, std::optional<FeeCommitment> reveal)
{
    return pool_.Submit(tx, utxos_, all_keys_, std::move(reveal));
}

void Simulation::RecordLabel(const std::string& label, const TxId& txid)
{
    if (label.empty()) return;
    if (labels_.count(label)) throw SimError("duplicate label: " + label);
    labels_[label] = txid;
}

std::optional<TxId> Simulation::LabelTxId(const std::string& label) const
{
    auto it = labels_.find(label);
    if (it == labels_.end()) return std::nullopt;
    return it->second;
}

const Listing* Simulation::ActiveListing() const
{
    return listings_.empty() ? nullptr : &listings_.back();
}

uint64_t Simulation::TokenBalance(const std::string& wallet, const std::string& tick) const
{
    return GetBalance(ledger_, GetWallet(wallet).address, tick);
}

std::vector<std::string> Simulation::MempoolLines() const
{
    std::vector<std::string> lines;
    for (const MempoolEntry* e : pool_.EntriesBySeq()) {
        lines.push_back(e->txid.ToHex() + " " + std::to_string(e->fee) + " " +
                        FormatFeeRate(e->fee, e->vsize) + " " + std::to_string(e->seq));
    }
    return lines;
}

ordered_json& Simulation::NewEvent(const std::string& action, const std::string& label,
                                   const std::string& wallet)
{
    ordered_json event;
    event["step"] = step_++;
    event["action"] = action;
    if (!label.empty()) event["label"] = label;
    if (!wallet.empty()) event["wallet"] = wallet;
    events_.push_back(std::move(event));
    return events_.back();
}

void Simulation::FinishEvent(ordered_json& event)
{
    event["mempool"] = MempoolLines();
    if (!orders_.empty()) {
        ordered_json states = ordered_json::array();
        for (const OrderRecord& rec : orders_) {
            states.push_back({{"label", rec.label},
                              {"state", std::string(OrderStateName(rec.order.state))},
                              {"current_tier", rec.order.current_tier}});
        }
        event["orders"] = std::move(states);
    }
}

ordered_json Simulation::SubmitJson(const SubmitResult& result) const
{
    ordered_json j;
    j["status"] = std::string(SubmitStatusName(result.status));
    j["txid"] = result.txid.ToHex();
    if (result.reason) j["reason"] = std::string(RejectReasonName(*result.reason));
    if (!result.detail.empty()) j["detail"] = result.detail;
    if (!result.evicted.empty()) {
        ordered_json evicted = ordered_json::array();
        for (const TxId& id : result.evicted) evicted.push_back(id.ToHex());
        j["evicted"] = std::move(evicted);
    }
    return j;
}

void Simulation::TickOrders(const Block* latest)
{
    for (OrderRecord& rec : orders_) {
        if (rec.order.state == OrderState::Confirmed || rec.order.state == OrderState::Exhausted) {
            continue;
        }
        if (rec.order.state == OrderState::Pending) continue; // not broadcast yet
        MonitorAndEscalate(rec.order, pool_, utxos_, RingFor(rec.wallet), latest);
    }
}

TxId Simulation::Deploy(const std::string& label, const std::string& wallet,
                        const std::string& tick, uint64_t max_supply, uint64_t mint_limit,
                        Amount fee)
{
    const Wallet& w = GetWallet(wallet);
    Inscription ins;
    ins.op = TokenOp::Deploy;
    ins.tick = tick;
    ins.max = std::to_string(max_supply);
    ins.lim = std::to_string(mint_limit);
    std::vector<uint8_t> payload = EncodeInscription(ins);

    OutPoint funding = PickFunding(w, fee);
    Amount funding_amount = utxos_.at(funding).amount;
    std::vector<TxOutput> outputs;
    outputs.push_back(TxOutput::DataCarrier(payload));
    outputs.push_back(TxOutput::Payment(w.address, funding_amount - fee));

    Psbt psbt = CreatePsbt({funding}, outputs, utxos_);
    auto [signed_psbt, complete] = SignPsbt(std::move(psbt), w.secret);
    Transaction tx = FinalizePsbt(signed_psbt);
    (void)complete;

    SubmitResult result = SubmitTx(tx, std::nullopt);
    RecordLabel(label, result.txid);
    fee_rows_.push_back({label, wallet, "deploy", result.txid, fee, VirtualSize(tx)});

    ordered_json& event = NewEvent("deploy", label, wallet);
    event["tick"] = tick;
    event["max"] = max_supply;
    event["lim"] = mint_limit;
    event["submit"] = SubmitJson(result);
    TickOrders(nullptr);
    FinishEvent(event);
    return result.txid;
}

const Listing& Simulation::PublishListing(const std::string& label,
                                          const std::string& seller_wallet,
                                          const std::string& offer_wallet,
                                          const std::string& tick, uint64_t amt, Amount price)
{
    const Wallet& seller = GetWallet(seller_wallet);
    Wallet& offer = wallets_.at(offer_wallet);

    Listing listing;
    listing.offer_wallet = offer_wallet;
    listing.offer_address = offer.address;
    listing.seller_address = seller.address;
    listing.price = price;
    listing.inscription.op = TokenOp::Transfer;
    listing.inscription.tick = tick;
    listing.inscription.amt = std::to_string(amt);
    listing.payload = EncodeInscription(listing.inscription);

    // The anchor: the zero-value coin the listing pre-authorizes. Every
    // purchase of this listing must spend it, which is what makes competing
    // purchases conflict.
    std::vector<OutPoint> anchors = OwnedUtxos(offer.address);
    if (anchors.empty()) throw SimError("offer wallet " + offer_wallet + " holds no anchor coin");
    listing.anchor = anchors.front();

    // The seller drafts and signs the listing. Their wallet key matches no
    // input (the anchor wants the one-time offer key, released only alongside
    // the listing), so the PSBT stays incomplete until a taker funds it.
    std::vector<TxOutput> outputs;
    outputs.push_back(TxOutput::Payment(seller.address, price));
    outputs.push_back(TxOutput::DataCarrier(listing.payload));
    Psbt draft = CreatePsbt({listing.anchor}, outputs, utxos_);
    auto [signed_draft, complete] = SignPsbt(std::move(draft), seller.secret);
    listing.psbt_text = EncodePsbtText(signed_draft);

    offer.published = true; // the listing key is now public knowledge
    offer_to_seller_[offer.address] = seller.address;
    listings_.push_back(listing);

    ordered_json& event = NewEvent("publish-psbt", label, seller_wallet);
    event["offer"] = offer_wallet;
    event["tick"] = tick;
    event["amt"] = amt;
    event["price_sats"] = price;
    event["anchor"] = listing.anchor.txid.ToHex() + ":" + std::to_string(listing.anchor.vout);
    event["inscription_hex"] = HexEncode(listing.payload);
    event["seller_sign_complete"] = complete;
    event["psbt"] = listing.psbt_text;
    TickOrders(nullptr);
    FinishEvent(event);
    return listings_.back();
}

TxId Simulation::Buy(const std::string& label, const std::string& wallet, Amount change,
                     bool lock_fee)
{
    const Listing* listing = ActiveListing();
    if (!listing) throw SimError("no published listing to buy");
    const Wallet& w = GetWallet(wallet);

    OutPoint funding = PickFunding(w, listing->price + change);
    Amount funding_amount = utxos_.at(funding).amount;
    Amount fee = funding_amount - listing->price - change;

    std::vector<TxOutput> outputs;
    outputs.push_back(TxOutput::Payment(listing->seller_address, listing->price));
    outputs.push_back(TxOutput::Payment(w.address, change));
    outputs.push_back(TxOutput::DataCarrier(listing->payload));

    std::optional<FeeCommitment> reveal;
    if (lock_fee) {
        reveal = MakeFeeCommitment(fee, DeriveNonce());
        outputs.push_back(MakeFeeLockOutput(reveal->digest));
    }

    Psbt psbt = CreatePsbt({listing->anchor, funding}, outputs, utxos_);
    auto [signed_psbt, complete] = SignPsbtWithRing(std::move(psbt), RingFor(wallet));
    if (!complete) throw SimError("buyer could not complete the purchase psbt");
    Transaction tx = FinalizePsbt(signed_psbt);

    SubmitResult result = SubmitTx(tx, reveal);
    RecordLabel(label, result.txid);
    fee_rows_.push_back({label, wallet, "buy", result.txid, fee, VirtualSize(tx)});

    ordered_json& event = NewEvent("buy", label, wallet);
    event["price_sats"] = listing->price;
    event["change_sats"] = change;
    event["fee_sats"] = fee;
    if (lock_fee) {
        event["fee_lock"] = {{"f_max", reveal->f_max}, {"digest", HexEncode(reveal->digest)}};
    }
    event["submit"] = SubmitJson(result);
    TickOrders(nullptr);
    FinishEvent(event);
    return result.txid;
}

const AttackOutcome& Simulation::Snipe(const std::string& label, const std::string& wallet,
                                       const FeeStrategy& strategy,
                                       const std::string& victim_label, bool reuse_victim_inputs)
{
    const Wallet& w = GetWallet(wallet);
    std::vector<VictimObservation> observations = ScanMempool(pool_, utxos_);
    if (observations.empty()) throw SimError("snipe: no transfer observed in the mempool");

    const VictimObservation* obs = &observations.front();
    if (!victim_label.empty()) {
        std::optional<TxId> victim = LabelTxId(victim_label);
        if (!victim) throw SimError("snipe: unknown victim label " + victim_label);
        obs = nullptr;
        for (const VictimObservation& o : observations) {
            if (o.victim_txid == *victim) {
                obs = &o;
                break;
            }
        }
        if (!obs) throw SimError("snipe: victim " + victim_label + " not in the mempool");
    }

    AttackRecord record;
    record.label = label;
    record.wallet = wallet;
    record.baseline_tokens = GetBalance(ledger_, w.address, obs->inscription.tick);
    record.outcome = ExecuteAttack(*obs, OwnedUtxos(w.address), strategy, pool_, utxos_,
                                   RingFor(wallet), w.address, reuse_victim_inputs);
    attacks_.push_back(std::move(record));
    AttackRecord& stored = attacks_.back();

    RecordLabel(label, stored.outcome.attack_txid);
    fee_rows_.push_back({label, wallet, "snipe", stored.outcome.attack_txid, stored.outcome.attack_fee,
                         stored.outcome.attack_vsize});

    ordered_json& event = NewEvent("snipe", label, wallet);
    event["victim_txid"] = stored.outcome.victim_txid.ToHex();
    event["victim_fee_sats"] = obs->victim_fee;
    event["attack_fee_sats"] = stored.outcome.attack_fee;
    event["submit"] = SubmitJson(stored.outcome.submit);
    TickOrders(nullptr);
    FinishEvent(event);
    return stored.outcome;
}

const ProtectedOrder& Simulation::Protect(const std::string& label, const std::string& wallet,
                                          const std::vector<int64_t>& tier_rates)
{
    const Listing* listing = ActiveListing();
    if (!listing) throw SimError("no published listing to protect");
    const Wallet& w = GetWallet(wallet);
    if (tier_rates.empty()) throw SimError("protect: no tiers given");

    OutPoint funding = PickFunding(w, listing->price);
    std::vector<TxOutput> outputs;
    outputs.push_back(TxOutput::Payment(listing->seller_address, listing->price));
    outputs.push_back(TxOutput::Payment(w.address, 0)); // change, re-derived per tier
    outputs.push_back(TxOutput::DataCarrier(listing->payload));

    Psbt psbt = CreatePsbt({listing->anchor, funding}, outputs, utxos_);
    OrderRecord record;
    record.label = label;
    record.wallet = wallet;
    record.order = CreateProtectedOrder(psbt, tier_rates.front(), tier_rates, RingFor(wallet));
    orders_.push_back(std::move(record));
    OrderRecord& stored = orders_.back();

    SubmitResult result = BroadcastCurrentTier(stored.order, pool_, utxos_, all_keys_);
    RecordLabel(label, stored.order.tiers.front().txid);
    fee_rows_.push_back({label, wallet, "protect", stored.order.tiers.front().txid,
                         stored.order.tiers.front().fee,
                         VirtualSize(stored.order.tiers.front().tx)});

    ordered_json& event = NewEvent("protect", label, wallet);
    ordered_json tiers = ordered_json::array();
    for (const OrderTier& tier : stored.order.tiers) {
        tiers.push_back({{"rate_sat_vb", tier.rate_sat_vb},
                         {"fee_sats", tier.fee},
                         {"txid", tier.txid.ToHex()}});
    }
    event["tiers"] = std::move(tiers);
    event["submit"] = SubmitJson(result);
    TickOrders(nullptr);
    FinishEvent(event);
    return stored.order;
}

TxId Simulation::Bump(const std::string& label, const std::string& wallet,
                      const std::string& target_label, int64_t new_rate)
{
    std::optional<TxId> target = LabelTxId(target_label);
    if (!target) throw SimError("bump: unknown target label " + target_label);

    SubmitResult result;
    Transaction replacement = BumpFee(pool_, *target, new_rate, RingFor(wallet), utxos_, &result);
    TxId txid = ComputeTxId(replacement);
    RecordLabel(label, txid);
    fee_rows_.push_back({label, wallet, "bump", txid, ComputeFee(replacement, utxos_),
                         VirtualSize(replacement)});

    ordered_json& event = NewEvent("bump", label, wallet);
    event["target"] = target_label;
    event["target_txid"] = target->ToHex();
    event["new_rate_sat_vb"] = new_rate;
    event["submit"] = SubmitJson(result);
    TickOrders(nullptr);
    FinishEvent(event);
    return txid;
}

const Block& Simulation::Mine(const std::string& miner_wallet)
{
    if (chain_.empty()) throw SimError("mine before genesis");
    const Wallet& miner = GetWallet(miner_wallet);

    std::vector<Transaction> txs = pool_.SelectForBlock(config_.block_max_vbytes);
    Amount fees = 0;
    std::vector<Amount> tx_fees;
    for (const Transaction& tx : txs) {
        tx_fees.push_back(ComputeFee(tx, utxos_));
        fees += tx_fees.back();
    }

    uint64_t height = chain_.size();
    Transaction coinbase;
    coinbase.outputs.push_back(TxOutput::Payment(miner.address, config_.coinbase_reward + fees));
    coinbase.outputs.push_back(TxOutput::DataCarrier(HeightMarker(height)));

    Block block;
    block.height = height;
    block.coinbase = coinbase;
    block.txs = txs;
    block.hash = BlockHash(height, coinbase, txs);

    UtxoSet pre = utxos_;
    utxos_ = ApplyBlock(utxos_, block, all_keys_);
    std::vector<TxId> evicted = pool_.EvictForBlock(block);
    ledger_ = IndexBlock(std::move(ledger_), block,
                         ApplyOfferMap(MakeUtxoResolver(std::move(pre)), offer_to_seller_));
    chain_.push_back(std::move(block));
    const Block& mined = chain_.back();

    // Settle pending attack verdicts now that a block is mined and indexed.
    for (AttackRecord& rec : attacks_) {
        if (rec.verified) continue;
        VerifyAttack(rec.outcome, mined, pool_, ledger_, GetWallet(rec.wallet).address,
                     rec.baseline_tokens);
        rec.verified = true;
    }
    TickOrders(&mined);

    ordered_json& event = NewEvent("mine", "", miner_wallet);
    event["height"] = height;
    event["block_hash"] = HexEncode(mined.hash);
    event["fees_collected_sats"] = fees;
    ordered_json txids = ordered_json::array();
    for (const Transaction& tx : mined.txs) txids.push_back(ComputeTxId(tx).ToHex());
    event["txids"] = std::move(txids);
    if (!mined.txs.empty()) {
        // Selection is fee-rate ordered, so the first entry is the round's winner.
        event["winner"] = {{"txid", ComputeTxId(mined.txs.front()).ToHex()},
                           {"fee_sats", tx_fees.front()}};
    }
    ordered_json evicted_json = ordered_json::array();
    for (const TxId& id : evicted) evicted_json.push_back(id.ToHex());
    event["evicted"] = std::move(evicted_json);
    event["balances"] = BalanceReport(ledger_);
    FinishEvent(event);
    return mined;
}

ordered_json Simulation::BuildReportDoc() const
{
    ordered_json doc;
    doc["scenario"] = config_.scenario_name;
    doc["seed"] = config_.seed;
    doc["policy"] = {{"mode", std::string(PolicyModeName(config_.policy.mode))},
                     {"min_relay_fee_rate", config_.policy.min_relay_fee_rate},
                     {"fee_lock_enforced", config_.policy.fee_lock_enforced}};
    doc["events"] = events_;

    ordered_json fee_table = ordered_json::array();
    for (const FeeRow& row : fee_rows_) {
        fee_table.push_back({{"label", row.label},
                             {"wallet", row.wallet},
                             {"role", row.role},
                             {"txid", row.txid.ToHex()},
                             {"fee_sats", row.fee},
                             {"vsize", row.vsize},
                             {"fee_rate", FormatFeeRate(row.fee, row.vsize)}});
    }
    doc["fee_table"] = std::move(fee_table);

    ordered_json attacks = ordered_json::array();
    for (const AttackRecord& rec : attacks_) {
        attacks.push_back({{"label", rec.label},
                           {"wallet", rec.wallet},
                           {"attack_txid", rec.outcome.attack_txid.ToHex()},
                           {"victim_txid", rec.outcome.victim_txid.ToHex()},
                           {"fee_sats", rec.outcome.attack_fee},
                           {"submit_status", std::string(SubmitStatusName(rec.outcome.submit.status))},
                           {"included", rec.outcome.included},
                           {"victim_evicted", rec.outcome.victim_evicted},
                           {"tokens_received", rec.outcome.tokens_received},
                           {"success", rec.outcome.success}});
    }
    doc["attacks"] = std::move(attacks);

    ordered_json orders = ordered_json::array();
    for (const OrderRecord& rec : orders_) {
        ordered_json history = ordered_json::array();
        for (OrderState s : rec.order.history) history.push_back(std::string(OrderStateName(s)));
        ordered_json tiers = ordered_json::array();
        for (const OrderTier& tier : rec.order.tiers) {
            tiers.push_back({{"rate_sat_vb", tier.rate_sat_vb},
                             {"fee_sats", tier.fee},
                             {"txid", tier.txid.ToHex()}});
        }
        orders.push_back({{"label", rec.label},
                          {"wallet", rec.wallet},
                          {"state", std::string(OrderStateName(rec.order.state))},
                          {"current_tier", rec.order.current_tier},
                          {"history", std::move(history)},
                          {"tiers", std::move(tiers)}});
    }
    doc["orders"] = std::move(orders);

    doc["final_balances"] = BalanceReport(ledger_);
    return doc;
}

} // namespace snipesim
