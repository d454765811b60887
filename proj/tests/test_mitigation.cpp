// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/inscription.hpp>
#include <snipesim/mitigation.hpp>
#include <snipesim/serialize.hpp>

#include "testutil.hpp"

#include <doctest.h>

namespace {
using namespace snipesim;
using namespace snipesim::test;

Inscription TransferIns(const std::string& tick, const std::string& amt)
{
    Inscription ins;
    ins.op = TokenOp::Transfer;
    ins.tick = tick;
    ins.amt = amt;
    return ins;
}

/** A buyer arming a purchase against a sniper. Both spend the listing anchor,
 *  so their transactions genuinely conflict; both have the same shape, so
 *  fee-rate comparisons reduce to fee comparisons. */
struct EscalationFixture {
    KeyRing everyone;
    KeyRing buyer_keys;
    KeyRing rival_keys;
    Actor seller, buyer, rival, offer;
    UtxoSet utxos;
    OutPoint anchor, buyer_coin, rival_coin;

    EscalationFixture()
    {
        seller = MakeActor(everyone, "seller");
        buyer = MakeActor(everyone, "buyer");
        rival = MakeActor(everyone, "rival");
        offer = MakeActor(everyone, "offer");
        buyer_keys.Add(buyer.secret);
        buyer_keys.Add(offer.secret);
        rival_keys.Add(rival.secret);
        rival_keys.Add(offer.secret);

        anchor = Fund(utxos, offer.address, 0, "anchor");
        buyer_coin = Fund(utxos, buyer.address, 51'000'000, "buyer-coin");
        rival_coin = Fund(utxos, rival.address, 52'000'000, "rival-coin");
    }

    [[nodiscard]] Psbt OrderPsbt() const
    {
        return CreatePsbt({anchor, buyer_coin},
                          {TxOutput::Payment(seller.address, 50'000'000),
                           TxOutput::Payment(buyer.address, 0), // change, set per tier
                           TxOutput::DataCarrier(EncodeInscription(TransferIns("ak47", "1000")))},
                          utxos);
    }

    /** Order/rival transactions share one shape; this is its signed size. */
    [[nodiscard]] int64_t Vsize() const { return SignedVirtualSize(SkeletonTx(OrderPsbt())); }

    [[nodiscard]] Transaction RivalTx(int64_t rate) const
    {
        Amount fee = rate * Vsize();
        return BuildSignedTx(
            {anchor, rival_coin},
            {TxOutput::Payment(seller.address, 50'000'000),
             TxOutput::Payment(rival.address, 2'000'000 - fee),
             TxOutput::DataCarrier(EncodeInscription(TransferIns("ak47", "1000")))},
            utxos, rival_keys);
    }
};
} // namespace

TEST_CASE("a protected order pre-signs one valid transaction per tier")
{
    EscalationFixture f;
    ProtectedOrder order = CreateProtectedOrder(f.OrderPsbt(), 9, {9, 95, 180}, f.buyer_keys);

    CHECK(order.state == OrderState::Pending);
    CHECK(order.history == std::vector<OrderState>{OrderState::Pending});
    CHECK(order.current_tier == 0);
    REQUIRE(order.tiers.size() == 3);

    const int64_t vsize = f.Vsize();
    const Amount budget = 51'000'000 - 50'000'000;
    for (size_t i = 0; i < 3; ++i) {
        const OrderTier& tier = order.tiers[i];
        CHECK(tier.fee == tier.rate_sat_vb * vsize);
        CHECK(tier.txid == ComputeTxId(tier.tx));
        CHECK(VirtualSize(tier.tx) == vsize);
        CHECK(Validate(tier.tx, f.utxos, f.everyone).empty());
        CHECK(ComputeFee(tier.tx, f.utxos) == tier.fee);
        // The seller payment and the inscription never change across tiers;
        // only the change output absorbs the escalation.
        CHECK(tier.tx.outputs[0] == TxOutput::Payment(f.seller.address, 50'000'000));
        CHECK(tier.tx.outputs[1].amount == budget - tier.fee);
        CHECK(tier.tx.outputs[2] ==
              TxOutput::DataCarrier(EncodeInscription(TransferIns("ak47", "1000"))));
    }
    CHECK(order.tiers[0].rate_sat_vb == 9);
    CHECK(order.tiers[1].rate_sat_vb == 95);
    CHECK(order.tiers[2].rate_sat_vb == 180);
    CHECK(order.tiers[0].txid != order.tiers[1].txid);
    CHECK(order.tiers[1].txid != order.tiers[2].txid);
}

TEST_CASE("order construction rejects unusable tier ladders")
{
    EscalationFixture f;
    Psbt psbt = f.OrderPsbt();

    auto code_of = [&](int64_t base, const std::vector<int64_t>& rates, const KeyRing& ring) {
        try {
            (void)CreateProtectedOrder(psbt, base, rates, ring);
        } catch (const OrderError& e) {
            return e.code;
        }
        throw std::runtime_error("expected OrderError");
    };

    CHECK(code_of(9, {}, f.buyer_keys) == OrderErrorCode::NonIncreasingTiers);
    CHECK(code_of(9, {10, 95}, f.buyer_keys) == OrderErrorCode::NonIncreasingTiers);
    CHECK(code_of(9, {9, 9}, f.buyer_keys) == OrderErrorCode::NonIncreasingTiers);
    CHECK(code_of(95, {95, 9}, f.buyer_keys) == OrderErrorCode::NonIncreasingTiers);

    // The top tier must leave the change non-negative: the budget here is
    // 1,000,000 sats, so a rate past budget/vsize cannot be pre-signed.
    int64_t unpayable = 1'000'000 / f.Vsize() + 1;
    CHECK(code_of(9, {9, unpayable}, f.buyer_keys) == OrderErrorCode::InsufficientChange);

    // A ring that cannot sign the anchor cannot arm the order.
    KeyRing buyer_only;
    buyer_only.Add(f.buyer.secret);
    CHECK(code_of(9, {9, 95}, buyer_only) == OrderErrorCode::InsufficientChange);

    // No owned change output to draw from.
    Psbt no_change = CreatePsbt({f.anchor, f.buyer_coin},
                                {TxOutput::Payment(f.seller.address, 50'000'000)}, f.utxos);
    try {
        (void)CreateProtectedOrder(no_change, 9, {9, 95}, f.buyer_keys);
        FAIL("order without change accepted");
    } catch (const OrderError& e) {
        CHECK(e.code == OrderErrorCode::InsufficientChange);
    }
}

TEST_CASE("escalation walks the tiers until it tops the sniper")
{
    EscalationFixture f;
    Mempool pool(MempoolPolicy{PolicyMode::Coexist, 1, false});
    ProtectedOrder order = CreateProtectedOrder(f.OrderPsbt(), 9, {9, 95, 180}, f.buyer_keys);

    REQUIRE(BroadcastCurrentTier(order, pool, f.utxos, f.buyer_keys).Ok());
    CHECK(order.state == OrderState::TopFee);

    // Nothing competes yet: monitoring neither escalates nor repeats history.
    CHECK(MonitorAndEscalate(order, pool, f.utxos, f.buyer_keys, nullptr) == OrderState::TopFee);
    CHECK(MonitorAndEscalate(order, pool, f.utxos, f.buyer_keys, nullptr) == OrderState::TopFee);
    CHECK(order.history == std::vector<OrderState>{OrderState::Pending, OrderState::TopFee});

    // A sniper outbids at 100 sat/vB: tier 9 and tier 95 both lose, tier 180
    // retakes the top.
    REQUIRE(pool.Submit(f.RivalTx(100), f.utxos, f.everyone).Ok());
    CHECK(MonitorAndEscalate(order, pool, f.utxos, f.buyer_keys, nullptr) == OrderState::TopFee);
    CHECK(order.current_tier == 2);
    CHECK(order.history ==
          std::vector<OrderState>{OrderState::Pending, OrderState::TopFee,
                                  OrderState::GettingReplaced, OrderState::GettingReplaced,
                                  OrderState::TopFee});

    // All broadcast tiers and the rival coexist until a block arbitrates.
    CHECK(pool.Size() == 4);
    std::vector<Transaction> tmpl = pool.SelectForBlock(1'000'000);
    REQUIRE(tmpl.size() == 1);
    CHECK(ComputeTxId(tmpl[0]) == order.tiers[2].txid);

    Block block;
    block.height = 1;
    block.txs = tmpl;
    pool.EvictForBlock(block);
    CHECK(MonitorAndEscalate(order, pool, f.utxos, f.buyer_keys, &block) == OrderState::Confirmed);
    CHECK(order.history.back() == OrderState::Confirmed);

    // Confirmed is terminal.
    size_t history_len = order.history.size();
    CHECK(MonitorAndEscalate(order, pool, f.utxos, f.buyer_keys, nullptr) == OrderState::Confirmed);
    CHECK(order.history.size() == history_len);
}

TEST_CASE("an order whose top tier is outbid exhausts")
{
    EscalationFixture f;
    Mempool pool(MempoolPolicy{PolicyMode::Coexist, 1, false});
    ProtectedOrder order = CreateProtectedOrder(f.OrderPsbt(), 9, {9, 95, 180}, f.buyer_keys);
    REQUIRE(BroadcastCurrentTier(order, pool, f.utxos, f.buyer_keys).Ok());

    REQUIRE(pool.Submit(f.RivalTx(200), f.utxos, f.everyone).Ok());
    CHECK(MonitorAndEscalate(order, pool, f.utxos, f.buyer_keys, nullptr) == OrderState::Exhausted);
    CHECK(order.history ==
          std::vector<OrderState>{OrderState::Pending, OrderState::TopFee,
                                  OrderState::GettingReplaced, OrderState::GettingReplaced,
                                  OrderState::GettingReplaced, OrderState::Exhausted});

    // Exhausted is terminal too.
    CHECK(MonitorAndEscalate(order, pool, f.utxos, f.buyer_keys, nullptr) == OrderState::Exhausted);

    // The block goes to the sniper.
    std::vector<Transaction> tmpl = pool.SelectForBlock(1'000'000);
    REQUIRE(tmpl.size() == 1);
    CHECK(ComputeTxId(tmpl[0]) == ComputeTxId(f.RivalTx(200)));
}

TEST_CASE("state names render for status displays")
{
    CHECK(std::string(OrderStateName(OrderState::Pending)) == "Pending");
    CHECK(std::string(OrderStateName(OrderState::TopFee)) == "Top Fee");
    CHECK(std::string(OrderStateName(OrderState::GettingReplaced)) == "Getting Replaced");
    CHECK(std::string(OrderStateName(OrderState::Confirmed)) == "Confirmed");
    CHECK(std::string(OrderStateName(OrderState::Exhausted)) == "Exhausted");
}

TEST_CASE("a manual bump rebuilds the purchase at the requested rate")
{
    EscalationFixture f;
    Mempool pool(MempoolPolicy{PolicyMode::Coexist, 1, false});

    ProtectedOrder order = CreateProtectedOrder(f.OrderPsbt(), 9, {9}, f.buyer_keys);
    REQUIRE(BroadcastCurrentTier(order, pool, f.utxos, f.buyer_keys).Ok());
    const Transaction original = order.tiers[0].tx;
    const TxId original_id = order.tiers[0].txid;
    const int64_t vsize = VirtualSize(original);

    // A sniper outbids at 100 sat/vB; the buyer bumps to 150.
    Transaction rival = f.RivalTx(100);
    REQUIRE(pool.Submit(rival, f.utxos, f.everyone).Ok());

    SubmitResult verdict;
    Transaction replacement = BumpFee(pool, original_id, 150, f.buyer_keys, f.utxos, &verdict);
    CHECK(verdict.status == SubmitResult::Status::Accepted);
    CHECK(pool.Contains(ComputeTxId(replacement)));
    CHECK(ComputeFee(replacement, f.utxos) == 150 * vsize);
    CHECK(VirtualSize(replacement) == vsize);

    // Everything except the change is preserved byte-for-byte.
    CHECK(replacement.inputs[0].prevout == original.inputs[0].prevout);
    CHECK(replacement.inputs[1].prevout == original.inputs[1].prevout);
    CHECK(replacement.outputs[0] == original.outputs[0]); // seller payment
    CHECK(replacement.outputs[2] == original.outputs[2]); // inscription
    CHECK(replacement.outputs[1].amount ==
          original.outputs[1].amount - (150 * vsize - ComputeFee(original, f.utxos)));

    // Under coexist the old version lingers until a block; the template
    // prefers the bumped fee over both the original and the sniper.
    CHECK(pool.Size() == 3);
    std::vector<Transaction> tmpl = pool.SelectForBlock(1'000'000);
    REQUIRE(tmpl.size() == 1);
    CHECK(ComputeTxId(tmpl[0]) == ComputeTxId(replacement));
}

TEST_CASE("a bump in an rbf pool replaces its predecessor outright")
{
    EscalationFixture f;
    Mempool pool(MempoolPolicy{PolicyMode::RbfReplace, 1, false});
    ProtectedOrder order = CreateProtectedOrder(f.OrderPsbt(), 9, {9}, f.buyer_keys);
    REQUIRE(BroadcastCurrentTier(order, pool, f.utxos, f.buyer_keys).Ok());

    SubmitResult verdict;
    Transaction replacement =
        BumpFee(pool, order.tiers[0].txid, 20, f.buyer_keys, f.utxos, &verdict);
    CHECK(verdict.status == SubmitResult::Status::Replaced);
    CHECK(verdict.evicted == std::vector<TxId>{order.tiers[0].txid});
    CHECK(pool.Size() == 1);
    CHECK(pool.Contains(ComputeTxId(replacement)));
    CHECK_FALSE(pool.Contains(order.tiers[0].txid));
}

TEST_CASE("bump failures carry a precise code")
{
    EscalationFixture f;
    Mempool pool(MempoolPolicy{PolicyMode::Coexist, 1, false});
    ProtectedOrder order = CreateProtectedOrder(f.OrderPsbt(), 9, {9}, f.buyer_keys);
    REQUIRE(BroadcastCurrentTier(order, pool, f.utxos, f.buyer_keys).Ok());
    const TxId order_id = order.tiers[0].txid;

    auto code_of = [&](const TxId& txid, int64_t rate, const KeyRing& signer) {
        try {
            (void)BumpFee(pool, txid, rate, signer, f.utxos);
        } catch (const BumpError& e) {
            return e.code;
        }
        throw std::runtime_error("expected BumpError");
    };

    SUBCASE("unknown txid")
    {
        TxId ghost;
        ghost.bytes = Sha256("ghost");
        CHECK(code_of(ghost, 50, f.buyer_keys) == BumpErrorCode::NotFound);
    }

    SUBCASE("only the owner can bump")
    {
        Transaction rival = f.RivalTx(100);
        REQUIRE(pool.Submit(rival, f.utxos, f.everyone).Ok());
        // The buyer cannot authorize the rival's funding input.
        CHECK(code_of(ComputeTxId(rival), 500, f.buyer_keys) == BumpErrorCode::NotOwner);
    }

    SUBCASE("a transaction without an owned output has no fee source")
    {
        OutPoint spare = Fund(f.utxos, f.buyer.address, 1'000'000, "spare");
        Transaction all_to_seller = BuildSignedTx(
            {spare}, {TxOutput::Payment(f.seller.address, 999'000)}, f.utxos, f.buyer_keys);
        REQUIRE(pool.Submit(all_to_seller, f.utxos, f.everyone).Ok());
        CHECK(code_of(ComputeTxId(all_to_seller), 50, f.buyer_keys) == BumpErrorCode::NotOwner);
    }

    SUBCASE("the new rate must beat the original itself")
    {
        CHECK(code_of(order_id, 9, f.buyer_keys) == BumpErrorCode::RateNotHigher);
        CHECK(code_of(order_id, 8, f.buyer_keys) == BumpErrorCode::RateNotHigher);
    }

    SUBCASE("the new rate must beat every conflicting entry")
    {
        REQUIRE(pool.Submit(f.RivalTx(100), f.utxos, f.everyone).Ok());
        CHECK(code_of(order_id, 99, f.buyer_keys) == BumpErrorCode::RateNotHigher);
        CHECK(code_of(order_id, 100, f.buyer_keys) == BumpErrorCode::RateNotHigher);
    }

    SUBCASE("the change must absorb the new fee")
    {
        // The budget is 1,000,000 sats; past budget/vsize the change go negative.
        int64_t unpayable = 1'000'000 / VirtualSize(order.tiers[0].tx) + 1;
        CHECK(code_of(order_id, unpayable, f.buyer_keys) == BumpErrorCode::InsufficientChange);
    }
}
