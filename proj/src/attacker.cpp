// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/attacker.hpp>

#include <snipesim/indexer.hpp>
#include <snipesim/serialize.hpp>

#include <algorithm>
#include <set>

namespace snipesim {

std::vector<VictimObservation> ScanMempool(const Mempool& pool, const UtxoSet& utxos)
{
    std::vector<VictimObservation> observations;
    for (const MempoolEntry* entry : pool.EntriesBySeq()) {
        const Transaction& tx = entry->tx;
        std::optional<Inscription> transfer;
        for (const auto& [index, ins] : ExtractInscriptions(tx)) {
            if (ins.op == TokenOp::Transfer) {
                transfer = ins;
                break;
            }
        }
        if (!transfer) continue;

        VictimObservation obs;
        obs.victim_txid = entry->txid;
        for (const TxInput& in : tx.inputs) obs.victim_inputs.push_back(in.prevout);
        // Marketplace purchases pay the seller first; take the first address output.
        const TxOutput* seller = nullptr;
        for (const TxOutput& out : tx.outputs) {
            if (out.kind == OutputKind::Address) {
                seller = &out;
                break;
            }
        }
        if (!seller) continue;
        obs.seller_address = seller->lock;
        obs.seller_amount = seller->amount;
        obs.inscription = *transfer;
        for (const TxOutput& out : tx.outputs) {
            if (out.kind == OutputKind::Data) obs.data_payloads.push_back(out.data);
        }
        obs.victim_fee = ComputeFee(tx, utxos);
        obs.victim_vsize = entry->vsize;
        obs.victim_seq = entry->seq;
        obs.reveal = entry->reveal;
        observations.push_back(std::move(obs));
    }
    return observations;
}

Psbt CraftSnipe(const VictimObservation& obs, const std::vector<OutPoint>& funds,
                const UtxoSet& utxos, const FeeStrategy& strategy, const KeyRing& attacker_keys,
                const Address& change_address, bool reuse_victim_inputs)
{
    // Re-spend whatever victim inputs the attacker can authorize — for a
    // marketplace purchase that is the published listing outpoint — so the
    // replica genuinely conflicts with its victim.
    std::vector<OutPoint> spends;
    std::set<OutPoint> own(funds.begin(), funds.end());
    if (reuse_victim_inputs) {
        for (const OutPoint& op : obs.victim_inputs) {
            if (own.count(op)) continue;
            auto it = utxos.find(op);
            if (it == utxos.end() || it->second.kind != OutputKind::Address) continue;
            if (attacker_keys.Contains(it->second.lock)) spends.push_back(op);
        }
    }
    spends.insert(spends.end(), funds.begin(), funds.end());

    Amount in_total = 0;
    for (const OutPoint& op : spends) {
        auto it = utxos.find(op);
        if (it == utxos.end()) throw MissingUtxoError(op);
        in_total += it->second.amount;
    }

    std::vector<TxOutput> outputs;
    outputs.push_back(TxOutput::Payment(obs.seller_address, obs.seller_amount));
    outputs.push_back(TxOutput::Payment(change_address, 0)); // change, patched below
    for (const std::vector<uint8_t>& payload : obs.data_payloads) {
        outputs.push_back(TxOutput::DataCarrier(payload));
    }

    Amount cap = in_total - obs.seller_amount; // change must stay non-negative
    Amount fee = 0;
    switch (strategy.kind) {
    case FeeStrategy::Kind::Outbid: {
        fee = obs.victim_fee + strategy.margin_sats;
        if (fee > cap) fee = obs.victim_fee + 1; // minimal outbid when funds are tight
        break;
    }
    case FeeStrategy::Kind::Underbid:
        fee = UNDERBID_FEE_SATS;
        break;
    case FeeStrategy::Kind::FixedRate: {
        Psbt probe = CreatePsbt(spends, outputs, utxos);
        fee = strategy.fixed_rate_sat_vb * SignedVirtualSize(SkeletonTx(probe));
        break;
    }
    }
    if (fee > cap || fee < 0) throw InsufficientFundsError(in_total, obs.seller_amount + fee);
    outputs[1].amount = cap - fee;

    return CreatePsbt(spends, outputs, utxos);
}

AttackOutcome ExecuteAttack(const VictimObservation& obs, const std::vector<OutPoint>& funds,
                            const FeeStrategy& strategy, Mempool& pool, const UtxoSet& utxos,
                            const KeyRing& attacker_keys, const Address& change_address,
                            bool reuse_victim_inputs)
{
    Psbt psbt = CraftSnipe(obs, funds, utxos, strategy, attacker_keys, change_address,
                           reuse_victim_inputs);
    psbt = SignPsbtWithRing(std::move(psbt), attacker_keys).first;
    Transaction tx = FinalizePsbt(psbt); // throws if the ring missed an input

    AttackOutcome outcome;
    outcome.attack_txid = ComputeTxId(tx);
    outcome.victim_txid = obs.victim_txid;
    outcome.attack_fee = ComputeFee(tx, utxos);
    outcome.attack_vsize = VirtualSize(tx);
    outcome.tick = obs.inscription.tick;
    outcome.expected_tokens = obs.inscription.AmtValue();
    outcome.submit = pool.Submit(tx, utxos, attacker_keys, obs.reveal);
    return outcome;
}

void VerifyAttack(AttackOutcome& outcome, const Block& block, const Mempool& pool,
                  const TokenLedger& ledger, const Address& attacker_token_address,
                  uint64_t baseline)
{
    outcome.included = false;
    bool victim_in_block = false;
    for (const Transaction& tx : block.txs) {
        TxId txid = ComputeTxId(tx);
        if (txid == outcome.attack_txid) outcome.included = true;
        if (txid == outcome.victim_txid) victim_in_block = true;
    }
    outcome.victim_evicted = !victim_in_block && !pool.Contains(outcome.victim_txid);
    uint64_t now = GetBalance(ledger, attacker_token_address, outcome.tick);
    outcome.tokens_received = now >= baseline ? now - baseline : 0;
    outcome.success = outcome.included && outcome.victim_evicted &&
                      outcome.tokens_received == outcome.expected_tokens;
}

} // namespace snipesim
