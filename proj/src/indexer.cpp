// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/indexer.hpp>

#include <algorithm>

namespace snipesim {

PartyResolver MakeUtxoResolver(UtxoSet pre_block_utxos)
{
    return [utxos = std::move(pre_block_utxos)](const Transaction& tx)
               -> std::optional<TransferParties> {
        if (tx.inputs.empty()) return std::nullopt;
        auto it = utxos.find(tx.inputs.front().prevout);
        if (it == utxos.end() || it->second.kind != OutputKind::Address) return std::nullopt;
        TransferParties parties;
        parties.payer = it->second.lock;
        parties.payee = parties.payer;
        for (const TxOutput& out : tx.outputs) {
            if (out.kind == OutputKind::Address && out.lock != parties.payer) {
                parties.payee = out.lock;
                break;
            }
        }
        return parties;
    };
}

uint64_t GetBalance(const TokenLedger& ledger, const Address& address, const std::string& tick)
{
    auto it = ledger.balances.find({tick, address});
    return it == ledger.balances.end() ? 0 : it->second;
}

static void Credit(TokenLedger& ledger, const std::string& tick, const Address& address,
                   uint64_t units)
{
    if (units == 0) return;
    ledger.balances[{tick, address}] += units;
}

static void Debit(TokenLedger& ledger, const std::string& tick, const Address& address,
                  uint64_t units)
{
    auto it = ledger.balances.find({tick, address});
    if (it == ledger.balances.end() || it->second < units) return; // callers check first
    it->second -= units;
    if (it->second == 0) ledger.balances.erase(it);
}

TokenLedger IndexBlock(TokenLedger ledger, const Block& block, const PartyResolver& resolver)
{
    for (const Transaction& tx : block.txs) {
        std::vector<std::pair<size_t, Inscription>> found = ExtractInscriptions(tx);
        if (found.empty()) continue;
        std::optional<TransferParties> parties = resolver(tx);
        if (!parties) continue;

        for (const auto& [index, ins] : found) {
            switch (ins.op) {
            case TokenOp::Deploy: {
                if (ledger.tokens.count(ins.tick)) break; // first deploy wins
                TokenInfo info;
                info.max = ins.MaxValue();
                info.lim = ins.LimValue();
                info.deployer = parties->payer;
                info.minted = info.max; // the whole supply is credited at deploy
                ledger.tokens[ins.tick] = info;
                Credit(ledger, ins.tick, parties->payer, info.max);
                break;
            }
            case TokenOp::Mint: {
                auto it = ledger.tokens.find(ins.tick);
                if (it == ledger.tokens.end()) break;
                TokenInfo& info = it->second;
                uint64_t remaining = info.max - info.minted;
                uint64_t units = std::min({ins.AmtValue(), info.lim, remaining});
                info.minted += units;
                Credit(ledger, ins.tick, parties->payer, units);
                break;
            }
            case TokenOp::Transfer: {
                uint64_t units = ins.AmtValue();
                if (units == 0 || GetBalance(ledger, parties->payer, ins.tick) < units) break;
                Debit(ledger, ins.tick, parties->payer, units);
                Credit(ledger, ins.tick, parties->payee, units);
                break;
            }
            }
        }
    }
    return ledger;
}

TokenLedger RebuildLedger(std::span<const Block> blocks,
                          const std::function<PartyResolver(PartyResolver)>& wrap)
{
    TokenLedger ledger;
    UtxoSet utxos;
    uint64_t expected_height = 0;
    for (const Block& block : blocks) {
        if (block.height != expected_height) throw IndexOutOfOrderError(expected_height, block.height);
        ++expected_height;
        PartyResolver resolver = MakeUtxoResolver(utxos);
        if (wrap) resolver = wrap(std::move(resolver));
        ledger = IndexBlock(std::move(ledger), block, resolver);
        utxos = ApplyBlockUnchecked(utxos, block);
    }
    return ledger;
}

std::vector<std::string> BalanceReport(const TokenLedger& ledger)
{
    std::vector<std::string> lines;
    lines.reserve(ledger.balances.size());
    for (const auto& [key, balance] : ledger.balances) {
        if (balance == 0) continue;
        lines.push_back(key.first + " " + key.second + " " + std::to_string(balance));
    }
    std::sort(lines.begin(), lines.end());
    return lines;
}

} // namespace snipesim
