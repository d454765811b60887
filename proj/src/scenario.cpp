// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/scenario.hpp>

#include <snipesim/serialize.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace snipesim {

using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// text parsing
// ---------------------------------------------------------------------------

std::string Trim(const std::string& s)
{
    size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> SplitWs(const std::string& s)
{
    std::vector<std::string> tokens;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) tokens.push_back(tok);
    return tokens;
}

std::vector<std::string> SplitChar(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

int64_t ParseInt(const std::string& s, const std::string& what)
{
    int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ScenarioError("bad integer for " + what + ": '" + s + "'");
    }
    return value;
}

uint64_t ParseUint(const std::string& s, const std::string& what)
{
    uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ScenarioError("bad unsigned integer for " + what + ": '" + s + "'");
    }
    return value;
}

bool ParseBool(const std::string& s, const std::string& what)
{
    if (s == "true" || s == "on" || s == "yes") return true;
    if (s == "false" || s == "off" || s == "no") return false;
    throw ScenarioError("bad boolean for " + what + ": '" + s + "'");
}

PolicyMode ParsePolicy(const std::string& s)
{
    if (s == "coexist") return PolicyMode::Coexist;
    if (s == "rbf" || s == "rbf-replace") return PolicyMode::RbfReplace;
    throw ScenarioError("unknown policy mode: '" + s + "' (coexist or rbf)");
}

/** Reads the arguments of one scripted action. */
class Args {
public:
    Args(const ScenarioAction& action) : action_(action) {}

    std::string Get(const std::string& key) const
    {
        auto it = action_.args.find(key);
        if (it == action_.args.end()) {
            throw ScenarioError(action_.verb + " needs " + key + "=...");
        }
        return it->second;
    }
    std::string GetOr(const std::string& key, const std::string& fallback) const
    {
        auto it = action_.args.find(key);
        return it == action_.args.end() ? fallback : it->second;
    }
    int64_t Int(const std::string& key) const { return ParseInt(Get(key), key); }
    int64_t IntOr(const std::string& key, int64_t fallback) const
    {
        auto it = action_.args.find(key);
        return it == action_.args.end() ? fallback : ParseInt(it->second, key);
    }
    uint64_t Uint(const std::string& key) const { return ParseUint(Get(key), key); }
    bool BoolOr(const std::string& key, bool fallback) const
    {
        auto it = action_.args.find(key);
        return it == action_.args.end() ? fallback : ParseBool(it->second, key);
    }
    void Allow(std::initializer_list<const char*> keys) const
    {
        for (const auto& [key, value] : action_.args) {
            if (std::find_if(keys.begin(), keys.end(),
                             [&key](const char* k) { return key == k; }) == keys.end()) {
                throw ScenarioError(action_.verb + " does not take " + key + "=...");
            }
        }
    }

private:
    const ScenarioAction& action_;
};

// ---------------------------------------------------------------------------
// embedded scenarios
// ---------------------------------------------------------------------------

constexpr const char* ROUND1 = R"(# A marketplace sale is sniped by a high-fee bidder; a low-fee control bid loses.
[scenario]
name = round1
policy = coexist
min-relay-rate = 0

[wallets]
seller
buyer
attacker_high
attacker_low
offer
miner

[genesis]
seller = 156250000
buyer = 87985000
attacker_high = 78130000
attacker_low = 70000100
offer = 0

[actions]
deploy as=deploy_ak47 wallet=seller tick=ak47 max=2100000 lim=1000 fee=10000
mine wallet=miner
publish-psbt as=listing seller=seller offer=offer tick=ak47 amt=1000 price=50000000
buy as=buy_tx wallet=buyer change=10000000
snipe as=snipe_high wallet=attacker_high strategy=outbid margin=140000 victim=buy_tx
snipe as=snipe_low wallet=attacker_low strategy=underbid victim=buy_tx
mine wallet=miner

[expect]
fee buy_tx = 27985000
fee snipe_high = 28125000
fee snipe_low = 100
submit buy_tx = accepted
submit snipe_high = accepted
submit snipe_low = accepted
block 2 txcount = 1
block 2 contains snipe_high
winner 2 = snipe_high
mempool contains buy_tx = false
mempool contains snipe_low = false
balance attacker_high ak47 = 1000
balance seller ak47 = 2099000
attack snipe_high included = true
attack snipe_high victim_evicted = true
attack snipe_high tokens_received = 1000
attack snipe_high success = true
attack snipe_low success = false
)";

constexpr const char* ROUND2 = R"(# Same contest as round1 with the attackers' submission order reversed.
[scenario]
name = round2
policy = coexist
min-relay-rate = 0

[wallets]
seller
buyer
attacker_high
attacker_low
offer
miner

[genesis]
seller = 156250000
buyer = 87985000
attacker_high = 78130000
attacker_low = 70000100
offer = 0

[actions]
deploy as=deploy_ak47 wallet=seller tick=ak47 max=2100000 lim=1000 fee=10000
mine wallet=miner
publish-psbt as=listing seller=seller offer=offer tick=ak47 amt=1000 price=50000000
buy as=buy_tx wallet=buyer change=10000000
snipe as=snipe_low wallet=attacker_low strategy=underbid victim=buy_tx
snipe as=snipe_high wallet=attacker_high strategy=outbid margin=140000 victim=buy_tx
mine wallet=miner

[expect]
fee buy_tx = 27985000
fee snipe_high = 28125000
fee snipe_low = 100
block 2 txcount = 1
winner 2 = snipe_high
mempool contains buy_tx = false
balance attacker_high ak47 = 1000
balance seller ak47 = 2099000
attack snipe_high success = true
attack snipe_low success = false
)";

constexpr const char* ROUND3 = R"(# Four snipers bid fixed fee rates against one purchase; the top rate wins.
[scenario]
name = round3
policy = coexist

[wallets]
seller
buyer
sniper_a
sniper_b
sniper_c
sniper_d
offer
miner

[genesis]
seller = 156250000
buyer = 87985000
sniper_a = 60000000
sniper_b = 60000000
sniper_c = 60000000
sniper_d = 60000000
offer = 0

[actions]
deploy as=deploy_ak47 wallet=seller tick=ak47 max=2100000 lim=1000 fee=10000
mine wallet=miner
publish-psbt as=listing seller=seller offer=offer tick=ak47 amt=1000 price=50000000
buy as=buy_tx wallet=buyer change=37984500
snipe as=snipe_9 wallet=sniper_a strategy=fixed-rate rate=9 victim=buy_tx
snipe as=snipe_20 wallet=sniper_b strategy=fixed-rate rate=20 victim=buy_tx
snipe as=snipe_35 wallet=sniper_c strategy=fixed-rate rate=35 victim=buy_tx
snipe as=snipe_50 wallet=sniper_d strategy=fixed-rate rate=50 victim=buy_tx
mine wallet=miner

[expect]
fee buy_tx = 500
block 2 txcount = 1
block 2 contains snipe_50
winner 2 = snipe_50
mempool contains buy_tx = false
balance sniper_d ak47 = 1000
balance seller ak47 = 2099000
attack snipe_50 success = true
attack snipe_9 success = false
attack snipe_20 success = false
attack snipe_35 success = false
)";

constexpr const char* MITIGATION_TIERED = R"(# Pre-signed fee tiers 9/95/180 sat/vB defeat a sniper capped at 100 sat/vB.
[scenario]
name = mitigation-tiered
policy = coexist

[wallets]
seller
buyer
sniper
offer
miner

[genesis]
seller = 156250000
buyer = 51000000
sniper = 52000000
offer = 0

[actions]
deploy as=deploy_ak47 wallet=seller tick=ak47 max=2100000 lim=1000 fee=10000
mine wallet=miner
publish-psbt as=listing seller=seller offer=offer tick=ak47 amt=1000 price=50000000
protect as=protected_buy wallet=buyer tiers=9,95,180
snipe as=snipe_100 wallet=sniper strategy=fixed-rate rate=100 victim=protected_buy
mine wallet=miner

[expect]
order protected_buy state = Confirmed
attack snipe_100 included = false
attack snipe_100 success = false
block 2 txcount = 1
mempool contains snipe_100 = false
balance buyer ak47 = 1000
balance seller ak47 = 2099000
balance sniper ak47 = 0
)";

constexpr const char* MITIGATION_TIERED_EXHAUSTED = R"(# A sniper above the top tier outbids every pre-signed escalation step.
[scenario]
name = mitigation-tiered-exhausted
policy = coexist

[wallets]
seller
buyer
sniper
offer
miner

[genesis]
seller = 156250000
buyer = 51000000
sniper = 52000000
offer = 0

[actions]
deploy as=deploy_ak47 wallet=seller tick=ak47 max=2100000 lim=1000 fee=10000
mine wallet=miner
publish-psbt as=listing seller=seller offer=offer tick=ak47 amt=1000 price=50000000
protect as=protected_buy wallet=buyer tiers=9,95,180
snipe as=snipe_200 wallet=sniper strategy=fixed-rate rate=200 victim=protected_buy
mine wallet=miner

[expect]
order protected_buy state = Exhausted
attack snipe_200 success = true
winner 2 = snipe_200
block 2 txcount = 1
balance sniper ak47 = 1000
balance buyer ak47 = 0
balance seller ak47 = 2099000
)";

constexpr const char* MITIGATION_BUMP = R"(# The buyer manually bumps their fee over the sniper's rate and wins.
[scenario]
name = mitigation-bump
policy = coexist

[wallets]
seller
buyer
attacker
offer
miner

[genesis]
seller = 156250000
buyer = 87985000
attacker = 78130000
offer = 0

[actions]
deploy as=deploy_ak47 wallet=seller tick=ak47 max=2100000 lim=1000 fee=10000
mine wallet=miner
publish-psbt as=listing seller=seller offer=offer tick=ak47 amt=1000 price=50000000
buy as=buy_tx wallet=buyer change=37984500
snipe as=snipe_atk wallet=attacker strategy=outbid margin=140000 victim=buy_tx
bump as=bump_tx wallet=buyer target=buy_tx rate=1000
mine wallet=miner

[expect]
fee buy_tx = 500
submit snipe_atk = accepted
submit bump_tx = accepted
block 2 txcount = 1
winner 2 = bump_tx
block 2 contains bump_tx
mempool contains snipe_atk = false
balance buyer ak47 = 1000
balance attacker ak47 = 0
attack snipe_atk success = false
)";

constexpr const char* MITIGATION_FEELOCK = R"(# Admission enforces the buyer's fee commitment; the copied snipe exceeds it.
[scenario]
name = mitigation-feelock
policy = coexist
fee-lock = true

[wallets]
seller
buyer
attacker
offer
miner

[genesis]
seller = 156250000
buyer = 87985000
attacker = 78130000
offer = 0

[actions]
deploy as=deploy_ak47 wallet=seller tick=ak47 max=2100000 lim=1000 fee=10000
mine wallet=miner
publish-psbt as=listing seller=seller offer=offer tick=ak47 amt=1000 price=50000000
buy as=buy_tx wallet=buyer change=10000000 lock-fee=true
snipe as=snipe_atk wallet=attacker strategy=outbid margin=140000 victim=buy_tx
mine wallet=miner

[expect]
fee buy_tx = 27985000
submit buy_tx = accepted
submit snipe_atk = rejected:FeeExceedsLock
block 2 txcount = 1
winner 2 = buy_tx
mempool contains buy_tx = false
balance buyer ak47 = 1000
balance attacker ak47 = 0
attack snipe_atk included = false
attack snipe_atk success = false
)";

constexpr const char* RBF_MODE_COMPARISON = R"(# Under replace-only admission a marketplace snipe cannot enter the pool.
[scenario]
name = rbf-mode-comparison
policy = rbf-replace

[wallets]
seller
buyer
attacker
offer
miner

[genesis]
seller = 156250000
buyer = 87985000
attacker = 78130000
offer = 0

[actions]
deploy as=deploy_ak47 wallet=seller tick=ak47 max=2100000 lim=1000 fee=10000
mine wallet=miner
publish-psbt as=listing seller=seller offer=offer tick=ak47 amt=1000 price=50000000
buy as=buy_tx wallet=buyer change=10000000
snipe as=snipe_atk wallet=attacker strategy=outbid margin=140000 victim=buy_tx
mine wallet=miner

[expect]
fee buy_tx = 27985000
submit buy_tx = accepted
submit snipe_atk = rejected:InvalidTx
block 2 txcount = 1
winner 2 = buy_tx
mempool contains buy_tx = false
balance buyer ak47 = 1000
balance attacker ak47 = 0
attack snipe_atk success = false
)";

struct BuiltinScenario {
    const char* name;
    const char* text;
};

constexpr std::array<BuiltinScenario, 8> BUILTINS{{
    {"round1", ROUND1},
    {"round2", ROUND2},
    {"round3", ROUND3},
    {"mitigation-tiered", MITIGATION_TIERED},
    {"mitigation-tiered-exhausted", MITIGATION_TIERED_EXHAUSTED},
    {"mitigation-bump", MITIGATION_BUMP},
    {"mitigation-feelock", MITIGATION_FEELOCK},
    {"rbf-mode-comparison", RBF_MODE_COMPARISON},
}};

// ---------------------------------------------------------------------------
// expectation evaluation
// ---------------------------------------------------------------------------

std::string BoolName(bool b) { return b ? "true" : "false"; }

/** Finds the scripted event that carries the label (submission records). */
const ordered_json* FindLabeledEvent(const ordered_json& events, const std::string& label)
{
    for (const auto& event : events) {
        if (event.contains("label") && event["label"] == label) return &event;
    }
    return nullptr;
}

ordered_json CheckLine(const Simulation& sim, const ordered_json& events, const std::string& line)
{
    std::vector<std::string> tok = SplitWs(line);
    std::string actual = "?";
    std::string expected = "?";

    auto fail = [&](const std::string& why) {
        actual = why;
        expected = "";
        return false;
    };

    bool pass = false;
    if (tok.size() == 4 && tok[0] == "fee" && tok[2] == "=") {
        expected = tok[3];
        actual = "no labeled transaction '" + tok[1] + "'";
        for (const FeeRow& row : sim.FeeTable()) {
            if (row.label == tok[1]) {
                actual = std::to_string(row.fee);
                break;
            }
        }
        pass = actual == expected;
    } else if (tok.size() == 4 && tok[0] == "submit" && tok[2] == "=") {
        expected = tok[3];
        const ordered_json* event = FindLabeledEvent(events, tok[1]);
        if (!event || !event->contains("submit")) {
            pass = fail("no submission recorded for '" + tok[1] + "'");
        } else {
            const ordered_json& submit = (*event)["submit"];
            actual = submit.value("status", "?");
            if (submit.contains("reason")) actual += ":" + submit["reason"].get<std::string>();
            pass = actual == expected;
        }
    } else if (tok.size() == 5 && tok[0] == "block" && tok[2] == "txcount" && tok[3] == "=") {
        expected = tok[4];
        size_t height = ParseUint(tok[1], "block height");
        if (height >= sim.Chain().size()) {
            pass = fail("no block at height " + tok[1]);
        } else {
            actual = std::to_string(sim.Chain()[height].txs.size());
            pass = actual == expected;
        }
    } else if (tok.size() == 4 && tok[0] == "block" && tok[2] == "contains") {
        expected = "true";
        size_t height = ParseUint(tok[1], "block height");
        std::optional<TxId> txid = sim.LabelTxId(tok[3]);
        if (height >= sim.Chain().size()) {
            pass = fail("no block at height " + tok[1]);
        } else if (!txid) {
            pass = fail("no labeled transaction '" + tok[3] + "'");
        } else {
            bool found = false;
            for (const Transaction& tx : sim.Chain()[height].txs) {
                if (ComputeTxId(tx) == *txid) found = true;
            }
            actual = BoolName(found);
            pass = found;
        }
    } else if (tok.size() == 5 && tok[0] == "mempool" && tok[1] == "contains" && tok[3] == "=") {
        expected = tok[4];
        std::optional<TxId> txid = sim.LabelTxId(tok[2]);
        if (!txid) {
            pass = fail("no labeled transaction '" + tok[2] + "'");
        } else {
            actual = BoolName(sim.Pool().Contains(*txid));
            pass = actual == expected;
        }
    } else if (tok.size() == 5 && tok[0] == "balance" && tok[3] == "=") {
        expected = tok[4];
        actual = std::to_string(sim.TokenBalance(tok[1], tok[2]));
        pass = actual == expected;
    } else if (tok.size() == 5 && tok[0] == "attack" && tok[3] == "=") {
        expected = tok[4];
        actual = "no attack labeled '" + tok[1] + "'";
        for (const AttackRecord& rec : sim.Attacks()) {
            if (rec.label != tok[1]) continue;
            const AttackOutcome& o = rec.outcome;
            const std::string& field = tok[2];
            if (field == "included") actual = BoolName(o.included);
            else if (field == "victim_evicted") actual = BoolName(o.victim_evicted);
            else if (field == "success") actual = BoolName(o.success);
            else if (field == "tokens_received") actual = std::to_string(o.tokens_received);
            else if (field == "fee") actual = std::to_string(o.attack_fee);
            else throw ScenarioError("unknown attack field in expectation: " + field);
            break;
        }
        pass = actual == expected;
    } else if (tok.size() >= 5 && tok[0] == "order" && tok[2] == "state" && tok[3] == "=") {
        expected = tok[4];
        for (size_t i = 5; i < tok.size(); ++i) expected += " " + tok[i];
        actual = "no order labeled '" + tok[1] + "'";
        for (const OrderRecord& rec : sim.Orders()) {
            if (rec.label == tok[1]) {
                actual = std::string(OrderStateName(rec.order.state));
                break;
            }
        }
        pass = actual == expected;
    } else if (tok.size() == 4 && tok[0] == "winner" && tok[2] == "=") {
        expected = tok[3];
        size_t height = ParseUint(tok[1], "block height");
        std::optional<TxId> txid = sim.LabelTxId(tok[3]);
        if (height >= sim.Chain().size()) {
            pass = fail("no block at height " + tok[1]);
        } else if (sim.Chain()[height].txs.empty()) {
            pass = fail("block " + tok[1] + " is empty");
        } else if (!txid) {
            pass = fail("no labeled transaction '" + tok[3] + "'");
        } else {
            TxId front = ComputeTxId(sim.Chain()[height].txs.front());
            pass = front == *txid;
            actual = pass ? expected : front.ToHex();
        }
    } else {
        throw ScenarioError("unrecognized expectation: '" + line + "'");
    }

    ordered_json check;
    check["check"] = line;
    check["expected"] = expected;
    check["actual"] = actual;
    check["pass"] = pass;
    return check;
}

// ---------------------------------------------------------------------------
// action dispatch
// ---------------------------------------------------------------------------

FeeStrategy ParseStrategy(const Args& args)
{
    FeeStrategy strategy;
    std::string kind = args.Get("strategy");
    if (kind == "outbid") {
        strategy.kind = FeeStrategy::Kind::Outbid;
        strategy.margin_sats = args.IntOr("margin", strategy.margin_sats);
    } else if (kind == "underbid") {
        strategy.kind = FeeStrategy::Kind::Underbid;
    } else if (kind == "fixed-rate") {
        strategy.kind = FeeStrategy::Kind::FixedRate;
        strategy.fixed_rate_sat_vb = args.Int("rate");
    } else {
        throw ScenarioError("unknown strategy: '" + kind + "' (outbid, underbid, fixed-rate)");
    }
    return strategy;
}

void RunAction(Simulation& sim, const ScenarioAction& action)
{
    Args args(action);
    const std::string label = args.GetOr("as", "");
    if (action.verb == "deploy") {
        args.Allow({"as", "wallet", "tick", "max", "lim", "fee"});
        sim.Deploy(label, args.Get("wallet"), args.Get("tick"), args.Uint("max"),
                   args.Uint("lim"), args.Int("fee"));
    } else if (action.verb == "publish-psbt") {
        args.Allow({"as", "seller", "offer", "tick", "amt", "price"});
        sim.PublishListing(label, args.Get("seller"), args.Get("offer"), args.Get("tick"),
                           args.Uint("amt"), args.Int("price"));
    } else if (action.verb == "buy") {
        args.Allow({"as", "wallet", "change", "lock-fee"});
        sim.Buy(label, args.Get("wallet"), args.Int("change"), args.BoolOr("lock-fee", false));
    } else if (action.verb == "snipe") {
        args.Allow({"as", "wallet", "strategy", "margin", "rate", "victim", "reuse-inputs"});
        sim.Snipe(label, args.Get("wallet"), ParseStrategy(args), args.GetOr("victim", ""),
                  args.BoolOr("reuse-inputs", true));
    } else if (action.verb == "protect") {
        args.Allow({"as", "wallet", "tiers"});
        std::vector<int64_t> tiers;
        for (const std::string& part : SplitChar(args.Get("tiers"), ',')) {
            tiers.push_back(ParseInt(Trim(part), "tiers"));
        }
        sim.Protect(label, args.Get("wallet"), tiers);
    } else if (action.verb == "bump") {
        args.Allow({"as", "wallet", "target", "rate"});
        sim.Bump(label, args.Get("wallet"), args.Get("target"), args.Int("rate"));
    } else if (action.verb == "mine") {
        args.Allow({"wallet"});
        sim.Mine(args.Get("wallet"));
    } else {
        throw ScenarioError("unknown action verb: '" + action.verb + "'");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// public interface
// ---------------------------------------------------------------------------

std::vector<std::string> ListScenarios()
{
    std::vector<std::string> names;
    for (const BuiltinScenario& b : BUILTINS) names.push_back(b.name);
    return names;
}

bool IsBuiltinScenario(const std::string& name)
{
    return std::any_of(BUILTINS.begin(), BUILTINS.end(),
                       [&name](const BuiltinScenario& b) { return name == b.name; });
}

ScenarioSpec ParseScenarioText(const std::string& text, const std::string& fallback_name)
{
    ScenarioSpec spec;
    spec.name = fallback_name;

    std::istringstream is(text);
    std::string raw;
    std::string section;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = Trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            if (section != "scenario" && section != "wallets" && section != "genesis" &&
                section != "actions" && section != "expect") {
                throw ScenarioError("line " + std::to_string(lineno) + ": unknown section [" +
                                    section + "]");
            }
            continue;
        }
        if (section.empty()) {
            throw ScenarioError("line " + std::to_string(lineno) + ": content before any section");
        }

        if (section == "scenario" || section == "genesis") {
            size_t eq = line.find('=');
            if (eq == std::string::npos) {
                throw ScenarioError("line " + std::to_string(lineno) + ": expected key = value");
            }
            std::string key = Trim(line.substr(0, eq));
            std::string value = Trim(line.substr(eq + 1));
            if (section == "genesis") {
                spec.genesis.emplace_back(key, ParseInt(value, "genesis " + key));
            } else if (key == "name") {
                spec.name = value;
            } else if (key == "seed") {
                spec.seed = ParseUint(value, key);
            } else if (key == "policy") {
                spec.policy.mode = ParsePolicy(value);
            } else if (key == "min-relay-rate") {
                spec.policy.min_relay_fee_rate = ParseInt(value, key);
            } else if (key == "fee-lock") {
                spec.policy.fee_lock_enforced = ParseBool(value, key);
            } else if (key == "coinbase-reward") {
                spec.coinbase_reward = ParseInt(value, key);
            } else if (key == "block-max-vbytes") {
                spec.block_max_vbytes = ParseInt(value, key);
            } else {
                throw ScenarioError("line " + std::to_string(lineno) + ": unknown setting '" +
                                    key + "'");
            }
        } else if (section == "wallets") {
            spec.wallets.push_back(line);
        } else if (section == "actions") {
            std::vector<std::string> tok = SplitWs(line);
            ScenarioAction action;
            action.verb = tok.front();
            for (size_t i = 1; i < tok.size(); ++i) {
                size_t eq = tok[i].find('=');
                if (eq == std::string::npos) {
                    throw ScenarioError("line " + std::to_string(lineno) +
                                        ": action arguments must be key=value, got '" + tok[i] +
                                        "'");
                }
                action.args[tok[i].substr(0, eq)] = tok[i].substr(eq + 1);
            }
            spec.actions.push_back(std::move(action));
        } else { // expect
            spec.expectations.push_back(line);
        }
    }
    return spec;
}

ScenarioSpec LoadScenario(const std::string& name_or_path)
{
    for (const BuiltinScenario& b : BUILTINS) {
        if (name_or_path == b.name) return ParseScenarioText(b.text, b.name);
    }
    std::ifstream file(name_or_path);
    if (!file) {
        throw ScenarioError("no built-in scenario or readable file named '" + name_or_path + "'");
    }
    std::ostringstream text;
    text << file.rdbuf();
    return ParseScenarioText(text.str(), name_or_path);
}

SimConfig MakeConfig(const ScenarioSpec& spec, const ScenarioOverrides& overrides)
{
    SimConfig config;
    config.scenario_name = spec.name;
    config.seed = overrides.seed.value_or(spec.seed);
    config.policy = spec.policy;
    if (overrides.mode) config.policy.mode = *overrides.mode;
    if (overrides.fee_lock) config.policy.fee_lock_enforced = *overrides.fee_lock;
    config.coinbase_reward = spec.coinbase_reward;
    config.block_max_vbytes = spec.block_max_vbytes;
    return config;
}

Report RunScenarioWith(Simulation& sim, const ScenarioSpec& spec)
{
    for (const std::string& wallet : spec.wallets) sim.AddWallet(wallet);
    try {
        sim.Genesis(spec.genesis);
    } catch (const ScenarioError&) {
        throw;
    } catch (const std::exception& e) {
        throw ScenarioError(std::string("genesis: ") + e.what());
    }

    for (size_t i = 0; i < spec.actions.size(); ++i) {
        const ScenarioAction& action = spec.actions[i];
        try {
            RunAction(sim, action);
        } catch (const std::exception& e) {
            throw ScenarioError("action " + action.verb + " (step " + std::to_string(i + 1) +
                                "): " + e.what());
        }
    }

    Report report;
    report.doc = sim.BuildReportDoc();
    ordered_json checks = ordered_json::array();
    bool all_pass = true;
    for (const std::string& line : spec.expectations) {
        ordered_json check = CheckLine(sim, report.doc["events"], line);
        all_pass = all_pass && check["pass"].get<bool>();
        checks.push_back(std::move(check));
    }
    report.doc["expectations"] = std::move(checks);
    report.doc["expectations_pass"] = all_pass;
    report.expectations_pass = all_pass;
    return report;
}

Report RunScenario(const ScenarioSpec& spec, const ScenarioOverrides& overrides)
{
    Simulation sim(MakeConfig(spec, overrides));
    return RunScenarioWith(sim, spec);
}

} // namespace snipesim
