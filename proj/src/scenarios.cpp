#include "plasma/scenarios.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "plasma/error.hpp"
#include "plasma/simulation.hpp"

namespace plasma {

void ShadowLedger::on_deposit(Slot slot, BlockNumber block, const Address& owner) {
  entries_.insert_or_assign(slot, Entry{owner, block});
}

void ShadowLedger::on_block(const PlasmaBlock& block, const SignatureScheme& scheme, HashFunction hash) {
  for (const auto& [slot, tx] : block.txs) {
    auto it = entries_.find(slot);
    if (it == entries_.end() || tx.parent_block != it->second.last) continue;
    if (recover_signer(tx, scheme, hash) != it->second.owner) continue;
    it->second = Entry{tx.new_owner, block.number};
  }
}

std::optional<Address> ShadowLedger::owner(Slot slot) const {
  auto it = entries_.find(slot);
  if (it == entries_.end()) return std::nullopt;
  return it->second.owner;
}

Json ScenarioReport::to_json() const {
  Json j;
  j["name"] = name;
  j["seed"] = seed;
  j["watchers"] = watchers;
  j["passed"] = passed;
  j["attack_succeeded"] = attack_succeeded;
  j["failures"] = failures;
  j["slot_trace"] = slot_trace;
  j["bond_ledger"] = bond_ledger;
  j["final_owner"] = final_owner ? Json(*final_owner) : Json(nullptr);
  j["true_owner"] = true_owner ? Json(*true_owner) : Json(nullptr);
  j["final_state"] = final_state;
  j["elapsed_steps"] = elapsed_steps;
  j["stats"] = stats;
  j["trace_digest"] = trace_digest;
  Json events = Json::array();
  for (const auto& line : event_trace) events.push_back(Json::parse(line));
  j["event_trace"] = std::move(events);
  return j;
}

Json ProofBenchResult::to_json() const {
  return Json{{"samples", samples},
              {"naive_bytes", naive_bytes},
              {"naive_exact", naive_exact},
              {"mean_compact_bytes", mean_compact_bytes},
              {"mean_compact_absent_bytes", mean_compact_absent_bytes},
              {"min_compact_bytes", min_compact_bytes},
              {"max_compact_bytes", max_compact_bytes},
              {"mean_non_default_siblings", mean_non_default_siblings}};
}

namespace {

constexpr Amount kFunds = 1'000'000;
constexpr Amount kDenomination = 50;

void fill_trace(ScenarioReport& report, const PlasmaContract& contract) {
  const std::string lines = to_json_lines(contract.events(), contract.smt_config());
  std::istringstream in(lines);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) report.event_trace.push_back(line);
  const auto* data = reinterpret_cast<const std::uint8_t*>(lines.data());
  report.trace_digest = sha256(ByteView(data, lines.size())).hex();
}

std::optional<Slot> slot_of(const EventBody& body) {
  return std::visit(
      [](const auto& e) -> std::optional<Slot> {
        if constexpr (requires { e.slot; })
          return e.slot;
        else
          return std::nullopt;
      },
      body);
}

/// Balance change per address that is not explained by depositing or
/// withdrawing coins: what bonds won or lost.
Amount bond_delta(const Simulation& sim, const Address& address) {
  Amount delta = sim.contract().balance(address) - sim.funded(address);
  for (const Event& e : sim.contract().events()) {
    if (const auto* d = std::get_if<DepositEvent>(&e.body); d && d->depositor == address) delta += d->denomination;
    if (const auto* w = std::get_if<WithdrawnEvent>(&e.body); w && w->owner == address) delta -= w->amount;
  }
  return delta;
}

/// One scripted run: a fresh world, a shadow ledger and bystander traffic.
class Script {
 public:
  Script(const std::string& name, std::uint64_t seed, const ScenarioOptions& options)
      : sim(options.params), rng(seed), watchers(options.watchers) {
    report.name = name;
    report.seed = seed;
    report.watchers = options.watchers;
    for (const char* actor : {"alice", "bob", "charlie", "dylan", "erin", "frank"})
      sim.add_wallet(actor, kFunds, WalletPolicy{options.watchers});
  }

  void expect(bool ok, const std::string& what) {
    if (!ok) report.failures.push_back(what);
  }

  template <typename F>
  void expect_error(ErrorCode code, const std::string& what, F&& call) {
    try {
      call();
      report.failures.push_back(what + ": no error");
    } catch (const Error& e) {
      if (e.code() != code) report.failures.push_back(what + ": got " + std::string(e.what()));
    }
  }

  Slot deposit(const std::string& who) {
    ++report.elapsed_steps;
    const Slot slot = sim.deposit(who, kDenomination);
    shadow.on_deposit(slot, sim.contract().coin(slot).deposit_block, sim.wallet(who).address());
    return slot;
  }

  /// Seed-driven bystander coins; call after the scenario coin exists.
  void background_deposits() {
    const unsigned count = 1 + static_cast<unsigned>(rng() % 3);
    for (unsigned i = 0; i < count; ++i) background_.push_back(deposit(rng() % 2 ? "erin" : "frank"));
  }

  void transfer(const std::string& from, const std::string& to, Slot slot) {
    ++report.elapsed_steps;
    SubmitResult r = sim.transfer(from, to, slot);
    expect(r.accepted, from + "->" + to + " submission refused: " + r.reason);
  }

  void submit(const Transaction& tx, const std::string& what) {
    ++report.elapsed_steps;
    SubmitResult r = sim.chain_operator().submit_tx(tx);
    expect(r.accepted, what + " refused: " + r.reason);
  }

  BlockNumber block() {
    ++report.elapsed_steps;
    std::vector<std::pair<Slot, std::string>> moving;
    for (Slot s : background_) {
      if (rng() % 2) continue;
      const std::string from = sim.wallet("erin").owns(s) ? "erin" : "frank";
      const std::string to = from == "erin" ? "frank" : "erin";
      if (sim.transfer(from, to, s).accepted) moving.emplace_back(s, from);
    }
    const BlockNumber b = sim.produce_block();
    shadow.on_block(sim.chain_operator().block(b), sim.scheme());
    for (const auto& [s, from] : moving) {
      Wallet::Receipt r = sim.deliver(from, from == "erin" ? "frank" : "erin", s);
      expect(r.accepted, "bystander delivery rejected: " + r.detail);
    }
    return b;
  }

  Wallet::Receipt deliver(const std::string& from, const std::string& to, Slot slot) {
    ++report.elapsed_steps;
    return sim.deliver(from, to, slot);
  }

  void watch(bool operator_watches = false) {
    ++report.elapsed_steps;
    auto acts = sim.run_watchers();
    actions.insert(actions.end(), acts.begin(), acts.end());
    if (operator_watches && watchers) sim.chain_operator().challenge_spent_exits(sim.contract());
  }

  /// Walks the clock to one unit before maturity, checks finalization is
  /// refused there, then steps onto the boundary.
  void mature(Slot slot) {
    ++report.elapsed_steps;
    const Exit* exit = sim.contract().exit(slot);
    if (!exit) return;
    const Time due = exit->created_at + sim.contract().params().maturity_period;
    if (sim.contract().now() + 1 < due) sim.advance_time(due - 1 - sim.contract().now());
    if (sim.contract().now() < due)
      expect_error(ErrorCode::NotMature, "finalize one unit early", [&] { sim.contract().finalize_exit(slot); });
    sim.advance_time(due - sim.contract().now());
  }

  std::optional<FinalizeOutcome> finalize(Slot slot) {
    ++report.elapsed_steps;
    if (!sim.contract().exit(slot)) return std::nullopt;
    return sim.contract().finalize_exit(slot);
  }

  void withdraw(const std::string& who, Slot slot) {
    ++report.elapsed_steps;
    Wallet& w = sim.wallet(who);
    const Amount before = sim.contract().balance(w.address());
    const Amount paid = sim.contract().withdraw(w.address(), slot);
    expect(sim.contract().balance(w.address()) - before == kDenomination && paid == kDenomination,
           who + " not credited exactly the denomination");
    w.forget(slot);
  }

  Signer signer(const std::string& who) { return sim.scheme().create_signer(who); }

  Transaction sign(const std::string& who, Slot slot, BlockNumber parent, const std::string& to) {
    return sign_transaction({slot, parent, sim.wallet(to).address(), {}}, signer(who), sim.scheme());
  }

  void expect_trace(Slot slot, const std::vector<std::string>& expected) {
    std::vector<std::string> actual;
    for (const Event& e : sim.contract().events())
      if (slot_of(e.body) == slot) actual.emplace_back(event_name(e.body));
    expect(actual == expected, "slot event trace mismatch");
  }

  void expect_ledger(const std::map<std::string, Amount>& expected) {
    for (const auto& name : sim.wallet_names()) {
      auto it = expected.find(name);
      const Amount want = it == expected.end() ? 0 : it->second;
      expect(report.bond_ledger.at(name) == want,
             "bond ledger " + name + ": " + std::to_string(report.bond_ledger.at(name)) + " != " +
                 std::to_string(want));
    }
    auto op = expected.find("operator");
    expect(report.bond_ledger.at("operator") == (op == expected.end() ? 0 : op->second), "bond ledger operator");
  }

  void expect_challenges(Slot slot, const std::vector<ChallengeKind>& kinds) {
    std::vector<ChallengeKind> actual;
    for (const Event& e : sim.contract().events())
      if (const auto* c = std::get_if<ChallengedEvent>(&e.body); c && c->slot == slot) actual.push_back(c->kind);
    expect(actual == kinds, "challenge selection does not match the attack");
  }

  /// Fills the outcome fields; the attack succeeded when the coin left the
  /// chain to someone other than its true owner.
  void conclude(Slot slot) {
    const CoinRecord& coin = sim.contract().coin(slot);
    report.final_state = std::string(to_string(coin.state));
    const auto truth = shadow.owner(slot);
    if (truth) report.true_owner = sim.name_of(*truth);
    if (coin.state == CoinState::Exited || coin.state == CoinState::Withdrawn) {
      report.final_owner = sim.name_of(coin.owner);
      report.attack_succeeded = truth && coin.owner != *truth;
    } else {
      for (const auto& name : sim.wallet_names())
        if (sim.wallet(name).owns(slot)) report.final_owner = name;
    }
    for (const auto& name : sim.wallet_names()) report.bond_ledger[name] = bond_delta(sim, sim.wallet(name).address());
    report.bond_ledger["operator"] = bond_delta(sim, sim.chain_operator().address());
    report.slot_trace.clear();
    std::erase_if(report.stats, [](const auto& kv) { return kv.first.starts_with("challenged_"); });
    for (const Event& e : sim.contract().events())
      if (slot_of(e.body) == slot) report.slot_trace.emplace_back(event_name(e.body));
    for (const Event& e : sim.contract().events()) {
      if (const auto* c = std::get_if<ChallengedEvent>(&e.body))
        ++report.stats[std::string("challenged_") + std::string(to_string(c->kind))];
    }
    report.stats["blocks"] = static_cast<std::int64_t>(sim.chain_operator().block_numbers().size());
    fill_trace(report, sim.contract());
  }

  /// Shared tail of S2..S5 with the watcher off: nobody disputes the exit,
  /// it matures and the exitor walks away with the coin.
  void unopposed_exit(Slot slot, const std::string& exitor) {
    mature(slot);
    auto outcome = finalize(slot);
    expect(outcome == FinalizeOutcome::Finalized, "unopposed exit did not finalize");
    if (outcome == FinalizeOutcome::Finalized) withdraw(exitor, slot);
    expect_trace(slot, {"Deposit", "ExitStarted", "ExitFinalized", "Withdrawn"});
  }

  void finish(Slot slot, bool attack_expected) {
    conclude(slot);
    if (!watchers && attack_expected) expect(report.attack_succeeded, "attack did not succeed without watchers");
    if (watchers) expect(!report.attack_succeeded, "attack succeeded");
    report.passed = report.failures.empty();
  }

  Simulation sim;
  ShadowLedger shadow;
  std::mt19937_64 rng;
  bool watchers;
  ScenarioReport report;
  std::vector<Wallet::Action> actions;

 private:
  std::vector<Slot> background_;
};

void happy_path(Script& s) {
  const Slot slot = s.deposit("alice");
  s.background_deposits();
  s.transfer("alice", "bob", slot);
  s.block();
  s.expect(s.deliver("alice", "bob", slot).accepted, "bob rejected an honest history");
  s.block();
  s.transfer("bob", "charlie", slot);
  s.block();
  s.expect(s.deliver("bob", "charlie", slot).accepted, "charlie rejected an honest history");

  const CoinHistory& h = s.sim.wallet("charlie").history(slot);
  s.expect(h.included.size() == 3 && h.included.contains(1) && h.included.contains(1000) &&
               h.included.contains(3000) && h.excluded.size() == 1 && h.excluded.contains(2000),
           "charlie's history does not have the deposit, two spends and one exclusion");

  s.sim.wallet("charlie").start_exit(s.sim.contract(), slot);
  s.watch();
  s.expect(s.actions.empty(), "a watcher challenged an honest exit");
  s.mature(slot);
  s.expect(s.finalize(slot) == FinalizeOutcome::Finalized, "honest exit did not finalize");
  s.withdraw("charlie", slot);
  s.expect_trace(slot, {"Deposit", "ExitStarted", "ExitFinalized", "Withdrawn"});
  s.conclude(slot);
  s.expect(s.report.final_owner == "charlie" && s.report.true_owner == "charlie", "charlie does not hold the coin");
  s.expect(s.report.final_state == "WITHDRAWN", "coin not withdrawn");
  s.expect_ledger({});
  s.report.passed = s.report.failures.empty();
}

void exit_spent_coin(Script& s) {
  const Slot slot = s.deposit("alice");
  s.background_deposits();
  s.transfer("alice", "bob", slot);
  s.block();
  const CoinHistory stale = s.sim.wallet("alice").history(slot);
  s.expect(s.deliver("alice", "bob", slot).accepted, "bob rejected an honest history");
  s.block();

  // Alice still has her deposit proof and tries to leave with it.
  const PlasmaContract& c = s.sim.contract();
  s.sim.contract().start_exit(s.sim.wallet("alice").address(), slot, std::nullopt, stale.included.at(1),
                              c.params().bond_amount);
  s.watch();
  if (s.watchers) {
    s.expect_challenges(slot, {ChallengeKind::After});
    s.expect(!c.exit(slot), "exit survived the challenge");
    s.expect_trace(slot, {"Deposit", "ExitStarted", "ChallengedAfter", "ExitCancelled"});
    s.conclude(slot);
    s.expect(s.report.final_owner == "bob" && s.report.true_owner == "bob", "bob lost the coin");
    s.expect(s.report.final_state == "DEPOSITED", "coin left the deposited state");
    s.expect_ledger({{"alice", -c.params().bond_amount}, {"bob", c.params().bond_amount}});
  } else {
    s.unopposed_exit(slot, "alice");
  }
  s.finish(slot, true);
}

void double_spend_exit(Script& s) {
  const Slot slot = s.deposit("alice");
  s.sim.chain_operator().set_mode({OperatorMode::Kind::IncludeDoubleSpend, {slot}});
  s.background_deposits();
  s.transfer("alice", "bob", slot);
  s.block();
  s.expect(s.deliver("alice", "bob", slot).accepted, "bob rejected an honest history");

  // Alice signs the same coin over again; the operator includes it.
  s.submit(s.sign("alice", slot, 1, "charlie"), "double spend");
  const BlockNumber spent = s.block();

  const CoinHistory chain = s.sim.chain_history(slot);
  Wallet::Receipt r = s.sim.wallet("charlie").receive_coin(chain, s.sim.contract().coin_view(slot),
                                                           s.sim.contract().coin(slot).owner);
  s.expect(!r.accepted && r.reason == RejectReason::BrokenParentLink,
           "an honest charlie would not have caught the double spend");

  s.sim.contract().start_exit(s.sim.wallet("charlie").address(), slot, chain.included.at(1),
                              chain.included.at(spent), s.sim.contract().params().bond_amount);
  s.watch();
  if (s.watchers) {
    s.expect_challenges(slot, {ChallengeKind::Between});
    s.expect_trace(slot, {"Deposit", "ExitStarted", "ChallengedBetween", "ExitCancelled"});
    s.conclude(slot);
    s.expect(s.report.final_owner == "bob" && s.report.true_owner == "bob", "bob lost the coin");
    s.expect(s.report.final_state == "DEPOSITED", "coin left the deposited state");
    const Amount bond = s.sim.contract().params().bond_amount;
    s.expect_ledger({{"charlie", -bond}, {"bob", bond}});
  } else {
    s.unopposed_exit(slot, "charlie");
  }
  s.finish(slot, true);
}

void invalid_history_exit(Script& s) {
  const Slot slot = s.deposit("alice");
  s.sim.chain_operator().set_mode({OperatorMode::Kind::IncludeForgedTx, {slot}});
  s.background_deposits();
  s.block();

  // Bob signs Alice's coin over to himself; then it moves on to Dylan.
  const Transaction forged = s.sign("bob", slot, 1, "bob");
  s.submit(forged, "forged spend");
  const BlockNumber forged_at = s.block();
  s.submit(s.sign("bob", slot, forged_at, "charlie"), "bob->charlie");
  const BlockNumber parent_at = s.block();
  s.submit(s.sign("charlie", slot, parent_at, "dylan"), "charlie->dylan");
  const BlockNumber exit_at = s.block();

  const CoinHistory chain = s.sim.chain_history(slot);
  const Verdict v = verify_history(chain, s.sim.contract().coin_view(slot), s.sim.contract().coin(slot).owner,
                                   s.sim.scheme(), s.sim.smt_config());
  s.expect(v.reason == RejectReason::BadSignature && v.block == forged_at,
           "the forged history is not rejected at the forged spend");

  const Amount bond = s.sim.contract().params().bond_amount;
  s.sim.contract().start_exit(s.sim.wallet("dylan").address(), slot, chain.included.at(parent_at),
                              chain.included.at(exit_at), bond);
  s.watch();
  if (s.watchers) {
    s.expect_challenges(slot, {ChallengeKind::Before});
    // The only spend of Alice's deposit on chain is the forgery.
    s.expect_error(ErrorCode::BadSignature, "response with the forged spend", [&] {
      s.sim.contract().respond_challenge_before(s.sim.wallet("dylan").address(), slot, 0,
                                                chain.included.at(forged_at));
    });
    s.mature(slot);
    s.expect(s.finalize(slot) == FinalizeOutcome::CancelledByChallenge, "exit was not cancelled at maturity");
    s.expect_trace(slot, {"Deposit", "ExitStarted", "ChallengedBefore", "ExitCancelled"});
    s.conclude(slot);
    s.expect(s.report.final_owner == "alice" && s.report.true_owner == "alice", "alice lost the coin");
    s.expect(s.report.final_state == "DEPOSITED", "coin left the deposited state");
    s.expect_ledger({{"dylan", -bond}, {"alice", bond}});
  } else {
    s.unopposed_exit(slot, "dylan");
  }
  s.finish(slot, true);
}

void griefing_withhold(Script& s) {
  const Slot slot = s.deposit("alice");
  s.sim.chain_operator().set_mode({OperatorMode::Kind::WithholdWitness, {}});
  s.background_deposits();
  s.transfer("alice", "bob", slot);
  const BlockNumber paid_at = s.sim.chain_operator().next_block_number();
  s.sim.chain_operator().withhold(slot, paid_at);
  s.block();
  s.expect_error(ErrorCode::WitnessUnavailable, "delivery of a withheld payment",
                 [&] { s.deliver("alice", "bob", slot); });
  s.expect(s.sim.wallet("alice").owns(slot), "alice gave up the coin without a witness");

  // Unable to tell whether her payment landed, Alice exits.
  s.sim.wallet("alice").start_exit(s.sim.contract(), slot);
  s.watch(true);
  const Amount bond = s.sim.contract().params().bond_amount;
  if (s.watchers) {
    s.expect_challenges(slot, {ChallengeKind::After});
    const Transaction paid = s.sim.chain_operator().block(paid_at).txs.at(slot);
    bool revealed = false;
    for (const Event& e : s.sim.contract().events()) {
      const auto* c = std::get_if<ChallengedEvent>(&e.body);
      if (c && c->slot == slot && c->tx.tx == paid && c->tx.block == paid_at)
        revealed = verify_included(c->tx, slot, *s.sim.contract().root(paid_at), s.sim.smt_config());
    }
    s.expect(revealed, "challenge event does not carry a verifiable witness of the payment");
    s.expect_trace(slot, {"Deposit", "ExitStarted", "ChallengedAfter", "ExitCancelled"});

    s.sim.chain_operator().release(slot, paid_at);
    s.expect(s.deliver("alice", "bob", slot).accepted, "bob rejected the payment once revealed");
    s.conclude(slot);
    s.expect(s.report.final_owner == "bob" && s.report.true_owner == "bob", "bob does not hold the coin");
    s.expect(s.report.final_state == "DEPOSITED", "coin left the deposited state");
    s.expect_ledger({{"alice", -bond}, {"operator", bond}});
  } else {
    s.unopposed_exit(slot, "alice");
  }
  s.finish(slot, true);
}

struct Registered {
  ScenarioInfo info;
  std::string alias;
  std::function<void(Script&)> script;
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> all = {
      {{"happy-path", "deposit, two transfers, exit, finalize, withdraw", std::nullopt}, "S1", happy_path},
      {{"exit-spent-coin", "depositor exits a coin already paid to bob", ChallengeKind::After}, "S2",
       exit_spent_coin},
      {{"double-spend-exit", "operator includes a second spend of alice's coin to charlie",
        ChallengeKind::Between},
       "S3", double_spend_exit},
      {{"invalid-history-exit", "dylan exits a coin whose history contains a forged spend",
        ChallengeKind::Before},
       "S4", invalid_history_exit},
      {{"griefing-withhold", "operator withholds a witness and takes alice's exit bond", ChallengeKind::After},
       "S5", griefing_withhold},
  };
  return all;
}

}  // namespace

const std::vector<ScenarioInfo>& scenarios() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> out;
    for (const auto& r : registry()) out.push_back(r.info);
    return out;
  }();
  return infos;
}

ScenarioReport run_scenario(const std::string& name, std::uint64_t seed, const ScenarioOptions& options) {
  auto it = std::find_if(registry().begin(), registry().end(),
                         [&](const Registered& r) { return r.info.name == name || r.alias == name; });
  if (it == registry().end()) throw Error(ErrorCode::UnknownScenario, name);
  Script script(it->info.name, seed, options);
  try {
    it->script(script);
  } catch (const std::exception& e) {
    script.report.failures.push_back(std::string("aborted: ") + e.what());
    script.report.passed = false;
  }
  return std::move(script.report);
}

ProofBenchResult run_proof_bench(const ProofBenchOptions& options) {
  const SmtConfig config(options.depth);
  std::mt19937_64 rng(options.seed);
  const std::uint64_t span = options.depth == 64 ? 0 : (std::uint64_t{1} << options.depth);
  auto random_slot = [&] { return span ? rng() % span : rng(); };
  auto random_digest = [&] {
    Digest d;
    for (auto& byte : d.bytes) byte = static_cast<std::uint8_t>(rng());
    return d;
  };

  ProofBenchResult result;
  result.naive_bytes = 32 * static_cast<std::size_t>(options.depth);
  result.min_compact_bytes = SIZE_MAX;
  double compact_total = 0, absent_total = 0, siblings_total = 0;
  std::size_t absent_samples = 0;

  for (unsigned trial = 0; trial < options.trials; ++trial) {
    SparseMerkleTree::LeafMap leaves;
    while (leaves.size() < options.txs) leaves.emplace(random_slot(), random_digest());
    const SparseMerkleTree tree = SparseMerkleTree::build(config, leaves);
    std::vector<Slot> occupied;
    occupied.reserve(leaves.size());
    for (const auto& [slot, leaf] : leaves) occupied.push_back(slot);

    for (std::size_t i = 0; i < options.samples_per_trial; ++i) {
      const Slot slot = occupied[rng() % occupied.size()];
      const Proof naive = tree.prove(slot);
      if (serialized_size(naive) != result.naive_bytes) result.naive_exact = false;
      const CompactProof compact = tree.prove_compact(slot);
      const std::size_t bytes = serialize(compact, config).size();
      compact_total += static_cast<double>(bytes);
      siblings_total += static_cast<double>(compact.siblings.size());
      result.min_compact_bytes = std::min(result.min_compact_bytes, bytes);
      result.max_compact_bytes = std::max(result.max_compact_bytes, bytes);
      ++result.samples;

      Slot absent = random_slot();
      while (leaves.contains(absent)) absent = random_slot();
      absent_total += static_cast<double>(serialize(tree.prove_compact(absent), config).size());
      ++absent_samples;
    }
  }
  if (result.samples) {
    result.mean_compact_bytes = compact_total / static_cast<double>(result.samples);
    result.mean_non_default_siblings = siblings_total / static_cast<double>(result.samples);
    result.mean_compact_absent_bytes = absent_total / static_cast<double>(absent_samples);
  } else {
    result.min_compact_bytes = 0;
  }
  return result;
}

}  // namespace plasma
