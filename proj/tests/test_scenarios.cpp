#include <doctest.h>

#include <cmath>

#include "plasma/error.hpp"
#include "plasma/scenarios.hpp"

using namespace plasma;

namespace {

// Expected serialized size of a compact proof for an occupied slot when `n`
// slots are drawn uniformly from 2^depth: the bitfield plus 32 bytes for every
// level whose sibling subtree holds at least one of the other n-1 leaves.
double expected_compact_bytes(std::size_t n, unsigned depth) {
  double siblings = 0;
  for (unsigned level = 0; level < depth; ++level) {
    const double share = std::ldexp(1.0, static_cast<int>(level) - static_cast<int>(depth));
    siblings += 1.0 - std::pow(1.0 - share, static_cast<double>(n - 1));
  }
  return (depth + 7) / 8 + 32.0 * siblings;
}

}  // namespace

TEST_SUITE("scenarios") {
  TEST_CASE("every scenario passes with and without watchers") {
    for (const auto& info : scenarios()) {
      for (std::uint64_t seed : {0u, 1u, 7u}) {
        for (bool watchers : {true, false}) {
          const ScenarioReport r = run_scenario(info.name, seed, {.params = {}, .watchers = watchers});
          INFO(info.name << " seed " << seed << " watchers " << watchers);
          for (const auto& f : r.failures) INFO(f);
          CHECK(r.passed);
          CHECK(r.attack_succeeded == (info.attack.has_value() && !watchers));
        }
      }
    }
  }

  TEST_CASE("traces and bond ledgers") {
    const std::vector<std::string> unopposed{"Deposit", "ExitStarted", "ExitFinalized", "Withdrawn"};
    CHECK(run_scenario("happy-path", 0).slot_trace == unopposed);

    struct Expect {
      const char* name;
      const char* challenge;
      std::map<std::string, Amount> ledger;
    };
    for (const Expect& e : std::vector<Expect>{
             {"exit-spent-coin", "ChallengedAfter", {{"alice", -100}, {"bob", 100}}},
             {"double-spend-exit", "ChallengedBetween", {{"charlie", -100}, {"bob", 100}}},
             {"invalid-history-exit", "ChallengedBefore", {{"dylan", -100}, {"alice", 100}}},
             {"griefing-withhold", "ChallengedAfter", {{"alice", -100}, {"operator", 100}}},
         }) {
      const ScenarioReport on = run_scenario(e.name, 3);
      CHECK(on.slot_trace == std::vector<std::string>{"Deposit", "ExitStarted", e.challenge, "ExitCancelled"});
      for (const auto& [who, delta] : on.bond_ledger) {
        const auto it = e.ledger.find(who);
        INFO(e.name << " " << who);
        CHECK(delta == (it == e.ledger.end() ? 0 : it->second));
      }
      CHECK(on.final_state == "DEPOSITED");
      CHECK(on.final_owner == on.true_owner);

      const ScenarioReport off = run_scenario(e.name, 3, {.params = {}, .watchers = false});
      CHECK(off.slot_trace == unopposed);
      CHECK(off.final_owner != off.true_owner);
    }
  }

  TEST_CASE("aliases, names and determinism") {
    const auto& all = scenarios();
    REQUIRE(all.size() == 5);
    for (std::size_t i = 0; i < all.size(); ++i) {
      const ScenarioReport a = run_scenario(all[i].name, 11);
      const ScenarioReport b = run_scenario("S" + std::to_string(i + 1), 11);
      CHECK(a.trace_digest == b.trace_digest);
      CHECK(a.event_trace == b.event_trace);
      CHECK(a.name == all[i].name);
    }
    CHECK(run_scenario("happy-path", 1).trace_digest != run_scenario("happy-path", 2).trace_digest);
    try {
      run_scenario("S6", 0);
      FAIL("expected UnknownScenario");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnknownScenario);
    }
  }

  TEST_CASE("parameters are honoured") {
    ScenarioOptions options;
    options.params.bond_amount = 37;
    options.params.maturity_period = 3;
    options.params.smt_depth = 12;
    const ScenarioReport r = run_scenario("exit-spent-coin", 0, options);
    CHECK(r.passed);
    CHECK(r.bond_ledger.at("bob") == 37);
    CHECK(run_scenario("invalid-history-exit", 0, options).passed);
  }

  TEST_CASE("report JSON") {
    const ScenarioReport r = run_scenario("griefing-withhold", 0);
    const Json j = r.to_json();
    CHECK(j.at("name") == "griefing-withhold");
    CHECK(j.at("passed") == true);
    CHECK(j.at("event_trace").size() == r.event_trace.size());
    CHECK(j.at("bond_ledger").at("operator") == 100);
    CHECK(j.at("trace_digest").get<std::string>().size() == 64);
  }

  TEST_CASE("shadow ledger follows valid spends only") {
    TestSignatureScheme scheme;
    const Signer alice = scheme.create_signer("alice"), bob = scheme.create_signer("bob");
    const SmtConfig config(16);
    ShadowLedger shadow;
    shadow.on_deposit(4, 1, alice.address);
    auto block = [&](BlockNumber n, Transaction tx) { return PlasmaBlock::make(n, {{tx.slot, tx}}, config); };

    shadow.on_block(block(1000, sign_transaction({4, 1, bob.address, {}}, bob, scheme)), scheme);
    CHECK(shadow.owner(4) == alice.address);
    shadow.on_block(block(2000, sign_transaction({4, 7, bob.address, {}}, alice, scheme)), scheme);
    CHECK(shadow.owner(4) == alice.address);
    shadow.on_block(block(3000, sign_transaction({4, 1, bob.address, {}}, alice, scheme)), scheme);
    CHECK(shadow.owner(4) == bob.address);
    CHECK(shadow.entries().at(4).last == 3000);
    shadow.on_block(block(4000, sign_transaction({4, 1, alice.address, {}}, alice, scheme)), scheme);
    CHECK(shadow.owner(4) == bob.address);
    CHECK_FALSE(shadow.owner(5).has_value());
  }

  TEST_CASE("short fuzz runs") {
    for (bool byzantine : {true, false}) {
      FuzzOptions options;
      options.steps = 1500;
      options.seed = 5;
      options.byzantine = byzantine;
      const ScenarioReport a = run_fuzz(options);
      for (const auto& f : a.failures) INFO(f);
      CHECK(a.passed);
      CHECK(a.elapsed_steps == 1500);
      CHECK(run_fuzz(options).trace_digest == a.trace_digest);
      options.seed = 6;
      CHECK(run_fuzz(options).trace_digest != a.trace_digest);
    }
  }

  TEST_CASE("proof sizes match the occupancy estimate") {
    for (auto [txs, depth] : std::vector<std::pair<std::size_t, unsigned>>{{2378, 64}, {300, 32}, {50, 16}}) {
      ProofBenchOptions options;
      options.txs = txs;
      options.depth = depth;
      options.trials = 2;
      options.samples_per_trial = 400;
      const ProofBenchResult r = run_proof_bench(options);
      INFO(txs << " at depth " << depth);
      CHECK(r.naive_exact);
      CHECK(r.naive_bytes == 32 * depth);
      CHECK(r.samples == 800);
      CHECK(r.mean_compact_bytes == doctest::Approx(expected_compact_bytes(txs, depth)).epsilon(0.03));
      CHECK(r.min_compact_bytes <= r.mean_compact_bytes);
      CHECK(r.mean_compact_bytes <= r.max_compact_bytes);
      CHECK(r.mean_compact_bytes == doctest::Approx((depth + 7) / 8 + 32 * r.mean_non_default_siblings));
      CHECK(r.mean_compact_absent_bytes == doctest::Approx(expected_compact_bytes(txs + 1, depth)).epsilon(0.03));
    }
  }
}
