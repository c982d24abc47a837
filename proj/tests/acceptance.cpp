// One line per acceptance criterion. Exit status is non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "oracles.hpp"
#include "plasma/scenarios.hpp"

using namespace plasma;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome compact_proof_size() {
  const auto start = Clock::now();
  const ProofBenchResult r = run_proof_bench({});
  const double t = seconds_since(start);
  const bool in_band = r.mean_compact_bytes >= 288 && r.mean_compact_bytes <= 352;
  std::ostringstream out;
  out << "naive " << r.naive_bytes << " B" << (r.naive_exact ? " (all exact)" : " (size mismatch)") << ", mean compact "
      << r.mean_compact_bytes << " B over " << r.samples << " proofs, band [288, 352], " << t << " s";
  return {r.naive_exact && r.naive_bytes == 2048 && r.samples >= 1000 && in_band && t < 10, out.str()};
}

Outcome smt_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  std::size_t maps = 0, proofs = 0, mismatches = 0;
  for (; maps < 1000; ++maps) {
    const unsigned depth = 1 + static_cast<unsigned>(maps % 8);
    const Slot span = Slot{1} << depth;
    std::map<Slot, Digest> leaves;
    const std::size_t count = rng() % (span + 1);
    while (leaves.size() < count) {
      Digest d;
      for (auto& b : d.bytes) b = static_cast<std::uint8_t>(rng());
      leaves.emplace(rng() % span, d);
    }
    const SmtConfig config(depth);
    const oracle::DenseTree dense(depth, leaves);
    const auto tree = SparseMerkleTree::build(config, leaves);
    if (tree.root() != dense.root()) ++mismatches;
    for (Slot s = 0; s < span; ++s, ++proofs) {
      if (tree.prove(s).siblings != dense.proof(s)) ++mismatches;
      if (expand(tree.prove_compact(s), config).siblings != dense.proof(s)) ++mismatches;
    }
  }
  const double t = seconds_since(start);
  std::ostringstream out;
  out << maps << " maps, depth 1-8, " << proofs << " slots checked, " << mismatches << " mismatches, " << t << " s";
  return {mismatches == 0 && t < 30, out.str()};
}

Outcome history_corpus() {
  std::size_t cases = 0, agree = 0, reasons_ok = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    corpus::Run run = corpus::honest_run(seed, true);
    for (const auto& c : run.cases) {
      const corpus::Judgement j = corpus::judge(*run.sim, c);
      ++cases;
      agree += j.agree();
      reasons_ok += corpus::matches(c, j);
    }
  }
  std::size_t byz = 0, byz_ok = 0;
  for (auto& run : corpus::byzantine_runs())
    for (const auto& c : run.cases) {
      ++byz;
      byz_ok += corpus::matches(c, corpus::judge(*run.sim, c));
    }
  std::ostringstream out;
  out << "500 honest runs, " << agree << "/" << cases << " cases agree (" << reasons_ok
      << " with the expected verdict), Byzantine variants " << byz_ok << "/" << byz;
  return {agree == cases && reasons_ok == cases && byz_ok == byz && byz > 0, out.str()};
}

Outcome proof_volume_scaling() {
  // One idle coin among busy neighbours; its history grows one exclusion per block.
  Simulation sim({}, {OperatorMode::Kind::IncludeForgedTx, {}});
  sim.add_wallet("alice", 1'000'000);
  const Slot slot = sim.deposit("alice", 10);
  std::vector<Slot> others;
  for (int i = 0; i < 63; ++i) others.push_back(sim.deposit("alice", 10));
  std::map<Slot, BlockNumber> last;
  for (Slot s : others) last[s] = sim.contract().coin(s).deposit_block;
  const Signer alice = sim.scheme().create_signer("alice");

  const std::vector<std::size_t> points{10, 100, 1000};
  std::vector<double> x, y;
  bool verified = true;
  for (std::size_t t = 1; t <= points.back(); ++t) {
    for (Slot s : others) sim.chain_operator().submit_tx(sign_transaction({s, last[s], alice.address, {}}, alice, sim.scheme()));
    const BlockNumber b = sim.produce_block();
    for (Slot s : others) last[s] = b;
    if (std::find(points.begin(), points.end(), t) == points.end()) continue;
    const CoinHistory h = sim.chain_history(slot);
    verified = verified && verify_history(h, sim.contract().coin_view(slot), sim.wallet("alice").address(),
                                          sim.scheme(), sim.smt_config())
                               .accepted();
    x.push_back(static_cast<double>(t));
    y.push_back(static_cast<double>(encode(h, sim.smt_config()).size()));
  }
  const double r2 = oracle::r_squared(x, y);
  std::ostringstream out;
  out << "bytes at t=10/100/1000: " << y[0] << "/" << y[1] << "/" << y[2] << ", R^2 " << r2;
  if (!verified) out << ", history failed to verify";
  return {verified && r2 > 0.99, out.str()};
}

Outcome scenario_suite() {
  const auto start = Clock::now();
  std::size_t ok = 0, total = 0;
  std::string failed;
  for (const auto& info : scenarios()) {
    for (bool watchers : {true, false}) {
      ScenarioOptions options;
      options.watchers = watchers;
      const ScenarioReport r = run_scenario(info.name, 0, options);
      const bool expect_attack = info.attack.has_value() && !watchers;
      const bool good = r.passed && r.attack_succeeded == expect_attack;
      ++total;
      ok += good;
      if (!good) failed += " " + info.name + (watchers ? "" : "(off)");
    }
  }
  const double t = seconds_since(start);
  std::ostringstream out;
  out << ok << "/" << total << " runs (S1-S5, watchers on and off), " << t << " s";
  if (!failed.empty()) out << ", failed:" << failed;
  return {ok == total && t < 5, out.str()};
}

Outcome fuzz_suite() {
  auto timed = [](const FuzzOptions& o, double& t) {
    const auto start = Clock::now();
    ScenarioReport r = run_fuzz(o);
    t = seconds_since(start);
    return r;
  };
  FuzzOptions byz;
  byz.steps = 10'000;
  byz.seed = 0;
  FuzzOptions honest = byz;
  honest.byzantine = false;

  double t1 = 0, t2 = 0, t3 = 0;
  const ScenarioReport a = timed(byz, t1);
  const ScenarioReport again = timed(byz, t2);
  const ScenarioReport h = timed(honest, t3);
  const std::size_t violations = a.failures.size() + h.failures.size() + again.failures.size();
  const bool deterministic = a.trace_digest == again.trace_digest;
  const double slowest = std::max({t1, t2, t3});
  std::ostringstream out;
  out << "10^4 steps Byzantine and honest-only, " << violations << " violations, rerun "
      << (deterministic ? "identical" : "DIFFERENT") << ", slowest run " << slowest << " s (" << t1 + t2 + t3
      << " s for all three)";
  return {a.passed && h.passed && again.passed && deterministic && slowest < 60, out.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"compact proof size", compact_proof_size},
      {"SMT oracle equivalence", smt_oracle},
      {"history verifier corpus", history_corpus},
      {"proof-volume scaling", proof_volume_scaling},
      {"scenarios S1-S5", scenario_suite},
      {"fuzz suite", fuzz_suite},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS  " : "FAIL  ") << name << ": " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
