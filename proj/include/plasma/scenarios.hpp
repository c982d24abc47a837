#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plasma/json.hpp"
#include "plasma/rootchain.hpp"
#include "plasma/signature.hpp"

namespace plasma {

/// True ownership replayed from what the operator actually included: a spend
/// counts only if it chains the latest valid inclusion and is signed by the
/// current true owner.
class ShadowLedger {
 public:
  struct Entry {
    Address owner;
    BlockNumber last = 0;
  };

  void on_deposit(Slot slot, BlockNumber block, const Address& owner);
  void on_block(const PlasmaBlock& block, const SignatureScheme& scheme, HashFunction hash = sha256);
  std::optional<Address> owner(Slot slot) const;
  const std::map<Slot, Entry>& entries() const { return entries_; }

 private:
  std::map<Slot, Entry> entries_;
};

struct ScenarioInfo {
  std::string name;
  std::string summary;
  std::optional<ChallengeKind> attack;  // challenge expected to stop it
};

/// Registered scenarios, in order: happy-path, exit-spent-coin,
/// double-spend-exit, invalid-history-exit, griefing-withhold. S1..S5 are
/// accepted as aliases.
const std::vector<ScenarioInfo>& scenarios();

struct ScenarioOptions {
  ContractParams params;
  bool watchers = true;  // wallet auto-challenge and the operator's watcher
};

struct ScenarioReport {
  std::string name;
  std::uint64_t seed = 0;
  bool watchers = true;
  bool passed = false;
  bool attack_succeeded = false;
  std::vector<std::string> failures;
  std::vector<std::string> event_trace;  // every event, one JSON object each
  std::vector<std::string> slot_trace;   // event names touching the scenario coin
  std::map<std::string, Amount> bond_ledger;
  std::optional<std::string> final_owner;
  std::optional<std::string> true_owner;
  std::string final_state;
  std::uint64_t elapsed_steps = 0;
  std::map<std::string, std::int64_t> stats;
  std::string trace_digest;  // sha256 of the JSON-lines event log

  Json to_json() const;
};

/// Runs a scenario on a fresh world. The seed only drives background traffic
/// from bystander wallets. Throws UnknownScenario.
ScenarioReport run_scenario(const std::string& name, std::uint64_t seed, const ScenarioOptions& options = {});

struct FuzzOptions {
  std::uint64_t steps = 10'000;
  std::uint64_t seed = 0;
  bool byzantine = true;  // colluding operator plus an attacker pair
  ContractParams params{.smt_depth = 16};
  unsigned honest_wallets = 4;
};

/// Random interleaving of deposits, transfers, exits, challenges and attacks,
/// checking conservation, state legality and honest-coin safety every step.
ScenarioReport run_fuzz(const FuzzOptions& options);

struct ProofBenchOptions {
  std::size_t txs = 2378;
  unsigned depth = 64;
  unsigned trials = 4;
  std::size_t samples_per_trial = 500;
  std::uint64_t seed = 1;
};

struct ProofBenchResult {
  std::size_t samples = 0;
  std::size_t naive_bytes = 0;
  bool naive_exact = true;  // every naive proof was exactly 32*depth bytes
  double mean_compact_bytes = 0;
  double mean_compact_absent_bytes = 0;  // same trees, unoccupied slots
  std::size_t min_compact_bytes = 0;
  std::size_t max_compact_bytes = 0;
  double mean_non_default_siblings = 0;

  Json to_json() const;
};

/// Builds trees over uniformly random occupied slots and measures serialized
/// proof sizes for sampled occupied and unoccupied slots.
ProofBenchResult run_proof_bench(const ProofBenchOptions& options);

}  // namespace plasma
