// plasma-cash: scenario runner, fuzzer and proof-size benchmark.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "plasma/error.hpp"
#include "plasma/scenarios.hpp"

namespace {

using plasma::Json;

struct Overrides {
  std::string config;
  plasma::Time maturity = 0;
  plasma::Amount bond = 0;
  unsigned smt_depth = 0;
  std::string json_path;
  CLI::Option* maturity_opt = nullptr;
  CLI::Option* bond_opt = nullptr;
  CLI::Option* depth_opt = nullptr;
};

void add_param_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON file with maturity, bond, smt_depth, child_block_interval")
      ->check(CLI::ExistingFile);
  o.maturity_opt = cmd->add_option("--maturity", o.maturity, "exit maturity period");
  o.bond_opt = cmd->add_option("--bond", o.bond, "bond amount")->check(CLI::PositiveNumber);
  o.depth_opt = cmd->add_option("--smt-depth", o.smt_depth, "sparse Merkle tree depth")->check(CLI::Range(1, 64));
  cmd->add_option("--json", o.json_path, "write the JSON report here ('-' for stdout)");
}

Json read_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  return Json::parse(in);
}

plasma::ContractParams resolve(const Overrides& o, plasma::ContractParams params, const Json& config) {
  params.maturity_period = config.value("maturity", params.maturity_period);
  params.bond_amount = config.value("bond", params.bond_amount);
  params.smt_depth = config.value("smt_depth", params.smt_depth);
  params.child_block_interval = config.value("child_block_interval", params.child_block_interval);
  if (o.maturity_opt->count()) params.maturity_period = o.maturity;
  if (o.bond_opt->count()) params.bond_amount = o.bond;
  if (o.depth_opt->count()) params.smt_depth = o.smt_depth;
  return params;
}

void emit(const std::string& path, const Json& report) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  out << report.dump(2) << "\n";
}

void print_report(std::ostream& out, const plasma::ScenarioReport& r) {
  out << (r.passed ? "PASS " : "FAIL ") << r.name << " seed=" << r.seed
            << " watchers=" << (r.watchers ? "on" : "off") << " attack_succeeded=" << r.attack_succeeded
            << " steps=" << r.elapsed_steps << "\n";
  for (const auto& f : r.failures) out << "  " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plasma Cash simulator"};
  app.require_subcommand(1);

  Overrides run_o;
  std::string scenario;
  std::uint64_t run_seed = 0;
  bool no_watchers = false;
  auto* run = app.add_subcommand("run", "run a scripted scenario (or 'all')");
  run->add_option("--scenario", scenario, "scenario name or S1..S5")->required();
  run->add_option("--seed", run_seed, "seed for background traffic");
  run->add_flag("--no-watchers", no_watchers, "disable wallet and operator watchers");
  add_param_options(run, run_o);

  Overrides fuzz_o;
  plasma::FuzzOptions fuzz_opts;
  bool honest_only = false;
  auto* fuzz = app.add_subcommand("fuzz", "random interleavings with invariant checks");
  fuzz->add_option("--steps", fuzz_opts.steps)->check(CLI::PositiveNumber);
  fuzz->add_option("--seed", fuzz_opts.seed);
  fuzz->add_option("--wallets", fuzz_opts.honest_wallets, "honest wallets")->check(CLI::Range(2, 64));
  fuzz->add_flag("--honest-only", honest_only, "no attacker, honest operator");
  add_param_options(fuzz, fuzz_o);

  plasma::ProofBenchOptions bench_opts;
  std::string bench_json;
  double band_min = 288, band_max = 352;
  auto* bench = app.add_subcommand("bench-proofs", "mean compact proof size over random trees");
  bench->add_option("--txs", bench_opts.txs)->check(CLI::PositiveNumber);
  bench->add_option("--depth", bench_opts.depth)->check(CLI::Range(1, 64));
  bench->add_option("--trials", bench_opts.trials)->check(CLI::PositiveNumber);
  bench->add_option("--samples", bench_opts.samples_per_trial, "sampled proofs per trial");
  bench->add_option("--seed", bench_opts.seed);
  bench->add_option("--min-bytes", band_min, "lower bound on the mean compact size");
  bench->add_option("--max-bytes", band_max, "upper bound on the mean compact size");
  bench->add_option("--json", bench_json);

  auto* list = app.add_subcommand("list", "list scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& s : plasma::scenarios()) std::cout << s.name << "  " << s.summary << "\n";
      return 0;
    }

    if (*run) {
      const Json config = read_config(run_o.config);
      plasma::ScenarioOptions options;
      options.params = resolve(run_o, {}, config);
      options.watchers = !no_watchers;
      if (!run->count("--seed")) run_seed = config.value("seed", run_seed);
      std::vector<std::string> names;
      if (scenario == "all")
        for (const auto& s : plasma::scenarios()) names.push_back(s.name);
      else
        names.push_back(scenario);
      bool ok = true;
      Json reports = Json::array();
      for (const auto& name : names) {
        auto report = plasma::run_scenario(name, run_seed, options);
        print_report(run_o.json_path == "-" ? std::cerr : std::cout, report);
        ok = ok && report.passed;
        reports.push_back(report.to_json());
      }
      emit(run_o.json_path, names.size() == 1 ? reports[0] : reports);
      return ok ? 0 : 1;
    }

    if (*fuzz) {
      const Json config = read_config(fuzz_o.config);
      fuzz_opts.params = resolve(fuzz_o, fuzz_opts.params, config);
      fuzz_opts.byzantine = !honest_only;
      if (!fuzz->count("--steps")) fuzz_opts.steps = config.value("steps", fuzz_opts.steps);
      if (!fuzz->count("--seed")) fuzz_opts.seed = config.value("seed", fuzz_opts.seed);
      const auto start = std::chrono::steady_clock::now();
      auto report = plasma::run_fuzz(fuzz_opts);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::ostream& out = fuzz_o.json_path == "-" ? std::cerr : std::cout;
      print_report(out, report);
      for (const auto& [key, value] : report.stats) out << "  " << key << " = " << value << "\n";
      out << "  trace " << report.trace_digest << " (" << seconds << " s)\n";
      emit(fuzz_o.json_path, report.to_json());
      return report.passed ? 0 : 1;
    }

    if (*bench) {
      auto result = plasma::run_proof_bench(bench_opts);
      const bool ok =
          result.naive_exact && result.mean_compact_bytes >= band_min && result.mean_compact_bytes <= band_max;
      std::ostream& out = bench_json == "-" ? std::cerr : std::cout;
      out << (ok ? "PASS" : "FAIL") << " mean compact proof " << result.mean_compact_bytes << " bytes over "
                << result.samples << " proofs (band [" << band_min << ", " << band_max << "]), naive "
                << result.naive_bytes << " bytes" << (result.naive_exact ? "" : " (size mismatch)") << "\n"
                << "  unoccupied slots " << result.mean_compact_absent_bytes << " bytes, non-default siblings "
                << result.mean_non_default_siblings << "\n";
      emit(bench_json, result.to_json());
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
