#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "plasma/error.hpp"
#include "plasma/json.hpp"
#include "plasma/scenarios.hpp"
#include "plasma/simulation.hpp"

namespace py = pybind11;
using namespace plasma;

namespace {

Digest to_digest(const py::bytes& b) {
  const std::string s = b;
  if (s.size() != Digest::kSize) throw py::value_error("expected 32 bytes");
  Digest d;
  std::copy(s.begin(), s.end(), d.bytes.begin());
  return d;
}

py::bytes to_bytes(ByteView v) { return py::bytes(reinterpret_cast<const char*>(v.data()), v.size()); }
py::bytes to_bytes(const Digest& d) { return to_bytes(ByteView(d.bytes)); }

Bytes from_bytes(const py::bytes& b) {
  const std::string s = b;
  return Bytes(s.begin(), s.end());
}

ContractParams params_from(std::optional<Time> maturity, std::optional<Amount> bond, std::optional<unsigned> depth,
                           ContractParams base = {}) {
  if (maturity) base.maturity_period = *maturity;
  if (bond) base.bond_amount = *bond;
  if (depth) base.smt_depth = *depth;
  return base;
}

OperatorMode::Kind mode_from(const std::string& name) {
  if (name == "honest") return OperatorMode::Kind::Honest;
  if (name == "forge") return OperatorMode::Kind::IncludeForgedTx;
  if (name == "double-spend") return OperatorMode::Kind::IncludeDoubleSpend;
  if (name == "withhold") return OperatorMode::Kind::WithholdWitness;
  throw py::value_error("unknown operator mode: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Plasma Cash simulator core";

  static py::handle error_type = py::exception<Error>(m, "PlasmaError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.def("sha256", [](const py::bytes& data) { return to_bytes(sha256(from_bytes(data))); });

  py::class_<SmtConfig>(m, "SmtConfig")
      .def(py::init<unsigned>(), py::arg("depth"))
      .def_property_readonly("depth", &SmtConfig::depth)
      .def_property_readonly("default_leaf", [](const SmtConfig& c) { return to_bytes(c.default_leaf()); })
      .def_property_readonly("empty_root", [](const SmtConfig& c) { return to_bytes(c.empty_root()); })
      .def("default_at", [](const SmtConfig& c, unsigned level) { return to_bytes(c.default_at(level)); });

  py::class_<SparseMerkleTree>(m, "SparseMerkleTree")
      .def(py::init([](const SmtConfig& config, const std::map<Slot, py::bytes>& leaves) {
             SparseMerkleTree::LeafMap map;
             for (const auto& [slot, leaf] : leaves) map.emplace(slot, to_digest(leaf));
             return SparseMerkleTree::build(config, map);
           }),
           py::arg("config"), py::arg("leaves"))
      .def_property_readonly("root", [](const SparseMerkleTree& t) { return to_bytes(t.root()); })
      .def("prove", [](const SparseMerkleTree& t, Slot slot) { return to_bytes(serialize(t.prove(slot))); })
      .def("prove_compact",
           [](const SparseMerkleTree& t, Slot slot) { return to_bytes(serialize(t.prove_compact(slot), t.config())); });

  m.def(
      "verify_proof",
      [](const SmtConfig& config, Slot slot, const py::bytes& leaf, const py::bytes& proof, const py::bytes& root,
         bool compact) {
        const Bytes raw = from_bytes(proof);
        const Digest l = to_digest(leaf), r = to_digest(root);
        return compact ? verify(slot, l, parse_compact_proof(raw, config), r, config)
                       : verify(slot, l, parse_proof(raw, config), r, config);
      },
      py::arg("config"), py::arg("slot"), py::arg("leaf"), py::arg("proof"), py::arg("root"),
      py::arg("compact") = true);

  m.def("scenarios", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : scenarios()) out.emplace_back(s.name, s.summary);
    return out;
  });

  m.def(
      "run_scenario_json",
      [](const std::string& name, std::uint64_t seed, bool watchers, std::optional<Time> maturity,
         std::optional<Amount> bond, std::optional<unsigned> depth) {
        ScenarioOptions options;
        options.watchers = watchers;
        options.params = params_from(maturity, bond, depth);
        return run_scenario(name, seed, options).to_json().dump();
      },
      py::arg("name"), py::arg("seed") = 0, py::arg("watchers") = true, py::arg("maturity") = py::none(),
      py::arg("bond") = py::none(), py::arg("smt_depth") = py::none());

  m.def(
      "run_fuzz_json",
      [](std::uint64_t steps, std::uint64_t seed, bool byzantine, unsigned wallets, std::optional<Time> maturity,
         std::optional<Amount> bond, std::optional<unsigned> depth) {
        FuzzOptions options;
        options.steps = steps;
        options.seed = seed;
        options.byzantine = byzantine;
        options.honest_wallets = wallets;
        options.params = params_from(maturity, bond, depth, options.params);
        py::gil_scoped_release release;
        return run_fuzz(options).to_json().dump();
      },
      py::arg("steps") = 10'000, py::arg("seed") = 0, py::arg("byzantine") = true, py::arg("wallets") = 4,
      py::arg("maturity") = py::none(), py::arg("bond") = py::none(), py::arg("smt_depth") = py::none());

  m.def(
      "run_proof_bench_json",
      [](std::size_t txs, unsigned depth, unsigned trials, std::size_t samples, std::uint64_t seed) {
        py::gil_scoped_release release;
        return run_proof_bench({txs, depth, trials, samples, seed}).to_json().dump();
      },
      py::arg("txs") = 2378, py::arg("depth") = 64, py::arg("trials") = 4, py::arg("samples") = 500,
      py::arg("seed") = 1);

  py::class_<Simulation>(m, "Simulation")
      .def(py::init([](std::optional<Time> maturity, std::optional<Amount> bond, std::optional<unsigned> depth,
                       const std::string& mode) {
             return std::make_unique<Simulation>(params_from(maturity, bond, depth), OperatorMode{mode_from(mode), {}});
           }),
           py::arg("maturity") = py::none(), py::arg("bond") = py::none(), py::arg("smt_depth") = py::none(),
           py::arg("mode") = "honest")
      .def(
          "add_wallet",
          [](Simulation& s, const std::string& name, Amount funds, bool auto_challenge) {
            s.add_wallet(name, funds, {auto_challenge});
          },
          py::arg("name"), py::arg("funds"), py::arg("auto_challenge") = true)
      .def("deposit", &Simulation::deposit, py::arg("depositor"), py::arg("denomination"))
      .def(
          "transfer",
          [](Simulation& s, const std::string& from, const std::string& to, Slot slot) {
            const SubmitResult r = s.transfer(from, to, slot);
            return py::make_tuple(r.accepted, r.reason);
          },
          py::arg("sender"), py::arg("receiver"), py::arg("slot"))
      .def("produce_block", &Simulation::produce_block)
      .def(
          "deliver",
          [](Simulation& s, const std::string& from, const std::string& to, Slot slot) {
            const Wallet::Receipt r = s.deliver(from, to, slot);
            py::dict out;
            out["accepted"] = r.accepted;
            out["reason"] = r.reason ? py::object(py::str(std::string(to_string(*r.reason)))) : py::object(py::none());
            out["detail"] = r.detail;
            return out;
          },
          py::arg("sender"), py::arg("receiver"), py::arg("slot"))
      .def("run_watchers",
           [](Simulation& s) {
             std::vector<std::tuple<std::string, Slot, bool>> out;
             for (const auto& a : s.run_watchers()) out.emplace_back(std::string(to_string(a.kind)), a.slot, a.ok);
             return out;
           })
      .def("advance_time", &Simulation::advance_time, py::arg("delta"))
      .def(
          "start_exit",
          [](Simulation& s, const std::string& who, Slot slot) { s.wallet(who).start_exit(s.contract(), slot); },
          py::arg("who"), py::arg("slot"))
      .def("finalize_exit",
           [](Simulation& s, Slot slot) {
             return s.contract().finalize_exit(slot) == FinalizeOutcome::Finalized ? "finalized" : "cancelled";
           })
      .def(
          "withdraw",
          [](Simulation& s, const std::string& who, Slot slot) {
            const Amount paid = s.contract().withdraw(s.wallet(who).address(), slot);
            s.wallet(who).forget(slot);
            return paid;
          },
          py::arg("who"), py::arg("slot"))
      .def("owns", [](Simulation& s, const std::string& who, Slot slot) { return s.wallet(who).owns(slot); })
      .def("coin_state", [](Simulation& s, Slot slot) { return std::string(to_string(s.contract().coin(slot).state)); })
      .def("coin_owner", [](Simulation& s, Slot slot) { return s.name_of(s.contract().coin(slot).owner); })
      .def("balance", [](Simulation& s, const std::string& who) { return s.contract().balance(s.wallet(who).address()); })
      .def("history_json",
           [](Simulation& s, Slot slot) { return to_json(s.chain_history(slot), s.smt_config()).dump(); })
      .def("events_json", [](Simulation& s) { return to_json_lines(s.contract().events(), s.smt_config()); });
}
