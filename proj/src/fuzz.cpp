#include <algorithm>
#include <random>
#include <set>

#include "plasma/error.hpp"
#include "plasma/scenarios.hpp"
#include "plasma/simulation.hpp"

namespace plasma {

namespace {

constexpr Amount kFunds = 1'000'000'000;

struct Flight {
  std::string from;
  std::string to;
  Transaction tx;
};

class Fuzzer {
 public:
  explicit Fuzzer(const FuzzOptions& options)
      : options_(options),
        sim_(options.params, options.byzantine ? OperatorMode{OperatorMode::Kind::IncludeForgedTx, {}}
                                               : OperatorMode{}),
        rng_(options.seed) {
    for (unsigned i = 0; i < options.honest_wallets; ++i) {
      honest_.push_back("h" + std::to_string(i));
      honest_addresses_.insert(sim_.add_wallet(honest_.back(), kFunds).address());
    }
    if (options.byzantine) {
      sim_.add_wallet(kMallory, kFunds);
      sim_.add_wallet(kTrudy, kFunds);
    }
    report_.name = options.byzantine ? "fuzz-byzantine" : "fuzz-honest";
    report_.seed = options.seed;
  }

  ScenarioReport run() {
    for (std::uint64_t i = 0; i < options_.steps; ++i) {
      step();
      sim_.run_watchers();
      check_step();
      ++report_.elapsed_steps;
      if (report_.failures.size() > 20) break;
    }
    settle();
    check_final();

    const std::string lines = to_json_lines(sim_.contract().events(), sim_.smt_config());
    report_.trace_digest =
        sha256(ByteView(reinterpret_cast<const std::uint8_t*>(lines.data()), lines.size())).hex();
    for (const Event& e : sim_.contract().events()) ++report_.stats["event_" + std::string(event_name(e.body))];
    report_.stats["blocks"] = static_cast<std::int64_t>(sim_.chain_operator().block_numbers().size());
    report_.stats["coins"] = static_cast<std::int64_t>(sim_.contract().coins().size());
    for (const auto& name : sim_.wallet_names())
      report_.bond_ledger[name] = sim_.contract().balance(sim_.wallet(name).address()) -
                                  sim_.funded(sim_.wallet(name).address());
    report_.passed = report_.failures.empty();
    return std::move(report_);
  }

 private:
  static constexpr const char* kMallory = "mallory";
  static constexpr const char* kTrudy = "trudy";

  void violation(const std::string& what) {
    report_.failures.push_back("step " + std::to_string(report_.elapsed_steps) + ": " + what);
  }
  void count(const std::string& key) { ++report_.stats[key]; }

  std::uint64_t pick(std::uint64_t n) { return rng_() % n; }
  template <typename T>
  const T& pick_from(const std::vector<T>& v) {
    return v[pick(v.size())];
  }

  PlasmaContract& contract() { return sim_.contract(); }
  Operator& op() { return sim_.chain_operator(); }
  Amount bond() { return contract().params().bond_amount; }

  bool in_flight(Slot slot) const {
    return std::any_of(flights_.begin(), flights_.end(), [&](const Flight& f) { return f.tx.slot == slot; });
  }
  bool pending(Slot slot) {
    const auto& p = op().pending();
    return std::any_of(p.begin(), p.end(), [&](const Transaction& tx) { return tx.slot == slot; });
  }
  bool idle(Slot slot) {
    return contract().coin(slot).state == CoinState::Deposited && !in_flight(slot) && !pending(slot);
  }

  std::vector<Slot> idle_coins(const std::string& who) {
    std::vector<Slot> out;
    for (const auto& [slot, h] : sim_.wallet(who).coins())
      if (idle(slot)) out.push_back(slot);
    return out;
  }

  void step() {
    struct Choice {
      unsigned weight;
      void (Fuzzer::*action)();
    };
    static const std::vector<Choice> honest_choices = {
        {10, &Fuzzer::honest_deposit}, {30, &Fuzzer::honest_transfer}, {4, &Fuzzer::honest_exit},
        {14, &Fuzzer::produce_action}, {10, &Fuzzer::advance},         {8, &Fuzzer::finalize},
    };
    static const std::vector<Choice> byzantine_choices = {
        {3, &Fuzzer::mallory_deposit}, {6, &Fuzzer::mallory_transfer}, {3, &Fuzzer::exit_spent},
        {3, &Fuzzer::double_spend},    {3, &Fuzzer::forge},            {3, &Fuzzer::grief},
    };
    std::vector<Choice> choices = honest_choices;
    if (options_.byzantine) choices.insert(choices.end(), byzantine_choices.begin(), byzantine_choices.end());
    unsigned total = 0;
    for (const auto& c : choices) total += c.weight;
    auto roll = static_cast<unsigned>(pick(total));
    for (const auto& c : choices) {
      if (roll < c.weight) return (this->*c.action)();
      roll -= c.weight;
    }
  }

  Slot deposit(const std::string& who) {
    const Amount denomination = 1 + static_cast<Amount>(pick(100));
    const Slot slot = sim_.deposit(who, denomination);
    shadow_.on_deposit(slot, contract().coin(slot).deposit_block, sim_.wallet(who).address());
    return slot;
  }

  void honest_deposit() {
    deposit(pick_from(honest_));
    count("deposits");
  }

  void send(const std::string& from, const std::string& to, Slot slot) {
    Transaction tx = sim_.wallet(from).send_coin(slot, sim_.wallet(to).address());
    SubmitResult r = op().submit_tx(tx);
    if (!r.accepted) return violation(from + " spend refused by operator: " + r.reason);
    flights_.push_back({from, to, std::move(tx)});
    count("transfers");
  }

  void honest_transfer() {
    const std::string& from = pick_from(honest_);
    auto coins = idle_coins(from);
    if (coins.empty()) return;
    const Slot slot = pick_from(coins);
    if (options_.byzantine) {
      // Check the coin is still clean before paying with it.
      Verdict v = sim_.wallet(from).refresh(slot, contract().coin_view(slot), op(), contract().coin(slot).owner);
      if (!v.accepted() || sim_.wallet(from).history(slot).current_owner() != sim_.wallet(from).address()) {
        count("tainted_exits");
        return start_exit(from, slot);
      }
    }
    std::vector<std::string> receivers;
    for (const auto& h : honest_)
      if (h != from) receivers.push_back(h);
    if (options_.byzantine) receivers.push_back(kMallory);
    send(from, pick_from(receivers), slot);
  }

  void start_exit(const std::string& who, Slot slot) {
    try {
      sim_.wallet(who).start_exit(contract(), slot);
      count("honest_exits");
    } catch (const Error& e) {
      violation(who + " could not exit slot " + std::to_string(slot) + ": " + e.what());
    }
  }

  void honest_exit() {
    const std::string& who = pick_from(honest_);
    auto coins = idle_coins(who);
    if (!coins.empty()) start_exit(who, pick_from(coins));
  }

  BlockNumber produce() {
    const BlockNumber b = sim_.produce_block();
    const PlasmaBlock& block = op().block(b);
    shadow_.on_block(block, sim_.scheme());
    std::vector<Flight> waiting;
    for (auto& f : flights_) {
      auto it = block.txs.find(f.tx.slot);
      if (it == block.txs.end() || it->second != f.tx) {
        waiting.push_back(std::move(f));
        continue;
      }
      deliver(f);
    }
    flights_ = std::move(waiting);
    return b;
  }
  void produce_action() { produce(); }

  void deliver(const Flight& f) {
    const Slot slot = f.tx.slot;
    std::optional<CoinHistory> stale;
    if (f.from == kMallory) stale = sim_.wallet(kMallory).history(slot);
    Wallet::Receipt r = sim_.deliver(f.from, f.to, slot);
    if (r.accepted) {
      count("deliveries_accepted");
      if (stale) mallory_past_.insert_or_assign(slot, std::move(*stale));
      return;
    }
    count("deliveries_rejected");
    if (honest_addresses_.contains(sim_.wallet(f.to).address()))
      violation(f.to + " rejected an included payment on slot " + std::to_string(slot) + ": " + r.detail);
  }

  void advance() { sim_.advance_time(1 + pick(5)); }

  void finalize() {
    std::vector<Slot> due;
    for (const auto& [slot, exit] : contract().exits())
      if (contract().now() >= exit.created_at + contract().params().maturity_period) due.push_back(slot);
    for (Slot slot : due) finalize_one(slot);
  }

  void finalize_one(Slot slot) {
    const Address exitor = contract().exit(slot)->exitor;
    const std::string name = sim_.name_of(exitor);
    const FinalizeOutcome outcome = contract().finalize_exit(slot);
    const bool honest = honest_addresses_.contains(exitor);
    if (outcome == FinalizeOutcome::CancelledByChallenge) {
      count("exits_cancelled");
      if (honest) violation("honest exit of slot " + std::to_string(slot) + " cancelled");
      return;
    }
    count("exits_finalized");
    if (!honest) count("attacker_exits_finalized");
    contract().withdraw(exitor, slot);
    if (sim_.has_wallet(name)) sim_.wallet(name).forget(slot);
    mallory_past_.erase(slot);
  }

  // Attacker behaviour. Each attack is a single atomic step so that no honest
  // spend of the same coin is ever waiting in the pool.

  void mallory_deposit() {
    deposit(kMallory);
    count("deposits");
  }

  void mallory_transfer() {
    auto coins = idle_coins(kMallory);
    if (!coins.empty()) send(kMallory, pick_from(honest_), pick_from(coins));
  }

  std::vector<Slot> spent_by_mallory() {
    std::vector<Slot> out;
    for (const auto& [slot, h] : mallory_past_)
      if (idle(slot) && !sim_.wallet(kMallory).owns(slot)) out.push_back(slot);
    return out;
  }

  std::optional<IncludedTx> parent_of(const CoinHistory& h) {
    const IncludedTx& last = h.included.rbegin()->second;
    if (last.transaction().is_deposit()) return std::nullopt;
    return h.included.at(last.transaction().parent_block);
  }

  void exit_spent() {
    auto slots = spent_by_mallory();
    if (slots.empty()) return;
    const Slot slot = pick_from(slots);
    const CoinHistory& h = mallory_past_.at(slot);
    attack("attack_exit_spent", [&] {
      contract().start_exit(sim_.wallet(kMallory).address(), slot, parent_of(h), h.included.rbegin()->second,
                            bond());
    });
  }

  void double_spend() {
    auto slots = spent_by_mallory();
    if (slots.empty()) return;
    const Slot slot = pick_from(slots);
    const BlockNumber parent = mallory_past_.at(slot).last_inclusion();
    const Transaction tx = sign_transaction({slot, parent, sim_.wallet(kTrudy).address(), {}},
                                            sim_.scheme().create_signer(kMallory), sim_.scheme());
    if (!op().submit_tx(tx).accepted) return;
    const BlockNumber at = produce();
    attack("attack_double_spend", [&] {
      contract().start_exit(sim_.wallet(kTrudy).address(), slot, op().reveal_witness(slot, parent),
                            op().reveal_witness(slot, at), bond());
    });
  }

  void forge() {
    std::vector<Slot> targets;
    for (const auto& [slot, entry] : shadow_.entries())
      if (honest_addresses_.contains(entry.owner) && idle(slot)) targets.push_back(slot);
    if (targets.empty()) return;
    const Slot slot = pick_from(targets);
    const Signer mallory = sim_.scheme().create_signer(kMallory);
    const BlockNumber last = op().ownership(slot)->last_inclusion;
    if (!op().submit_tx(sign_transaction({slot, last, mallory.address, {}}, mallory, sim_.scheme())).accepted)
      return;
    const BlockNumber forged_at = produce();
    if (!op().submit_tx(sign_transaction({slot, forged_at, sim_.wallet(kTrudy).address(), {}}, mallory,
                                         sim_.scheme()))
             .accepted)
      return;
    const BlockNumber exit_at = produce();
    attack("attack_forged_history", [&] {
      contract().start_exit(sim_.wallet(kTrudy).address(), slot, op().reveal_witness(slot, forged_at),
                            op().reveal_witness(slot, exit_at), bond());
    });
  }

  void grief() {
    std::vector<Slot> targets;
    for (const auto& [slot, exit] : contract().exits())
      if (honest_addresses_.contains(exit.exitor) && exit.parent &&
          contract().coin(slot).deposit_block < exit.parent->block && !griefed_.contains({slot, exit.created_at}))
        targets.push_back(slot);
    if (targets.empty()) return;
    const Slot slot = pick_from(targets);
    griefed_.emplace(slot, contract().exit(slot)->created_at);
    attack("attack_grief", [&] {
      contract().challenge_before(sim_.wallet(kMallory).address(), slot,
                                  op().reveal_witness(slot, contract().coin(slot).deposit_block), bond());
    });
  }

  template <typename F>
  void attack(const std::string& key, F&& call) {
    try {
      call();
      count(key);
    } catch (const Error&) {
      count(key + "_refused");
    }
  }

  void check_step() {
    const PlasmaContract& c = contract();
    const Ledger& l = c.ledger();
    Amount balances = 0;
    for (const auto& [address, amount] : c.balances()) {
      if (amount < 0) violation("negative balance for " + sim_.name_of(address));
      balances += amount;
    }
    if (l.minted != balances + c.coin_escrow() + c.bond_escrow()) violation("minted value not conserved");
    if (l.deposited != l.withdrawn + c.coin_escrow()) violation("coin value not conserved");
    if (l.bonds_posted != l.bonds_refunded + l.bonds_slashed + c.bond_escrow()) violation("bond value not conserved");

    // Replay the new events as state transitions.
    const auto& events = c.events();
    for (; cursor_ < events.size(); ++cursor_) {
      const EventBody& body = events[cursor_].body;
      auto move = [&](Slot slot, CoinState next) {
        auto it = states_.find(slot);
        if (it == states_.end() || !is_legal_transition(it->second, next))
          violation("illegal transition on slot " + std::to_string(slot));
        else
          it->second = next;
      };
      if (const auto* d = std::get_if<DepositEvent>(&body)) states_[d->slot] = CoinState::Deposited;
      if (const auto* s = std::get_if<ExitStartedEvent>(&body)) move(s->slot, CoinState::Exiting);
      if (const auto* f = std::get_if<ExitFinalizedEvent>(&body)) {
        move(f->slot, CoinState::Exited);
        check_owner(f->slot, f->exitor);
      }
      if (const auto* x = std::get_if<ExitCancelledEvent>(&body)) move(x->slot, CoinState::Deposited);
      if (const auto* w = std::get_if<WithdrawnEvent>(&body)) {
        move(w->slot, CoinState::Withdrawn);
        check_owner(w->slot, w->owner);
      }
    }
    for (const auto& [slot, coin] : c.coins())
      if (states_[slot] != coin.state) violation("replayed state disagrees on slot " + std::to_string(slot));
  }

  void check_owner(Slot slot, const Address& taker) {
    const auto truth = shadow_.owner(slot);
    if (truth && honest_addresses_.contains(*truth) && *truth != taker)
      violation("honest coin " + std::to_string(slot) + " taken by " + sim_.name_of(taker));
  }

  /// Delivers what is in flight and resolves every open exit.
  void settle() {
    for (int i = 0; i < 3 && !flights_.empty(); ++i) produce();
    sim_.run_watchers();
    sim_.advance_time(contract().params().maturity_period);
    finalize();
    sim_.run_watchers();
    check_step();
  }

  void check_final() {
    for (const auto& [slot, entry] : shadow_.entries()) {
      if (!honest_addresses_.contains(entry.owner)) continue;
      const CoinRecord& coin = contract().coin(slot);
      if (coin.state == CoinState::Deposited && !sim_.wallet(sim_.name_of(entry.owner)).owns(slot))
        violation("honest owner of slot " + std::to_string(slot) + " no longer holds it");
      if ((coin.state == CoinState::Exited || coin.state == CoinState::Withdrawn) && coin.owner != entry.owner)
        violation("honest coin " + std::to_string(slot) + " left with someone else");
      if (coin.state == CoinState::Exiting) violation("exit on slot " + std::to_string(slot) + " left open");
    }
  }

  FuzzOptions options_;
  Simulation sim_;
  ShadowLedger shadow_;
  std::mt19937_64 rng_;
  ScenarioReport report_;
  std::vector<std::string> honest_;
  std::set<Address> honest_addresses_;
  std::vector<Flight> flights_;
  std::map<Slot, CoinHistory> mallory_past_;  // what mallory held when she paid the coin away
  std::set<std::pair<Slot, Time>> griefed_;
  std::map<Slot, CoinState> states_;
  std::size_t cursor_ = 0;
};

}  // namespace

ScenarioReport run_fuzz(const FuzzOptions& options) { return Fuzzer(options).run(); }

}  // namespace plasma
