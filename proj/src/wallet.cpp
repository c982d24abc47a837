#include "plasma/wallet.hpp"

#include "plasma/error.hpp"
#include "plasma/rootchain.hpp"

namespace plasma {

std::string_view to_string(Wallet::ActionKind kind) {
  switch (kind) {
    case Wallet::ActionKind::ChallengeAfter: return "ChallengeAfter";
    case Wallet::ActionKind::ChallengeBetween: return "ChallengeBetween";
    case Wallet::ActionKind::ChallengeBefore: return "ChallengeBefore";
    case Wallet::ActionKind::RespondChallengeBefore: return "RespondChallengeBefore";
  }
  return "Unknown";
}

Wallet::Wallet(std::string name, Signer signer, const SignatureScheme& scheme, SmtConfig config,
               Policy policy)
    : name_(std::move(name)),
      signer_(std::move(signer)),
      scheme_(&scheme),
      config_(std::move(config)),
      policy_(policy) {}

const CoinHistory& Wallet::history(Slot slot) const {
  auto it = coins_.find(slot);
  if (it == coins_.end()) throw Error(ErrorCode::NotOwned, name_ + " does not own slot " + std::to_string(slot));
  return it->second;
}

Transaction Wallet::send_coin(Slot slot, const Address& new_owner) const {
  const CoinHistory& h = history(slot);
  Transaction tx{slot, h.last_inclusion(), new_owner, {}};
  return sign_transaction(std::move(tx), signer_, *scheme_, config_.hash());
}

CoinHistory Wallet::hand_over(Slot slot, const RootView& view, const WitnessSource& source) {
  const CoinHistory& h = history(slot);
  CoinHistory full = build_history(slot, h.deposit_block, view, source);
  coins_.erase(slot);
  return full;
}

Wallet::Receipt Wallet::receive_coin(const CoinHistory& history, const RootView& view,
                                     const Address& deposit_owner) {
  Verdict verdict;
  try {
    verdict = verify_history(history, view, deposit_owner, *scheme_, config_);
  } catch (const Error& e) {
    return {false, std::nullopt, e.what()};
  }
  if (!verdict.accepted())
    return {false, verdict.reason,
            std::string(to_string(*verdict.reason)) + " at block " + std::to_string(verdict.block)};
  if (history.current_owner() != address()) return {false, std::nullopt, "history does not end at this wallet"};

  // Earliest-owner rule over every spend sharing our spend's parent.
  const IncludedTx& mine = history.included.rbegin()->second;
  if (!mine.transaction().is_deposit()) {
    std::vector<IncludedTx> siblings;
    for (const auto& [b, itx] : history.included)
      if (!itx.transaction().is_deposit() && itx.transaction().parent_block == mine.transaction().parent_block)
        siblings.push_back(itx);
    if (earliest_owner_filter(siblings).block != mine.block)
      return {false, std::nullopt, "an earlier spend of the same parent exists"};
  }

  coins_.insert_or_assign(history.slot, history);
  return {true, std::nullopt, {}};
}

Verdict Wallet::refresh(Slot slot, const RootView& view, const WitnessSource& source,
                        const Address& deposit_owner) {
  const CoinHistory& h = history(slot);
  CoinHistory fresh = build_history(slot, h.deposit_block, view, source);
  Verdict verdict = verify_history(fresh, view, deposit_owner, *scheme_, config_);
  if (verdict.accepted() && fresh.current_owner() == address()) coins_.insert_or_assign(slot, std::move(fresh));
  return verdict;
}

void Wallet::start_exit(PlasmaContract& contract, Slot slot) {
  const CoinHistory& h = history(slot);
  const IncludedTx& exit = h.included.rbegin()->second;
  std::optional<IncludedTx> parent;
  if (!exit.transaction().is_deposit()) parent = h.included.at(exit.transaction().parent_block);
  contract.start_exit(address(), slot, parent, exit, contract.params().bond_amount);
}

std::vector<Wallet::Action> Wallet::watch_and_challenge(PlasmaContract& contract) {
  const auto& events = contract.events();
  // Actions append events; only look at what existed on entry.
  const std::size_t end = events.size();
  std::vector<Event> fresh(events.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(cursor_, end)),
                           events.begin() + static_cast<std::ptrdiff_t>(end));
  cursor_ = end;
  return watch_and_challenge(fresh, contract);
}

std::vector<Wallet::Action> Wallet::watch_and_challenge(std::span<const Event> events,
                                                        PlasmaContract& contract) {
  std::vector<Action> actions;
  if (!policy_.auto_challenge) return actions;
  for (const Event& event : events) {
    std::optional<Action> action;
    if (const auto* started = std::get_if<ExitStartedEvent>(&event.body)) {
      action = challenge_exit(*started, contract);
    } else if (const auto* challenged = std::get_if<ChallengedEvent>(&event.body)) {
      if (challenged->kind == ChallengeKind::Before) action = respond(*challenged, contract);
    } else if (const auto* done = std::get_if<ExitFinalizedEvent>(&event.body)) {
      before_challenged_.erase(done->slot);
    } else if (const auto* cancelled = std::get_if<ExitCancelledEvent>(&event.body)) {
      before_challenged_.erase(cancelled->slot);
    }
    if (action) actions.push_back(std::move(*action));
  }
  return actions;
}

std::optional<Wallet::Action> Wallet::challenge_exit(const ExitStartedEvent& started,
                                                     PlasmaContract& contract) {
  if (started.exitor == address() || !owns(started.slot)) return std::nullopt;
  const Exit* exit = contract.exit(started.slot);
  if (!exit || exit->exit != started.exit) return std::nullopt;  // already resolved
  const CoinHistory& h = coins_.at(started.slot);
  const Slot slot = started.slot;

  auto attempt = [&](ActionKind kind, auto&& call) -> Action {
    try {
      call();
      return {kind, slot, true, {}};
    } catch (const Error& e) {
      return {kind, slot, false, e.what()};
    }
  };

  // Non-interactive challenges first: they risk no bond.
  for (const auto& [b, itx] : h.included) {
    if (b > exit->exit.block && itx.transaction().parent_block == exit->exit.block)
      return attempt(ActionKind::ChallengeAfter, [&] { contract.challenge_after(address(), slot, itx); });
  }
  if (exit->parent) {
    const BlockNumber parent = exit->parent->block;
    for (const auto& [b, itx] : h.included) {
      if (b > parent && b < exit->exit.block && itx.transaction().parent_block == parent)
        return attempt(ActionKind::ChallengeBetween, [&] { contract.challenge_between(address(), slot, itx); });
    }
  }
  if (h.last_inclusion() < exit->before_bound() && !before_challenged_.contains(slot)) {
    before_challenged_.insert(slot);
    const IncludedTx& latest = h.included.rbegin()->second;
    return attempt(ActionKind::ChallengeBefore, [&] {
      contract.challenge_before(address(), slot, latest, contract.params().bond_amount);
    });
  }
  return std::nullopt;
}

std::optional<Wallet::Action> Wallet::respond(const ChallengedEvent& challenge, PlasmaContract& contract) {
  const Exit* exit = contract.exit(challenge.slot);
  if (!exit || exit->exitor != address() || !owns(challenge.slot) || !challenge.challenge_id) return std::nullopt;
  const std::uint64_t id = *challenge.challenge_id;
  if (id >= exit->challenges.size() || exit->challenges[id].answered) return std::nullopt;

  const CoinHistory& h = coins_.at(challenge.slot);
  for (const auto& [b, itx] : h.included) {
    if (b > challenge.tx.block && b <= exit->exit.block && itx.transaction().parent_block == challenge.tx.block) {
      try {
        contract.respond_challenge_before(address(), challenge.slot, id, itx);
        return Action{ActionKind::RespondChallengeBefore, challenge.slot, true, {}};
      } catch (const Error& e) {
        return Action{ActionKind::RespondChallengeBefore, challenge.slot, false, e.what()};
      }
    }
  }
  return Action{ActionKind::RespondChallengeBefore, challenge.slot, false, "no spend of the challenged tx"};
}

}  // namespace plasma
