#include "plasma/rootchain.hpp"

#include <limits>
#include <string>

#include "plasma/error.hpp"

namespace plasma {

std::string_view to_string(CoinState state) {
  switch (state) {
    case CoinState::Deposited: return "DEPOSITED";
    case CoinState::Exiting: return "EXITING";
    case CoinState::Exited: return "EXITED";
    case CoinState::Withdrawn: return "WITHDRAWN";
  }
  return "UNKNOWN";
}

bool is_legal_transition(CoinState from, CoinState to) {
  switch (from) {
    case CoinState::Deposited: return to == CoinState::Exiting;
    case CoinState::Exiting: return to == CoinState::Exited || to == CoinState::Deposited;
    case CoinState::Exited: return to == CoinState::Withdrawn;
    case CoinState::Withdrawn: return false;
  }
  return false;
}

std::size_t Exit::unanswered() const {
  std::size_t n = 0;
  for (const auto& c : challenges) n += c.answered ? 0 : 1;
  return n;
}

PlasmaContract::PlasmaContract(const Address& operator_address, const SignatureScheme& scheme,
                               ContractParams params)
    : operator_(operator_address), scheme_(&scheme), params_(params), config_(params.smt_depth) {
  if (params_.child_block_interval < 2)
    throw Error(ErrorCode::InvalidConfig, "child block interval must leave room for deposits");
  if (params_.bond_amount < 0) throw Error(ErrorCode::InvalidConfig, "negative bond amount");
}

void PlasmaContract::fund(const Address& account, Amount amount) {
  if (amount <= 0) throw Error(ErrorCode::InvalidDenomination, "funding must be positive");
  credit(account, amount);
  ledger_.minted += amount;
}

std::pair<Slot, BlockNumber> PlasmaContract::deposit(const Address& depositor, Amount denomination) {
  if (denomination <= 0) throw Error(ErrorCode::InvalidDenomination, std::to_string(denomination));
  if (slots_exhausted_ || !config_.contains(next_slot_))
    throw Error(ErrorCode::SlotSpaceExhausted, "no free slot at depth " + std::to_string(config_.depth()));
  if (deposits_since_block_ + 1 >= params_.child_block_interval)
    throw Error(ErrorCode::DepositBlocksExhausted,
                "no deposit block numbers left before the next operator block");
  debit(depositor, denomination);

  const Slot slot = next_slot_;
  if (next_slot_ == std::numeric_limits<Slot>::max())
    slots_exhausted_ = true;
  else
    ++next_slot_;
  const BlockNumber block = current_block_ + ++deposits_since_block_;

  std::map<Slot, Transaction> txs{{slot, make_deposit_tx(slot, depositor)}};
  const Digest root = PlasmaBlock::make(block, std::move(txs), config_).root;
  roots_.emplace(block, root);
  coins_.emplace(slot, CoinRecord{slot, depositor, denomination, CoinState::Deposited, block});
  coin_escrow_ += denomination;
  ledger_.deposited += denomination;
  emit(DepositEvent{slot, depositor, denomination, block, root});
  return {slot, block};
}

BlockNumber PlasmaContract::submit_block(const Address& caller, const Digest& root) {
  if (caller != operator_) throw Error(ErrorCode::NotOperator, caller.hex());
  current_block_ = (current_block_ / params_.child_block_interval + 1) * params_.child_block_interval;
  deposits_since_block_ = 0;
  roots_.insert_or_assign(current_block_, root);
  emit(BlockSubmittedEvent{current_block_, root});
  return current_block_;
}

void PlasmaContract::start_exit(const Address& caller, Slot slot,
                                const std::optional<IncludedTx>& parent, const IncludedTx& exit,
                                Amount bond) {
  auto coin_it = coins_.find(slot);
  if (coin_it == coins_.end() || coin_it->second.state != CoinState::Deposited)
    throw Error(ErrorCode::CoinNotExitable, "slot " + std::to_string(slot));
  CoinRecord& coin = coin_it->second;
  if (bond != params_.bond_amount) throw Error(ErrorCode::WrongBond, std::to_string(bond));
  if (exit.is_exclusion()) throw Error(ErrorCode::BadProof, "exit transaction missing");
  if (caller != exit.transaction().new_owner) throw Error(ErrorCode::NotNewOwner, caller.hex());

  if (!parent) {
    // Deposit exit: the exiting transaction must be the deposit itself.
    const Transaction& tx = exit.transaction();
    if (exit.block != coin.deposit_block || !tx.is_deposit() || tx.new_owner != coin.owner)
      throw Error(ErrorCode::ParentMismatch, "deposit exit must present the deposit transaction");
    if (!verify_inclusion(exit, slot)) throw Error(ErrorCode::BadProof, "deposit inclusion");
  } else {
    if (parent->is_exclusion()) throw Error(ErrorCode::BadProof, "parent transaction missing");
    if (!verify_inclusion(*parent, slot)) throw Error(ErrorCode::BadProof, "parent inclusion");
    if (!verify_inclusion(exit, slot)) throw Error(ErrorCode::BadProof, "exit inclusion");
    if (exit.transaction().parent_block != parent->block || exit.block <= parent->block)
      throw Error(ErrorCode::ParentMismatch, "exit transaction does not spend the given parent");
    if (signer_of(exit) != parent->transaction().new_owner)
      throw Error(ErrorCode::BadSignature, "exit transaction not signed by parent owner");
  }

  post_bond(caller, bond);
  set_state(coin, CoinState::Exiting);
  exits_.insert_or_assign(slot, Exit{slot, caller, parent, exit, bond, clock_, {}});
  emit(ExitStartedEvent{slot, caller, parent, exit, bond});
}

void PlasmaContract::challenge_after(const Address& challenger, Slot slot, const IncludedTx& spend) {
  Exit& exit = active_exit(slot);
  if (spend.is_exclusion() || !verify_inclusion(spend, slot)) throw Error(ErrorCode::BadProof, "spend");
  if (spend.block <= exit.exit.block || spend.transaction().parent_block != exit.exit.block)
    throw Error(ErrorCode::NotDirectSpend, "spend must directly follow the exiting transaction");
  if (signer_of(spend) != exit.exitor) throw Error(ErrorCode::BadSignature, "spend not signed by exitor");

  emit(ChallengedEvent{ChallengeKind::After, slot, challenger, spend, std::nullopt});
  cancel_exit(slot, challenger);
}

void PlasmaContract::challenge_between(const Address& challenger, Slot slot, const IncludedTx& spend) {
  Exit& exit = active_exit(slot);
  if (spend.is_exclusion() || !verify_inclusion(spend, slot)) throw Error(ErrorCode::BadProof, "spend");
  if (!exit.parent || spend.block <= exit.parent->block || spend.block >= exit.exit.block)
    throw Error(ErrorCode::NotBetween, "spend must lie strictly between parent and exit blocks");
  if (spend.transaction().parent_block != exit.parent->block)
    throw Error(ErrorCode::NotSameParent, "spend does not share the exit's parent");
  if (signer_of(spend) != exit.parent->transaction().new_owner)
    throw Error(ErrorCode::BadSignature, "spend not signed by parent owner");

  emit(ChallengedEvent{ChallengeKind::Between, slot, challenger, spend, std::nullopt});
  cancel_exit(slot, challenger);
}

std::uint64_t PlasmaContract::challenge_before(const Address& challenger, Slot slot,
                                               const IncludedTx& tx, Amount bond) {
  Exit& exit = active_exit(slot);
  if (bond != params_.bond_amount) throw Error(ErrorCode::WrongBond, std::to_string(bond));
  if (tx.is_exclusion() || !verify_inclusion(tx, slot)) throw Error(ErrorCode::BadProof, "challenge tx");
  if (tx.block >= exit.before_bound())
    throw Error(ErrorCode::NotBefore, "challenge tx must precede the exit's parent block");

  post_bond(challenger, bond);
  const std::uint64_t id = exit.challenges.size();
  exit.challenges.push_back(PendingChallenge{challenger, tx, bond, false});
  emit(ChallengedEvent{ChallengeKind::Before, slot, challenger, tx, id});
  return id;
}

void PlasmaContract::respond_challenge_before(const Address& responder, Slot slot,
                                              std::uint64_t challenge_id, const IncludedTx& response) {
  Exit& exit = active_exit(slot);
  if (challenge_id >= exit.challenges.size() || exit.challenges[challenge_id].answered)
    throw Error(ErrorCode::NoSuchChallenge, std::to_string(challenge_id));
  PendingChallenge& challenge = exit.challenges[challenge_id];
  if (response.is_exclusion() || !verify_inclusion(response, slot))
    throw Error(ErrorCode::BadProof, "response");
  if (response.transaction().parent_block != challenge.tx.block || response.block <= challenge.tx.block ||
      response.block > exit.exit.block)
    throw Error(ErrorCode::NotDirectSpendOfChallenge, "response must spend the challenge tx");
  if (signer_of(response) != challenge.tx.transaction().new_owner)
    throw Error(ErrorCode::BadSignature, "response not signed by the challenged owner");

  challenge.answered = true;
  slash_bond(responder, challenge.bond);
  emit(ChallengeRespondedEvent{slot, challenge_id, responder, response});
}

FinalizeOutcome PlasmaContract::finalize_exit(Slot slot) {
  Exit& exit = active_exit(slot);
  if (clock_ < exit.created_at + params_.maturity_period)
    throw Error(ErrorCode::NotMature, "matures at " + std::to_string(exit.created_at + params_.maturity_period));
  CoinRecord& coin = coins_.at(slot);

  std::vector<const PendingChallenge*> winners;
  for (const auto& c : exit.challenges)
    if (!c.answered) winners.push_back(&c);

  if (winners.empty()) {
    refund_bond(exit.exitor, exit.bond);
    coin.owner = exit.exitor;
    set_state(coin, CoinState::Exited);
    const Address exitor = exit.exitor;
    exits_.erase(slot);
    emit(ExitFinalizedEvent{slot, exitor});
    return FinalizeOutcome::Finalized;
  }

  // Exit bond split equally among unanswered challengers, remainder to the
  // earliest; their own bonds come back.
  const Amount share = exit.bond / static_cast<Amount>(winners.size());
  const Amount remainder = exit.bond - share * static_cast<Amount>(winners.size());
  std::vector<Address> beneficiaries;
  for (std::size_t i = 0; i < winners.size(); ++i) {
    slash_bond(winners[i]->challenger, share + (i == 0 ? remainder : 0));
    refund_bond(winners[i]->challenger, winners[i]->bond);
    beneficiaries.push_back(winners[i]->challenger);
  }
  set_state(coin, CoinState::Deposited);
  const Address exitor = exit.exitor;
  exits_.erase(slot);
  emit(ExitCancelledEvent{slot, exitor, std::move(beneficiaries)});
  return FinalizeOutcome::CancelledByChallenge;
}

Amount PlasmaContract::withdraw(const Address& caller, Slot slot) {
  auto it = coins_.find(slot);
  if (it == coins_.end() || it->second.state != CoinState::Exited)
    throw Error(ErrorCode::NotExited, "slot " + std::to_string(slot));
  CoinRecord& coin = it->second;
  if (caller != coin.owner) throw Error(ErrorCode::NotOwner, caller.hex());
  set_state(coin, CoinState::Withdrawn);
  coin_escrow_ -= coin.denomination;
  ledger_.withdrawn += coin.denomination;
  credit(caller, coin.denomination);
  emit(WithdrawnEvent{slot, caller, coin.denomination});
  return coin.denomination;
}

const CoinRecord& PlasmaContract::coin(Slot slot) const {
  auto it = coins_.find(slot);
  if (it == coins_.end()) throw Error(ErrorCode::UnknownCoin, "slot " + std::to_string(slot));
  return it->second;
}

const Exit* PlasmaContract::exit(Slot slot) const {
  auto it = exits_.find(slot);
  return it == exits_.end() ? nullptr : &it->second;
}

std::optional<Digest> PlasmaContract::root(BlockNumber block) const {
  if (const Digest* d = root_ptr(block)) return *d;
  return std::nullopt;
}

RootView PlasmaContract::coin_view(Slot slot) const {
  const CoinRecord& record = coin(slot);
  RootView view;
  view.blocks.push_back(record.deposit_block);
  view.roots.emplace(record.deposit_block, roots_.at(record.deposit_block));
  for (auto it = roots_.upper_bound(record.deposit_block); it != roots_.end(); ++it) {
    if (it->first % params_.child_block_interval != 0) continue;
    view.blocks.push_back(it->first);
    view.roots.emplace(it->first, it->second);
  }
  return view;
}

Amount PlasmaContract::balance(const Address& account) const {
  auto it = balances_.find(account);
  return it == balances_.end() ? 0 : it->second;
}

Exit& PlasmaContract::active_exit(Slot slot) {
  auto it = exits_.find(slot);
  if (it == exits_.end()) throw Error(ErrorCode::NoActiveExit, "slot " + std::to_string(slot));
  return it->second;
}

const Digest* PlasmaContract::root_ptr(BlockNumber block) const {
  auto it = roots_.find(block);
  return it == roots_.end() ? nullptr : &it->second;
}

bool PlasmaContract::verify_inclusion(const IncludedTx& itx, Slot slot) const {
  const Digest* root = root_ptr(itx.block);
  return root && verify_included(itx, slot, *root, config_);
}

std::optional<Address> PlasmaContract::signer_of(const IncludedTx& itx) const {
  return recover_signer(itx.transaction(), *scheme_, config_.hash());
}

void PlasmaContract::debit(const Address& account, Amount amount) {
  Amount& bal = balances_[account];
  if (bal < amount)
    throw Error(ErrorCode::InsufficientFunds,
                account.hex() + " has " + std::to_string(bal) + ", needs " + std::to_string(amount));
  bal -= amount;
}

void PlasmaContract::post_bond(const Address& account, Amount amount) {
  debit(account, amount);
  bond_escrow_ += amount;
  ledger_.bonds_posted += amount;
}

void PlasmaContract::refund_bond(const Address& account, Amount amount) {
  bond_escrow_ -= amount;
  ledger_.bonds_refunded += amount;
  credit(account, amount);
}

void PlasmaContract::slash_bond(const Address& beneficiary, Amount amount) {
  bond_escrow_ -= amount;
  ledger_.bonds_slashed += amount;
  credit(beneficiary, amount);
}

void PlasmaContract::set_state(CoinRecord& coin, CoinState next) {
  if (!is_legal_transition(coin.state, next))
    throw std::logic_error("illegal coin transition " + std::string(to_string(coin.state)) + " -> " +
                           std::string(to_string(next)));
  coin.state = next;
}

void PlasmaContract::cancel_exit(Slot slot, const Address& beneficiary) {
  Exit& exit = exits_.at(slot);
  for (const auto& c : exit.challenges)
    if (!c.answered) refund_bond(c.challenger, c.bond);
  slash_bond(beneficiary, exit.bond);
  set_state(coins_.at(slot), CoinState::Deposited);
  const Address exitor = exit.exitor;
  exits_.erase(slot);
  emit(ExitCancelledEvent{slot, exitor, {beneficiary}});
}

void PlasmaContract::emit(EventBody body) {
  events_.push_back(Event{events_.size(), clock_, std::move(body)});
}

}  // namespace plasma
