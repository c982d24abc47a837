#include "plasma/simulation.hpp"

#include "plasma/error.hpp"

namespace plasma {

Simulation::Simulation(ContractParams params, OperatorMode mode)
    : scheme_(std::make_unique<TestSignatureScheme>()) {
  Signer op = scheme_->create_signer("operator");
  contract_ = std::make_unique<PlasmaContract>(op.address, *scheme_, params);
  operator_ = std::make_unique<Operator>(op, *scheme_, contract_->smt_config(), params.child_block_interval,
                                         std::move(mode));
}

Wallet& Simulation::add_wallet(const std::string& name, Amount funds, WalletPolicy policy) {
  auto wallet = std::make_unique<Wallet>(name, scheme_->create_signer(name), *scheme_, smt_config(), policy);
  if (funds > 0) {
    contract_->fund(wallet->address(), funds);
    funded_[wallet->address()] += funds;
  }
  auto [it, inserted] = wallets_.insert_or_assign(name, std::move(wallet));
  return *it->second;
}

Wallet& Simulation::wallet(const std::string& name) {
  auto it = wallets_.find(name);
  if (it == wallets_.end()) throw std::out_of_range("no wallet named " + name);
  return *it->second;
}

std::vector<std::string> Simulation::wallet_names() const {
  std::vector<std::string> out;
  for (const auto& [name, w] : wallets_) out.push_back(name);
  return out;
}

std::string Simulation::name_of(const Address& address) const {
  if (address == operator_->address()) return "operator";
  for (const auto& [name, w] : wallets_)
    if (w->address() == address) return name;
  return address.hex();
}

Slot Simulation::deposit(const std::string& depositor, Amount denomination) {
  Wallet& w = wallet(depositor);
  auto [slot, block] = contract_->deposit(w.address(), denomination);
  operator_->record_deposit(slot, block, w.address());
  CoinHistory history = build_history(slot, block, contract_->coin_view(slot), *operator_);
  Wallet::Receipt receipt = w.receive_coin(history, contract_->coin_view(slot), w.address());
  if (!receipt.accepted) throw std::logic_error("deposit history rejected: " + receipt.detail);
  return slot;
}

SubmitResult Simulation::transfer(const std::string& from, const std::string& to, Slot slot) {
  Transaction tx = wallet(from).send_coin(slot, wallet(to).address());
  return operator_->submit_tx(tx);
}

BlockNumber Simulation::produce_block() {
  const PlasmaBlock& block = operator_->produce_block();
  const BlockNumber committed = contract_->submit_block(operator_->address(), block.root);
  if (committed != block.number)
    throw std::logic_error("operator and contract disagree on block numbering");
  return committed;
}

Wallet::Receipt Simulation::deliver(const std::string& from, const std::string& to, Slot slot) {
  Wallet& sender = wallet(from);
  const RootView view = contract_->coin_view(slot);
  CoinHistory history = build_history(slot, sender.history(slot).deposit_block, view, *operator_);
  Wallet::Receipt receipt =
      wallet(to).receive_coin(history, view, contract_->coin(slot).owner);
  if (receipt.accepted) sender.forget(slot);
  return receipt;
}

std::vector<Wallet::Action> Simulation::run_watchers() {
  std::vector<Wallet::Action> all;
  for (auto& [name, w] : wallets_) {
    auto actions = w->watch_and_challenge(*contract_);
    all.insert(all.end(), actions.begin(), actions.end());
  }
  return all;
}

Amount Simulation::funded(const Address& address) const {
  auto it = funded_.find(address);
  return it == funded_.end() ? 0 : it->second;
}

CoinHistory Simulation::chain_history(Slot slot) const {
  const CoinRecord& coin = contract_->coin(slot);
  CoinHistory history;
  history.slot = slot;
  history.deposit_block = coin.deposit_block;
  for (BlockNumber b : contract_->coin_view(slot).blocks) {
    IncludedTx itx = operator_->reveal_witness(slot, b);
    (itx.is_exclusion() ? history.excluded : history.included).emplace(b, std::move(itx));
  }
  return history;
}

}  // namespace plasma
