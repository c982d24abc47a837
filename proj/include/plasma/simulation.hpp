#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "plasma/operator.hpp"
#include "plasma/rootchain.hpp"
#include "plasma/wallet.hpp"

namespace plasma {

/// One deterministic world: signature keyring, root-chain contract, operator
/// and named wallets, all driven from a single thread.
class Simulation {
 public:
  explicit Simulation(ContractParams params = {}, OperatorMode mode = {});
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  TestSignatureScheme& scheme() { return *scheme_; }
  PlasmaContract& contract() { return *contract_; }
  const PlasmaContract& contract() const { return *contract_; }
  Operator& chain_operator() { return *operator_; }
  const SmtConfig& smt_config() const { return contract_->smt_config(); }

  Wallet& add_wallet(const std::string& name, Amount funds, WalletPolicy policy = {});
  Wallet& wallet(const std::string& name);
  bool has_wallet(const std::string& name) const { return wallets_.contains(name); }
  std::vector<std::string> wallet_names() const;
  /// Wallet name for an address, the operator as "operator", hex otherwise.
  std::string name_of(const Address& address) const;

  /// Deposit on the root chain, mirrored by the operator; the depositor's
  /// wallet receives the one-block history.
  Slot deposit(const std::string& depositor, Amount denomination);
  /// Signs a spend in the sender's wallet and submits it to the operator.
  SubmitResult transfer(const std::string& from, const std::string& to, Slot slot);
  /// Operator seals a block and commits its root.
  BlockNumber produce_block();
  /// Sender collects the history, receiver checks it. On rejection the
  /// sender keeps the coin. Throws WitnessUnavailable when withheld.
  Wallet::Receipt deliver(const std::string& from, const std::string& to, Slot slot);
  /// Lets every watching wallet react to new root-chain events.
  std::vector<Wallet::Action> run_watchers();
  void advance_time(Time delta) { contract_->advance_time(delta); }
  /// Main-chain value handed to `address` at wallet creation.
  Amount funded(const Address& address) const;

  /// Histories straight from the operator, whatever their validity.
  CoinHistory chain_history(Slot slot) const;

 private:
  std::unique_ptr<TestSignatureScheme> scheme_;
  std::unique_ptr<PlasmaContract> contract_;
  std::unique_ptr<Operator> operator_;
  std::map<std::string, std::unique_ptr<Wallet>> wallets_;
  std::map<Address, Amount> funded_;
};

}  // namespace plasma
