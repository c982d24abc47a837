#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "plasma/core.hpp"
#include "plasma/events.hpp"
#include "plasma/history.hpp"
#include "plasma/signature.hpp"

namespace plasma {

struct ContractParams {
  Time maturity_period = 20;
  Amount bond_amount = 100;
  BlockNumber child_block_interval = 1000;
  unsigned smt_depth = 64;
};

enum class CoinState { Deposited, Exiting, Exited, Withdrawn };
std::string_view to_string(CoinState state);

/// DEPOSITED→EXITING, EXITING→{EXITED, DEPOSITED}, EXITED→WITHDRAWN.
bool is_legal_transition(CoinState from, CoinState to);

struct CoinRecord {
  Slot slot = 0;
  Address owner;  // depositor, then the exitor once finalized
  Amount denomination = 0;
  CoinState state = CoinState::Deposited;
  BlockNumber deposit_block = 0;
};

struct PendingChallenge {
  Address challenger;
  IncludedTx tx;
  Amount bond = 0;
  bool answered = false;
};

struct Exit {
  Slot slot = 0;
  Address exitor;
  std::optional<IncludedTx> parent;  // absent for deposit exits
  IncludedTx exit;
  Amount bond = 0;
  Time created_at = 0;
  std::vector<PendingChallenge> challenges;

  /// Upper bound (exclusive) for before-challenge transactions.
  BlockNumber before_bound() const { return parent ? parent->block : exit.block; }
  std::size_t unanswered() const;
};

enum class FinalizeOutcome { Finalized, CancelledByChallenge };

/// Value and bond accounting totals, for conservation checks.
struct Ledger {
  Amount minted = 0;
  Amount deposited = 0;
  Amount withdrawn = 0;
  Amount bonds_posted = 0;
  Amount bonds_refunded = 0;
  Amount bonds_slashed = 0;
};

/// Simulated main-chain Plasma contract. All mutations go through one owner;
/// time only moves through advance_time().
class PlasmaContract {
 public:
  PlasmaContract(const Address& operator_address, const SignatureScheme& scheme,
                 ContractParams params = {});

  /// Credits main-chain funds out of thin air; the only source of value.
  void fund(const Address& account, Amount amount);

  /// Allocates a fresh slot and appends a one-transaction deposit block.
  std::pair<Slot, BlockNumber> deposit(const Address& depositor, Amount denomination);
  BlockNumber submit_block(const Address& caller, const Digest& root);

  void start_exit(const Address& caller, Slot slot, const std::optional<IncludedTx>& parent,
                  const IncludedTx& exit, Amount bond);
  void challenge_after(const Address& challenger, Slot slot, const IncludedTx& spend);
  void challenge_between(const Address& challenger, Slot slot, const IncludedTx& spend);
  /// Returns the challenge id (index within the exit).
  std::uint64_t challenge_before(const Address& challenger, Slot slot, const IncludedTx& tx,
                                 Amount bond);
  void respond_challenge_before(const Address& responder, Slot slot, std::uint64_t challenge_id,
                                const IncludedTx& response);
  FinalizeOutcome finalize_exit(Slot slot);
  Amount withdraw(const Address& caller, Slot slot);

  void advance_time(Time delta) { clock_ += delta; }
  Time now() const { return clock_; }

  const ContractParams& params() const { return params_; }
  const SmtConfig& smt_config() const { return config_; }
  const Address& operator_address() const { return operator_; }
  const SignatureScheme& scheme() const { return *scheme_; }

  const CoinRecord& coin(Slot slot) const;
  const std::map<Slot, CoinRecord>& coins() const { return coins_; }
  const Exit* exit(Slot slot) const;
  const std::map<Slot, Exit>& exits() const { return exits_; }
  std::optional<Digest> root(BlockNumber block) const;
  const std::map<BlockNumber, Digest>& roots() const { return roots_; }
  /// Last operator block number, 0 before the first submission.
  BlockNumber current_block() const { return current_block_; }

  /// Blocks a history for `slot` must cover: its deposit block and every
  /// operator block after it. Other coins' deposit blocks are left out.
  RootView coin_view(Slot slot) const;

  Amount balance(const Address& account) const;
  const std::map<Address, Amount>& balances() const { return balances_; }
  Amount coin_escrow() const { return coin_escrow_; }
  Amount bond_escrow() const { return bond_escrow_; }
  const Ledger& ledger() const { return ledger_; }

  const std::vector<Event>& events() const { return events_; }

 private:
  Exit& active_exit(Slot slot);
  const Digest* root_ptr(BlockNumber block) const;
  bool verify_inclusion(const IncludedTx& itx, Slot slot) const;
  std::optional<Address> signer_of(const IncludedTx& itx) const;

  void debit(const Address& account, Amount amount);
  void credit(const Address& account, Amount amount) { balances_[account] += amount; }
  void post_bond(const Address& account, Amount amount);
  void refund_bond(const Address& account, Amount amount);
  void slash_bond(const Address& beneficiary, Amount amount);
  void set_state(CoinRecord& coin, CoinState next);
  /// Removes the exit after a successful non-interactive challenge.
  void cancel_exit(Slot slot, const Address& beneficiary);
  void emit(EventBody body);

  Address operator_;
  const SignatureScheme* scheme_;
  ContractParams params_;
  SmtConfig config_;

  Time clock_ = 0;
  BlockNumber current_block_ = 0;
  BlockNumber deposits_since_block_ = 0;
  Slot next_slot_ = 0;
  bool slots_exhausted_ = false;

  std::map<BlockNumber, Digest> roots_;
  std::map<Slot, CoinRecord> coins_;
  std::map<Slot, Exit> exits_;
  std::map<Address, Amount> balances_;
  Amount coin_escrow_ = 0;
  Amount bond_escrow_ = 0;
  Ledger ledger_;
  std::vector<Event> events_;
};

}  // namespace plasma
