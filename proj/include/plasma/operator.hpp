#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plasma/core.hpp"
#include "plasma/history.hpp"
#include "plasma/signature.hpp"

namespace plasma {

class PlasmaContract;

/// Behaviour of the block producer. Byzantine variants only deviate for the
/// slots listed in `targets` (empty = every slot).
struct OperatorMode {
  enum class Kind {
    Honest,
    IncludeForgedTx,     // accept any transaction, whatever its signer or parent
    IncludeDoubleSpend,  // accept a second spend of an already-spent parent
    WithholdWitness,     // honest blocks, but refuse witnesses for chosen (slot, block) pairs
  };

  Kind kind = Kind::Honest;
  std::set<Slot> targets;

  bool deviates_for(Slot slot) const {
    return kind != Kind::Honest && kind != Kind::WithholdWitness &&
           (targets.empty() || targets.contains(slot));
  }
};

std::string to_string(OperatorMode::Kind kind);

struct SubmitResult {
  bool accepted = false;
  std::string reason;  // empty when accepted
};

/// Child-chain block producer and witness service.
class Operator final : public WitnessSource {
 public:
  struct Ownership {
    Address owner;
    BlockNumber last_inclusion = 0;
  };

  Operator(Signer signer, const SignatureScheme& scheme, SmtConfig config,
           BlockNumber child_block_interval = 1000, OperatorMode mode = {});

  const Address& address() const { return signer_.address; }
  const Signer& signer() const { return signer_; }
  const OperatorMode& mode() const { return mode_; }
  void set_mode(OperatorMode mode) { mode_ = std::move(mode); }
  const SmtConfig& smt_config() const { return config_; }

  /// Mirrors a deposit block created by the root chain.
  void record_deposit(Slot slot, BlockNumber block, const Address& owner);

  SubmitResult submit_tx(const Transaction& tx);
  /// Seals the pending pool into the next operator block; a second pending
  /// transaction for a slot waits for a later block.
  const PlasmaBlock& produce_block();
  BlockNumber next_block_number() const;

  std::optional<IncludedTx> witness(Slot slot, BlockNumber block) const override;
  /// Same as witness() but ignores withholding.
  IncludedTx reveal_witness(Slot slot, BlockNumber block) const;

  void withhold(Slot slot, BlockNumber block) { withheld_.emplace(slot, block); }
  void release(Slot slot, BlockNumber block) { withheld_.erase({slot, block}); }

  /// Operator-side watcher: cancels exits of coins it knows were spent, using
  /// witnesses it may have been withholding. Returns the slots challenged.
  std::vector<Slot> challenge_spent_exits(PlasmaContract& contract) const;

  bool has_block(BlockNumber block) const { return blocks_.contains(block); }
  const PlasmaBlock& block(BlockNumber block) const;
  std::vector<BlockNumber> block_numbers() const;
  std::optional<Ownership> ownership(Slot slot) const;
  const std::vector<Transaction>& pending() const { return pending_; }

  /// Produce compact (default) or naive proofs in witnesses.
  void set_compact_proofs(bool compact) { compact_proofs_ = compact; }

 private:
  struct Stored {
    PlasmaBlock block;
    SparseMerkleTree tree;
  };

  std::optional<std::string> honest_check(const Transaction& tx) const;
  const Stored& stored(BlockNumber block) const;

  Signer signer_;
  const SignatureScheme* scheme_;
  SmtConfig config_;
  BlockNumber interval_;
  OperatorMode mode_;
  bool compact_proofs_ = true;

  BlockNumber last_block_ = 0;
  std::vector<Transaction> pending_;
  std::map<BlockNumber, Stored> blocks_;
  std::map<Slot, Ownership> ownership_;
  // Every (block, new owner) a slot has had, in block order.
  std::map<Slot, std::vector<std::pair<BlockNumber, Address>>> lineage_;
  std::set<std::pair<Slot, BlockNumber>> withheld_;
};

}  // namespace plasma
