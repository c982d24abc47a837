#include "plasma/operator.hpp"

#include <algorithm>

#include "plasma/error.hpp"
#include "plasma/rootchain.hpp"

namespace plasma {

std::string to_string(OperatorMode::Kind kind) {
  switch (kind) {
    case OperatorMode::Kind::Honest: return "Honest";
    case OperatorMode::Kind::IncludeForgedTx: return "IncludeForgedTx";
    case OperatorMode::Kind::IncludeDoubleSpend: return "IncludeDoubleSpend";
    case OperatorMode::Kind::WithholdWitness: return "WithholdWitness";
  }
  return "Unknown";
}

Operator::Operator(Signer signer, const SignatureScheme& scheme, SmtConfig config,
                   BlockNumber child_block_interval, OperatorMode mode)
    : signer_(std::move(signer)),
      scheme_(&scheme),
      config_(std::move(config)),
      interval_(child_block_interval),
      mode_(std::move(mode)) {}

void Operator::record_deposit(Slot slot, BlockNumber block, const Address& owner) {
  std::map<Slot, Transaction> txs{{slot, make_deposit_tx(slot, owner)}};
  PlasmaBlock deposit_block = PlasmaBlock::make(block, std::move(txs), config_);
  SparseMerkleTree tree = deposit_block.tree(config_);
  blocks_.insert_or_assign(block, Stored{std::move(deposit_block), std::move(tree)});
  ownership_.insert_or_assign(slot, Ownership{owner, block});
  lineage_[slot] = {{block, owner}};
}

std::optional<std::string> Operator::honest_check(const Transaction& tx) const {
  auto it = ownership_.find(tx.slot);
  if (it == ownership_.end()) return "unknown coin";
  if (tx.parent_block != it->second.last_inclusion) return "parent is not the latest inclusion";
  if (recover_signer(tx, *scheme_, config_.hash()) != it->second.owner) return "not signed by owner";
  for (const auto& p : pending_)
    if (p.slot == tx.slot) return "coin already spent in this block";
  return std::nullopt;
}

SubmitResult Operator::submit_tx(const Transaction& tx) {
  if (!config_.contains(tx.slot)) return {false, "slot out of range"};
  if (!mode_.deviates_for(tx.slot)) {
    if (auto reason = honest_check(tx)) return {false, *reason};
    pending_.push_back(tx);
    return {true, {}};
  }

  if (mode_.kind == OperatorMode::Kind::IncludeDoubleSpend) {
    // Colluding with a past owner: the spend must be validly signed by whoever
    // received the coin at `parent_block`, even if they spent it since.
    auto lineage = lineage_.find(tx.slot);
    if (lineage == lineage_.end()) return {false, "unknown coin"};
    const auto& entries = lineage->second;
    auto at = std::find_if(entries.begin(), entries.end(),
                           [&](const auto& e) { return e.first == tx.parent_block; });
    if (at == entries.end()) return {false, "parent is not an inclusion of this coin"};
    if (recover_signer(tx, *scheme_, config_.hash()) != at->second) return {false, "not signed by parent owner"};
  }
  pending_.push_back(tx);
  return {true, {}};
}

BlockNumber Operator::next_block_number() const { return (last_block_ / interval_ + 1) * interval_; }

const PlasmaBlock& Operator::produce_block() {
  const BlockNumber number = next_block_number();
  std::map<Slot, Transaction> txs;
  std::vector<Transaction> deferred;
  for (auto& tx : pending_) {
    if (txs.contains(tx.slot))
      deferred.push_back(std::move(tx));
    else
      txs.emplace(tx.slot, std::move(tx));
  }
  pending_ = std::move(deferred);

  for (const auto& [slot, tx] : txs) {
    ownership_.insert_or_assign(slot, Ownership{tx.new_owner, number});
    lineage_[slot].emplace_back(number, tx.new_owner);
  }
  PlasmaBlock block = PlasmaBlock::make(number, std::move(txs), config_);
  SparseMerkleTree tree = block.tree(config_);
  last_block_ = number;
  auto [it, inserted] = blocks_.insert_or_assign(number, Stored{std::move(block), std::move(tree)});
  return it->second.block;
}

const Operator::Stored& Operator::stored(BlockNumber block) const {
  auto it = blocks_.find(block);
  if (it == blocks_.end()) throw Error(ErrorCode::UnknownBlock, std::to_string(block));
  return it->second;
}

IncludedTx Operator::reveal_witness(Slot slot, BlockNumber block) const {
  const Stored& s = stored(block);
  IncludedTx itx;
  itx.block = block;
  if (auto it = s.block.txs.find(slot); it != s.block.txs.end()) itx.tx = it->second;
  if (compact_proofs_)
    itx.proof = s.tree.prove_compact(slot);
  else
    itx.proof = s.tree.prove(slot);
  return itx;
}

std::optional<IncludedTx> Operator::witness(Slot slot, BlockNumber block) const {
  stored(block);  // UnknownBlock takes precedence over withholding
  if (mode_.kind == OperatorMode::Kind::WithholdWitness && withheld_.contains({slot, block}))
    return std::nullopt;
  return reveal_witness(slot, block);
}

std::vector<Slot> Operator::challenge_spent_exits(PlasmaContract& contract) const {
  std::vector<Slot> challenged;
  std::vector<Slot> slots;
  for (const auto& [slot, exit] : contract.exits()) slots.push_back(slot);
  for (Slot slot : slots) {
    const Exit* exit = contract.exit(slot);
    if (!exit) continue;
    auto lineage = lineage_.find(slot);
    if (lineage == lineage_.end()) continue;
    for (const auto& [b, owner] : lineage->second) {
      if (b <= exit->exit.block) continue;
      const Transaction& tx = stored(b).block.txs.at(slot);
      if (tx.parent_block != exit->exit.block) continue;
      try {
        contract.challenge_after(address(), slot, reveal_witness(slot, b));
        challenged.push_back(slot);
      } catch (const Error&) {
        continue;
      }
      break;
    }
  }
  return challenged;
}

const PlasmaBlock& Operator::block(BlockNumber block) const { return stored(block).block; }

std::vector<BlockNumber> Operator::block_numbers() const {
  std::vector<BlockNumber> out;
  out.reserve(blocks_.size());
  for (const auto& [b, s] : blocks_) out.push_back(b);
  return out;
}

std::optional<Operator::Ownership> Operator::ownership(Slot slot) const {
  auto it = ownership_.find(slot);
  if (it == ownership_.end()) return std::nullopt;
  return it->second;
}

}  // namespace plasma
