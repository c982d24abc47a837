#pragma once

#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "plasma/core.hpp"
#include "plasma/signature.hpp"

namespace plasma {

/// Everything a receiver needs to check one coin: the inclusion of every
/// spend since deposit and the exclusion of the coin from every other block.
struct CoinHistory {
  Slot slot = 0;
  BlockNumber deposit_block = 0;
  std::map<BlockNumber, IncludedTx> included;
  std::map<BlockNumber, IncludedTx> excluded;

  bool operator==(const CoinHistory&) const = default;

  /// Owner after the last included spend.
  const Address& current_owner() const { return included.rbegin()->second.transaction().new_owner; }
  BlockNumber last_inclusion() const { return included.rbegin()->first; }
};

/// Root-chain commitments as seen by a verifier. `blocks` lists, in ascending
/// order, the block numbers a coin's history must account for.
struct RootView {
  std::map<BlockNumber, Digest> roots;
  std::vector<BlockNumber> blocks;

  /// Blocks at or after `deposit_block`.
  std::vector<BlockNumber> blocks_from(BlockNumber deposit_block) const;
  /// Copy truncated to blocks at or before `head`.
  RootView up_to(BlockNumber head) const;
};

enum class RejectReason {
  PartitionOverlap,
  PartitionGap,
  BadDepositProof,
  BadInclusionProof,
  BrokenParentLink,
  BadSignature,
  BadExclusionProof,
};

std::string_view to_string(RejectReason reason);

struct Verdict {
  std::optional<RejectReason> reason;
  BlockNumber block = 0;  // where the first failed check happened

  bool accepted() const { return !reason.has_value(); }
  static Verdict accept() { return {}; }
  static Verdict reject(RejectReason r, BlockNumber at) { return {r, at}; }
};

/// Full history check. Throws MissingRoot when the view cannot cover the
/// history; every failed check is a reject with a reason instead.
Verdict verify_history(const CoinHistory& history, const RootView& view, const Address& deposit_owner,
                       const SignatureScheme& scheme, const SmtConfig& config);

/// Source of per-block witnesses for a slot. Returns nullopt when the data is
/// being withheld; throws UnknownBlock for blocks it never produced.
class WitnessSource {
 public:
  virtual ~WitnessSource() = default;
  virtual std::optional<IncludedTx> witness(Slot slot, BlockNumber block) const = 0;
};

/// Collects witnesses for every block in `view` from `deposit_block` on.
/// Throws WitnessUnavailable if any is withheld.
CoinHistory build_history(Slot slot, BlockNumber deposit_block, const RootView& view,
                          const WitnessSource& source);

/// Among spends of the same parent, the one included first is the only
/// legitimate one. Throws EmptyCandidates.
const IncludedTx& earliest_owner_filter(std::span<const IncludedTx> candidates);

Bytes encode(const CoinHistory& history, const SmtConfig& config);
CoinHistory decode_history(ByteView data, const SmtConfig& config);

}  // namespace plasma
