#include "plasma/history.hpp"

#include <algorithm>
#include <string>

#include "codec.hpp"
#include "plasma/error.hpp"

namespace plasma {

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::PartitionOverlap: return "PartitionOverlap";
    case RejectReason::PartitionGap: return "PartitionGap";
    case RejectReason::BadDepositProof: return "BadDepositProof";
    case RejectReason::BadInclusionProof: return "BadInclusionProof";
    case RejectReason::BrokenParentLink: return "BrokenParentLink";
    case RejectReason::BadSignature: return "BadSignature";
    case RejectReason::BadExclusionProof: return "BadExclusionProof";
  }
  return "Unknown";
}

std::vector<BlockNumber> RootView::blocks_from(BlockNumber deposit_block) const {
  auto first = std::lower_bound(blocks.begin(), blocks.end(), deposit_block);
  return {first, blocks.end()};
}

RootView RootView::up_to(BlockNumber head) const {
  RootView out;
  for (BlockNumber b : blocks) {
    if (b > head) break;
    out.blocks.push_back(b);
    if (auto it = roots.find(b); it != roots.end()) out.roots.emplace(b, it->second);
  }
  return out;
}

Verdict verify_history(const CoinHistory& history, const RootView& view, const Address& deposit_owner,
                       const SignatureScheme& scheme, const SmtConfig& config) {
  const std::vector<BlockNumber> blocks = view.blocks_from(history.deposit_block);
  if (blocks.empty() || blocks.front() != history.deposit_block)
    throw Error(ErrorCode::MissingRoot,
                "deposit block " + std::to_string(history.deposit_block) + " not in view");
  for (BlockNumber b : blocks)
    if (!view.roots.contains(b)) throw Error(ErrorCode::MissingRoot, "block " + std::to_string(b));

  // Partition: included and excluded keys are disjoint and together cover
  // exactly the committed blocks.
  for (const auto& [b, itx] : history.included)
    if (history.excluded.contains(b)) return Verdict::reject(RejectReason::PartitionOverlap, b);
  for (BlockNumber b : blocks)
    if (!history.included.contains(b) && !history.excluded.contains(b))
      return Verdict::reject(RejectReason::PartitionGap, b);
  for (const auto* part : {&history.included, &history.excluded})
    for (const auto& [b, itx] : *part)
      if (!std::binary_search(blocks.begin(), blocks.end(), b))
        return Verdict::reject(RejectReason::PartitionGap, b);

  const Slot slot = history.slot;
  auto deposit = history.included.find(history.deposit_block);
  if (deposit == history.included.end())
    return Verdict::reject(RejectReason::BadDepositProof, history.deposit_block);
  {
    const IncludedTx& itx = deposit->second;
    if (itx.block != history.deposit_block || itx.is_exclusion() || !itx.transaction().is_deposit() ||
        itx.transaction().new_owner != deposit_owner ||
        !verify_included(itx, slot, view.roots.at(itx.block), config))
      return Verdict::reject(RejectReason::BadDepositProof, history.deposit_block);
  }

  BlockNumber last_block = history.deposit_block;
  Address last_owner = deposit_owner;
  for (auto it = std::next(deposit); it != history.included.end(); ++it) {
    const auto& [b, itx] = *it;
    if (itx.block != b || itx.is_exclusion() || !verify_included(itx, slot, view.roots.at(b), config))
      return Verdict::reject(RejectReason::BadInclusionProof, b);
    if (itx.transaction().parent_block != last_block)
      return Verdict::reject(RejectReason::BrokenParentLink, b);
    if (recover_signer(itx.transaction(), scheme, config.hash()) != last_owner)
      return Verdict::reject(RejectReason::BadSignature, b);
    last_block = b;
    last_owner = itx.transaction().new_owner;
  }

  for (const auto& [b, itx] : history.excluded) {
    if (itx.block != b || !itx.is_exclusion() || !verify_included(itx, slot, view.roots.at(b), config))
      return Verdict::reject(RejectReason::BadExclusionProof, b);
  }
  return Verdict::accept();
}

CoinHistory build_history(Slot slot, BlockNumber deposit_block, const RootView& view,
                          const WitnessSource& source) {
  CoinHistory history;
  history.slot = slot;
  history.deposit_block = deposit_block;
  for (BlockNumber b : view.blocks_from(deposit_block)) {
    std::optional<IncludedTx> itx = source.witness(slot, b);
    if (!itx)
      throw Error(ErrorCode::WitnessUnavailable,
                  "slot " + std::to_string(slot) + " at block " + std::to_string(b));
    if (itx->is_exclusion())
      history.excluded.emplace(b, std::move(*itx));
    else
      history.included.emplace(b, std::move(*itx));
  }
  return history;
}

const IncludedTx& earliest_owner_filter(std::span<const IncludedTx> candidates) {
  if (candidates.empty()) throw Error(ErrorCode::EmptyCandidates);
  return *std::min_element(candidates.begin(), candidates.end(),
                           [](const IncludedTx& a, const IncludedTx& b) { return a.block < b.block; });
}

Bytes encode(const CoinHistory& history, const SmtConfig& config) {
  codec::Writer w;
  w.u64(history.slot);
  w.u64(history.deposit_block);
  for (const auto* part : {&history.included, &history.excluded}) {
    w.u32(static_cast<std::uint32_t>(part->size()));
    for (const auto& [b, itx] : *part) w.blob(encode(itx, config));
  }
  return w.take();
}

CoinHistory decode_history(ByteView data, const SmtConfig& config) {
  codec::Reader r(data);
  CoinHistory history;
  history.slot = r.u64();
  history.deposit_block = r.u64();
  for (auto* part : {&history.included, &history.excluded}) {
    const std::uint32_t count = r.u32();
    for (std::uint32_t i = 0; i < count; ++i) {
      IncludedTx itx = decode_included_tx(r.blob(), config);
      const BlockNumber b = itx.block;
      if (!part->emplace(b, std::move(itx)).second)
        throw Error(ErrorCode::MalformedEncoding, "duplicate block " + std::to_string(b));
    }
  }
  r.expect_done();
  return history;
}

}  // namespace plasma
