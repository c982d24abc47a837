#include "plasma/smt.hpp"

#include <algorithm>
#include <bit>

#include "plasma/error.hpp"

namespace plasma {

namespace {

std::shared_ptr<const std::vector<Digest>> make_defaults(unsigned depth, const Digest& leaf,
                                                         HashFunction hash) {
  auto out = std::make_shared<std::vector<Digest>>();
  out->reserve(depth + 1);
  out->push_back(leaf);
  for (unsigned i = 0; i < depth; ++i) out->push_back(hash_pair(hash, out->back(), out->back()));
  return out;
}

void check_depth(unsigned depth) {
  if (depth < 1 || depth > SmtConfig::kMaxDepth)
    throw Error(ErrorCode::InvalidConfig, "depth must be in [1, 64], got " + std::to_string(depth));
}

Digest zero_leaf(HashFunction hash) {
  std::array<std::uint8_t, Digest::kSize> zeros{};
  return hash(zeros);
}

}  // namespace

SmtConfig::SmtConfig(unsigned depth, HashFunction hash)
    : SmtConfig(depth, zero_leaf(hash), hash) {}

SmtConfig::SmtConfig(unsigned depth, const Digest& default_leaf, HashFunction hash)
    : depth_(depth), hash_(hash) {
  check_depth(depth);
  defaults_ = make_defaults(depth, default_leaf, hash);
}

SparseMerkleTree SparseMerkleTree::build(const SmtConfig& config, const LeafMap& leaves) {
  SparseMerkleTree tree(config);
  tree.levels_.resize(config.depth() + 1);

  Level& bottom = tree.levels_[0];
  bottom.reserve(leaves.size());
  for (const auto& [slot, digest] : leaves) {
    if (!config.contains(slot))
      throw Error(ErrorCode::SlotOutOfRange, "slot " + std::to_string(slot));
    if (digest == config.default_leaf())
      throw Error(ErrorCode::LeafEqualsDefault, "slot " + std::to_string(slot));
    bottom.emplace_back(slot, digest);
  }

  const HashFunction hash = config.hash();
  for (unsigned level = 0; level < config.depth(); ++level) {
    const Level& below = tree.levels_[level];
    Level& above = tree.levels_[level + 1];
    above.reserve(below.size());
    const Digest& empty = config.default_at(level);
    for (std::size_t i = 0; i < below.size(); ++i) {
      const auto& [index, digest] = below[i];
      if ((index & 1) == 0) {
        const bool paired = i + 1 < below.size() && below[i + 1].first == (index | 1);
        above.emplace_back(index >> 1, hash_pair(hash, digest, paired ? below[i + 1].second : empty));
        if (paired) ++i;
      } else {
        above.emplace_back(index >> 1, hash_pair(hash, empty, digest));
      }
    }
  }
  return tree;
}

const Digest& SparseMerkleTree::root() const {
  const Level& top = levels_.back();
  return top.empty() ? config_.empty_root() : top.front().second;
}

const Digest* SparseMerkleTree::find(unsigned level, Slot index) const {
  const Level& nodes = levels_[level];
  auto it = std::lower_bound(nodes.begin(), nodes.end(), index,
                             [](const auto& node, Slot key) { return node.first < key; });
  if (it == nodes.end() || it->first != index) return nullptr;
  return &it->second;
}

std::optional<Digest> SparseMerkleTree::leaf(Slot slot) const {
  if (const Digest* d = find(0, slot)) return *d;
  return std::nullopt;
}

const Digest& SparseMerkleTree::leaf_or_default(Slot slot) const {
  const Digest* d = find(0, slot);
  return d ? *d : config_.default_leaf();
}

Proof SparseMerkleTree::prove(Slot slot) const {
  if (!config_.contains(slot)) throw Error(ErrorCode::SlotOutOfRange, "slot " + std::to_string(slot));
  Proof proof;
  proof.siblings.reserve(config_.depth());
  for (unsigned level = 0; level < config_.depth(); ++level) {
    const Digest* sibling = find(level, (slot >> level) ^ 1);
    proof.siblings.push_back(sibling ? *sibling : config_.default_at(level));
  }
  return proof;
}

CompactProof SparseMerkleTree::prove_compact(Slot slot) const {
  if (!config_.contains(slot)) throw Error(ErrorCode::SlotOutOfRange, "slot " + std::to_string(slot));
  CompactProof proof;
  for (unsigned level = 0; level < config_.depth(); ++level) {
    if (const Digest* sibling = find(level, (slot >> level) ^ 1)) {
      proof.bitfield |= std::uint64_t{1} << level;
      proof.siblings.push_back(*sibling);
    }
  }
  return proof;
}

Digest compute_root(Slot slot, const Digest& leaf, const Proof& proof, const SmtConfig& config) {
  if (proof.siblings.size() != config.depth())
    throw Error(ErrorCode::MalformedProof, "expected " + std::to_string(config.depth()) +
                                               " siblings, got " +
                                               std::to_string(proof.siblings.size()));
  Digest node = leaf;
  for (unsigned level = 0; level < config.depth(); ++level) {
    const Digest& sibling = proof.siblings[level];
    const Digest& empty = config.default_at(level);
    if (node == empty && sibling == empty)
      node = config.default_at(level + 1);
    else
      node = ((slot >> level) & 1) ? hash_pair(config.hash(), sibling, node)
                                   : hash_pair(config.hash(), node, sibling);
  }
  return node;
}

bool verify(Slot slot, const Digest& leaf, const Proof& proof, const Digest& root,
            const SmtConfig& config) {
  if (!config.contains(slot)) return false;
  return compute_root(slot, leaf, proof, config) == root;
}

bool verify(Slot slot, const Digest& leaf, const CompactProof& proof, const Digest& root,
            const SmtConfig& config) {
  return verify(slot, leaf, expand(proof, config), root, config);
}

CompactProof compact(const Proof& proof, const SmtConfig& config) {
  if (proof.siblings.size() != config.depth())
    throw Error(ErrorCode::MalformedProof, "proof length does not match depth");
  CompactProof out;
  for (unsigned level = 0; level < config.depth(); ++level) {
    if (proof.siblings[level] != config.default_at(level)) {
      out.bitfield |= std::uint64_t{1} << level;
      out.siblings.push_back(proof.siblings[level]);
    }
  }
  return out;
}

Proof expand(const CompactProof& proof, const SmtConfig& config) {
  if (config.depth() < 64 && (proof.bitfield >> config.depth()) != 0)
    throw Error(ErrorCode::BitfieldMismatch, "bits set beyond tree depth");
  if (static_cast<std::size_t>(std::popcount(proof.bitfield)) != proof.siblings.size())
    throw Error(ErrorCode::BitfieldMismatch, "popcount does not match sibling count");
  Proof out;
  out.siblings.reserve(config.depth());
  std::size_t next = 0;
  for (unsigned level = 0; level < config.depth(); ++level) {
    if ((proof.bitfield >> level) & 1)
      out.siblings.push_back(proof.siblings[next++]);
    else
      out.siblings.push_back(config.default_at(level));
  }
  return out;
}

Bytes serialize(const Proof& proof) {
  Bytes out;
  out.reserve(proof.siblings.size() * Digest::kSize);
  for (const auto& d : proof.siblings) out.insert(out.end(), d.bytes.begin(), d.bytes.end());
  return out;
}

Bytes serialize(const CompactProof& proof, const SmtConfig& config) {
  Bytes out;
  out.reserve(serialized_size(proof, config));
  for (std::size_t i = 0; i < config.bitfield_bytes(); ++i)
    out.push_back(static_cast<std::uint8_t>(proof.bitfield >> (8 * i)));
  for (const auto& d : proof.siblings) out.insert(out.end(), d.bytes.begin(), d.bytes.end());
  return out;
}

Proof parse_proof(ByteView data, const SmtConfig& config) {
  if (data.size() != config.depth() * Digest::kSize)
    throw Error(ErrorCode::MalformedProof, "naive proof has wrong byte length");
  Proof out;
  for (std::size_t off = 0; off < data.size(); off += Digest::kSize)
    out.siblings.push_back(Digest::from_bytes(data.subspan(off, Digest::kSize)));
  return out;
}

CompactProof parse_compact_proof(ByteView data, const SmtConfig& config) {
  const std::size_t head = config.bitfield_bytes();
  if (data.size() < head || (data.size() - head) % Digest::kSize != 0)
    throw Error(ErrorCode::MalformedProof, "compact proof has wrong byte length");
  CompactProof out;
  for (std::size_t i = 0; i < head; ++i) out.bitfield |= std::uint64_t{data[i]} << (8 * i);
  for (std::size_t off = head; off < data.size(); off += Digest::kSize)
    out.siblings.push_back(Digest::from_bytes(data.subspan(off, Digest::kSize)));
  if (static_cast<std::size_t>(std::popcount(out.bitfield)) != out.siblings.size())
    throw Error(ErrorCode::BitfieldMismatch, "popcount does not match sibling count");
  return out;
}

std::size_t serialized_size(const Proof& proof) { return proof.siblings.size() * Digest::kSize; }

std::size_t serialized_size(const CompactProof& proof, const SmtConfig& config) {
  return config.bitfield_bytes() + proof.siblings.size() * Digest::kSize;
}

}  // namespace plasma
