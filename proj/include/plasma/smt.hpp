#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "plasma/digest.hpp"

namespace plasma {

using Slot = std::uint64_t;

/// Shape of a sparse Merkle tree: height, empty-slot marker and node hash.
/// The per-level default digests are computed once on construction and shared
/// between copies.
class SmtConfig {
 public:
  static constexpr unsigned kMaxDepth = 64;

  /// Default leaf is H(32 zero bytes) under `hash`.
  explicit SmtConfig(unsigned depth = kMaxDepth, HashFunction hash = sha256);
  SmtConfig(unsigned depth, const Digest& default_leaf, HashFunction hash = sha256);

  unsigned depth() const { return depth_; }
  HashFunction hash() const { return hash_; }
  const Digest& default_leaf() const { return (*defaults_)[0]; }
  /// Root of an all-empty subtree of height `level` (0 = leaf).
  const Digest& default_at(unsigned level) const { return (*defaults_)[level]; }
  const Digest& empty_root() const { return (*defaults_)[depth_]; }

  bool contains(Slot slot) const { return depth_ == kMaxDepth || slot < (Slot{1} << depth_); }
  /// Bytes needed to carry one bit per level.
  std::size_t bitfield_bytes() const { return (depth_ + 7) / 8; }

 private:
  unsigned depth_;
  HashFunction hash_;
  std::shared_ptr<const std::vector<Digest>> defaults_;
};

/// Sibling digests along a leaf-to-root path, leaf-adjacent first.
struct Proof {
  std::vector<Digest> siblings;
  bool operator==(const Proof&) const = default;
};

/// Proof with default siblings elided. Bit i of `bitfield` is set iff the
/// sibling at level i is non-default; `siblings` holds only those, in level
/// order.
struct CompactProof {
  std::uint64_t bitfield = 0;
  std::vector<Digest> siblings;
  bool operator==(const CompactProof&) const = default;
};

class SparseMerkleTree {
 public:
  using LeafMap = std::map<Slot, Digest>;

  /// Throws SlotOutOfRange or LeafEqualsDefault.
  static SparseMerkleTree build(const SmtConfig& config, const LeafMap& leaves);

  const SmtConfig& config() const { return config_; }
  const Digest& root() const;
  std::size_t size() const { return levels_.front().size(); }

  std::optional<Digest> leaf(Slot slot) const;
  /// Leaf digest, or the default leaf for an empty slot.
  const Digest& leaf_or_default(Slot slot) const;

  /// Works for empty slots too; the result proves the default leaf.
  Proof prove(Slot slot) const;
  CompactProof prove_compact(Slot slot) const;

 private:
  using Level = std::vector<std::pair<Slot, Digest>>;

  explicit SparseMerkleTree(SmtConfig config) : config_(std::move(config)) {}
  const Digest* find(unsigned level, Slot index) const;

  SmtConfig config_;
  // levels_[i] holds every non-default node at height i, sorted by index.
  std::vector<Level> levels_;
};

/// Folds `leaf` up the path selected by the bits of `slot` (bit 0 at the leaf
/// level, set = right child). Throws MalformedProof on a length mismatch.
Digest compute_root(Slot slot, const Digest& leaf, const Proof& proof, const SmtConfig& config);

bool verify(Slot slot, const Digest& leaf, const Proof& proof, const Digest& root,
            const SmtConfig& config);
bool verify(Slot slot, const Digest& leaf, const CompactProof& proof, const Digest& root,
            const SmtConfig& config);

CompactProof compact(const Proof& proof, const SmtConfig& config);
/// Throws BitfieldMismatch when popcount and sibling count disagree or bits
/// beyond the tree depth are set.
Proof expand(const CompactProof& proof, const SmtConfig& config);

// Wire forms. Proof: concatenated siblings. CompactProof: little-endian
// bitfield of ceil(depth/8) bytes followed by the non-default siblings.
Bytes serialize(const Proof& proof);
Bytes serialize(const CompactProof& proof, const SmtConfig& config);
Proof parse_proof(ByteView data, const SmtConfig& config);
CompactProof parse_compact_proof(ByteView data, const SmtConfig& config);

std::size_t serialized_size(const Proof& proof);
std::size_t serialized_size(const CompactProof& proof, const SmtConfig& config);

}  // namespace plasma
