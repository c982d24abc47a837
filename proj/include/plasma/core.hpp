#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "plasma/digest.hpp"
#include "plasma/smt.hpp"

namespace plasma {

using BlockNumber = std::uint64_t;

struct Address {
  static constexpr std::size_t kSize = 20;
  std::array<std::uint8_t, kSize> bytes{};

  auto operator<=>(const Address&) const = default;

  bool is_zero() const { return *this == Address{}; }
  std::string hex() const { return to_hex(bytes); }
  static Address from_hex(std::string_view hex);
};

/// Tx(slot, parentBlock, newOwner, prevOwnerSignature). Deposits have
/// parent_block == 0 and an empty signature.
struct Transaction {
  Slot slot = 0;
  BlockNumber parent_block = 0;
  Address new_owner;
  Bytes signature;

  bool operator==(const Transaction&) const = default;
  bool is_deposit() const { return parent_block == 0; }
};

inline Transaction make_deposit_tx(Slot slot, const Address& owner) { return {slot, 0, owner, {}}; }

/// The 36 signed bytes: slot ‖ parent_block ‖ new_owner, integers big-endian.
Bytes signing_bytes(const Transaction& tx);
/// Digest of signing_bytes(); the signature does not contribute.
Digest tx_hash(const Transaction& tx, HashFunction hash = sha256);

using AnyProof = std::variant<Proof, CompactProof>;

Proof as_naive(const AnyProof& proof, const SmtConfig& config);
std::size_t serialized_size(const AnyProof& proof, const SmtConfig& config);

/// A transaction together with its (non-)inclusion proof at `block`. An
/// exclusion carries no transaction and proves the default leaf.
struct IncludedTx {
  std::optional<Transaction> tx;
  BlockNumber block = 0;
  AnyProof proof;

  bool operator==(const IncludedTx&) const = default;
  bool is_exclusion() const { return !tx.has_value(); }
  const Transaction& transaction() const { return *tx; }
};

/// Leaf committed at the transaction's slot: tx_hash, or the default leaf for
/// an exclusion.
Digest leaf_digest(const IncludedTx& itx, const SmtConfig& config);

/// Checks the proof against `root` at the given slot.
bool verify_included(const IncludedTx& itx, Slot slot, const Digest& root, const SmtConfig& config);

/// One block of the child chain. Keyed by slot: at most one spend per coin.
struct PlasmaBlock {
  BlockNumber number = 0;
  std::map<Slot, Transaction> txs;
  Digest root;

  bool operator==(const PlasmaBlock&) const = default;

  /// Builds the block and computes its root. Throws DuplicateSlot when a
  /// transaction is filed under a key that differs from its own slot.
  static PlasmaBlock make(BlockNumber number, std::map<Slot, Transaction> txs,
                          const SmtConfig& config);
  SparseMerkleTree tree(const SmtConfig& config) const;
};

SparseMerkleTree::LeafMap leaves_of(const std::map<Slot, Transaction>& txs, HashFunction hash);

// Canonical encodings: fixed-width big-endian integers, fields in order.
// Variable-length fields carry a u32 length prefix.
Bytes encode(const Transaction& tx);
Bytes encode(const IncludedTx& itx, const SmtConfig& config);
Bytes encode(const PlasmaBlock& block);

Transaction decode_transaction(ByteView data);
IncludedTx decode_included_tx(ByteView data, const SmtConfig& config);
PlasmaBlock decode_block(ByteView data);

}  // namespace plasma
