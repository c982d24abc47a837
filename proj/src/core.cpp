#include "plasma/core.hpp"

#include <algorithm>

#include "codec.hpp"
#include "plasma/error.hpp"

namespace plasma {

Address Address::from_hex(std::string_view hex) {
  Bytes raw = plasma::from_hex(hex);
  if (raw.size() != kSize) throw Error(ErrorCode::MalformedEncoding, "address must be 20 bytes");
  Address a;
  std::copy(raw.begin(), raw.end(), a.bytes.begin());
  return a;
}

Bytes signing_bytes(const Transaction& tx) {
  codec::Writer w;
  w.u64(tx.slot);
  w.u64(tx.parent_block);
  w.raw(tx.new_owner.bytes);
  return w.take();
}

Digest tx_hash(const Transaction& tx, HashFunction hash) { return hash(signing_bytes(tx)); }

Proof as_naive(const AnyProof& proof, const SmtConfig& config) {
  if (const auto* naive = std::get_if<Proof>(&proof)) return *naive;
  return expand(std::get<CompactProof>(proof), config);
}

std::size_t serialized_size(const AnyProof& proof, const SmtConfig& config) {
  if (const auto* naive = std::get_if<Proof>(&proof)) return serialized_size(*naive);
  return serialized_size(std::get<CompactProof>(proof), config);
}

Digest leaf_digest(const IncludedTx& itx, const SmtConfig& config) {
  return itx.tx ? tx_hash(*itx.tx, config.hash()) : config.default_leaf();
}

bool verify_included(const IncludedTx& itx, Slot slot, const Digest& root, const SmtConfig& config) {
  if (itx.tx && itx.tx->slot != slot) return false;
  try {
    return verify(slot, leaf_digest(itx, config), as_naive(itx.proof, config), root, config);
  } catch (const Error&) {
    // Malformed proofs from untrusted parties simply fail verification.
    return false;
  }
}

SparseMerkleTree::LeafMap leaves_of(const std::map<Slot, Transaction>& txs, HashFunction hash) {
  SparseMerkleTree::LeafMap leaves;
  for (const auto& [slot, tx] : txs) leaves.emplace_hint(leaves.end(), slot, tx_hash(tx, hash));
  return leaves;
}

PlasmaBlock PlasmaBlock::make(BlockNumber number, std::map<Slot, Transaction> txs,
                              const SmtConfig& config) {
  for (const auto& [slot, tx] : txs)
    if (tx.slot != slot)
      throw Error(ErrorCode::DuplicateSlot, "transaction for slot " + std::to_string(tx.slot) +
                                                " filed under " + std::to_string(slot));
  PlasmaBlock block;
  block.number = number;
  block.root = SparseMerkleTree::build(config, leaves_of(txs, config.hash())).root();
  block.txs = std::move(txs);
  return block;
}

SparseMerkleTree PlasmaBlock::tree(const SmtConfig& config) const {
  return SparseMerkleTree::build(config, leaves_of(txs, config.hash()));
}

namespace {

void write_tx(codec::Writer& w, const Transaction& tx) {
  w.u64(tx.slot);
  w.u64(tx.parent_block);
  w.raw(tx.new_owner.bytes);
  w.blob(tx.signature);
}

Transaction read_tx(codec::Reader& r) {
  Transaction tx;
  tx.slot = r.u64();
  tx.parent_block = r.u64();
  auto owner = r.raw(Address::kSize);
  std::copy(owner.begin(), owner.end(), tx.new_owner.bytes.begin());
  auto sig = r.blob();
  tx.signature.assign(sig.begin(), sig.end());
  return tx;
}

constexpr std::uint8_t kNaiveProof = 0;
constexpr std::uint8_t kCompactProof = 1;

}  // namespace

Bytes encode(const Transaction& tx) {
  codec::Writer w;
  write_tx(w, tx);
  return w.take();
}

Transaction decode_transaction(ByteView data) {
  codec::Reader r(data);
  Transaction tx = read_tx(r);
  r.expect_done();
  return tx;
}

Bytes encode(const IncludedTx& itx, const SmtConfig& config) {
  codec::Writer w;
  w.u64(itx.block);
  w.u8(itx.tx ? 1 : 0);
  if (itx.tx) write_tx(w, *itx.tx);
  if (const auto* naive = std::get_if<Proof>(&itx.proof)) {
    w.u8(kNaiveProof);
    w.blob(serialize(*naive));
  } else {
    w.u8(kCompactProof);
    w.blob(serialize(std::get<CompactProof>(itx.proof), config));
  }
  return w.take();
}

IncludedTx decode_included_tx(ByteView data, const SmtConfig& config) {
  codec::Reader r(data);
  IncludedTx itx;
  itx.block = r.u64();
  switch (r.u8()) {
    case 0: break;
    case 1: itx.tx = read_tx(r); break;
    default: throw Error(ErrorCode::MalformedEncoding, "bad transaction presence flag");
  }
  const std::uint8_t kind = r.u8();
  ByteView body = r.blob();
  if (kind == kNaiveProof)
    itx.proof = parse_proof(body, config);
  else if (kind == kCompactProof)
    itx.proof = parse_compact_proof(body, config);
  else
    throw Error(ErrorCode::MalformedEncoding, "bad proof kind");
  r.expect_done();
  return itx;
}

Bytes encode(const PlasmaBlock& block) {
  codec::Writer w;
  w.u64(block.number);
  w.u32(static_cast<std::uint32_t>(block.txs.size()));
  for (const auto& [slot, tx] : block.txs) write_tx(w, tx);
  w.raw(block.root.bytes);
  return w.take();
}

PlasmaBlock decode_block(ByteView data) {
  codec::Reader r(data);
  PlasmaBlock block;
  block.number = r.u64();
  const std::uint32_t count = r.u32();
  Slot previous = 0;
  for (std::uint32_t i = 0; i < count; ++i) {
    Transaction tx = read_tx(r);
    // Canonical form lists slots strictly ascending.
    if (i > 0 && tx.slot <= previous)
      throw Error(ErrorCode::MalformedEncoding, "block transactions not strictly ordered by slot");
    previous = tx.slot;
    block.txs.emplace_hint(block.txs.end(), tx.slot, std::move(tx));
  }
  block.root = Digest::from_bytes(r.raw(Digest::kSize));
  r.expect_done();
  return block;
}

}  // namespace plasma
