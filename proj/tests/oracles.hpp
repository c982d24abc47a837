#pragma once
// Independent reference implementations used only by tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <openssl/evp.h>

#include "plasma/core.hpp"
#include "plasma/history.hpp"
#include "plasma/operator.hpp"
#include "plasma/signature.hpp"

namespace oracle {

using plasma::Digest;
using plasma::Slot;

/// SHA-256 through OpenSSL's one-shot EVP API, bypassing the library's hash.
inline Digest sha256(const std::vector<std::uint8_t>& data) {
  Digest d;
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), d.bytes.data(), &len, EVP_sha256(), nullptr);
  return d;
}

inline Digest pair(const Digest& l, const Digest& r) {
  std::vector<std::uint8_t> buf(l.bytes.begin(), l.bytes.end());
  buf.insert(buf.end(), r.bytes.begin(), r.bytes.end());
  return sha256(buf);
}

inline Digest zero_leaf() { return sha256(std::vector<std::uint8_t>(32, 0)); }

/// Full binary tree with every one of the 2^depth leaves materialised.
class DenseTree {
 public:
  DenseTree(unsigned depth, const std::map<Slot, Digest>& leaves) : depth_(depth) {
    std::vector<Digest> level(std::size_t{1} << depth, zero_leaf());
    for (const auto& [slot, leaf] : leaves) level.at(slot) = leaf;
    levels_.push_back(level);
    while (levels_.back().size() > 1) {
      const auto& below = levels_.back();
      std::vector<Digest> up(below.size() / 2);
      for (std::size_t i = 0; i < up.size(); ++i) up[i] = pair(below[2 * i], below[2 * i + 1]);
      levels_.push_back(std::move(up));
    }
  }

  const Digest& root() const { return levels_.back().front(); }

  std::vector<Digest> proof(Slot slot) const {
    std::vector<Digest> siblings;
    for (unsigned level = 0; level < depth_; ++level) siblings.push_back(levels_[level][(slot >> level) ^ 1]);
    return siblings;
  }

 private:
  unsigned depth_;
  std::vector<std::vector<Digest>> levels_;
};

/// Canonical transaction bytes assembled by hand: slot, parent, owner.
inline std::vector<std::uint8_t> tx_bytes(const plasma::Transaction& tx) {
  std::vector<std::uint8_t> out;
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(tx.slot >> (8 * i)));
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(tx.parent_block >> (8 * i)));
  out.insert(out.end(), tx.new_owner.bytes.begin(), tx.new_owner.bytes.end());
  return out;
}

/// Block-replay judge for a coin history. It never checks a Merkle proof:
/// a history is valid iff every entry matches, byte for byte, what the
/// operator actually committed (proofs are unique per tree), and replaying
/// the committed transactions keeps a consistent chain of owners.
inline bool replay_accepts(const plasma::CoinHistory& h, const std::vector<plasma::BlockNumber>& blocks,
                           const plasma::Operator& op, const plasma::Address& deposit_owner,
                           const plasma::SignatureScheme& scheme) {
  const auto& config = op.smt_config();
  std::vector<plasma::BlockNumber> keys;
  for (const auto& [b, itx] : h.included) keys.push_back(b);
  for (const auto& [b, itx] : h.excluded) keys.push_back(b);
  std::sort(keys.begin(), keys.end());
  if (keys != blocks) return false;  // gap, overlap or foreign block

  plasma::Address owner = deposit_owner;
  plasma::BlockNumber last = h.deposit_block;
  for (plasma::BlockNumber b : blocks) {
    const auto& committed = op.block(b).txs;
    const auto truth = op.reveal_witness(h.slot, b);
    const bool included = h.included.contains(b);
    const plasma::IncludedTx& entry = included ? h.included.at(b) : h.excluded.at(b);
    if (entry.block != b) return false;
    if (plasma::as_naive(entry.proof, config).siblings != plasma::as_naive(truth.proof, config).siblings)
      return false;
    auto it = committed.find(h.slot);
    if (!included) {
      if (it != committed.end() || entry.tx) return false;
      continue;
    }
    if (it == committed.end() || !entry.tx) return false;
    // Only the hashed fields are committed.
    if (tx_bytes(*entry.tx) != tx_bytes(it->second)) return false;
    if (b == h.deposit_block) {
      if (!entry.tx->is_deposit() || entry.tx->new_owner != deposit_owner) return false;
      continue;
    }
    if (entry.tx->parent_block != last) return false;
    std::optional<plasma::Address> signer;
    try {
      signer = scheme.recover(sha256(tx_bytes(*entry.tx)), entry.tx->signature);
    } catch (const std::exception&) {
      return false;
    }
    if (signer != owner) return false;
    owner = entry.tx->new_owner;
    last = b;
  }
  return true;
}

/// Ordinary least squares; returns R^2.
inline double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  const double mean = sy / n;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double fit = intercept + slope * x[i];
    ss_res += (y[i] - fit) * (y[i] - fit);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  return ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
}

}  // namespace oracle
