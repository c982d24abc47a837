#include "plasma/signature.hpp"

#include <algorithm>
#include <string>

#include "plasma/error.hpp"

namespace plasma {

namespace {
Bytes tagged(std::string_view label, ByteView payload) {
  Bytes out(label.begin(), label.end());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}
}  // namespace

Signer TestSignatureScheme::create_signer(std::string_view seed) {
  const auto* seed_bytes = reinterpret_cast<const std::uint8_t*>(seed.data());
  Digest secret = hash_(tagged("plasma-cash/secret/", ByteView(seed_bytes, seed.size())));
  Digest id = hash_(tagged("plasma-cash/address/", secret.bytes));

  Signer signer;
  std::copy_n(id.bytes.begin(), Address::kSize, signer.address.bytes.begin());
  signer.secret.assign(secret.bytes.begin(), secret.bytes.end());

  std::lock_guard lock(mutex_);
  keyring_.insert_or_assign(signer.address, signer.secret);
  return signer;
}

Digest TestSignatureScheme::tag(ByteView secret, const Digest& message) const {
  Bytes buf(secret.begin(), secret.end());
  buf.insert(buf.end(), message.bytes.begin(), message.bytes.end());
  return hash_(buf);
}

Bytes TestSignatureScheme::sign(const Signer& signer, const Digest& message) const {
  Bytes sig(signer.address.bytes.begin(), signer.address.bytes.end());
  Digest t = tag(signer.secret, message);
  sig.insert(sig.end(), t.bytes.begin(), t.bytes.end());
  return sig;
}

Address TestSignatureScheme::recover(const Digest& message, ByteView signature) const {
  if (signature.empty()) throw Error(ErrorCode::MalformedSignature, "empty signature");
  if (signature.size() != kSignatureSize)
    throw Error(ErrorCode::MalformedSignature, "signature must be 52 bytes");

  Address claimed;
  std::copy_n(signature.begin(), Address::kSize, claimed.bytes.begin());

  Bytes secret;
  {
    std::lock_guard lock(mutex_);
    auto it = keyring_.find(claimed);
    if (it == keyring_.end()) throw Error(ErrorCode::MalformedSignature, "unknown signer");
    secret = it->second;
  }
  const Digest expected = tag(secret, message);
  if (!std::equal(expected.bytes.begin(), expected.bytes.end(), signature.begin() + Address::kSize))
    throw Error(ErrorCode::MalformedSignature, "signature does not bind to message");
  return claimed;
}

Transaction sign_transaction(Transaction tx, const Signer& signer, const SignatureScheme& scheme,
                             HashFunction hash) {
  tx.signature = scheme.sign(signer, tx_hash(tx, hash));
  return tx;
}

std::optional<Address> recover_signer(const Transaction& tx, const SignatureScheme& scheme,
                                      HashFunction hash) {
  try {
    return scheme.recover(tx_hash(tx, hash), tx.signature);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace plasma
