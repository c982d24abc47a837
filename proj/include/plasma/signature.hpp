#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string_view>

#include "plasma/core.hpp"

namespace plasma {

struct Signer {
  Address address;
  Bytes secret;
};

/// Recoverable signature contract: recover(h, sign(s, h)) == s.address.
class SignatureScheme {
 public:
  virtual ~SignatureScheme() = default;

  virtual Bytes sign(const Signer& signer, const Digest& message) const = 0;
  /// Throws MalformedSignature when no signer can be recovered.
  virtual Address recover(const Digest& message, ByteView signature) const = 0;
};

/// Deterministic simulation scheme: sig = address ‖ H(secret ‖ message).
/// Secrets are derived from a seed string and remembered in a keyring so that
/// recover() can check the binding; a signature replayed on another digest, or
/// issued by an unknown key, is rejected as malformed.
class TestSignatureScheme final : public SignatureScheme {
 public:
  static constexpr std::size_t kSignatureSize = Address::kSize + Digest::kSize;

  explicit TestSignatureScheme(HashFunction hash = sha256) : hash_(hash) {}

  /// Same seed, same signer. Registers the key.
  Signer create_signer(std::string_view seed);

  Bytes sign(const Signer& signer, const Digest& message) const override;
  Address recover(const Digest& message, ByteView signature) const override;

 private:
  Digest tag(ByteView secret, const Digest& message) const;

  HashFunction hash_;
  mutable std::mutex mutex_;
  std::map<Address, Bytes> keyring_;
};

/// Signs the transaction's hash in place and returns it.
Transaction sign_transaction(Transaction tx, const Signer& signer, const SignatureScheme& scheme,
                             HashFunction hash = sha256);

/// Recovered signer of a transaction, or nullopt when the signature is
/// malformed or does not bind to the transaction.
std::optional<Address> recover_signer(const Transaction& tx, const SignatureScheme& scheme,
                                      HashFunction hash = sha256);

}  // namespace plasma
