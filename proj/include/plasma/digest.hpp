#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace plasma {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Fixed 32-byte hash output.
struct Digest {
  static constexpr std::size_t kSize = 32;
  std::array<std::uint8_t, kSize> bytes{};

  auto operator<=>(const Digest&) const = default;

  ByteView view() const { return bytes; }
  std::string hex() const;
  static Digest from_hex(std::string_view hex);
  static Digest from_bytes(ByteView raw);
};

using HashFunction = Digest (*)(ByteView);

Digest sha256(ByteView data);

/// H(left ‖ right) under `hash`.
Digest hash_pair(HashFunction hash, const Digest& left, const Digest& right);

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);

}  // namespace plasma
