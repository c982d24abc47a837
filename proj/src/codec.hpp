#pragma once

// Byte-level helpers shared by the canonical encoders.

#include <cstdint>
#include <string>

#include "plasma/digest.hpp"
#include "plasma/error.hpp"

namespace plasma::codec {

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
  }
  void u64(std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
  }
  void raw(ByteView data) { out_.insert(out_.end(), data.begin(), data.end()); }
  void blob(ByteView data) {
    u32(static_cast<std::uint32_t>(data.size()));
    raw(data);
  }

  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(ByteView data) : data_(data) {}

  std::uint8_t u8() { return need(1)[0]; }
  std::uint32_t u32() {
    auto b = need(4);
    std::uint32_t v = 0;
    for (auto x : b) v = (v << 8) | x;
    return v;
  }
  std::uint64_t u64() {
    auto b = need(8);
    std::uint64_t v = 0;
    for (auto x : b) v = (v << 8) | x;
    return v;
  }
  ByteView raw(std::size_t n) { return need(n); }
  ByteView blob() { return need(u32()); }

  bool done() const { return pos_ == data_.size(); }
  std::size_t position() const { return pos_; }
  void expect_done() const {
    if (!done()) throw Error(ErrorCode::MalformedEncoding, "trailing bytes");
  }

 private:
  ByteView need(std::size_t n) {
    if (data_.size() - pos_ < n)
      throw Error(ErrorCode::MalformedEncoding,
                  "truncated input at offset " + std::to_string(pos_));
    auto view = data_.subspan(pos_, n);
    pos_ += n;
    return view;
  }

  ByteView data_;
  std::size_t pos_ = 0;
};

}  // namespace plasma::codec
