#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qnio {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using Key16 = std::array<std::uint8_t, 16>;
using Digest = std::array<std::uint8_t, 32>;

inline constexpr std::size_t kLambdaBytes = 16;

Bytes to_bytes(std::string_view text);
Bytes to_bytes(ByteView view);
std::string to_string(ByteView view);
std::string hex(ByteView data);
Bytes from_hex(std::string_view text);
Key16 key16(ByteView data);  // requires exactly 16 bytes
Bytes xor_bytes(ByteView a, ByteView b);
Bytes be32(std::uint32_t v);
Bytes be64(std::uint64_t v);

template <typename... Parts>
Bytes concat(const Parts&... parts) {
  Bytes out;
  (out.insert(out.end(), std::begin(parts), std::end(parts)), ...);
  return out;
}

// Fixed-width bit string with the first bit being the most significant.
// Used for statements, attributes and GGM inputs (width <= 32).
class BitString {
 public:
  BitString() = default;
  BitString(unsigned width, std::uint64_t value);
  static BitString parse(std::string_view text);  // e.g. "101"
  static BitString from_bytes(ByteView data, unsigned width);

  unsigned width() const { return width_; }
  std::uint64_t value() const { return value_; }
  int bit(unsigned i) const;  // i-th bit from the left
  BitString with_bit(unsigned i, int b) const;
  BitString widened(unsigned width) const;  // zero-extended on the left
  unsigned popcount() const;
  std::string text() const;
  Bytes bytes() const;  // ceil(width/8) bytes, big-endian

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  unsigned width_ = 0;
  std::uint64_t value_ = 0;
};

// Big-endian, length-prefixed canonical encoder.
class Writer {
 public:
  Writer& u8(std::uint8_t v);
  Writer& u16(std::uint16_t v);
  Writer& u32(std::uint32_t v);
  Writer& u64(std::uint64_t v);
  Writer& raw(ByteView data);
  Writer& blob(ByteView data);  // u32 length + bytes
  Writer& str(std::string_view s);
  Writer& bits(const BitString& b);
  const Bytes& data() const { return out_; }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(ByteView in) : in_(in) {}
  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  Bytes raw(std::size_t n);
  Key16 key();
  Digest digest();
  Bytes blob();
  std::string str();
  BitString bits();
  bool done() const { return pos_ == in_.size(); }
  void expect_end() const;

 private:
  ByteView take(std::size_t n);
  ByteView in_;
  std::size_t pos_ = 0;
};

}  // namespace qnio
