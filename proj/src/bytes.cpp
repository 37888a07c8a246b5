#include "qnio/bytes.hpp"

#include <bit>
#include <stdexcept>

#include "qnio/errors.hpp"

namespace qnio {

Bytes to_bytes(std::string_view text) { return Bytes(text.begin(), text.end()); }
Bytes to_bytes(ByteView view) { return Bytes(view.begin(), view.end()); }
std::string to_string(ByteView view) { return std::string(view.begin(), view.end()); }

std::string hex(ByteView data) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 15]);
  }
  return out;
}

namespace {
int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw DecodeError("bad hex digit");
}
}  // namespace

Bytes from_hex(std::string_view text) {
  if (text.size() % 2) throw DecodeError("odd hex length");
  Bytes out(text.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>(nibble(text[2 * i]) << 4 | nibble(text[2 * i + 1]));
  return out;
}

Key16 key16(ByteView data) {
  if (data.size() != 16) throw DecodeError("expected 16 bytes");
  Key16 k;
  std::copy(data.begin(), data.end(), k.begin());
  return k;
}

Bytes xor_bytes(ByteView a, ByteView b) {
  if (a.size() != b.size()) throw std::invalid_argument("xor of unequal lengths");
  Bytes out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

Bytes be32(std::uint32_t v) { return Writer().u32(v).take(); }
Bytes be64(std::uint64_t v) { return Writer().u64(v).take(); }

// ---- BitString ----

BitString::BitString(unsigned width, std::uint64_t value) : width_(width), value_(value) {
  if (width > 64) throw DomainMismatch("bit string wider than 64");
  if (width < 64 && (value >> width) != 0) throw DomainMismatch("value exceeds width");
}

BitString BitString::parse(std::string_view text) {
  std::uint64_t v = 0;
  for (char c : text) {
    if (c != '0' && c != '1') throw DecodeError("bit string must be 0/1");
    v = v << 1 | static_cast<std::uint64_t>(c - '0');
  }
  return BitString(static_cast<unsigned>(text.size()), v);
}

BitString BitString::from_bytes(ByteView data, unsigned width) {
  if (data.size() != (width + 7) / 8) throw DomainMismatch("byte length does not match width");
  std::uint64_t v = 0;
  for (auto b : data) v = v << 8 | b;
  return BitString(width, v);
}

int BitString::bit(unsigned i) const {
  if (i >= width_) throw DomainMismatch("bit index out of range");
  return static_cast<int>((value_ >> (width_ - 1 - i)) & 1);
}

BitString BitString::with_bit(unsigned i, int b) const {
  if (i >= width_) throw DomainMismatch("bit index out of range");
  std::uint64_t mask = std::uint64_t{1} << (width_ - 1 - i);
  return BitString(width_, b ? (value_ | mask) : (value_ & ~mask));
}

BitString BitString::widened(unsigned width) const {
  if (width < width_) throw DomainMismatch("cannot narrow a bit string");
  return BitString(width, value_);
}

unsigned BitString::popcount() const { return static_cast<unsigned>(std::popcount(value_)); }

std::string BitString::text() const {
  std::string s;
  for (unsigned i = 0; i < width_; ++i) s.push_back(static_cast<char>('0' + bit(i)));
  return s;
}

Bytes BitString::bytes() const {
  Bytes out((width_ + 7) / 8);
  std::uint64_t v = value_;
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  return out;
}

// ---- Writer / Reader ----

Writer& Writer::u8(std::uint8_t v) {
  out_.push_back(v);
  return *this;
}
Writer& Writer::u16(std::uint16_t v) {
  out_.push_back(static_cast<std::uint8_t>(v >> 8));
  out_.push_back(static_cast<std::uint8_t>(v));
  return *this;
}
Writer& Writer::u32(std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
  return *this;
}
Writer& Writer::u64(std::uint64_t v) {
  for (int s = 56; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
  return *this;
}
Writer& Writer::raw(ByteView data) {
  out_.insert(out_.end(), data.begin(), data.end());
  return *this;
}
Writer& Writer::blob(ByteView data) {
  u32(static_cast<std::uint32_t>(data.size()));
  return raw(data);
}
Writer& Writer::str(std::string_view s) {
  return blob(ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}
Writer& Writer::bits(const BitString& b) {
  u8(static_cast<std::uint8_t>(b.width()));
  return u64(b.value());
}

ByteView Reader::take(std::size_t n) {
  if (n > in_.size() - pos_) throw DecodeError("truncated input");
  auto view = in_.subspan(pos_, n);
  pos_ += n;
  return view;
}
std::uint8_t Reader::u8() { return take(1)[0]; }
std::uint16_t Reader::u16() {
  auto v = take(2);
  return static_cast<std::uint16_t>(v[0] << 8 | v[1]);
}
std::uint32_t Reader::u32() {
  std::uint32_t r = 0;
  for (auto b : take(4)) r = r << 8 | b;
  return r;
}
std::uint64_t Reader::u64() {
  std::uint64_t r = 0;
  for (auto b : take(8)) r = r << 8 | b;
  return r;
}
Bytes Reader::raw(std::size_t n) { return to_bytes(take(n)); }
Key16 Reader::key() { return key16(take(16)); }
Digest Reader::digest() {
  Digest d;
  auto v = take(32);
  std::copy(v.begin(), v.end(), d.begin());
  return d;
}
Bytes Reader::blob() { return raw(u32()); }
std::string Reader::str() { return to_string(take(u32())); }
BitString Reader::bits() {
  unsigned w = u8();
  std::uint64_t v = u64();
  try {
    return BitString(w, v);
  } catch (const DomainMismatch&) {
    throw DecodeError("bit string out of range");
  }
}
void Reader::expect_end() const {
  if (!done()) throw DecodeError("trailing bytes");
}

}  // namespace qnio
