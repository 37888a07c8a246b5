#include "qnio/qfhe.hpp"

#include <algorithm>

#include "qnio/hash.hpp"

namespace qnio {

namespace {

constexpr std::string_view kWrapLabel = "qfhe-wrap";
constexpr std::size_t kMinBucket = 64;

Key16 key_id_of(const Key16& sk) { return truncate16(sha256(concat(to_bytes("qfhe-id"), sk))); }

std::size_t bucket(std::size_t n) {
  std::size_t b = kMinBucket;
  while (b < n) b *= 2;
  return b;
}

Bytes keystream(const Key16& sk, const Key16& nonce, std::size_t n) {
  Drbg stream(concat(to_bytes("qfhe-stream"), sk, nonce));
  return stream.bytes(n);
}

Key16 tag_of(const Key16& sk, const Key16& key_id, const Key16& nonce, std::uint8_t depth, ByteView body) {
  Writer w;
  w.raw(key_id).raw(nonce).u8(depth).blob(body);
  return truncate16(hmac_sha256(sk, concat(to_bytes("qfhe-tag"), w.data())));
}

Key16 unwrap(const QfhePublicKey& pk) {
  auto sk = key16(unseal(kWrapLabel, pk.wrap));
  if (key_id_of(sk) != pk.key_id) throw KeyMismatch("public key wrap does not match its id");
  return sk;
}

}  // namespace

QfheCiphertext seal_payload(const Key16& sk, const Key16& nonce, ByteView message, unsigned depth) {
  if (depth > kQfheMaxDepth) throw DepthExceeded();
  Bytes framed = Writer().blob(message).take();
  framed.resize(bucket(framed.size()), 0);
  QfheCiphertext ct;
  ct.key_id_ = key_id_of(sk);
  ct.nonce_ = nonce;
  ct.depth_ = static_cast<std::uint8_t>(depth);
  ct.body_ = xor_bytes(framed, keystream(sk, nonce, framed.size()));
  ct.tag_ = tag_of(sk, ct.key_id_, nonce, ct.depth_, ct.body_);
  return ct;
}

Bytes open_payload(const Key16& sk, const QfheCiphertext& ct) {
  if (key_id_of(sk) != ct.key_id_) throw KeyMismatch();
  if (tag_of(sk, ct.key_id_, ct.nonce_, ct.depth_, ct.body_) != ct.tag_) throw MalformedCiphertext("tag mismatch");
  auto framed = xor_bytes(ct.body_, keystream(sk, ct.nonce_, ct.body_.size()));
  try {
    Reader r(framed);
    return r.blob();
  } catch (const DecodeError&) {
    throw MalformedCiphertext("bad framing");
  }
}

Bytes QfhePublicKey::encode() const { return Writer().raw(key_id).blob(wrap).take(); }

QfhePublicKey QfhePublicKey::decode(ByteView data) {
  Reader r(data);
  QfhePublicKey pk;
  pk.key_id = r.key();
  pk.wrap = r.blob();
  r.expect_end();
  return pk;
}

Bytes QfheCiphertext::encode() const {
  return Writer().raw(key_id_).raw(nonce_).u8(depth_).blob(body_).raw(tag_).take();
}

QfheCiphertext QfheCiphertext::decode(ByteView data) {
  try {
    Reader r(data);
    QfheCiphertext ct;
    ct.key_id_ = r.key();
    ct.nonce_ = r.key();
    ct.depth_ = r.u8();
    ct.body_ = r.blob();
    ct.tag_ = r.key();
    r.expect_end();
    if (ct.depth_ > kQfheMaxDepth || ct.body_.size() < kMinBucket) throw MalformedCiphertext();
    return ct;
  } catch (const DecodeError& e) {
    throw MalformedCiphertext(e.what());
  }
}

QfheKeys qfhe_gen(Drbg& rng) {
  QfheKeys keys;
  keys.sk.bytes = rng.key();
  keys.pk.key_id = key_id_of(keys.sk.bytes);
  keys.pk.wrap = seal(kWrapLabel, keys.sk.bytes);
  return keys;
}

QfheKeys qfhe_gen(std::uint64_t seed) {
  auto rng = Drbg::from_u64(seed);
  return qfhe_gen(rng);
}

bool qfhe_pair(const QfhePublicKey& pk, const QfheSecretKey& sk) { return key_id_of(sk.bytes) == pk.key_id; }

QfheCiphertext qfhe_enc(const QfhePublicKey& pk, ByteView message, Drbg& rng) {
  return seal_payload(unwrap(pk), rng.key(), message, 0);
}

Bytes qfhe_dec(const QfheSecretKey& sk, const QfheCiphertext& ct) { return open_payload(sk.bytes, ct); }

QfheCiphertext qfhe_eval(const QfhePublicKey& pk, const QfheFunction& f, const QfheCiphertext& ct,
                         std::uint64_t seed) {
  if (ct.key_id() != pk.key_id) throw KeyMismatch();
  if (ct.depth() + 1 > kQfheMaxDepth) throw DepthExceeded();
  auto sk = unwrap(pk);
  auto out = f(open_payload(sk, ct), seed);
  auto nonce = truncate16(hmac_sha256(sk, concat(to_bytes("qfhe-eval"), ct.encode(), be64(seed))));
  return seal_payload(sk, nonce, out, ct.depth() + 1);
}

QfheCiphertext qfhe_eval(const QfhePublicKey& pk, const QuantumCircuit& c, const QfheCiphertext& ct,
                         std::uint64_t seed) {
  QfheFunction f = [c](ByteView m, std::uint64_t s) {
    const unsigned width = c.input_width();
    Bytes padded = to_bytes(m);
    padded.resize((width + 7) / 8, 0);
    auto bits = BitString::from_bytes(padded, width);
    StateVector input = StateVector::from_bits(bits);
    return Bytes{static_cast<std::uint8_t>(run_circuit(c, input, s).bit)};
  };
  return qfhe_eval(pk, f, ct, seed);
}

}  // namespace qnio
