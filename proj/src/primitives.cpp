#include "qnio/primitives.hpp"

#include <algorithm>

namespace qnio {

namespace {

ByteView view(std::string_view s) {
  return ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

// Unbounded HMAC counter-mode keystream.
Bytes keystream(ByteView key, std::size_t n) {
  Bytes out;
  out.reserve(n + 32);
  for (std::uint64_t i = 0; out.size() < n; ++i) {
    auto block = hmac_sha256(key, be64(i));
    out.insert(out.end(), block.begin(), block.end());
  }
  out.resize(n);
  return out;
}

}  // namespace

// ---- Drbg ----

Drbg::Drbg(ByteView seed) : key_(sha256(concat(view("qnio-drbg"), seed))) {}

Drbg Drbg::from_u64(std::uint64_t seed) { return Drbg(be64(seed)); }

Bytes Drbg::bytes(std::size_t n) {
  Bytes out;
  out.reserve(n);
  while (out.size() < n) {
    if (used_ == pool_.size()) {
      auto block = hmac_sha256(key_, be64(counter_++));
      pool_.assign(block.begin(), block.end());
      used_ = 0;
    }
    auto take = std::min(n - out.size(), pool_.size() - used_);
    out.insert(out.end(), pool_.begin() + static_cast<std::ptrdiff_t>(used_),
               pool_.begin() + static_cast<std::ptrdiff_t>(used_ + take));
    used_ += take;
  }
  return out;
}

Key16 Drbg::key() { return key16(bytes(16)); }

std::uint64_t Drbg::u64() {
  auto b = bytes(8);
  return Reader(b).u64();
}

std::uint64_t Drbg::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    auto v = u64();
    if (v < limit) return v % bound;
  }
}

Drbg Drbg::fork(std::string_view label) const { return Drbg(seed_for(label)); }

Bytes Drbg::seed_for(std::string_view label) const {
  return to_bytes(hmac_sha256(key_, concat(view("fork:"), view(label))));
}

// ---- PRF / GGM ----

PrfKey PrfKey::sample(Drbg& rng, unsigned domain_bits) {
  if (domain_bits != 0 && domain_bits != 8 && domain_bits != 16 && domain_bits != 32)
    throw DomainMismatch("domain_bits must be 0, 8, 16 or 32");
  return PrfKey{rng.key(), domain_bits};
}

Bytes PrfKey::encode() const { return Writer().raw(bytes).u8(static_cast<std::uint8_t>(domain_bits)).take(); }

PrfKey PrfKey::decode(ByteView data) {
  Reader r(data);
  PrfKey k{r.key(), r.u8()};
  r.expect_end();
  return k;
}

Key16 prf_eval(const PrfKey& k, ByteView x) { return truncate16(hmac_sha256(k.bytes, x)); }

int prf_bit(const PrfKey& k, ByteView x) { return prf_eval(k, x)[15] & 1; }

Key16 ggm_half(const Key16& s, int side) {
  return truncate16(sha256(concat(s, Bytes{static_cast<std::uint8_t>(side ? 1 : 0)})));
}

namespace {
void check_domain(unsigned domain_bits, const BitString& x) {
  if (domain_bits != 8 && domain_bits != 16 && domain_bits != 32)
    throw DomainMismatch("GGM key needs an 8, 16 or 32 bit domain");
  if (x.width() != domain_bits) throw DomainMismatch("input width differs from key domain");
}
}  // namespace

Key16 ggm_eval(const PrfKey& k, const BitString& x) {
  check_domain(k.domain_bits, x);
  Key16 node = k.bytes;
  for (unsigned i = 0; i < x.width(); ++i) node = ggm_half(node, x.bit(i));
  return node;
}

PuncturedKey ggm_punct(const PrfKey& k, const BitString& z) {
  check_domain(k.domain_bits, z);
  PuncturedKey kz;
  kz.point = z;
  kz.domain_bits = k.domain_bits;
  Key16 node = k.bytes;
  for (unsigned i = 0; i < z.width(); ++i) {
    kz.path_keys.emplace_back(i, ggm_half(node, 1 - z.bit(i)));
    node = ggm_half(node, z.bit(i));
  }
  return kz;
}

Key16 ggm_eval_punct(const PuncturedKey& kz, const BitString& x) {
  check_domain(kz.domain_bits, x);
  if (x == kz.point) throw PuncturedPoint();
  unsigned level = 0;
  while (x.bit(level) == kz.point.bit(level)) ++level;
  Key16 node = kz.path_keys.at(level).second;
  for (unsigned i = level + 1; i < x.width(); ++i) node = ggm_half(node, x.bit(i));
  return node;
}

Bytes PuncturedKey::encode() const {
  Writer w;
  w.u8(static_cast<std::uint8_t>(domain_bits)).bits(point).u32(static_cast<std::uint32_t>(path_keys.size()));
  for (const auto& [level, key] : path_keys) w.u8(static_cast<std::uint8_t>(level)).raw(key);
  return w.take();
}

PuncturedKey PuncturedKey::decode(ByteView data) {
  Reader r(data);
  PuncturedKey kz;
  kz.domain_bits = r.u8();
  kz.point = r.bits();
  auto n = r.u32();
  if (n != kz.domain_bits || kz.point.width() != kz.domain_bits) throw DecodeError("punctured key shape");
  for (std::uint32_t i = 0; i < n; ++i) {
    unsigned level = r.u8();
    kz.path_keys.emplace_back(level, r.key());
  }
  r.expect_end();
  return kz;
}

// ---- PRG / OWF / commitment ----

Bytes prg(ByteView seed, std::size_t out_len) {
  if (out_len > kMaxPrgOutput) throw LengthTooLarge();
  Bytes out;
  out.reserve(out_len + 32);
  for (std::uint32_t i = 0; out.size() < out_len; ++i) {
    auto block = hmac_sha256(seed, be32(i));
    out.insert(out.end(), block.begin(), block.end());
  }
  out.resize(out_len);
  return out;
}

Digest owf(ByteView x) { return sha256(x); }

Commitment commit(ByteView m, const Key16& r) {
  if (m.size() > kMaxCommitMessage) throw MessageTooLong();
  return Commitment{concat(prg(r, 32), hmac_sha256(r, m))};
}

bool verify_open(const Commitment& c, ByteView m, const Key16& r) {
  if (m.size() > kMaxCommitMessage) return false;
  return commit(m, r) == c;
}

// ---- Random oracle ----

Bytes OracleAnswer::encode() const { return Writer().raw(head).u8(last).take(); }

OracleAnswer OracleAnswer::decode(ByteView data) {
  Reader r(data);
  OracleAnswer a{r.key(), r.u8()};
  r.expect_end();
  if (a.last > 1) throw DecodeError("oracle answer last bit");
  return a;
}

RandomOracle::RandomOracle(OracleMode mode, const Key16& seed, PrfKey td, Predicate verify)
    : mode_(mode), seed_(seed), td_(td), verify_(std::move(verify)) {}

std::shared_ptr<RandomOracle> RandomOracle::uniform(const Key16& seed) {
  return std::shared_ptr<RandomOracle>(new RandomOracle(OracleMode::Uniform, seed, {}, {}));
}

std::shared_ptr<RandomOracle> RandomOracle::tdgen(const Key16& seed, const PrfKey& td, Predicate verify) {
  return std::shared_ptr<RandomOracle>(new RandomOracle(OracleMode::TdGen, seed, td, std::move(verify)));
}

std::shared_ptr<RandomOracle> RandomOracle::simgen(const Key16& seed, const PrfKey& td) {
  return std::shared_ptr<RandomOracle>(new RandomOracle(OracleMode::SimGen, seed, td, {}));
}

OracleAnswer RandomOracle::compute(ByteView x) const {
  OracleAnswer a;
  a.head = truncate16(hmac_sha256(seed_, concat(view("G"), x)));
  switch (mode_) {
    case OracleMode::Uniform:
      a.last = hmac_sha256(seed_, concat(view("I"), x))[0] & 1;
      break;
    case OracleMode::TdGen:
      a.last = static_cast<std::uint8_t>(prf_bit(td_, x) ^ (verify_(x) ? 1 : 0));
      break;
    case OracleMode::SimGen:
      a.last = static_cast<std::uint8_t>(prf_bit(td_, x));
      break;
  }
  return a;
}

OracleAnswer RandomOracle::query(ByteView x) const {
  std::string key(x.begin(), x.end());
  {
    std::lock_guard lock(mutex_);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
  }
  auto fresh = compute(x);
  std::lock_guard lock(mutex_);
  return table_.emplace(std::move(key), fresh).first->second;
}

std::size_t RandomOracle::table_size() const {
  std::lock_guard lock(mutex_);
  return table_.size();
}

// ---- SBSH ----

namespace {
Key16 ck0_from(const Key16& gen_rand) { return truncate16(sha256(concat(view("sbsh-ck0"), gen_rand))); }

Bytes binding_pad(const SbshKeys& keys, std::size_t n) {
  auto k = truncate16(hmac_sha256(keys.ck0, concat(view("sbsh-bind"), keys.ck1)));
  return keystream(k, n);
}
}  // namespace

SbshGen sbsh_gen(Drbg& rng) {
  SbshGen g;
  g.gen_rand = rng.key();
  g.ck0 = ck0_from(g.gen_rand);
  return g;
}

Key16 sbsh_key(const Key16&, Drbg& rng) { return rng.key(); }

bool sbsh_binding(const SbshKeys& keys) {
  auto d = sha256(concat(keys.ck0, keys.ck1));
  for (unsigned i = 0; i < keys.binding_bits; ++i)
    if ((d[i / 8] >> (7 - i % 8)) & 1) return false;
  return true;
}

Bytes sbsh_com(const SbshKeys& keys, ByteView m, const Key16& r) {
  Bytes pad;
  if (sbsh_binding(keys)) {
    pad = binding_pad(keys, m.size());
  } else {
    auto k = prf_eval(PrfKey{r, 0}, concat(keys.ck0, keys.ck1));
    pad = keystream(k, m.size());
  }
  return xor_bytes(m, pad);
}

Bytes sbsh_ext(const Key16& gen_rand, const SbshKeys& keys, ByteView c) {
  if (!sbsh_binding(keys)) throw NotBinding();
  if (ck0_from(gen_rand) != keys.ck0) throw NotBinding("gen randomness does not match ck0");
  return xor_bytes(c, binding_pad(keys, c.size()));
}

// ---- sealing ----

namespace {
const Digest& harness_key() {
  static const Digest k = sha256(view("qnio harness sealing key v1"));
  return k;
}
}  // namespace

Bytes seal(std::string_view label, ByteView plaintext) {
  auto kl = hmac_sha256(harness_key(), view(label));
  auto nonce = truncate16(hmac_sha256(kl, concat(view("nonce"), plaintext)));
  auto ks = hmac_sha256(kl, concat(view("stream"), nonce));
  return concat(nonce, xor_bytes(plaintext, keystream(ks, plaintext.size())));
}

Bytes unseal(std::string_view label, ByteView blob) {
  if (blob.size() < 16) throw SealBroken("sealed blob too short");
  auto kl = hmac_sha256(harness_key(), view(label));
  auto nonce = key16(blob.first(16));
  auto body = blob.subspan(16);
  auto ks = hmac_sha256(kl, concat(view("stream"), nonce));
  auto plain = xor_bytes(body, keystream(ks, body.size()));
  if (truncate16(hmac_sha256(kl, concat(view("nonce"), plain))) != nonce) throw SealBroken();
  return plain;
}

}  // namespace qnio
