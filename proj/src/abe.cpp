#include "qnio/encdelegate.hpp"

#include <algorithm>

namespace qnio {

namespace {

unsigned attribute_domain(unsigned bits) {
  if (bits == 0 || bits > kMaxAttributeBits) throw WidthMismatch("attribute width must be 1..10 bits");
  return 8 * ((bits + 7) / 8);
}

void check_attribute(unsigned expected, const BitString& x) {
  if (x.width() != expected) throw WidthMismatch("attribute width mismatch");
}

Bytes prg_len() { return be32(static_cast<std::uint32_t>(kAbePrgBytes)); }

// Key-check program family. At the special point the check is against a
// hardwired PRG image, or returns 0.
enum class CheckStar { None, Image, Zero };

Program build_check(ByteView key, bool punctured, CheckStar kind, ByteView point, ByteView image) {
  ProgramBuilder b;
  auto x = b.input();
  auto s = b.input();
  auto len = b.constant(prg_len());
  auto lhs = b.host("PRG", {s, len});
  auto sk = b.host(punctured ? "GGM_PUNCT" : "GGM", {b.constant(key), x});
  auto check = b.eq(lhs, b.host("PRG", {sk, len}));
  if (kind == CheckStar::None) return b.build({check});
  auto at_star = kind == CheckStar::Image ? b.eq(lhs, b.constant(image)) : b.constant(Bytes{0});
  return b.build({b.ite(b.eq(x, b.constant(point)), at_star, check)});
}

std::size_t check_budget() {
  Bytes key(17, 0), one(1, 0);
  std::size_t n = build_check(key, false, CheckStar::None, one, one).size();
  for (auto k : {CheckStar::Image, CheckStar::Zero}) n = std::max(n, build_check(key, true, k, one, one).size());
  return n;
}

struct EncShape {
  Bytes mpk;
  Bytes params;
  Bytes coins_key;
  bool punctured = false;
  // hybrid form: m1 below `index`, m0 otherwise
  std::optional<Bytes> index;
  Bytes m0;
  Bytes m1;
  std::optional<std::pair<Bytes, Bytes>> star;  // (point, ciphertext)
};

Program build_enc(const EncShape& e) {
  ProgramBuilder b;
  auto x = b.input();
  auto s = b.input();
  auto allowed = b.host("SEALED_EVAL", {b.constant(e.mpk), x, s});
  NodeId msg;
  if (e.index) {
    auto below = b.host("LESS", {x, b.constant(*e.index)});
    msg = b.ite(below, b.constant(e.m1), b.constant(e.m0));
  } else {
    msg = b.constant(e.m0);
  }
  auto coins = b.host(e.punctured ? "GGM_PUNCT" : "GGM", {b.constant(e.coins_key), x});
  auto ct = b.host("WE_ENC", {b.constant(e.params), x, msg, coins});
  if (e.star) ct = b.ite(b.eq(x, b.constant(e.star->first)), b.constant(e.star->second), ct);
  return b.build({b.ite(allowed, ct, b.bottom())});
}

std::size_t enc_budget() {
  EncShape e;
  e.punctured = true;
  e.index = Bytes(1, 0);
  e.star = std::make_pair(Bytes(1, 0), Bytes(1, 0));
  return build_enc(e).size();
}

Bytes ggm_at(const PrfKey& k, const BitString& x) { return to_bytes(ggm_eval(k, x.widened(k.domain_bits))); }

}  // namespace

Bytes AbeMasterKey::encode() const { return Writer().blob(k.encode()).u8(static_cast<std::uint8_t>(attribute_bits)).take(); }

AbeMasterKey AbeMasterKey::decode(ByteView data) {
  Reader r(data);
  AbeMasterKey m;
  m.k = PrfKey::decode(r.blob());
  m.attribute_bits = r.u8();
  r.expect_end();
  return m;
}

Bytes AbePublicKey::encode() const {
  return Writer().u8(static_cast<std::uint8_t>(attribute_bits)).blob(check.serialize()).take();
}

AbePublicKey AbePublicKey::decode(ByteView data) {
  Reader r(data);
  AbePublicKey m;
  m.attribute_bits = r.u8();
  m.check = SealedProgram::deserialize(r.blob());
  r.expect_end();
  return m;
}

Bytes AbeUserKey::encode() const { return Writer().bits(attribute).raw(key).take(); }

AbeUserKey AbeUserKey::decode(ByteView data) {
  Reader r(data);
  AbeUserKey k;
  k.attribute = r.bits();
  k.key = r.key();
  r.expect_end();
  return k;
}

Bytes AbeCiphertext::encode() const { return Writer().str(policy).blob(cfg.encode()).blob(program.serialize()).take(); }

AbeCiphertext AbeCiphertext::decode(ByteView data) {
  Reader r(data);
  AbeCiphertext c;
  c.policy = r.str();
  c.cfg = NioConfig::decode(r.blob());
  c.program = SealedProgram::deserialize(r.blob());
  r.expect_end();
  return c;
}

AbeKeys abe_gen(unsigned attribute_bits, std::uint64_t seed) {
  auto rng = Drbg::from_u64(seed).fork("abe-gen");
  AbeKeys keys;
  keys.msk.attribute_bits = attribute_bits;
  keys.msk.k = PrfKey::sample(rng, attribute_domain(attribute_bits));
  keys.mpk.attribute_bits = attribute_bits;
  keys.mpk.check = obf_io(build_check(keys.msk.k.encode(), false, CheckStar::None, {}, {}), check_budget());
  return keys;
}

AbeUserKey abe_keygen(const AbeMasterKey& msk, const BitString& x) {
  check_attribute(msk.attribute_bits, x);
  return {x, ggm_eval(msk.k, x.widened(msk.k.domain_bits))};
}

AbeCiphertext abe_enc(const AbePublicKey& mpk, const std::string& policy, ByteView message, ByteView coins,
                      const NioConfig& cfg) {
  auto L = resolve_language(policy);
  if (L.instance_bits != mpk.attribute_bits) throw WidthMismatch("policy width differs from attribute width");
  Drbg rng(concat(to_bytes("abe-enc"), coins));
  auto r = PrfKey::sample(rng, attribute_domain(mpk.attribute_bits));
  EncShape e;
  e.mpk = mpk.check.serialize();
  e.params = we_params(policy, cfg);
  e.coins_key = r.encode();
  e.m0 = to_bytes(message);
  return {policy, cfg, obf_io(build_enc(e), enc_budget())};
}

AbeCiphertext abe_enc(const AbePublicKey& mpk, const std::string& policy, ByteView message, std::uint64_t seed,
                      const NioConfig& cfg) {
  return abe_enc(mpk, policy, message, be64(seed), cfg);
}

std::optional<Bytes> abe_dec(const AbeUserKey& key, const AbeCiphertext& ct, std::uint64_t seed) {
  auto c = ct.program.call({key.attribute.bytes(), to_bytes(key.key)});
  if (!c) return std::nullopt;
  auto q = we_statement(ct.policy, key.attribute.bytes(), ct.cfg);
  return we_dec_bqp(q, WeCiphertext::decode(*c), seed);
}

// ---- key-policy wrapper ----

Bytes KpUserKey::encode() const { return Writer().str(policy).blob(inner.encode()).take(); }

KpUserKey KpUserKey::decode(ByteView data) {
  Reader r(data);
  KpUserKey k;
  k.policy = r.str();
  k.inner = AbeUserKey::decode(r.blob());
  r.expect_end();
  return k;
}

Bytes KpCiphertext::encode() const { return Writer().bits(attribute).blob(inner.encode()).take(); }

KpCiphertext KpCiphertext::decode(ByteView data) {
  Reader r(data);
  KpCiphertext c;
  c.attribute = r.bits();
  c.inner = AbeCiphertext::decode(r.blob());
  r.expect_end();
  return c;
}

AbeKeys kp_gen(std::uint64_t seed) { return abe_gen(kPolicyIdBits, seed); }

KpUserKey kp_keygen(const AbeMasterKey& msk, const std::string& policy) {
  return {policy, abe_keygen(msk, BitString(kPolicyIdBits, policy_id(policy)))};
}

KpCiphertext kp_enc(const AbePublicKey& mpk, const BitString& x, ByteView message, ByteView coins,
                    const NioConfig& cfg) {
  return {x, abe_enc(mpk, "univ:" + x.text(), message, coins, cfg)};
}

std::optional<Bytes> kp_dec(const KpUserKey& key, const KpCiphertext& ct, std::uint64_t seed) {
  return abe_dec(key.inner, ct.inner, seed);
}

// ---- hybrids ----

AbeHybrids abe_hybrid_family(const AbeKeys& keys, const std::string& policy, const BitString& index, ByteView m0,
                             ByteView m1, const PrfKey& coins_key, const NioConfig& cfg, std::uint64_t seed) {
  check_attribute(keys.msk.attribute_bits, index);
  auto rng = Drbg::from_u64(seed).fork("abe-hybrids");
  const unsigned domain = keys.msk.k.domain_bits;
  const auto point = index.bytes();
  const auto params = we_params(policy, cfg);
  const auto k = keys.msk.k.encode();
  const auto kp = ggm_punct(keys.msk.k, index.widened(domain)).encode();
  const auto rp = ggm_punct(coins_key, index.widened(domain)).encode();
  const auto k_fresh = rng.key();
  const auto r_fresh = rng.key();
  const auto big_k = rng.bytes(kAbePrgBytes);

  AbeHybrids h;
  h.p_budget = check_budget();
  h.e_budget = enc_budget();
  h.p = build_check(k, false, CheckStar::None, {}, {});
  h.p1 = build_check(kp, true, CheckStar::Image, point, prg(ggm_at(keys.msk.k, index), kAbePrgBytes));
  h.p2 = build_check(kp, true, CheckStar::Image, point, prg(k_fresh, kAbePrgBytes));
  h.p3 = build_check(kp, true, CheckStar::Image, point, big_k);
  h.p_star = build_check(kp, true, CheckStar::Zero, point, {});

  const auto mpk = keys.mpk.check.serialize();
  const auto mpk_null = obf_io(h.p_star, h.p_budget).serialize();
  auto shape = [&](const Bytes& sealed, bool punctured, const BitString& idx) {
    EncShape e;
    e.mpk = sealed;
    e.params = params;
    e.coins_key = punctured ? rp : coins_key.encode();
    e.punctured = punctured;
    e.index = idx.bytes();
    e.m0 = to_bytes(m0);
    e.m1 = to_bytes(m1);
    return e;
  };
  h.e = build_enc(shape(mpk, false, index));
  auto e1 = shape(mpk, true, index);
  e1.star = std::make_pair(point, we_enc_gate(params, point, m0, ggm_at(coins_key, index)));
  h.e1 = build_enc(e1);
  auto e2 = e1;
  e2.star->second = we_enc_gate(params, point, m0, r_fresh);
  h.e2 = build_enc(e2);
  auto e3 = e1;
  e3.star->second = we_enc_gate(params, point, m1, r_fresh);
  h.e3 = build_enc(e3);
  e3.mpk = mpk_null;
  h.e3_null = build_enc(e3);

  // hybrid i+1 under the null key; the last index has no successor and
  // compares against "m1 everywhere"
  auto next = shape(mpk_null, false, index);
  if (index.value() + 1 < (std::uint64_t{1} << index.width())) {
    next.index = BitString(index.width(), index.value() + 1).bytes();
  } else {
    next.index.reset();
    next.m0 = to_bytes(m1);
  }
  h.e_next_null = build_enc(next);
  return h;
}

std::vector<HybridCheck> abe_hybrid_checks(const AbeKeys& keys, const std::string& policy, const BitString& index,
                                           const NioConfig& cfg, std::uint64_t seed, AbeRangeScan* scan,
                                           std::size_t scan_samples) {
  auto rng = Drbg::from_u64(seed).fork("abe-check");
  auto coins_key = PrfKey::sample(rng, keys.msk.k.domain_bits);
  auto h = abe_hybrid_family(keys, policy, index, Bytes{0}, Bytes{1}, coins_key, cfg, seed);
  const unsigned n = keys.msk.attribute_bits;
  const auto star = index.bytes();

  std::vector<std::vector<Value>> all, off;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    BitString x(n, v);
    auto xb = x.bytes();
    for (const auto& s : {ggm_at(keys.msk.k, x), rng.bytes(kLambdaBytes)}) {
      all.push_back({xb, s});
      if (xb != star) off.push_back({xb, s});
    }
  }
  auto d_all = DomainSpec::explicit_points(all);
  auto d_off = DomainSpec::explicit_points(off);

  std::vector<HybridCheck> out;
  auto add = [&](std::string name, const Program& a, const Program& b, const DomainSpec& d, bool everywhere) {
    out.push_back({std::move(name), everywhere, equiv_report(evaluator(a), evaluator(b), d)});
  };
  add("E~E1", h.e, h.e1, d_all, true);
  add("E1~E2", h.e1, h.e2, d_off, false);
  add("E2~E3", h.e2, h.e3, d_off, false);
  add("P~P1", h.p, h.p1, d_all, true);
  add("P1~P2", h.p1, h.p2, d_off, false);
  add("P2~P3", h.p2, h.p3, d_off, false);

  // P3 and P* differ at the index only when some seed maps onto K.
  std::vector<std::vector<Value>> range = all;
  for (std::size_t i = 0; i < scan_samples; ++i) range.push_back({star, rng.bytes(kLambdaBytes)});
  auto p3 = evaluator(h.p3);
  auto p_star = evaluator(h.p_star);
  EquivReport report;
  std::size_t hits = 0;
  for (const auto& pt : range) {
    ++report.tested;
    if (p3(pt) != p_star(pt)) {
      ++hits;
      report.equivalent = false;
      if (report.mismatches.size() < 8) report.mismatches.push_back(pt);
    }
  }
  if (scan) *scan = {scan_samples, hits};
  out.push_back({"P3~P*", true, std::move(report)});

  add("E3~E(i+1) under P*", h.e3_null, h.e_next_null, d_all, true);
  return out;
}

}  // namespace qnio
