#include "qnio/encdelegate.hpp"

#include <algorithm>

namespace qnio {

namespace {

constexpr std::size_t kOpeningBytes = 17;

Bytes kp_context(const CprfPublic& pp) {
  return Writer().blob(pp.mpk.encode()).blob(pp.cfg.encode()).u8(static_cast<std::uint8_t>(pp.input_bits)).take();
}

struct CprfShape {
  Bytes context;
  Bytes k;
  bool k_punct = false;
  Bytes coins;
  bool coins_punct = false;
  std::optional<std::pair<Bytes, Bytes>> star;
};

Program build_cprf(const CprfShape& c) {
  ProgramBuilder b;
  auto x = b.input();
  auto value = b.host(c.k_punct ? "GGM_PUNCT" : "GGM", {b.constant(c.k), x});
  auto coins = b.host(c.coins_punct ? "GGM_PUNCT" : "GGM", {b.constant(c.coins), x});
  auto ct = b.host("KPABE_ENC", {b.constant(c.context), x, value, coins});
  if (c.star) ct = b.ite(b.eq(x, b.constant(c.star->first)), b.constant(c.star->second), ct);
  return b.build({ct});
}

std::size_t cprf_budget() {
  CprfShape c;
  c.star = std::make_pair(Bytes(1, 0), Bytes(1, 0));
  return build_cprf(c).size();
}

Bytes ggm_at(const PrfKey& k, const BitString& x) { return to_bytes(ggm_eval(k, x.widened(k.domain_bits))); }

}  // namespace

Bytes CprfKey::encode() const { return Writer().blob(k.encode()).blob(msk.encode()).take(); }

CprfKey CprfKey::decode(ByteView data) {
  Reader r(data);
  CprfKey key;
  key.k = PrfKey::decode(r.blob());
  key.msk = AbeMasterKey::decode(r.blob());
  r.expect_end();
  return key;
}

Bytes CprfPublic::encode() const {
  return Writer()
      .u8(static_cast<std::uint8_t>(input_bits))
      .blob(mpk.encode())
      .blob(cfg.encode())
      .blob(program.serialize())
      .take();
}

CprfPublic CprfPublic::decode(ByteView data) {
  Reader r(data);
  CprfPublic pp;
  pp.input_bits = r.u8();
  pp.mpk = AbePublicKey::decode(r.blob());
  pp.cfg = NioConfig::decode(r.blob());
  pp.program = SealedProgram::deserialize(r.blob());
  r.expect_end();
  return pp;
}

CprfSetup cprf_gen(unsigned input_bits, std::uint64_t seed, const NioConfig& cfg) {
  if (input_bits == 0 || input_bits > 8) throw WidthMismatch("cPRF inputs must be 1..8 bits");
  auto rng = Drbg::from_u64(seed).fork("cprf-gen");
  CprfSetup s;
  auto abe = kp_gen(rng.u64());
  s.key.k = PrfKey::sample(rng, 8);
  s.key.msk = abe.msk;
  s.coins_key = PrfKey::sample(rng, 8);
  s.pp.input_bits = input_bits;
  s.pp.mpk = abe.mpk;
  s.pp.cfg = cfg;
  CprfShape shape{kp_context(s.pp), s.key.k.encode(), false, s.coins_key.encode(), false, std::nullopt};
  s.pp.program = obf_io(build_cprf(shape), cprf_budget());
  return s;
}

Key16 cprf_eval(const CprfKey& key, const BitString& x) { return ggm_eval(key.k, x.widened(key.k.domain_bits)); }

KpUserKey cprf_constrain(const CprfKey& key, const std::string& policy) { return kp_keygen(key.msk, policy); }

std::optional<Key16> cprf_ceval(const CprfPublic& pp, const KpUserKey& constrained, const BitString& x,
                                std::uint64_t seed) {
  if (x.width() != pp.input_bits) throw WidthMismatch("cPRF input width");
  auto c = pp.program.call({x.bytes()});
  if (!c) return std::nullopt;
  auto ct = KpCiphertext::decode(*c);
  if (!(ct.attribute == x)) return std::nullopt;
  auto m = kp_dec(constrained, ct, seed);
  if (!m || m->size() != kLambdaBytes) return std::nullopt;
  return key16(*m);
}

std::vector<HybridCheck> cprf_hybrid_checks(const CprfSetup& setup, const BitString& x_star, std::uint64_t seed) {
  const auto& pp = setup.pp;
  if (x_star.width() != pp.input_bits) throw WidthMismatch("cPRF input width");
  auto rng = Drbg::from_u64(seed).fork("cprf-hybrids");
  const auto context = kp_context(pp);
  const auto point = x_star.bytes();
  const auto k = setup.key.k.encode();
  const auto kp = ggm_punct(setup.key.k, x_star.widened(8)).encode();
  const auto coins = setup.coins_key.encode();
  const auto coins_p = ggm_punct(setup.coins_key, x_star.widened(8)).encode();
  auto kp_ct = [&](ByteView m, ByteView r) { return kp_enc(pp.mpk, x_star, m, r, pp.cfg).encode(); };
  const auto fresh = to_bytes(rng.key());

  CprfShape p{context, k, false, coins, false, std::nullopt};
  CprfShape p1{context, k, false, coins_p, true,
               std::make_pair(point, kp_ct(ggm_at(setup.key.k, x_star), ggm_at(setup.coins_key, x_star)))};
  CprfShape p2 = p1;
  p2.k = kp;
  p2.k_punct = true;
  CprfShape p3 = p2;
  p3.star->second = kp_ct(ggm_at(setup.key.k, x_star), fresh);
  CprfShape p_star = p2;
  p_star.star->second = kp_ct(Bytes(kLambdaBytes, 0), fresh);

  std::vector<std::vector<Value>> all, off;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << pp.input_bits); ++v) {
    auto xb = BitString(pp.input_bits, v).bytes();
    all.push_back({xb});
    if (xb != point) off.push_back({xb});
  }
  std::vector<HybridCheck> out;
  auto add = [&](std::string name, const CprfShape& a, const CprfShape& b, bool everywhere) {
    auto d = DomainSpec::explicit_points(everywhere ? all : off);
    out.push_back({std::move(name), everywhere, equiv_report(evaluator(build_cprf(a)), evaluator(build_cprf(b)), d)});
  };
  add("P~P1", p, p1, true);
  add("P1~P2", p1, p2, true);
  add("P2~P3", p2, p3, false);
  add("P3~P*", p3, p_star, false);
  return out;
}

// ---- secret sharing ----

Bytes Share::encode() const {
  Writer w;
  w.u8(static_cast<std::uint8_t>(party)).raw(opening).str(lang).u8(static_cast<std::uint8_t>(commitments.size()));
  for (const auto& c : commitments) w.raw(c.payload);
  w.blob(ct.encode());
  return w.take();
}

Share Share::decode(ByteView data) {
  Reader r(data);
  Share s;
  s.party = r.u8();
  s.opening = r.key();
  s.lang = r.str();
  auto n = r.u8();
  for (unsigned i = 0; i < n; ++i) s.commitments.push_back(Commitment{r.raw(64)});
  s.ct = WeCiphertext::decode(r.blob());
  r.expect_end();
  if (s.party >= n) throw DecodeError("share party index out of range");
  return s;
}

std::vector<Share> ss_share(const std::string& base_lang, unsigned parties, int secret, std::uint64_t seed,
                            const NioConfig& cfg) {
  if (parties == 0 || parties > 10) throw WidthMismatch("secret sharing supports 1..10 parties");
  auto rng = Drbg::from_u64(seed).fork("ss-share");
  const std::string lang = "ss:" + std::to_string(parties) + ":" + base_lang;
  resolve_language(lang);
  std::vector<Key16> openings;
  std::vector<Commitment> commitments;
  Bytes instance;
  for (unsigned i = 0; i < parties; ++i) {
    openings.push_back(rng.key());
    commitments.push_back(commit(Bytes{static_cast<std::uint8_t>(i + 1)}, openings.back()));
    instance.insert(instance.end(), commitments.back().payload.begin(), commitments.back().payload.end());
  }
  auto q = we_statement(lang, instance, cfg);
  auto ct = we_enc(q, Bytes{static_cast<std::uint8_t>(secret ? 1 : 0)}, rng.bytes(32), cfg);
  std::vector<Share> shares;
  for (unsigned i = 0; i < parties; ++i) shares.push_back({i, openings[i], lang, commitments, ct});
  return shares;
}

std::optional<int> ss_rec(const std::vector<Share>& available, const Witness& w, std::uint64_t seed) {
  if (available.empty()) return std::nullopt;
  const auto& first = available.front();
  const auto n = first.commitments.size();
  Bytes classical(n * kOpeningBytes, 0);
  for (const auto& s : available) {
    if (s.lang != first.lang || s.commitments != first.commitments) throw DecodeError("shares from different dealings");
    classical[s.party * kOpeningBytes] = 1;
    std::copy(s.opening.begin(), s.opening.end(), classical.begin() + s.party * kOpeningBytes + 1);
  }
  Bytes instance;
  for (const auto& c : first.commitments) instance.insert(instance.end(), c.payload.begin(), c.payload.end());
  Statement q{first.lang, instance, first.ct.inner.copies};
  Witness full = w;
  full.classical = classical;
  auto m = we_dec(q, first.ct, full, seed);
  if (!m || m->size() != 1) return std::nullopt;
  return (*m)[0];
}

std::vector<Share> subset_of(const std::vector<Share>& shares, const BitString& subset) {
  std::vector<Share> out;
  for (const auto& s : shares)
    if (s.party < subset.width() && subset.bit(s.party)) out.push_back(s);
  return out;
}

}  // namespace qnio
