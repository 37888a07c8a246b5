#include "qnio/proofs.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>

#include "qnio/hash.hpp"

namespace qnio {

namespace {

unsigned ggm_domain(unsigned statement_bits) {
  if (statement_bits == 0 || statement_bits > 16) throw WidthMismatch("statement width must be 1..16 bits");
  return statement_bits <= 8 ? 8 : 16;
}

void check_width(const NizkCrs& crs, const BitString& x) {
  if (x.width() != crs.statement_bits) throw WidthMismatch("statement width does not match the crs");
}

struct Star {
  Bytes point;
  Bytes value;
};

// P family. `star` hardwires the value returned at x*.
Program build_p(ByteView params, ByteView k0, bool k0_punct, ByteView k1, bool k1_punct,
                const std::optional<Star>& star) {
  ProgramBuilder b;
  auto x = b.input();
  auto key0 = b.constant(k0);
  auto key1 = b.constant(k1);
  auto m = b.host(k0_punct ? "GGM_PUNCT" : "GGM", {key0, x});
  auto coins = b.host(k1_punct ? "GGM_PUNCT" : "GGM", {key1, x});
  auto enc = b.host("WE_ENC", {b.constant(params), x, m, coins});
  if (!star) return b.build({enc});
  auto hit = b.eq(x, b.constant(star->point));
  return b.build({b.ite(hit, b.constant(star->value), enc)});
}

enum class VStar { None, Image, Preimage };

// V family. At x* the check is against a hardwired image, or against OWF of
// a hardwired preimage.
Program build_v(ByteView k0, bool k0_punct, VStar kind, const Star& star) {
  ProgramBuilder b;
  auto x = b.input();
  auto y = b.input();
  auto image_y = b.host("OWF", {y});
  auto key = b.host(k0_punct ? "GGM_PUNCT" : "GGM", {b.constant(k0), x});
  auto check = b.eq(b.host("OWF", {key}), image_y);
  if (kind == VStar::None) return b.build({check});
  auto expected = kind == VStar::Image ? b.constant(star.value) : b.host("OWF", {b.constant(star.value)});
  auto hit = b.eq(x, b.constant(star.point));
  return b.build({b.ite(hit, b.eq(expected, image_y), check)});
}

std::size_t p_budget(ByteView params) {
  Bytes key(17, 0);
  Star dummy{Bytes(1, 0), Bytes(1, 0)};
  return std::max(build_p(params, key, false, key, false, std::nullopt).size(),
                  build_p(params, key, true, key, true, dummy).size());
}

std::size_t v_budget() {
  Bytes key(17, 0);
  Star dummy{Bytes(1, 0), Bytes(32, 0)};
  std::size_t n = 0;
  for (auto kind : {VStar::None, VStar::Image, VStar::Preimage}) n = std::max(n, build_v(key, true, kind, dummy).size());
  return n;
}

Bytes ggm_value(const PrfKey& k, const BitString& x) {
  auto v = ggm_eval(k, x.widened(k.domain_bits));
  return Bytes(v.begin(), v.end());
}

}  // namespace

// ---- NIZK ----

Bytes NizkCrs::encode() const {
  return Writer()
      .str(lang)
      .u8(static_cast<std::uint8_t>(statement_bits))
      .blob(nio.encode())
      .blob(prover.serialize())
      .blob(verifier.serialize())
      .take();
}

NizkCrs NizkCrs::decode(ByteView data) {
  Reader r(data);
  NizkCrs crs;
  crs.lang = r.str();
  crs.statement_bits = r.u8();
  crs.nio = NioConfig::decode(r.blob());
  crs.prover = SealedProgram::deserialize(r.blob());
  crs.verifier = SealedProgram::deserialize(r.blob());
  r.expect_end();
  return crs;
}

NizkSetup nizk_setup(const std::string& lang, unsigned statement_bits, const NioConfig& cfg, std::uint64_t seed) {
  const unsigned domain = ggm_domain(statement_bits);
  auto L = resolve_language(lang);
  if (L.instance_bits != statement_bits) throw WidthMismatch("language instance width differs from statement width");
  auto rng = Drbg::from_u64(seed).fork("nizk-setup");
  NizkSetup out;
  out.escrow.k0 = PrfKey::sample(rng, domain);
  out.escrow.k1 = PrfKey::sample(rng, domain);
  auto params = we_params(lang, cfg);
  out.crs.lang = lang;
  out.crs.statement_bits = statement_bits;
  out.crs.nio = cfg;
  out.crs.prover =
      obf_io(build_p(params, out.escrow.k0.encode(), false, out.escrow.k1.encode(), false, std::nullopt), p_budget(params));
  out.crs.verifier = obf_io(build_v(out.escrow.k0.encode(), false, VStar::None, {}), v_budget());
  return out;
}

Key16 nizk_prove(const NizkCrs& crs, const Witness& w, const BitString& x, std::uint64_t seed) {
  check_width(crs, x);
  auto c = crs.prover.call({x.bytes()});
  if (!c) throw ProofFailed("prover program returned bottom");
  auto q = we_statement(crs.lang, x.bytes(), crs.nio);
  auto m = we_dec(q, WeCiphertext::decode(*c), w, seed);
  if (!m || m->size() != kLambdaBytes) throw ProofFailed();
  return key16(*m);
}

int nizk_verify(const NizkCrs& crs, const Key16& proof, const BitString& x) {
  check_width(crs, x);
  return is_true(crs.verifier.call({x.bytes(), to_bytes(proof)})) ? 1 : 0;
}

Key16 nizk_sim(const NizkEscrow& escrow, const BitString& x) { return key16(ggm_value(escrow.k0, x)); }

NizkHybrids nizk_hybrid_family(const NizkCrs& crs, const NizkEscrow& escrow, const BitString& x_star,
                               std::uint64_t seed) {
  check_width(crs, x_star);
  auto rng = Drbg::from_u64(seed).fork("nizk-hybrids");
  const auto params = we_params(crs.lang, crs.nio);
  const auto point = x_star.bytes();
  const auto k0 = escrow.k0.encode();
  const auto k1 = escrow.k1.encode();
  const unsigned domain = escrow.k0.domain_bits;
  const auto k0p = ggm_punct(escrow.k0, x_star.widened(domain)).encode();
  const auto k1p = ggm_punct(escrow.k1, x_star.widened(domain)).encode();
  const auto m_star = ggm_value(escrow.k0, x_star);
  const auto u = to_bytes(rng.key());
  const auto r = to_bytes(rng.key());

  NizkHybrids h;
  h.p = build_p(params, k0, false, k1, false, std::nullopt);
  auto ct1 = we_enc_gate(params, point, m_star, ggm_value(escrow.k1, x_star));
  h.p1 = build_p(params, k0, false, k1p, true, Star{point, ct1});
  auto ct2 = we_enc_gate(params, point, m_star, u);
  h.p2 = build_p(params, k0, false, k1p, true, Star{point, ct2});
  h.p3 = build_p(params, k0p, true, k1p, true, Star{point, ct2});
  auto ct_star = we_enc_gate(params, point, Bytes(kLambdaBytes, 0), u);
  h.p_star = build_p(params, k0p, true, k1p, true, Star{point, ct_star});

  h.v = build_v(k0, false, VStar::None, {});
  h.v1 = build_v(k0p, true, VStar::Image, Star{point, to_bytes(owf(m_star))});
  h.v2 = build_v(k0p, true, VStar::Preimage, Star{point, r});
  h.v_star = build_v(k0p, true, VStar::Image, Star{point, to_bytes(owf(r))});
  return h;
}

std::vector<HybridCheck> nizk_hybrid_checks(const NizkCrs& crs, const NizkEscrow& escrow, const BitString& x_star,
                                            std::uint64_t seed) {
  auto h = nizk_hybrid_family(crs, escrow, x_star, seed);
  const unsigned n = crs.statement_bits;
  const auto star = x_star.bytes();

  std::vector<std::vector<Value>> xs_all, xs_off;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    auto x = BitString(n, v).bytes();
    xs_all.push_back({x});
    if (x != star) xs_off.push_back({x});
  }
  auto rng = Drbg::from_u64(seed).fork("nizk-check-points");
  std::vector<std::vector<Value>> xy_all, xy_off;
  const auto honest_star = ggm_value(escrow.k0, x_star);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    BitString x(n, v);
    auto xb = x.bytes();
    for (const auto& y : {ggm_value(escrow.k0, x), rng.bytes(kLambdaBytes), honest_star}) {
      xy_all.push_back({xb, y});
      if (xb != star) xy_off.push_back({xb, y});
    }
  }
  auto all = DomainSpec::explicit_points(xs_all);
  auto off = DomainSpec::explicit_points(xs_off);
  auto pairs_all = DomainSpec::explicit_points(xy_all);
  auto pairs_off = DomainSpec::explicit_points(xy_off);

  std::vector<HybridCheck> out;
  auto add = [&](std::string name, const Program& a, const Program& b, const DomainSpec& d, bool everywhere) {
    out.push_back({std::move(name), everywhere, equiv_report(evaluator(a), evaluator(b), d)});
  };
  add("P~P1", h.p, h.p1, all, true);
  add("P1~P2", h.p1, h.p2, off, false);
  add("P2~P3", h.p2, h.p3, all, true);
  add("P3~P*", h.p3, h.p_star, off, false);
  add("V~V1", h.v, h.v1, pairs_all, true);
  add("V1~V2", h.v1, h.v2, pairs_off, false);
  add("V2~V*", h.v2, h.v_star, pairs_all, true);
  return out;
}

// ---- modeled NIWI / ZAP ----

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, Relation>& relations();

PrfKey relation_key(std::string_view scope, std::string_view rel) {
  static const Digest secret = sha256(to_bytes("qnio modeled proof systems v1"));
  PrfKey k;
  k.bytes = truncate16(hmac_sha256(secret, concat(to_bytes(scope), to_bytes(":"), to_bytes(rel))));
  return k;
}

}  // namespace

void register_relation(const std::string& name, Relation check) {
  std::lock_guard lock(registry_mutex());
  relations()[name] = std::move(check);
}

bool relation_holds(const std::string& name, ByteView statement, ByteView witness) {
  Relation check;
  {
    std::lock_guard lock(registry_mutex());
    auto it = relations().find(name);
    if (it == relations().end()) throw UnknownRelation("UnknownRelation: " + name);
    check = it->second;
  }
  try {
    return check(statement, witness);
  } catch (const Error&) {
    return false;
  }
}

Key16 niwi_prove(const std::string& rel, ByteView statement, ByteView witness) {
  if (!relation_holds(rel, statement, witness)) throw InvalidWitness();
  return prf_eval(relation_key("niwi", rel), statement);
}

int niwi_verify(const std::string& rel, const Key16& proof, ByteView statement) {
  return proof == prf_eval(relation_key("niwi", rel), statement) ? 1 : 0;
}

Key16 zap_setup(Drbg& rng) { return rng.key(); }

Key16 zap_prove(const Key16& crs, const std::string& rel, ByteView statement, ByteView witness) {
  if (!relation_holds(rel, statement, witness)) throw InvalidWitness();
  return prf_eval(relation_key("zap", rel), concat(crs, statement));
}

int zap_verify(const Key16& crs, const std::string& rel, const Key16& proof, ByteView statement) {
  return proof == prf_eval(relation_key("zap", rel), concat(crs, statement)) ? 1 : 0;
}

// ---- ZAPR ----

Bytes ZaprCrs::encode() const {
  return Writer()
      .blob(crs0.encode())
      .blob(crs1.encode())
      .raw(y0)
      .raw(y1)
      .raw(ck0)
      .u8(static_cast<std::uint8_t>(binding_bits))
      .raw(zap_crs)
      .raw(setup_proof)
      .take();
}

ZaprCrs ZaprCrs::decode(ByteView data) {
  Reader r(data);
  ZaprCrs c;
  c.crs0 = NizkCrs::decode(r.blob());
  c.crs1 = NizkCrs::decode(r.blob());
  c.y0 = r.digest();
  c.y1 = r.digest();
  c.ck0 = r.key();
  c.binding_bits = r.u8();
  c.zap_crs = r.key();
  c.setup_proof = r.key();
  r.expect_end();
  return c;
}

Bytes ZaprProof::encode() const { return Writer().raw(ck1).blob(c_nizk).blob(c_owf).raw(zap_proof).take(); }

ZaprProof ZaprProof::decode(ByteView data) {
  Reader r(data);
  ZaprProof p;
  p.ck1 = r.key();
  p.c_nizk = r.blob();
  p.c_owf = r.blob();
  p.zap_proof = r.key();
  r.expect_end();
  return p;
}

namespace {

constexpr std::size_t kPreimageBytes = 32;

Bytes setup_statement(const ZaprCrs& c) {
  return Writer().blob(c.crs0.encode()).blob(c.crs1.encode()).raw(c.y0).raw(c.y1).take();
}

Bytes main_statement(const ZaprCrs& crs, const BitString& x, const ZaprProof& p) {
  Writer w;
  w.bits(x);
  auto without_proof = crs;
  w.blob(without_proof.encode()).raw(p.ck1).blob(p.c_nizk).blob(p.c_owf);
  return w.take();
}

// (crs_b from Setup AND y_b in the OWF image), for b in {0,1}.
bool zapr_setup_relation(ByteView statement, ByteView witness) {
  Reader s(statement);
  auto crs0 = s.blob();
  auto crs1 = s.blob();
  auto y0 = s.digest();
  auto y1 = s.digest();
  s.expect_end();
  Reader w(witness);
  auto b = w.u8();
  auto seed = w.u64();
  auto preimage = w.raw(kPreimageBytes);
  w.expect_end();
  if (b > 1) return false;
  const auto& crs_bytes = b ? crs1 : crs0;
  if (owf(preimage) != (b ? y1 : y0)) return false;
  auto crs = NizkCrs::decode(crs_bytes);
  return nizk_setup(crs.lang, crs.statement_bits, crs.nio, seed).crs.encode() == crs_bytes;
}

// c_NIZK opens to an accepting (b, pi_b) OR c_OWF opens to a preimage of y_b.
bool zapr_main_relation(ByteView statement, ByteView witness) {
  Reader s(statement);
  auto x = s.bits();
  auto crs = ZaprCrs::decode(s.blob());
  SbshKeys keys{crs.ck0, s.key(), crs.binding_bits};
  auto c_nizk = s.blob();
  auto c_owf = s.blob();
  s.expect_end();
  Reader w(witness);
  auto branch = w.u8();
  auto b = w.u8();
  if (b > 1) return false;
  if (branch == 0) {
    auto proof = w.key();
    auto opening = w.key();
    w.expect_end();
    Bytes message = concat(Bytes{b}, proof);
    if (sbsh_com(keys, message, opening) != c_nizk) return false;
    return nizk_verify(b ? crs.crs1 : crs.crs0, proof, x) == 1;
  }
  auto preimage = w.raw(kPreimageBytes);
  auto opening = w.key();
  w.expect_end();
  if (sbsh_com(keys, preimage, opening) != c_owf) return false;
  return owf(preimage) == (b ? crs.y1 : crs.y0);
}

std::map<std::string, Relation>& relations() {
  static std::map<std::string, Relation> table = {
      {"zapr-setup", zapr_setup_relation},
      {"zapr-main", zapr_main_relation},
      {"owf-preimage", [](ByteView x, ByteView w) { return to_bytes(owf(w)) == to_bytes(x); }},
  };
  return table;
}

}  // namespace

ZaprCrs zapr_setup(const std::string& lang, unsigned statement_bits, const NioConfig& cfg, std::uint64_t seed,
                   unsigned binding_bits) {
  auto rng = Drbg::from_u64(seed).fork("zapr-setup");
  auto seed0 = rng.u64();
  auto seed1 = rng.u64();
  ZaprCrs c;
  c.crs0 = nizk_setup(lang, statement_bits, cfg, seed0).crs;
  c.crs1 = nizk_setup(lang, statement_bits, cfg, seed1).crs;
  auto x0 = rng.bytes(kPreimageBytes);
  auto x1 = rng.bytes(kPreimageBytes);
  c.y0 = owf(x0);
  c.y1 = owf(x1);
  c.ck0 = sbsh_gen(rng).ck0;
  c.binding_bits = binding_bits;
  c.zap_crs = zap_setup(rng);
  auto witness = Writer().u8(0).u64(seed0).raw(x0).take();
  c.setup_proof = niwi_prove("zapr-setup", setup_statement(c), witness);
  return c;
}

ZaprProof zapr_prove(const ZaprCrs& crs, const Witness& w, const BitString& x, std::uint64_t seed) {
  if (!niwi_verify("zapr-setup", crs.setup_proof, setup_statement(crs))) throw SetupProofInvalid();
  const unsigned k = crs.crs0.nio.copies;
  if (w.copies < 2 * k) throw InsufficientCopies("ZAPR needs 2k witness copies");
  auto rng = Drbg::from_u64(seed).fork("zapr-prove");
  std::optional<std::pair<std::uint8_t, Key16>> chosen;
  for (std::uint8_t b = 0; b < 2 && !chosen; ++b) {
    const auto& nizk = b ? crs.crs1 : crs.crs0;
    try {
      auto proof = nizk_prove(nizk, w.with_copies(k), x, rng.u64());
      if (nizk_verify(nizk, proof, x)) chosen = {b, proof};
    } catch (const ProofFailed&) {
    }
  }
  if (!chosen) throw NoValidNizk();
  auto [b, proof] = *chosen;
  ZaprProof p;
  p.ck1 = sbsh_key(crs.ck0, rng);
  SbshKeys keys{crs.ck0, p.ck1, crs.binding_bits};
  auto r_nizk = rng.key();
  auto r_owf = rng.key();
  p.c_nizk = sbsh_com(keys, concat(Bytes{b}, proof), r_nizk);
  p.c_owf = sbsh_com(keys, Bytes(kPreimageBytes, 0), r_owf);
  auto witness = Writer().u8(0).u8(b).raw(proof).raw(r_nizk).take();
  p.zap_proof = zap_prove(crs.zap_crs, "zapr-main", main_statement(crs, x, p), witness);
  return p;
}

int zapr_verify(const ZaprCrs& crs, const ZaprProof& proof, const BitString& x) {
  return zap_verify(crs.zap_crs, "zapr-main", proof.zap_proof, main_statement(crs, x, proof));
}

}  // namespace qnio
