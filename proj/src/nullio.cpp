#include "qnio/nullio.hpp"

#include <algorithm>

namespace qnio {

namespace {

NodeId release(ProgramBuilder& b, NodeId verdict, const std::optional<Bytes>& payload) {
  if (!payload) return verdict;
  return b.ite(verdict, b.constant(*payload), b.bottom());
}

Program stage_program(NullStage stage, const Key16& sk, const VerifierSpec& spec,
                      const std::optional<Bytes>& payload) {
  ProgramBuilder b;
  auto ct = b.input();
  NodeId verdict;
  if (stage == NullStage::Reject) {
    b.eq(ct, ct);
    verdict = b.constant(Bytes{0});
  } else {
    auto plain = b.host("QFHE_DEC", {b.constant(sk), ct});
    auto s = b.constant(spec.encode());
    bool trapdoor = stage == NullStage::TdVerify || stage == NullStage::SimParams;
    verdict = b.host(trapdoor ? "CVQC_TDVERIFY" : "CVQC_VERIFY_STAR", {s, plain});
  }
  return b.build({release(b, verdict, payload)});
}

Program oracle_program(const VerifierSpec& spec) {
  ProgramBuilder b;
  auto x = b.input();
  return b.build({b.host("RO_QUERY", {b.constant(spec.encode()), x})});
}

Program vbb_program(const PrfKey& k, const VerifierSpec& spec, const std::optional<Bytes>& payload) {
  ProgramBuilder b;
  auto branch = b.input();
  auto x = b.input();
  auto keyed = b.host("PRF", {b.constant(k.encode()), x});
  auto verdict = b.host("CVQC_VERIFY_KEYED", {b.constant(spec.encode()), x});
  auto chosen = b.eq(branch, b.constant(Bytes{1}));
  return b.build({b.ite(chosen, release(b, verdict, payload), keyed)});
}

DualModeKeys stage_keys(NullStage stage, const Statement& q, const NioConfig& cfg, Drbg& rng) {
  switch (stage) {
    case NullStage::TdParams:
    case NullStage::TdVerify: return td_gen(q, cfg.base, rng, cfg.toy);
    case NullStage::SimParams: return sim_gen(q, cfg.base, rng, cfg.toy);
    default: return dual_keygen(q, cfg.base, rng, cfg.toy);
  }
}

}  // namespace

Bytes NioConfig::encode() const {
  return Writer()
      .u8(static_cast<std::uint8_t>(base))
      .u8(static_cast<std::uint8_t>(toy.positions))
      .u8(static_cast<std::uint8_t>(toy.secret_bits))
      .u8(static_cast<std::uint8_t>(toy.tolerance))
      .u8(static_cast<std::uint8_t>(toy.variant))
      .u8(static_cast<std::uint8_t>(copies))
      .take();
}

NioConfig NioConfig::decode(ByteView data) {
  Reader r(data);
  NioConfig c;
  auto base = r.u8();
  if (base != 1 && base != 2) throw DecodeError("base protocol");
  c.base = static_cast<Proto>(base);
  c.toy.positions = r.u8();
  c.toy.secret_bits = r.u8();
  c.toy.tolerance = r.u8();
  auto v = r.u8();
  if (v > 2) throw DecodeError("check variant");
  c.toy.variant = static_cast<CheckVariant>(v);
  c.copies = r.u8();
  r.expect_end();
  return c;
}

Bytes ObfuscatedNullCircuit::encode() const {
  Writer w;
  w.u8(static_cast<std::uint8_t>(variant)).raw(statement_digest).u8(static_cast<std::uint8_t>(copies));
  w.blob(pk.encode());
  if (variant == NioVariant::IO) {
    w.blob(ct_pp.encode()).blob(oracle.serialize());
  } else {
    w.blob(pp.encode());
  }
  w.blob(circuit.serialize());
  return w.take();
}

ObfuscatedNullCircuit ObfuscatedNullCircuit::decode(ByteView data) {
  Reader r(data);
  ObfuscatedNullCircuit o;
  auto v = r.u8();
  if (v != 1 && v != 2) throw DecodeError("null-iO variant");
  o.variant = static_cast<NioVariant>(v);
  o.statement_digest = r.digest();
  o.copies = r.u8();
  o.pk = QfhePublicKey::decode(r.blob());
  if (o.variant == NioVariant::IO) {
    o.ct_pp = QfheCiphertext::decode(r.blob());
    o.oracle = SealedProgram::deserialize(r.blob());
  } else {
    o.pp = CvqcParams::decode(r.blob());
  }
  o.circuit = SealedProgram::deserialize(r.blob());
  r.expect_end();
  return o;
}

ObfuscatedNullCircuit nio_obf(const Statement& q, const NioConfig& cfg, Drbg& rng, NullStage stage,
                              const std::optional<Bytes>& payload) {
  auto qk = qfhe_gen(rng);
  auto dual = stage_keys(stage, q, cfg, rng);
  ObfuscatedNullCircuit o;
  o.variant = NioVariant::IO;
  o.statement_digest = q.digest();
  o.copies = cfg.copies;
  o.pk = qk.pk;
  o.ct_pp = qfhe_enc(qk.pk, dual.keys.pp.encode(), rng);
  auto spec = VerifierSpec::from(q, dual);
  std::size_t budget = 0;
  for (auto s : kNullStages) budget = std::max(budget, stage_program(s, qk.sk.bytes, spec, payload).size());
  o.circuit = obf_io(stage_program(stage, qk.sk.bytes, spec, payload), budget);
  o.oracle = obf_io(oracle_program(spec), oracle_program(spec).size());
  return o;
}

ObfuscatedNullCircuit nio_obf(const Statement& q, const NioConfig& cfg, std::uint64_t seed) {
  auto rng = Drbg::from_u64(seed);
  return nio_obf(q, cfg, rng);
}

OracleAnswer nio_oracle_query(const ObfuscatedNullCircuit& obj, ByteView x) {
  if (obj.variant != NioVariant::IO) throw Error("the VBB variant has no shared oracle handle");
  auto v = obj.oracle.call({to_bytes(x)});
  if (!v) throw Error("oracle handle returned bottom");
  return OracleAnswer::decode(*v);
}

Value nio_eval_value(const ObfuscatedNullCircuit& obj, const Witness& w, std::uint64_t seed) {
  if (w.copies < obj.copies) throw InsufficientCopies();
  if (obj.variant == NioVariant::VBB) {
    CvqcProof pi;
    try {
      pi = cvqc_prove(obj.pp, w, seed);
    } catch (const JudgeReject&) {
      return obj.circuit.call({Bytes{1}, Bytes{}});
    }
    auto head = obj.circuit.call({Bytes{0}, pi.encode()});
    HashedProof hp{pi, OracleAnswer{key16(*head), 0}};
    return obj.circuit.call({Bytes{1}, hp.encode()});
  }
  QfheFunction prove = [&obj, &w](ByteView m, std::uint64_t s) -> Bytes {
    CvqcProof pi;
    try {
      pi = cvqc_prove(CvqcParams::decode(m), w, s);
    } catch (const JudgeReject&) {
      return {};
    }
    return HashedProof{pi, nio_oracle_query(obj, pi.encode())}.encode();
  };
  auto ct_pi = qfhe_eval(obj.pk, prove, obj.ct_pp, seed);
  return obj.circuit.call({ct_pi.encode()});
}

int nio_eval(const ObfuscatedNullCircuit& obj, const Witness& w, std::uint64_t seed) {
  return is_true(nio_eval_value(obj, w, seed)) ? 1 : 0;
}

Value nio_inject(const ObfuscatedNullCircuit& obj, ByteView hashed_proof, Drbg& rng) {
  if (obj.variant == NioVariant::VBB) return obj.circuit.call({Bytes{1}, to_bytes(hashed_proof)});
  return obj.circuit.call({qfhe_enc(obj.pk, hashed_proof, rng).encode()});
}

VbbNullObfuscation nio_obf_vbb(const Statement& q, const NioConfig& cfg, Drbg& rng,
                               const std::optional<Bytes>& payload) {
  auto qk = qfhe_gen(rng);
  auto dual = dual_keygen(q, cfg.base, rng, cfg.toy);
  auto k = PrfKey::sample(rng);
  auto spec = VerifierSpec::from(q, dual);
  spec.td = k;
  auto program = vbb_program(k, spec, payload);
  auto sealed = obf_vbb(program, program.size());
  VbbNullObfuscation out;
  out.obj.variant = NioVariant::VBB;
  out.obj.statement_digest = q.digest();
  out.obj.copies = cfg.copies;
  out.obj.pk = qk.pk;
  out.obj.pp = dual.keys.pp;
  out.obj.circuit = sealed.sealed;
  out.sim = sealed.sim;
  out.escrow_key = k;
  return out;
}

// ---- witness encryption ----

Bytes WeCiphertext::encode() const { return Writer().raw(statement_digest).blob(inner.encode()).take(); }

WeCiphertext WeCiphertext::decode(ByteView data) {
  Reader r(data);
  WeCiphertext c;
  c.statement_digest = r.digest();
  c.inner = ObfuscatedNullCircuit::decode(r.blob());
  r.expect_end();
  return c;
}

Statement we_statement(std::string lang, Bytes instance, const NioConfig& cfg) {
  return Statement{std::move(lang), std::move(instance), cfg.copies};
}

WeCiphertext we_enc(const Statement& q, ByteView message, ByteView coins, const NioConfig& cfg) {
  Drbg rng(concat(to_bytes("we-enc"), coins));
  WeCiphertext c;
  c.statement_digest = q.digest();
  c.inner = nio_obf(q, cfg, rng, NullStage::Honest, to_bytes(message));
  return c;
}

WeCiphertext we_enc(const Statement& q, int bit, std::uint64_t seed, const NioConfig& cfg) {
  Bytes m{static_cast<std::uint8_t>(bit ? 1 : 0)};
  return we_enc(q, m, be64(seed), cfg);
}

std::optional<Bytes> we_dec(const Statement& q, const WeCiphertext& c, const Witness& w, std::uint64_t seed) {
  if (q.digest() != c.statement_digest || c.inner.statement_digest != c.statement_digest) return std::nullopt;
  return nio_eval_value(c.inner, w, seed);
}

std::optional<Bytes> we_dec_bqp(const Statement& q, const WeCiphertext& c, std::uint64_t seed) {
  return we_dec(q, c, Witness::none(c.inner.copies), seed);
}

Bytes we_params(std::string_view lang, const NioConfig& cfg) { return Writer().str(lang).blob(cfg.encode()).take(); }

Bytes we_enc_gate(ByteView params, ByteView instance, ByteView message, ByteView coins) {
  Reader r(params);
  auto lang = r.str();
  auto cfg = NioConfig::decode(r.blob());
  r.expect_end();
  return we_enc(we_statement(lang, to_bytes(instance), cfg), message, coins, cfg).encode();
}

}  // namespace qnio
