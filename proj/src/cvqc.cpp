#include "qnio/cvqc.hpp"

#include <bit>
#include <cmath>

#include "qnio/hash.hpp"

namespace qnio {

namespace {

constexpr std::string_view kEnvelopeLabel = "cvqc-pp";

double unit(Drbg& rng) { return static_cast<double>(rng.u64() >> 11) * 0x1.0p-53; }

int parity(unsigned v) { return std::popcount(v) & 1; }

void write_toy(Writer& w, const ToyParams& t) {
  w.u8(static_cast<std::uint8_t>(t.positions))
      .u8(static_cast<std::uint8_t>(t.secret_bits))
      .u8(static_cast<std::uint8_t>(t.tolerance))
      .u8(static_cast<std::uint8_t>(t.variant));
}

ToyParams read_toy(Reader& r) {
  ToyParams t;
  t.positions = r.u8();
  t.secret_bits = r.u8();
  t.tolerance = r.u8();
  auto v = r.u8();
  if (v > 2 || t.positions == 0 || t.positions > 32 || t.secret_bits == 0 || t.secret_bits > 8)
    throw DecodeError("toy parameters out of range");
  t.variant = static_cast<CheckVariant>(v);
  return t;
}

Proto read_proto(Reader& r) {
  auto p = r.u8();
  if (p != 1 && p != 2) throw DecodeError("unknown protocol tag");
  return static_cast<Proto>(p);
}

// Contents of the sealed parameter envelope.
struct Envelope {
  Proto proto = Proto::Oracle;
  Statement statement;
  PrfKey mac_key;
  ToyParams toy;
  BitString basis;
  std::vector<std::uint8_t> secrets;

  Bytes encode() const {
    Writer w;
    w.u8(static_cast<std::uint8_t>(proto)).blob(statement.encode());
    if (proto == Proto::Oracle) {
      w.blob(mac_key.encode());
    } else {
      write_toy(w, toy);
      w.bits(basis).blob(secrets);
    }
    return w.take();
  }

  static Envelope open(const CvqcParams& pp) {
    auto plain = unseal(kEnvelopeLabel, pp.envelope);
    Reader r(plain);
    Envelope e;
    e.proto = read_proto(r);
    e.statement = Statement::decode(r.blob());
    if (e.proto == Proto::Oracle) {
      e.mac_key = PrfKey::decode(r.blob());
    } else {
      e.toy = read_toy(r);
      e.basis = r.bits();
      e.secrets = r.blob();
    }
    r.expect_end();
    if (e.proto != pp.proto) throw DecodeError("envelope protocol mismatch");
    return e;
  }
};

Key16 acceptance_tag(const PrfKey& mac_key, const Digest& statement_digest) {
  return prf_eval(mac_key, concat(statement_digest, to_bytes("acc")));
}

// Pr[accept] read off the final clock slice of the history state.
double history_acceptance(const QuantumCircuit& c, const StateVector& input) {
  try {
    auto h = history_state(c, input);
    const unsigned n = c.qubits;
    const std::size_t steps = c.gates.size();
    const std::size_t clock = ((std::size_t{1} << steps) - 1) << n;
    double total = 0, ones = 0;
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
      double p = std::norm(h[clock | i]);
      total += p;
      if (i & 1) ones += p;
    }
    return total > 0 ? ones / total : 0.0;
  } catch (const TooManyQubits&) {
    return evolve(c, input).prob_one(0);
  }
}

double toy_acceptance(const Statement& q, const Witness& w) {
  auto base = resolve_language(q.lang);
  if (w.state.qubits() != base.witness_qubits) throw WidthMismatch("witness has the wrong number of qubits");
  auto c = base.verifier(q.instance, w.classical);
  if (!c) return 0.0;
  return std::clamp(history_acceptance(*c, w.state), 0.0, 1.0);
}

// Measured outcome e_i for each position: the prover prepares its outcome
// bit in basis x_i and measures it back in the same basis.
std::vector<std::uint8_t> toy_outcomes(const Envelope& env, const Witness& w, Drbg& rng) {
  const double p = toy_acceptance(env.statement, w);
  std::vector<std::uint8_t> e(env.toy.positions);
  for (unsigned i = 0; i < env.toy.positions; ++i) {
    int a = unit(rng) < p ? 1 : 0;
    auto basis = env.basis.bit(i) ? Basis::Hadamard : Basis::Computational;
    StateVector s = StateVector::basis(1, static_cast<std::uint64_t>(a));
    if (basis == Basis::Hadamard) apply_gate(s, Gate{GateKind::H, {0, 0, 0}});
    e[i] = static_cast<std::uint8_t>(measure_qubit(s, 0, basis, rng.u64()).bit);
  }
  return e;
}

CvqcProof encode_outcomes(const Envelope& env, const std::vector<std::uint8_t>& e,
                          const std::vector<std::uint8_t>& d, std::uint32_t salt) {
  CvqcProof pi;
  pi.proto = Proto::Toy;
  pi.salt = salt;
  for (unsigned i = 0; i < env.toy.positions; ++i)
    pi.pairs.push_back({static_cast<std::uint8_t>(e[i] ^ parity(d[i] & env.secrets[i])), d[i]});
  return pi;
}

std::vector<bool> checked_positions(const CvqcProof& pi, const CvqcVerifyKey& r) {
  const unsigned k = r.params.positions;
  std::vector<bool> checked(k);
  Key16 subset{};
  if (r.params.variant == CheckVariant::FreshTerms) subset = prf_eval(r.subset_key, pi.encode());
  for (unsigned i = 0; i < k; ++i) {
    switch (r.params.variant) {
      case CheckVariant::Standard: checked[i] = r.basis.bit(i); break;
      case CheckVariant::AllPositions: checked[i] = true; break;
      case CheckVariant::FreshTerms: checked[i] = r.basis.bit(i) && ((subset[i / 8] >> (i % 8)) & 1); break;
    }
  }
  return checked;
}

int toy_verify(const CvqcProof& pi, const CvqcVerifyKey& r) {
  const auto& t = r.params;
  if (pi.pairs.size() != t.positions) throw MalformedProof("toy proof needs K pairs");
  auto checked = checked_positions(pi, r);
  unsigned mismatches = 0;
  for (unsigned i = 0; i < t.positions; ++i) {
    if (!checked[i]) continue;
    const auto& [b, d] = pi.pairs[i];
    if (b > 1 || d >> t.secret_bits) throw MalformedProof("toy pair out of range");
    int e = b ^ parity(d & r.secrets[i]);
    if (e != r.target.bit(i)) ++mismatches;
  }
  return mismatches <= t.tolerance ? r.out_bit : 0;
}

}  // namespace

// ---- encodings ----

Bytes CvqcParams::encode() const { return Writer().u8(static_cast<std::uint8_t>(proto)).blob(envelope).take(); }

CvqcParams CvqcParams::decode(ByteView data) {
  Reader r(data);
  CvqcParams pp;
  pp.proto = read_proto(r);
  pp.envelope = r.blob();
  r.expect_end();
  return pp;
}

Bytes CvqcVerifyKey::encode() const {
  Writer w;
  w.u8(static_cast<std::uint8_t>(proto)).raw(statement_digest).blob(mac_key.encode());
  write_toy(w, params);
  w.bits(basis).blob(secrets).bits(target).u8(static_cast<std::uint8_t>(out_bit)).blob(subset_key.encode());
  return w.take();
}

CvqcVerifyKey CvqcVerifyKey::decode(ByteView data) {
  Reader r(data);
  CvqcVerifyKey k;
  k.proto = read_proto(r);
  k.statement_digest = r.digest();
  k.mac_key = PrfKey::decode(r.blob());
  k.params = read_toy(r);
  k.basis = r.bits();
  k.secrets = r.blob();
  k.target = r.bits();
  k.out_bit = r.u8();
  k.subset_key = PrfKey::decode(r.blob());
  r.expect_end();
  if (k.out_bit > 1) throw DecodeError("out bit");
  return k;
}

Bytes CvqcProof::encode() const {
  Writer w;
  w.u8(static_cast<std::uint8_t>(proto));
  if (proto == Proto::Oracle) {
    w.raw(tag);
  } else {
    w.u8(static_cast<std::uint8_t>(pairs.size()));
    for (const auto& p : pairs) w.u8(p.b).u8(p.d);
    w.u32(salt);
  }
  return w.take();
}

CvqcProof CvqcProof::decode(ByteView data) {
  Reader r(data);
  CvqcProof pi;
  pi.proto = read_proto(r);
  if (pi.proto == Proto::Oracle) {
    pi.tag = r.key();
  } else {
    pi.pairs.resize(r.u8());
    for (auto& p : pi.pairs) {
      p.b = r.u8();
      p.d = r.u8();
      if (p.b > 1) throw DecodeError("proof bit");
    }
    pi.salt = r.u32();
  }
  r.expect_end();
  return pi;
}

Bytes HashedProof::encode() const { return Writer().blob(proof.encode()).raw(h.encode()).take(); }

HashedProof HashedProof::decode(ByteView data) {
  Reader r(data);
  HashedProof hp;
  hp.proof = CvqcProof::decode(r.blob());
  hp.h = OracleAnswer::decode(r.raw(17));
  r.expect_end();
  return hp;
}

QmaLanguage statement_language(const Statement& q) { return amplify(resolve_language(q.lang), q.reps); }

// ---- base protocols ----

CvqcKeys toy_keygen_explicit(const Statement& q, const ToyParams& toy, const BitString& basis,
                             std::vector<std::uint8_t> secrets, const BitString& target, int out_bit,
                             const PrfKey& subset_key) {
  if (basis.width() != toy.positions || target.width() != toy.positions || secrets.size() != toy.positions)
    throw WidthMismatch("toy key arity");
  for (auto s : secrets)
    if (s >> toy.secret_bits) throw WidthMismatch("secret wider than w");
  Envelope env;
  env.proto = Proto::Toy;
  env.statement = q;
  env.toy = toy;
  env.basis = basis;
  env.secrets = secrets;
  CvqcKeys keys;
  keys.pp = {Proto::Toy, seal(kEnvelopeLabel, env.encode())};
  keys.r.proto = Proto::Toy;
  keys.r.statement_digest = q.digest();
  keys.r.params = toy;
  keys.r.basis = basis;
  keys.r.secrets = std::move(secrets);
  keys.r.target = target;
  keys.r.out_bit = out_bit;
  keys.r.subset_key = subset_key;
  return keys;
}

CvqcKeys cvqc_keygen(const Statement& q, Proto proto, Drbg& rng, const ToyParams& toy) {
  if (proto == Proto::Oracle) {
    statement_language(q);
    Envelope env;
    env.proto = Proto::Oracle;
    env.statement = q;
    env.mac_key = PrfKey::sample(rng);
    CvqcKeys keys;
    keys.pp = {Proto::Oracle, seal(kEnvelopeLabel, env.encode())};
    keys.r.proto = Proto::Oracle;
    keys.r.statement_digest = q.digest();
    keys.r.mac_key = env.mac_key;
    return keys;
  }
  auto base = resolve_language(q.lang);
  if (base.witness_qubits != 0) throw Error("the toy protocol covers empty-witness statements only");
  if (toy.positions == 0 || toy.positions > 32 || toy.secret_bits == 0 || toy.secret_bits > 8)
    throw WidthMismatch("toy parameters out of range");
  const std::uint64_t space = std::uint64_t{1} << toy.positions;
  std::uint64_t x = 0;
  while (x == 0) x = rng.below(space);
  std::vector<std::uint8_t> secrets(toy.positions);
  for (auto& s : secrets) s = static_cast<std::uint8_t>(rng.below(std::uint64_t{1} << toy.secret_bits));
  const double p = toy_acceptance(q, Witness::none());
  BitString target(toy.positions, 0);
  for (unsigned i = 0; i < toy.positions; ++i) target = target.with_bit(i, unit(rng) < p ? 1 : 0);
  int out_bit = unit(rng) < p ? 1 : 0;
  auto subset_key = PrfKey::sample(rng);
  return toy_keygen_explicit(q, toy, BitString(toy.positions, x), std::move(secrets), target, out_bit, subset_key);
}

CvqcProof cvqc_prove(const CvqcParams& pp, const Witness& w, std::uint64_t seed) {
  auto env = Envelope::open(pp);
  if (env.proto == Proto::Oracle) {
    auto L = statement_language(env.statement);
    if (!amplified_verify(L, env.statement.instance, w, seed)) throw JudgeReject();
    CvqcProof pi;
    pi.proto = Proto::Oracle;
    pi.tag = acceptance_tag(env.mac_key, env.statement.digest());
    return pi;
  }
  Drbg rng = Drbg::from_u64(seed).fork("toy-prove");
  auto e = toy_outcomes(env, w, rng);
  std::vector<std::uint8_t> d(env.toy.positions);
  for (auto& di : d) di = static_cast<std::uint8_t>(rng.below(std::uint64_t{1} << env.toy.secret_bits));
  return encode_outcomes(env, e, d, static_cast<std::uint32_t>(rng.u64()));
}

int cvqc_verify(const Statement& q, const CvqcProof& pi, const CvqcVerifyKey& r) {
  if (pi.proto != r.proto || q.digest() != r.statement_digest) return 0;
  if (r.proto == Proto::Oracle) return pi.tag == acceptance_tag(r.mac_key, r.statement_digest) ? 1 : 0;
  return toy_verify(pi, r);
}

std::vector<CvqcProof> enumerate_toy_proofs(const ToyParams& toy) {
  const unsigned bits = toy.proof_bits();
  if (bits > 20) throw Error("proof space too large to enumerate");
  const unsigned chunk = 1 + toy.secret_bits;
  std::vector<CvqcProof> out;
  out.reserve(std::size_t{1} << bits);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) {
    CvqcProof pi;
    pi.proto = Proto::Toy;
    for (unsigned i = 0; i < toy.positions; ++i) {
      auto part = (v >> (i * chunk)) & ((1u << chunk) - 1);
      pi.pairs.push_back({static_cast<std::uint8_t>(part >> toy.secret_bits),
                          static_cast<std::uint8_t>(part & ((1u << toy.secret_bits) - 1))});
    }
    out.push_back(std::move(pi));
  }
  return out;
}

CvqcProof random_toy_proof(const ToyParams& toy, Drbg& rng) {
  CvqcProof pi;
  pi.proto = Proto::Toy;
  for (unsigned i = 0; i < toy.positions; ++i)
    pi.pairs.push_back({static_cast<std::uint8_t>(rng.bit()),
                        static_cast<std::uint8_t>(rng.below(std::uint64_t{1} << toy.secret_bits))});
  pi.salt = static_cast<std::uint32_t>(rng.u64());
  return pi;
}

// ---- dual-mode layer ----

HashedProof hash_proof(const CvqcProof& pi, const RandomOracle& oracle) { return {pi, oracle.query(pi.encode())}; }

HashedProof star_prove(const CvqcParams& pp, const Witness& w, const RandomOracle& oracle, std::uint64_t seed) {
  return hash_proof(cvqc_prove(pp, w, seed), oracle);
}

int star_verify(const Statement& q, const HashedProof& hp, const CvqcVerifyKey& r, const RandomOracle& oracle) {
  if (oracle.query(hp.proof.encode()) != hp.h) return 0;
  try {
    return cvqc_verify(q, hp.proof, r);
  } catch (const MalformedProof&) {
    return 0;
  }
}

int td_verify(const Statement&, const HashedProof& hp, const PrfKey& td, const RandomOracle& oracle) {
  auto encoded = hp.proof.encode();
  if (oracle.query(encoded) != hp.h) return 0;
  return hp.h.last ^ prf_bit(td, encoded);
}

namespace {

RandomOracle::Predicate verify_predicate(const Statement& q, const CvqcVerifyKey& r) {
  return [q, r](ByteView x) {
    try {
      return cvqc_verify(q, CvqcProof::decode(x), r) == 1;
    } catch (const Error&) {
      return false;
    }
  };
}

DualModeKeys draw_dual(const Statement& q, Proto proto, Drbg& rng, const ToyParams& toy) {
  DualModeKeys k;
  k.keys = cvqc_keygen(q, proto, rng, toy);
  k.td = PrfKey::sample(rng);
  k.oracle_seed = rng.key();
  return k;
}

}  // namespace

DualModeKeys dual_keygen(const Statement& q, Proto proto, Drbg& rng, const ToyParams& toy) {
  auto k = draw_dual(q, proto, rng, toy);
  k.oracle = RandomOracle::uniform(k.oracle_seed);
  return k;
}

DualModeKeys td_gen(const Statement& q, Proto proto, Drbg& rng, const ToyParams& toy) {
  auto k = draw_dual(q, proto, rng, toy);
  k.oracle = RandomOracle::tdgen(k.oracle_seed, k.td, verify_predicate(q, k.keys.r));
  return k;
}

DualModeKeys sim_gen(const Statement& q, Proto proto, Drbg& rng, const ToyParams& toy) {
  auto k = draw_dual(q, proto, rng, toy);
  k.oracle = RandomOracle::simgen(k.oracle_seed, k.td);
  return k;
}

VerifierSpec VerifierSpec::from(const Statement& q, const DualModeKeys& k) {
  return VerifierSpec{q, k.keys.r, k.oracle ? k.oracle->mode() : OracleMode::Uniform, k.oracle_seed, k.td};
}

std::shared_ptr<RandomOracle> VerifierSpec::oracle() const {
  switch (mode) {
    case OracleMode::Uniform: return RandomOracle::uniform(oracle_seed);
    case OracleMode::TdGen: return RandomOracle::tdgen(oracle_seed, td, verify_predicate(statement, key));
    case OracleMode::SimGen: return RandomOracle::simgen(oracle_seed, td);
  }
  throw DecodeError("oracle mode");
}

Bytes VerifierSpec::encode() const {
  return Writer()
      .blob(statement.encode())
      .blob(key.encode())
      .u8(static_cast<std::uint8_t>(mode))
      .raw(oracle_seed)
      .blob(td.encode())
      .take();
}

VerifierSpec VerifierSpec::decode(ByteView data) {
  Reader r(data);
  VerifierSpec s;
  s.statement = Statement::decode(r.blob());
  s.key = CvqcVerifyKey::decode(r.blob());
  auto mode = r.u8();
  if (mode > 2) throw DecodeError("oracle mode");
  s.mode = static_cast<OracleMode>(mode);
  s.oracle_seed = r.key();
  s.td = PrfKey::decode(r.blob());
  r.expect_end();
  return s;
}

// ---- blind wrapper ----

ToyFirstMessage toy_prove1(const CvqcParams& pp, const Witness& w, std::uint64_t seed) {
  auto env = Envelope::open(pp);
  if (env.proto != Proto::Toy) throw Error("blind wrapper runs the toy protocol");
  Drbg rng = Drbg::from_u64(seed).fork("toy-prove1");
  auto e = toy_outcomes(env, w, rng);
  auto opening = rng.key();
  ToyFirstMessage m;
  m.y = commit(e, opening);
  m.state = Writer().blob(pp.encode()).blob(e).raw(opening).take();
  return m;
}

Key16 toy_challenge(ByteView first_message, const RandomOracle& oracle) {
  return oracle.query(concat(to_bytes("toy-challenge"), first_message)).head;
}

std::uint8_t challenge_term(const Key16& challenge, unsigned index, unsigned width) {
  std::uint8_t d = 0;
  for (unsigned j = 0; j < width; ++j) {
    unsigned bit = index * width + j;
    d = static_cast<std::uint8_t>((d << 1) | ((challenge[bit / 8] >> (7 - bit % 8)) & 1));
  }
  return d;
}

CvqcProof toy_prove2(ByteView state, const Key16& challenge) {
  Reader r(state);
  auto pp = CvqcParams::decode(r.blob());
  auto e = r.blob();
  r.key();
  r.expect_end();
  auto env = Envelope::open(pp);
  std::vector<std::uint8_t> d(env.toy.positions);
  for (unsigned i = 0; i < env.toy.positions; ++i) d[i] = challenge_term(challenge, i, env.toy.secret_bits);
  return encode_outcomes(env, e, d, 0);
}

int toy_verify4(const Statement& q, ByteView first_message, const CvqcProof& pi, const CvqcVerifyKey& r,
                const RandomOracle& oracle) {
  if (pi.pairs.size() != r.params.positions) throw MalformedProof("toy proof needs K pairs");
  auto challenge = toy_challenge(first_message, oracle);
  for (unsigned i = 0; i < r.params.positions; ++i)
    if (pi.pairs[i].d != challenge_term(challenge, i, r.params.secret_bits)) return 0;
  return cvqc_verify(q, pi, r);
}

BlindKeys blind_keygen(const Statement& q, const ToyParams& toy, Drbg& rng) {
  auto keys = cvqc_keygen(q, Proto::Toy, rng, toy);
  auto qk = qfhe_gen(rng);
  BlindKeys b{qk.pk, qfhe_enc(qk.pk, keys.pp.encode(), rng), keys.r, qk.sk, nullptr};
  b.oracle = RandomOracle::uniform(rng.key());
  return b;
}

BlindProof blind_prove(const QfhePublicKey& pk, const QfheCiphertext& ct_pp, const Witness& w,
                       const RandomOracle& oracle, std::uint64_t seed) {
  QfheFunction first = [&w](ByteView m, std::uint64_t s) {
    auto msg = toy_prove1(CvqcParams::decode(m), w, s);
    return Writer().blob(msg.y.payload).blob(msg.state).take();
  };
  auto ct1 = qfhe_eval(pk, first, ct_pp, seed);
  auto challenge = toy_challenge(ct1.encode(), oracle);
  QfheFunction second = [challenge](ByteView m, std::uint64_t) {
    Reader r(m);
    r.blob();
    auto state = r.blob();
    return toy_prove2(state, challenge).encode();
  };
  auto ct2 = qfhe_eval(pk, second, ct1, seed + 1);
  return {ct1, ct2};
}

int blind_verify(const Statement& q, const BlindProof& proof, const BlindKeys& keys) {
  try {
    auto pi = CvqcProof::decode(qfhe_dec(keys.sk, proof.ct2));
    return toy_verify4(q, proof.ct1.encode(), pi, keys.r, *keys.oracle);
  } catch (const Error&) {
    return 0;
  }
}

}  // namespace qnio
