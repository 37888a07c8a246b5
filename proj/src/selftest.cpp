#include "qnio/selftest.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "qnio/attacks.hpp"
#include "qnio/encdelegate.hpp"
#include "qnio/proofs.hpp"

namespace qnio {

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

std::size_t pick(Scale s, std::size_t full, std::size_t mini) { return s == Scale::Full ? full : mini; }

BitString random_bits(Drbg& rng, unsigned width) { return BitString(width, rng.below(std::uint64_t{1} << width)); }

BitString random_with_parity(Drbg& rng, unsigned width, int parity) {
  for (;;) {
    auto x = random_bits(rng, width);
    if (static_cast<int>(x.popcount() & 1) == parity) return x;
  }
}

bool parity_of(const BitString& x) { return x.popcount() & 1; }

// ---- 1: puncturable PRF ----
void ggm_criterion(Scale, Outcome& out) {
  auto rng = Drbg::from_u64(1).fork("selftest-ggm");
  std::size_t agree = 0, errors = 0;
  for (int key = 0; key < 20; ++key) {
    auto k = PrfKey::sample(rng, 8);
    auto z = random_bits(rng, 8);
    auto kz = ggm_punct(k, z);
    for (std::uint64_t v = 0; v < 256; ++v) {
      BitString x(8, v);
      if (x == z) {
        try {
          ggm_eval_punct(kz, x);
        } catch (const PuncturedPoint&) {
          ++errors;
        }
      } else if (ggm_eval_punct(kz, x) == ggm_eval(k, x)) {
        ++agree;
      }
    }
  }
  out.detail << "agree " << agree << "/5100, punctured errors " << errors << "/20";
  out.require(agree == 5100 && errors == 20, "punctured evaluation mismatch");
}

// ---- 2 and 3: dual-mode CVQC ----
std::vector<Statement> par_statements() {
  return {Statement{"par:3", BitString::parse("100").bytes(), 1}, Statement{"par:3", BitString::parse("110").bytes(), 1}};
}

void equivalence_criterion(Scale scale, Outcome& out) {
  std::size_t compared = 0, accepted = 0, disagree = 0;
  std::uint64_t seed = 11;
  for (const auto& q : par_statements()) {
    auto rng = Drbg::from_u64(seed++).fork("selftest-equiv");
    auto mini = td_gen(q, Proto::Toy, rng, ToyParams::mini());
    for (const auto& pi : enumerate_toy_proofs(ToyParams::mini())) {
      auto hp = hash_proof(pi, *mini.oracle);
      int a = star_verify(q, hp, mini.keys.r, *mini.oracle);
      int b = td_verify(q, hp, mini.td, *mini.oracle);
      accepted += a;
      disagree += a != b;
      ++compared;
    }
    auto full = td_gen(q, Proto::Toy, rng, ToyParams::standard());
    std::vector<CvqcProof> proofs{cvqc_prove(full.keys.pp, Witness::none(), 1)};
    for (std::size_t i = 0; i < pick(scale, 10000, 1000); ++i) proofs.push_back(random_toy_proof(full.keys.r.params, rng));
    for (const auto& pi : proofs) {
      auto hp = hash_proof(pi, *full.oracle);
      int a = star_verify(q, hp, full.keys.r, *full.oracle);
      int b = td_verify(q, hp, full.td, *full.oracle);
      accepted += a;
      disagree += a != b;
      ++compared;
    }
  }
  out.detail << "compared " << compared << ", accepting " << accepted << ", disagreements " << disagree;
  out.require(disagree == 0, "Verify and TdVerify disagree");
  out.require(accepted > 0, "no accepting proof exercised");
}

void simulation_criterion(Scale scale, Outcome& out) {
  std::size_t tried = 0, accepted = 0;
  std::uint64_t seed = 21;
  for (const auto& q : par_statements()) {
    auto rng = Drbg::from_u64(seed++).fork("selftest-sim");
    auto mini = sim_gen(q, Proto::Toy, rng, ToyParams::mini());
    for (const auto& pi : enumerate_toy_proofs(ToyParams::mini())) {
      accepted += td_verify(q, hash_proof(pi, *mini.oracle), mini.td, *mini.oracle);
      ++tried;
    }
    auto full = sim_gen(q, Proto::Toy, rng, ToyParams::standard());
    accepted += td_verify(q, hash_proof(cvqc_prove(full.keys.pp, Witness::none(), 2), *full.oracle), full.td,
                          *full.oracle);
    ++tried;
    for (std::size_t i = 0; i < pick(scale, 50000, 5000); ++i) {
      auto pi = random_toy_proof(full.keys.r.params, rng);
      accepted += td_verify(q, hash_proof(pi, *full.oracle), full.td, *full.oracle);
      ++tried;
    }
  }
  out.detail << "tried " << tried << ", accepted " << accepted;
  out.require(accepted == 0, "simulated setup accepted a proof");
}

// ---- 4: null-iO correctness ----
void nullio_criterion(Scale scale, Outcome& out) {
  std::size_t par_ok = 0, par_total = 0;
  for (auto base : {Proto::Oracle, Proto::Toy}) {
    NioConfig cfg;
    cfg.base = base;
    for (std::uint64_t v = 0; v < 8; ++v) {
      BitString x(3, v);
      auto q = we_statement("par:3", x.bytes(), cfg);
      auto obj = nio_obf(q, cfg, 100 + v);
      par_ok += nio_eval(obj, Witness::none(cfg.copies), v) == (parity_of(x) ? 1 : 0);
      ++par_total;
    }
  }
  NioConfig cfg;
  auto rng = Drbg::from_u64(4).fork("selftest-nio");
  const std::size_t trials = pick(scale, 100, 20);
  std::size_t ghz_ok = 0, null_zero = 0;
  for (std::size_t s = 0; s < trials; ++s) {
    auto x = random_bits(rng, 3);
    auto obj = nio_obf(we_statement("ghz", x.bytes(), cfg), cfg, 1000 + s);
    ghz_ok += nio_eval(obj, ghz_witness(x, cfg.copies), s);
    auto null = nio_obf(we_statement("null:1", BitString(1, s & 1).bytes(), cfg), cfg, 2000 + s);
    null_zero += nio_eval(null, Witness::none(cfg.copies), s) == 0;
  }
  out.detail << "PAR " << par_ok << "/" << par_total << ", GHZ " << ghz_ok << "/" << trials << ", NULL zero "
             << null_zero << "/" << trials;
  out.require(par_ok == par_total, "PAR not exact");
  out.require(ghz_ok * 100 >= 90 * trials, "GHZ below 90%");
  out.require(null_zero == trials, "null circuit evaluated to 1");
}

// ---- 5: witness encryption ----
void we_criterion(Scale scale, Outcome& out) {
  NioConfig cfg;
  const Bytes m{0x5a, 0xc3};
  std::size_t det_ok = 0;
  for (std::uint64_t v = 0; v < 8; ++v) {
    BitString x(3, v);
    auto q = we_statement("par:3", x.bytes(), cfg);
    auto c = we_enc(q, m, be64(v), cfg);
    auto got = we_dec_bqp(q, c, v);
    det_ok += parity_of(x) ? (got && *got == m) : !got.has_value();
  }
  auto rng = Drbg::from_u64(5).fork("selftest-we");
  const std::size_t trials = pick(scale, 100, 20);
  std::size_t quantum_ok = 0;
  for (std::size_t s = 0; s < trials; ++s) {
    auto x = random_bits(rng, 3);
    auto q = we_statement("ghz", x.bytes(), cfg);
    auto got = we_dec(q, we_enc(q, m, be64(s), cfg), ghz_witness(x, cfg.copies), s);
    quantum_ok += got && *got == m;
  }
  // Adversarial search on a no-instance: every mini proof, hashed through
  // the public oracle handle, fed to the sealed verifier.
  NioConfig toy_cfg;
  toy_cfg.base = Proto::Toy;
  toy_cfg.toy = ToyParams::mini();
  auto q_no = we_statement("par:3", BitString::parse("110").bytes(), toy_cfg);
  auto c_no = we_enc(q_no, m, to_bytes("no-instance"), toy_cfg);
  std::size_t released = 0, searched = 0;
  for (const auto& pi : enumerate_toy_proofs(toy_cfg.toy)) {
    HashedProof hp{pi, nio_oracle_query(c_no.inner, pi.encode())};
    auto v = nio_inject(c_no.inner, hp.encode(), rng);
    released += v && *v == m;
    ++searched;
  }
  out.detail << "deterministic " << det_ok << "/8, GHZ " << quantum_ok << "/" << trials << ", no-instance releases "
             << released << "/" << searched;
  out.require(det_ok == 8, "deterministic round trip");
  out.require(quantum_ok * 100 >= 90 * trials, "GHZ round trip below 90%");
  out.require(released == 0, "no-instance ciphertext released the message");
}

// ---- 6: NIZK ----
void nizk_criterion(Scale scale, Outcome& out) {
  NioConfig cfg;
  auto rng = Drbg::from_u64(6).fork("selftest-nizk");
  auto setup = nizk_setup("par:8", 8, cfg, 61);
  const std::size_t runs = pick(scale, 100, 20);
  std::size_t complete = 0, zk_equal = 0, zk_runs = 0;
  for (std::size_t i = 0; i < runs; ++i) {
    auto x = random_bits(rng, 8);
    if (parity_of(x)) {
      auto pi = nizk_prove(setup.crs, Witness::none(cfg.copies), x, i);
      complete += nizk_verify(setup.crs, pi, x) == 1;
      zk_equal += pi == nizk_sim(setup.escrow, x);
      ++zk_runs;
    } else {
      try {
        nizk_prove(setup.crs, Witness::none(cfg.copies), x, i);
      } catch (const ProofFailed&) {
        ++complete;
      }
    }
  }
  // paired runs on yes-instances only
  while (zk_runs < runs) {
    auto x = random_with_parity(rng, 8, 1);
    zk_equal += nizk_prove(setup.crs, Witness::none(cfg.copies), x, zk_runs) == nizk_sim(setup.escrow, x);
    ++zk_runs;
  }
  auto ghz = nizk_setup("ghz", 3, cfg, 62);
  std::size_t ghz_ok = 0;
  for (std::size_t i = 0; i < runs; ++i) {
    auto x = random_bits(rng, 3);
    try {
      ghz_ok += nizk_verify(ghz.crs, nizk_prove(ghz.crs, ghz_witness(x, cfg.copies), x, i), x);
    } catch (const ProofFailed&) {
    }
  }
  auto checks = nizk_hybrid_checks(setup.crs, setup.escrow, random_bits(rng, 8), 63);
  std::size_t hybrids = 0;
  for (const auto& c : checks) hybrids += c.report.equivalent;
  out.detail << "PAR " << complete << "/" << runs << ", GHZ " << ghz_ok << "/" << runs << ", ZK equal " << zk_equal
             << "/" << zk_runs << ", hybrids " << hybrids << "/" << checks.size();
  out.require(complete == runs, "PAR completeness");
  out.require(ghz_ok * 100 >= 90 * runs, "GHZ completeness below 90%");
  out.require(zk_equal == zk_runs, "simulator differs from prover");
  out.require(hybrids == 7 && checks.size() == 7, "hybrid equivalence");
}

// ---- 7: ABE, cPRF, PE, secret sharing ----
bool policy_accepts(const std::string& policy, const BitString& x) {
  auto L = resolve_language(policy);
  return acceptance_probability(L, x.bytes(), Witness::none()) > 0.5;
}

void encdelegate_criterion(Scale scale, Outcome& out) {
  NioConfig cfg;
  const Bytes m{0x01};
  auto abe = abe_gen(4, 71);
  std::size_t abe_ok = 0;
  const std::size_t trials = pick(scale, 100, 32);
  for (std::size_t i = 0; i < trials; ++i) {
    BitString x(4, i % 16);
    auto ct = abe_enc(abe.mpk, "par:4", m, i, cfg);
    auto got = abe_dec(abe_keygen(abe.msk, x), ct, i);
    abe_ok += parity_of(x) ? (got && *got == m) : !got.has_value();
  }
  out.require(abe_ok == trials, "ABE correctness");

  auto kp = kp_gen(72);
  std::size_t kp_ok = 0, kp_total = 0;
  for (const char* name : {"par", "and", "or", "maj", "first", "null"}) {
    auto policy = policy_descriptor(policy_id(std::string(name) + ":4"), 4);
    auto key = kp_keygen(kp.msk, policy);
    for (std::uint64_t v = 0; v < 16; v += (scale == Scale::Full ? 1 : 5)) {
      BitString x(4, v);
      auto got = kp_dec(key, kp_enc(kp.mpk, x, m, be64(v), cfg), v);
      kp_ok += policy_accepts(policy, x) ? (got && *got == m) : !got.has_value();
      ++kp_total;
    }
  }
  out.require(kp_ok == kp_total, "key-policy correctness");

  auto cprf = cprf_gen(4, 73, cfg);
  std::size_t cprf_ok = 0, cprf_total = 0;
  for (const char* policy : {"par:4", "and:4", "maj:4"}) {
    auto key = cprf_constrain(cprf.key, policy);
    for (std::uint64_t v = 0; v < 16; ++v) {
      BitString x(4, v);
      auto got = cprf_ceval(cprf.pp, key, x, v);
      cprf_ok += policy_accepts(policy, x) ? (got && *got == cprf_eval(cprf.key, x)) : !got.has_value();
      ++cprf_total;
    }
  }
  out.require(cprf_ok == cprf_total, "cPRF correctness");

  std::size_t pe_ok = 0;
  const Bytes secret{0x42, 0x17};
  for (std::uint64_t v = 0; v < 16; ++v) {
    BitString x(4, v);
    auto got = pe_dec(abe_keygen(abe.msk, x), pe_enc(abe.mpk, "par:4", secret, v, cfg), v);
    pe_ok += parity_of(x) ? (got && *got == secret) : !got.has_value();
  }
  out.require(pe_ok == 16, "PE correctness");

  std::size_t ss_ok = 0, ss_total = 0;
  for (unsigned n = 1; n <= 4; ++n) {
    std::vector<std::string> bases;
    for (unsigned t = 1; t <= n; ++t) bases.push_back("th:" + std::to_string(t) + ":" + std::to_string(n));
    for (const char* kind : {"and", "or", "maj"}) bases.push_back(std::string(kind) + ":" + std::to_string(n));
    for (const auto& base : bases) {
      auto L = resolve_language(base);
      auto shares = ss_share(base, n, 1, n * 100 + ss_total, cfg);
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        BitString subset(n, s);
        bool qualified = is_qualified(L, subset) == Qualification::Yes;
        auto got = ss_rec(subset_of(shares, subset), Witness::none(cfg.copies), s);
        ss_ok += qualified ? (got && *got == 1) : !got.has_value();
        ++ss_total;
      }
    }
  }
  out.require(ss_ok == ss_total, "secret sharing disagrees with the qualified table");

  std::size_t hyb_ok = 0, hyb_total = 0;
  AbeRangeScan scan;
  const std::uint64_t step = scale == Scale::Full ? 1 : 7;
  for (std::uint64_t i = 0; i < 16; i += step) {
    auto checks = abe_hybrid_checks(abe, "par:4", BitString(4, i), cfg, 700 + i, i == 0 ? &scan : nullptr,
                                    i == 0 ? 10000 : 100);
    for (const auto& c : checks) hyb_ok += c.report.equivalent;
    hyb_total += checks.size();
  }
  for (std::uint64_t i = 0; i < 16; i += step) {
    for (const auto& c : cprf_hybrid_checks(cprf, BitString(4, i), 800 + i)) {
      hyb_ok += c.report.equivalent;
      ++hyb_total;
    }
  }
  out.require(hyb_ok == hyb_total && scan.hits == 0, "hybrid equivalence");
  out.detail << "ABE " << abe_ok << "/" << trials << ", KP " << kp_ok << "/" << kp_total << ", cPRF " << cprf_ok << "/"
             << cprf_total << ", PE " << pe_ok << "/16, shares " << ss_ok << "/" << ss_total << ", hybrids " << hyb_ok
             << "/" << hyb_total << ", range hits " << scan.hits << "/" << scan.samples;
}

// ---- 8: lockable obfuscation ----
PseudoDetProgram parity_lock_program(const Key16& lock, const Key16& other) {
  PseudoDetProgram p;
  p.circuit.qubits = 9;
  p.circuit.ancillas = 1;
  for (unsigned i = 0; i < 8; ++i) p.circuit.add(GateKind::CNOT, i, 8);
  p.outputs = {8};
  p.table = {to_bytes(other), to_bytes(lock)};
  return p;
}

void lockable_criterion(Scale scale, Outcome& out) {
  auto rng = Drbg::from_u64(8).fork("selftest-lock");
  auto lock = rng.key();
  auto other = rng.key();
  const Bytes payload = to_bytes("locked payload");
  auto program = parity_lock_program(lock, other);
  auto obj = qlock_obf(program, lock, payload, 81);
  auto sim = qlock_sim(program.encode().size(), payload.size(), 82);
  std::size_t correct = 0, sim_bottom = 0;
  const std::uint64_t step = scale == Scale::Full ? 1 : 3;
  std::size_t points = 0;
  for (std::uint64_t v = 0; v < 256; v += step) {
    BitString x(8, v);
    auto got = qlock_eval(obj, x, v);
    correct += parity_of(x) ? (got && *got == payload) : !got.has_value();
    sim_bottom += !qlock_eval(sim, x, v).has_value();
    ++points;
  }
  bool sizes = sim.cc.declared_size() == obj.cc.declared_size() && sim.cc.payload_size() == obj.cc.payload_size() &&
               sim.ct.encode().size() == obj.ct.encode().size() && sim.pk.encode().size() == obj.pk.encode().size();
  out.detail << "correct " << correct << "/" << points << ", simulator bottom " << sim_bottom << "/" << points
             << ", sizes " << (sizes ? "match" : "differ");
  out.require(correct == points, "lock correctness");
  out.require(sim_bottom == points, "simulator released");
  out.require(sizes, "simulator size");
}

// ---- 9: qsim numerics ----
QuantumCircuit random_circuit(Drbg& rng, unsigned qubits, std::size_t gates) {
  QuantumCircuit c;
  c.qubits = qubits;
  for (std::size_t i = 0; i < gates; ++i) {
    auto kind = static_cast<GateKind>(rng.below(qubits >= 3 ? 7 : qubits == 2 ? 6 : 5));
    unsigned a = static_cast<unsigned>(rng.below(qubits));
    unsigned b = (a + 1 + static_cast<unsigned>(rng.below(qubits - 1 ? qubits - 1 : 1))) % qubits;
    unsigned t = 0;
    while (qubits >= 3 && (t == a || t == b)) t = static_cast<unsigned>(rng.below(qubits));
    if (kind == GateKind::CNOT) c.add(kind, a, b);
    else if (kind == GateKind::CCX) c.add(kind, a, b, t);
    else c.add(kind, a);
  }
  return c;
}

StateVector random_state(Drbg& rng, unsigned qubits) {
  std::vector<Amp> amps(std::size_t{1} << qubits);
  for (auto& a : amps) a = Amp(static_cast<double>(rng.below(2001)) - 1000.0, static_cast<double>(rng.below(2001)) - 1000.0);
  auto s = StateVector::from_amplitudes(std::move(amps));
  s.normalize();
  return s;
}

void qsim_criterion(Scale scale, Outcome& out) {
  auto rng = Drbg::from_u64(9).fork("selftest-qsim");
  double worst_norm = 0;
  for (int c = 0; c < 20; ++c) {
    auto circuit = random_circuit(rng, 6, 40);
    auto s = random_state(rng, 6);
    for (const auto& g : circuit.gates) {
      apply_gate(s, g);
      worst_norm = std::max(worst_norm, std::abs(s.norm() - 1.0));
    }
  }
  double worst_energy = 0;
  for (int c = 0; c < 10; ++c) {
    unsigned n = 1 + static_cast<unsigned>(rng.below(3));
    auto circuit = random_circuit(rng, n, 1 + rng.below(3));
    auto input = random_bits(rng, n);
    auto h = history_state(circuit, input);
    worst_energy = std::max(worst_energy, std::abs(expectation(ClockHamiltonian(circuit), h)));
  }
  const std::size_t shots = pick(scale, 10000, 2000);
  double worst_sigma = 0;
  for (int c = 0; c < 4; ++c) {
    auto s = random_state(rng, 3);
    unsigned q = static_cast<unsigned>(c % 3);
    Basis basis = c % 2 ? Basis::Hadamard : Basis::Computational;
    auto rotated = s;
    if (basis == Basis::Hadamard) apply_gate(rotated, Gate{GateKind::H, {q, 0, 0}});
    double p = rotated.prob_one(q);
    std::size_t ones = 0;
    for (std::size_t i = 0; i < shots; ++i) ones += measure_qubit(s, q, basis, rng.u64()).bit;
    double sigma = std::sqrt(p * (1 - p) * static_cast<double>(shots));
    double dev = std::abs(static_cast<double>(ones) - p * static_cast<double>(shots));
    worst_sigma = std::max(worst_sigma, sigma > 0 ? dev / sigma : (dev == 0 ? 0.0 : 1e9));
  }
  out.detail << "max norm drift " << worst_norm << ", max history energy " << worst_energy << ", max deviation "
             << worst_sigma << " sigma";
  out.require(worst_norm <= 1e-9, "norm drift");
  out.require(worst_energy <= 1e-9, "history-state energy");
  out.require(worst_sigma <= 3.0, "sampling outside 3 sigma");
}

// ---- 10: attacks ----
Statement attack_statement(Drbg& rng) { return Statement{"par:4", random_with_parity(rng, 4, 1).bytes(), 1}; }

void attacks_criterion(Scale scale, Outcome& out) {
  auto rng = Drbg::from_u64(10).fork("selftest-attacks");
  const std::size_t instances = pick(scale, 100, 20);
  const ToyParams toy;
  std::size_t flip_ok = 0, max_queries = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    auto inst = make_toy_instance(attack_statement(rng), toy, TargetMode::Plain, i);
    auto t = attack_basis_flip(inst.target, honest_proof(inst, i));
    bool exact = t.recovered.size() == toy.positions;
    for (unsigned j = 0; exact && j < toy.positions; ++j) exact = t.recovered[j] == inst.keys.r.basis.bit(j);
    flip_ok += exact && t.query_count <= 2 * toy.positions + 2;
    max_queries = std::max(max_queries, t.query_count);
  }
  ToyParams all = toy;
  all.variant = CheckVariant::AllPositions;
  const std::size_t linear_runs = pick(scale, 20, 5);
  std::size_t linear_ok = 0;
  for (std::size_t i = 0; i < linear_runs; ++i) {
    auto inst = make_toy_instance(attack_statement(rng), all, TargetMode::Hashed, 500 + i);
    linear_ok += attack_linear(inst.target, honest_proof(inst, i)).secrets == inst.keys.r.secrets;
  }
  std::size_t null_ok = 0, null_total = 0;
  for (std::size_t i = 0; i < pick(scale, 10, 3); ++i) {
    for (auto variant : {CheckVariant::Standard, CheckVariant::FreshTerms, CheckVariant::AllPositions}) {
      ToyParams p = toy;
      p.variant = variant;
      auto inst = make_toy_instance(attack_statement(rng), p, TargetMode::Null, 900 + i);
      auto proof = honest_proof(inst, i);
      auto expect_none = [&](auto&& run) {
        ++null_total;
        try {
          run();
        } catch (const NoAcceptingProof&) {
          ++null_ok;
        }
      };
      expect_none([&] { attack_basis_flip(inst.target, proof); });
      expect_none([&] { attack_stats(inst.target, proof, 10); });
      expect_none([&] { attack_linear(inst.target, proof); });
    }
  }
  out.detail << "flip exact " << flip_ok << "/" << instances << " (max " << max_queries << " queries), linear "
             << linear_ok << "/" << linear_runs << ", null targets " << null_ok << "/" << null_total;
  out.require(flip_ok == instances, "flip attack");
  out.require(linear_ok == linear_runs, "linear attack");
  out.require(null_ok == null_total, "attack succeeded against a null verifier");
}

struct Criterion {
  const char* name;
  double limit;
  void (*run)(Scale, Outcome&);
};

constexpr Criterion kCriteria[] = {
    {"puncturable PRF", 1, ggm_criterion},
    {"dual-mode verification equivalence", 30, equivalence_criterion},
    {"dual-mode simulation rejects", 30, simulation_criterion},
    {"null-iO correctness", 120, nullio_criterion},
    {"witness encryption", 120, we_criterion},
    {"NIZK", 120, nizk_criterion},
    {"ABE / cPRF / PE / secret sharing", 180, encdelegate_criterion},
    {"lockable obfuscation", 30, lockable_criterion},
    {"qsim numerics", 60, qsim_criterion},
    {"attacks", 120, attacks_criterion},
};

}  // namespace

CheckResult run_criterion(int id, Scale scale) {
  if (id < 1 || id > kLibraryCriteria) throw std::out_of_range("criterion id");
  const auto& c = kCriteria[id - 1];
  CheckResult r;
  r.id = id;
  r.name = c.name;
  r.limit = c.limit;
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  try {
    c.run(scale, out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = out.pass && r.seconds < r.limit;
  r.detail = out.detail.str();
  for (const auto& f : out.failures) r.detail += (r.detail.empty() ? "" : "; ") + f;
  if (out.pass && !r.pass) r.detail += " (over time limit)";
  return r;
}

std::vector<CheckResult> run_selftest(Scale scale, const std::function<void(const CheckResult&)>& progress) {
  std::vector<CheckResult> results;
  for (int id = 1; id <= kLibraryCriteria; ++id) {
    results.push_back(run_criterion(id, scale));
    if (progress) progress(results.back());
  }
  return results;
}

}  // namespace qnio
