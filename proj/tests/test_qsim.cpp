#include <doctest.h>

#include <cmath>
#include <random>

#include "qnio/qsim.hpp"

using namespace qnio;

namespace {

QuantumCircuit random_circuit(std::mt19937_64& gen, unsigned qubits, unsigned gates) {
  QuantumCircuit c;
  c.qubits = qubits;
  std::uniform_int_distribution<int> kind(0, 6);
  std::vector<unsigned> wires(qubits);
  for (unsigned i = 0; i < qubits; ++i) wires[i] = i;
  for (unsigned g = 0; g < gates; ++g) {
    auto k = static_cast<GateKind>(kind(gen));
    if (k == GateKind::CCX && qubits < 3) k = GateKind::CNOT;
    std::shuffle(wires.begin(), wires.end(), gen);
    c.add(k, wires[0], qubits > 1 ? wires[1] : 0, qubits > 2 ? wires[2] : 0);
  }
  return c;
}

StateVector random_state(std::mt19937_64& gen, unsigned qubits) {
  std::normal_distribution<double> n;
  std::vector<Amp> a(std::size_t{1} << qubits);
  for (auto& v : a) v = Amp(n(gen), n(gen));
  auto s = StateVector::from_amplitudes(a);
  s.normalize();
  return s;
}

double distance(const StateVector& a, const StateVector& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.dimension(); ++i) d += std::norm(a[i] - b[i]);
  return std::sqrt(d);
}

}  // namespace

TEST_CASE("gates preserve the norm") {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_state(gen, 5);
    auto c = random_circuit(gen, 5, 30);
    auto out = evolve(c, s);
    CHECK(std::abs(out.norm() - 1.0) < kTolerance);
  }
}

TEST_CASE("gate identities") {
  std::mt19937_64 gen(2);
  auto s = random_state(gen, 3);
  auto apply = [](StateVector v, std::initializer_list<Gate> gs) {
    for (const auto& g : gs) apply_gate(v, g);
    return v;
  };
  Gate h{GateKind::H, {0, 0, 0}}, t{GateKind::T, {1, 0, 0}}, sg{GateKind::S, {1, 0, 0}}, z{GateKind::Z, {1, 0, 0}};
  CHECK(distance(apply(s, {h, h}), s) < kTolerance);
  CHECK(distance(apply(s, {t, t}), apply(s, {sg})) < kTolerance);
  CHECK(distance(apply(s, {sg, sg}), apply(s, {z})) < kTolerance);
  auto tt = s;
  apply_gate(tt, t);
  apply_gate(tt, t, true);
  CHECK(distance(tt, s) < kTolerance);
}

TEST_CASE("classical gates act as permutations") {
  QuantumCircuit c;
  c.qubits = 3;
  c.add(GateKind::CCX, 1, 2, 0);
  for (unsigned v = 0; v < 8; ++v) {
    auto out = evolve(c, StateVector::basis(3, v));
    unsigned expect = ((v >> 1) & 1) && ((v >> 2) & 1) ? v ^ 1u : v;
    CHECK(std::abs(out[expect]) == doctest::Approx(1.0));
  }
  CHECK(run_circuit(c, BitString::parse("011"), 0).probability == doctest::Approx(1.0));
  CHECK(run_circuit(c, BitString::parse("010"), 0).probability == doctest::Approx(0.0));
}

TEST_CASE("circuit text and binary forms round trip") {
  auto c = parse_circuit("qubits 3\nancillas 1\nH 0\ncnot 0 1 # comment\nT 2\nccx 0 1 2\nMEASURE 0\n");
  CHECK(c.qubits == 3);
  CHECK(c.ancillas == 1);
  CHECK(c.gates.size() == 4);
  CHECK(parse_circuit(print_circuit(c)) == c);
  CHECK(decode_circuit(encode_circuit(c)) == c);
  CHECK_THROWS_AS(parse_circuit("qubits 2\nH 5\n"), BadCircuitText);
  CHECK_THROWS_AS(parse_circuit("qubits 2\nFOO 0\n"), BadCircuitText);
  CHECK_THROWS_AS(parse_circuit("qubits 2\nMEASURE 0\nH 0\n"), BadCircuitText);
  CHECK_THROWS_AS(StateVector(kMaxQubits + 1), TooManyQubits);
}

TEST_CASE("history states have zero energy") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = random_circuit(gen, 3, 1 + static_cast<unsigned>(gen() % 3));
    ClockHamiltonian hc(c);
    auto input = BitString(3, gen() % 8);
    auto hist = history_state(c, input);
    CHECK(std::abs(hist.norm() - 1.0) < kTolerance);
    CHECK(std::abs(expectation(hc, hist)) < kTolerance);
    CHECK(ground_energy(hc) > -kTolerance);
  }
}

TEST_CASE("pauli hamiltonians") {
  PauliHamiltonian z(1);
  z.add(1.0, "Z");
  CHECK(ground_energy(z) == doctest::Approx(-1.0));
  CHECK(expectation(z, StateVector(1)) == doctest::Approx(1.0));
  PauliHamiltonian xz(1);
  xz.add(1.0, "X").add(1.0, "Z");
  CHECK(ground_energy(xz) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-9));
  PauliHamiltonian zz(2);
  zz.add(1.0, "ZZ").add(0.5, "XI");
  CHECK(ground_energy(zz) == doctest::Approx(-std::sqrt(1.25)).epsilon(1e-9));
}

TEST_CASE("sampling matches the Born rule within three sigma") {
  QuantumCircuit c;
  c.qubits = 1;
  c.add(GateKind::H, 0).add(GateKind::T, 0).add(GateKind::H, 0);
  const auto p = run_circuit(c, BitString(1, 0), 0).probability;
  CHECK(p == doctest::Approx((1 - std::cos(M_PI / 4)) / 2));
  const int shots = 10000;
  int ones = 0;
  for (int i = 0; i < shots; ++i) ones += run_circuit(c, BitString(1, 0), static_cast<std::uint64_t>(i)).bit;
  const double sigma = std::sqrt(shots * p * (1 - p));
  CHECK(std::abs(ones - shots * p) <= 3 * sigma);
}

TEST_CASE("measurement collapses") {
  auto s = StateVector(2);
  apply_gate(s, Gate{GateKind::H, {0, 0, 0}});
  apply_gate(s, Gate{GateKind::CNOT, {0, 1, 0}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto m = measure_qubit(s, 0, Basis::Computational, seed);
    CHECK(m.post.prob_one(1) == doctest::Approx(static_cast<double>(m.bit)));
    CHECK(m.post.norm() == doctest::Approx(1.0));
  }
  StateVector plus(1);
  apply_gate(plus, Gate{GateKind::H, {0, 0, 0}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(measure_qubit(plus, 0, Basis::Hadamard, seed).bit == 0);
}
