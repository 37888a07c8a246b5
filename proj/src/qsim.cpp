#include "qnio/qsim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace qnio {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_qubits(unsigned n) {
  if (n > kMaxQubits) throw TooManyQubits("TooManyQubits: " + std::to_string(n) + " > 12");
}

}  // namespace

double uniform01(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// ---- StateVector ----

StateVector::StateVector(unsigned qubits) : qubits_(qubits) {
  check_qubits(qubits);
  amps_.assign(std::size_t{1} << qubits, Amp{0, 0});
  amps_[0] = 1;
}

StateVector StateVector::basis(unsigned qubits, std::uint64_t index) {
  StateVector s(qubits);
  if (index >= s.dimension()) throw WidthMismatch("basis index out of range");
  s.amps_[0] = 0;
  s.amps_[index] = 1;
  return s;
}

StateVector StateVector::from_bits(const BitString& bits) {
  std::uint64_t index = 0;
  for (unsigned i = 0; i < bits.width(); ++i)
    if (bits.bit(i)) index |= std::uint64_t{1} << i;
  return basis(bits.width(), index);
}

StateVector StateVector::from_amplitudes(std::vector<Amp> amps) {
  unsigned n = 0;
  while ((std::size_t{1} << n) < amps.size()) ++n;
  if ((std::size_t{1} << n) != amps.size()) throw WidthMismatch("amplitude count is not a power of two");
  StateVector s(n);
  s.amps_ = std::move(amps);
  return s;
}

double StateVector::norm() const {
  double total = 0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

void StateVector::normalize() {
  double n = std::sqrt(norm());
  if (n == 0) throw WidthMismatch("cannot normalize the zero vector");
  for (auto& a : amps_) a /= n;
}

double StateVector::prob_one(unsigned q) const {
  if (q >= qubits_) throw WidthMismatch("qubit out of range");
  double p = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if ((i >> q) & 1) p += std::norm(amps_[i]);
  return p;
}

StateVector StateVector::tensor(const StateVector& high) const {
  StateVector out(qubits_ + high.qubits_);
  for (std::size_t h = 0; h < high.dimension(); ++h)
    for (std::size_t l = 0; l < dimension(); ++l) out.amps_[h << qubits_ | l] = high.amps_[h] * amps_[l];
  return out;
}

Amp StateVector::inner(const StateVector& other) const {
  if (other.qubits_ != qubits_) throw WidthMismatch("inner product width");
  Amp total = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) total += std::conj(amps_[i]) * other.amps_[i];
  return total;
}

// ---- circuits ----

unsigned Gate::arity() const {
  switch (kind) {
    case GateKind::CNOT:
      return 2;
    case GateKind::CCX:
      return 3;
    default:
      return 1;
  }
}

QuantumCircuit& QuantumCircuit::add(GateKind kind, unsigned a, unsigned b, unsigned c) {
  gates.push_back(Gate{kind, {a, b, c}});
  return *this;
}

void QuantumCircuit::check() const {
  check_qubits(qubits);
  if (qubits == 0) throw WidthMismatch("circuit needs an output qubit");
  if (ancillas > qubits) throw WidthMismatch("more ancillas than qubits");
  for (const auto& g : gates) {
    for (unsigned i = 0; i < g.arity(); ++i) {
      if (g.q[i] >= qubits) throw WidthMismatch("gate target out of range");
      for (unsigned j = 0; j < i; ++j)
        if (g.q[i] == g.q[j]) throw WidthMismatch("gate touches a qubit twice");
    }
  }
}

namespace {

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::S: return "S";
    case GateKind::T: return "T";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CCX: return "CCX";
  }
  return "?";
}

bool gate_from_name(const std::string& name, GateKind& out) {
  static const std::pair<const char*, GateKind> table[] = {
      {"H", GateKind::H}, {"X", GateKind::X}, {"Z", GateKind::Z},       {"S", GateKind::S},
      {"T", GateKind::T}, {"CNOT", GateKind::CNOT}, {"CX", GateKind::CNOT}, {"CCX", GateKind::CCX},
      {"TOFFOLI", GateKind::CCX}};
  for (const auto& [n, k] : table)
    if (name == n) {
      out = k;
      return true;
    }
  return false;
}

}  // namespace

QuantumCircuit parse_circuit(std::string_view text) {
  QuantumCircuit c;
  c.qubits = 0;
  bool measured = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw BadCircuitText("line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    std::transform(word.begin(), word.end(), word.begin(), [](unsigned char ch) { return std::toupper(ch); });
    std::vector<unsigned> args;
    long v;
    while (ls >> v) {
      if (v < 0) fail("negative index");
      args.push_back(static_cast<unsigned>(v));
    }
    if (!ls.eof()) fail("non-numeric operand");
    if (measured) fail("gate after terminal measurement");
    if (word == "QUBITS" || word == "ANCILLAS") {
      if (args.size() != 1) fail(word + " takes one number");
      (word == "QUBITS" ? c.qubits : c.ancillas) = args[0];
      continue;
    }
    if (word == "MEASURE") {
      if (args.size() != 1 || args[0] != 0) fail("only the first qubit is measured");
      measured = true;
      continue;
    }
    GateKind kind;
    if (!gate_from_name(word, kind)) fail("unknown gate " + word);
    Gate g{kind, {}};
    if (args.size() != g.arity()) fail("wrong operand count for " + word);
    std::copy(args.begin(), args.end(), g.q.begin());
    c.gates.push_back(g);
  }
  if (c.qubits == 0) {
    unsigned hi = 0;
    for (const auto& g : c.gates)
      for (unsigned i = 0; i < g.arity(); ++i) hi = std::max(hi, g.q[i] + 1);
    c.qubits = std::max(hi, 1u);
  }
  try {
    c.check();
  } catch (const TooManyQubits&) {
    throw;
  } catch (const Error& e) {
    throw BadCircuitText(e.what());
  }
  return c;
}

std::string print_circuit(const QuantumCircuit& c) {
  std::ostringstream out;
  out << "qubits " << c.qubits << "\n";
  if (c.ancillas) out << "ancillas " << c.ancillas << "\n";
  for (const auto& g : c.gates) {
    out << gate_name(g.kind);
    for (unsigned i = 0; i < g.arity(); ++i) out << ' ' << g.q[i];
    out << "\n";
  }
  out << "MEASURE 0\n";
  return out.str();
}

Bytes encode_circuit(const QuantumCircuit& c) {
  Writer w;
  w.u8(static_cast<std::uint8_t>(c.qubits)).u8(static_cast<std::uint8_t>(c.ancillas));
  w.u32(static_cast<std::uint32_t>(c.gates.size()));
  for (const auto& g : c.gates) {
    w.u8(static_cast<std::uint8_t>(g.kind));
    for (auto q : g.q) w.u8(static_cast<std::uint8_t>(q));
  }
  return w.take();
}

QuantumCircuit decode_circuit(ByteView data) {
  Reader r(data);
  QuantumCircuit c;
  c.qubits = r.u8();
  c.ancillas = r.u8();
  auto n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    Gate g;
    auto k = r.u8();
    if (k > static_cast<std::uint8_t>(GateKind::CCX)) throw DecodeError("gate kind");
    g.kind = static_cast<GateKind>(k);
    for (auto& q : g.q) q = r.u8();
    c.gates.push_back(g);
  }
  r.expect_end();
  c.check();
  return c;
}

// ---- simulation ----

void apply_gate(StateVector& s, const Gate& g, bool dagger) {
  const std::size_t dim = s.dimension();
  const std::size_t tmask = std::size_t{1} << g.target();
  std::size_t cmask = 0;
  for (unsigned i = 0; i + 1 < g.arity(); ++i) cmask |= std::size_t{1} << g.q[i];
  for (unsigned i = 0; i < g.arity(); ++i)
    if (g.q[i] >= s.qubits()) throw WidthMismatch("gate outside state");
  const double angle = (dagger ? -1.0 : 1.0) * std::numbers::pi / 4;
  const Amp phase_t = std::polar(1.0, angle);
  const Amp phase_s = dagger ? Amp{0, -1} : Amp{0, 1};
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & tmask) continue;
    if ((i & cmask) != cmask) continue;
    Amp& a0 = s[i];
    Amp& a1 = s[i | tmask];
    switch (g.kind) {
      case GateKind::H: {
        Amp x = a0, y = a1;
        a0 = (x + y) * kInvSqrt2;
        a1 = (x - y) * kInvSqrt2;
        break;
      }
      case GateKind::X:
      case GateKind::CNOT:
      case GateKind::CCX:
        std::swap(a0, a1);
        break;
      case GateKind::Z:
        a1 = -a1;
        break;
      case GateKind::S:
        a1 *= phase_s;
        break;
      case GateKind::T:
        a1 *= phase_t;
        break;
    }
  }
}

StateVector evolve(const QuantumCircuit& c, const StateVector& input) {
  c.check();
  if (input.qubits() != c.input_width())
    throw WidthMismatch("input has " + std::to_string(input.qubits()) + " qubits, circuit expects " +
                        std::to_string(c.input_width()));
  StateVector s = input.tensor(StateVector(c.ancillas));
  for (const auto& g : c.gates) apply_gate(s, g);
  return s;
}

RunResult run_circuit(const QuantumCircuit& c, const StateVector& input, std::uint64_t seed) {
  auto s = evolve(c, input);
  RunResult r;
  r.probability = std::clamp(s.prob_one(0), 0.0, 1.0);
  r.bit = uniform01(seed) < r.probability ? 1 : 0;
  return r;
}

RunResult run_circuit(const QuantumCircuit& c, const BitString& input, std::uint64_t seed) {
  return run_circuit(c, StateVector::from_bits(input), seed);
}

Measurement measure_qubit(const StateVector& s, unsigned q, Basis basis, std::uint64_t seed) {
  if (q >= s.qubits()) throw WidthMismatch("qubit out of range");
  StateVector t = s;
  Gate h{GateKind::H, {q, 0, 0}};
  if (basis == Basis::Hadamard) apply_gate(t, h);
  double p1 = std::clamp(t.prob_one(q), 0.0, 1.0);
  int bit = uniform01(seed) < p1 ? 1 : 0;
  for (std::size_t i = 0; i < t.dimension(); ++i)
    if (static_cast<int>((i >> q) & 1) != bit) t[i] = 0;
  t.normalize();
  if (basis == Basis::Hadamard) apply_gate(t, h);
  return {bit, std::move(t)};
}

StateVector history_state(const QuantumCircuit& c, const BitString& input) {
  return history_state(c, StateVector::from_bits(input));
}

StateVector history_state(const QuantumCircuit& c, const StateVector& input) {
  c.check();
  const unsigned n = c.qubits;
  const unsigned steps = static_cast<unsigned>(c.gates.size());
  check_qubits(n + steps);
  StateVector psi = input.qubits() == c.input_width() ? input.tensor(StateVector(c.ancillas)) : input;
  if (psi.qubits() != n) throw WidthMismatch("history input width");
  StateVector out(n + steps);
  out[0] = 0;
  const double w = 1.0 / std::sqrt(static_cast<double>(steps + 1));
  for (unsigned t = 0; t <= steps; ++t) {
    if (t > 0) apply_gate(psi, c.gates[t - 1]);
    std::size_t clock = ((std::size_t{1} << t) - 1) << n;
    for (std::size_t i = 0; i < psi.dimension(); ++i) out[clock | i] = psi[i] * w;
  }
  return out;
}

// ---- Hamiltonians ----

PauliHamiltonian& PauliHamiltonian::add(double coeff, std::string word) {
  if (terms_.size() >= kMaxTerms) throw Error("PauliHamiltonian holds at most 64 terms");
  if (word.size() != qubits_) throw WidthMismatch("Pauli word length");
  for (char ch : word)
    if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z') throw WidthMismatch("Pauli letter");
  terms_.push_back({coeff, std::move(word)});
  return *this;
}

StateVector PauliHamiltonian::apply(const StateVector& s) const {
  if (s.qubits() != qubits_) throw WidthMismatch("Hamiltonian width");
  auto out = StateVector::from_amplitudes(std::vector<Amp>(s.dimension(), Amp{0, 0}));
  for (const auto& term : terms_) {
    std::size_t flip = 0;
    for (unsigned q = 0; q < qubits_; ++q)
      if (term.word[q] == 'X' || term.word[q] == 'Y') flip |= std::size_t{1} << q;
    for (std::size_t i = 0; i < s.dimension(); ++i) {
      Amp phase = term.coeff;
      for (unsigned q = 0; q < qubits_; ++q) {
        int b = static_cast<int>((i >> q) & 1);
        if (term.word[q] == 'Z' && b) phase = -phase;
        if (term.word[q] == 'Y') phase *= b ? Amp{0, -1} : Amp{0, 1};
      }
      out[i ^ flip] += phase * s[i];
    }
  }
  return out;
}

ClockHamiltonian::ClockHamiltonian(QuantumCircuit c) : circuit_(std::move(c)) {
  circuit_.check();
  check_qubits(qubits());
}

unsigned ClockHamiltonian::qubits() const {
  return circuit_.qubits + static_cast<unsigned>(circuit_.gates.size());
}

StateVector ClockHamiltonian::apply(const StateVector& s) const {
  if (s.qubits() != qubits()) throw WidthMismatch("clock Hamiltonian width");
  const unsigned n = circuit_.qubits;
  const unsigned steps = static_cast<unsigned>(circuit_.gates.size());
  const std::size_t dim = s.dimension();
  // c_0 = 1 and c_{T+1} = 0 by convention.
  auto clock = [&](std::size_t i, unsigned k) -> int {
    if (k == 0) return 1;
    if (k > steps) return 0;
    return static_cast<int>((i >> (n + k - 1)) & 1);
  };
  auto out = StateVector::from_amplitudes(std::vector<Amp>(dim, Amp{0, 0}));
  for (unsigned k = 1; k < steps; ++k)
    for (std::size_t i = 0; i < dim; ++i)
      if (clock(i, k) == 0 && clock(i, k + 1) == 1) out[i] += s[i];
  for (unsigned t = 1; t <= steps; ++t) {
    const std::size_t ct = std::size_t{1} << (n + t - 1);
    auto forward = StateVector::from_amplitudes(std::vector<Amp>(dim, Amp{0, 0}));
    auto backward = forward;
    for (std::size_t i = 0; i < dim; ++i) {
      bool before = clock(i, t - 1) == 1 && clock(i, t) == 0;  // time t-1
      bool after = clock(i, t) == 1 && clock(i, t + 1) == 0;   // time t
      if (before) out[i] += 0.5 * s[i];
      if (after) out[i] += 0.5 * s[i];
      if (before && clock(i, t + 1) == 0) forward[i] = s[i];
      if (after && clock(i, t - 1) == 1) backward[i] = s[i];
    }
    apply_gate(forward, circuit_.gates[t - 1]);
    apply_gate(backward, circuit_.gates[t - 1], true);
    for (std::size_t i = 0; i < dim; ++i) {
      if (forward[i] != Amp{0, 0}) out[i | ct] -= 0.5 * forward[i];
      if (backward[i] != Amp{0, 0}) out[i & ~ct] -= 0.5 * backward[i];
    }
  }
  return out;
}

double expectation(const PauliHamiltonian& h, const StateVector& s) { return s.inner(h.apply(s)).real(); }
double expectation(const ClockHamiltonian& h, const StateVector& s) { return s.inner(h.apply(s)).real(); }

namespace {
template <typename H>
double dense_ground(const H& h) {
  const std::size_t dim = std::size_t{1} << h.qubits();
  Eigen::MatrixXcd m(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    auto col = h.apply(StateVector::basis(h.qubits(), k));
    for (std::size_t i = 0; i < dim; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = col[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}
}  // namespace

double ground_energy(const PauliHamiltonian& h) { return dense_ground(h); }
double ground_energy(const ClockHamiltonian& h) { return dense_ground(h); }

}  // namespace qnio
