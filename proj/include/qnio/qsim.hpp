#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qnio/bytes.hpp"
#include "qnio/errors.hpp"

namespace qnio {

using Amp = std::complex<double>;

inline constexpr unsigned kMaxQubits = 12;
inline constexpr double kTolerance = 1e-9;

// Dense state over n qubits. Basis index bit q is qubit q.
class StateVector {
 public:
  explicit StateVector(unsigned qubits = 0);  // |0...0>
  static StateVector basis(unsigned qubits, std::uint64_t index);
  static StateVector from_bits(const BitString& bits);  // qubit i holds bits.bit(i)
  static StateVector from_amplitudes(std::vector<Amp> amps);

  unsigned qubits() const { return qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  const std::vector<Amp>& amplitudes() const { return amps_; }
  Amp& operator[](std::size_t i) { return amps_[i]; }
  const Amp& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;  // sum of |amp|^2
  void normalize();
  double prob_one(unsigned q) const;
  StateVector tensor(const StateVector& high) const;  // this on low qubits, high above
  Amp inner(const StateVector& other) const;          // <this|other>

 private:
  unsigned qubits_;
  std::vector<Amp> amps_;
};

enum class GateKind : std::uint8_t { H, X, Z, S, T, CNOT, CCX };

struct Gate {
  GateKind kind = GateKind::X;
  std::array<unsigned, 3> q{};  // controls first, target last
  unsigned arity() const;
  unsigned target() const { return q[arity() - 1]; }
  friend bool operator==(const Gate&, const Gate&) = default;
};

// Circuit over `qubits` wires. Inputs occupy the low (qubits - ancillas)
// wires; ancillas start in |0>. The classical output is the terminal
// measurement of qubit 0.
struct QuantumCircuit {
  unsigned qubits = 1;
  unsigned ancillas = 0;
  std::vector<Gate> gates;

  unsigned input_width() const { return qubits - ancillas; }
  QuantumCircuit& add(GateKind kind, unsigned a, unsigned b = 0, unsigned c = 0);
  void check() const;
  friend bool operator==(const QuantumCircuit&, const QuantumCircuit&) = default;
};

QuantumCircuit parse_circuit(std::string_view text);
std::string print_circuit(const QuantumCircuit& c);
Bytes encode_circuit(const QuantumCircuit& c);
QuantumCircuit decode_circuit(ByteView data);

void apply_gate(StateVector& s, const Gate& g, bool dagger = false);
StateVector evolve(const QuantumCircuit& c, const StateVector& input);  // pads ancillas

struct RunResult {
  int bit = 0;
  double probability = 0;  // exact Pr[output = 1]
};
RunResult run_circuit(const QuantumCircuit& c, const StateVector& input, std::uint64_t seed);
RunResult run_circuit(const QuantumCircuit& c, const BitString& input, std::uint64_t seed);

enum class Basis : std::uint8_t { Computational = 0, Hadamard = 1 };

struct Measurement {
  int bit = 0;
  StateVector post;
};
Measurement measure_qubit(const StateVector& s, unsigned q, Basis basis, std::uint64_t seed);

// Unary-clock history state. Data wires are qubits [0, n); clock wire c_t
// (t = 1..T) is qubit n + t - 1, and time t is |1^t 0^(T-t)>.
StateVector history_state(const QuantumCircuit& c, const BitString& input);
StateVector history_state(const QuantumCircuit& c, const StateVector& input);

struct PauliTerm {
  double coeff = 0;
  std::string word;  // over I,X,Y,Z; character q acts on qubit q
};

class PauliHamiltonian {
 public:
  static constexpr std::size_t kMaxTerms = 64;
  explicit PauliHamiltonian(unsigned qubits) : qubits_(qubits) {}
  PauliHamiltonian& add(double coeff, std::string word);
  unsigned qubits() const { return qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  StateVector apply(const StateVector& s) const;

 private:
  unsigned qubits_;
  std::vector<PauliTerm> terms_;
};

// Clock plus propagation terms of a circuit's Kitaev Hamiltonian, applied
// matrix-free on the clock-register layout of history_state.
class ClockHamiltonian {
 public:
  explicit ClockHamiltonian(QuantumCircuit c);
  unsigned qubits() const;
  StateVector apply(const StateVector& s) const;

 private:
  QuantumCircuit circuit_;
};

double expectation(const PauliHamiltonian& h, const StateVector& s);
double expectation(const ClockHamiltonian& h, const StateVector& s);
double ground_energy(const PauliHamiltonian& h);
double ground_energy(const ClockHamiltonian& h);

// Uniform double in [0,1) from a seeded Mersenne Twister; shared by samplers.
double uniform01(std::uint64_t seed);

}  // namespace qnio
