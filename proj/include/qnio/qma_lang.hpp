#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnio/bytes.hpp"
#include "qnio/qsim.hpp"

namespace qnio {

// An instance of a language, amplified to `reps` copies. This is the
// quantum circuit Q that CVQC, null-iO and WE operate on.
struct Statement {
  std::string lang;
  Bytes instance;
  unsigned reps = 1;

  Bytes encode() const;
  static Statement decode(ByteView data);
  Digest digest() const;
  friend bool operator==(const Statement&, const Statement&) = default;
};

struct Witness {
  StateVector state{0};
  unsigned copies = 1;
  Bytes classical;  // classical part, e.g. commitment openings

  static Witness none(unsigned copies = 1) { return Witness{StateVector(0), copies, {}}; }
  Witness with_copies(unsigned n) const { return Witness{state, n, classical}; }
};

class QmaLanguage {
 public:
  using Builder = std::function<std::optional<QuantumCircuit>(ByteView instance, ByteView classical)>;

  std::string name;
  unsigned instance_bits = 0;  // 0: free-form byte instances
  unsigned witness_qubits = 0;
  double alpha = 1.0;
  double beta = 0.0;
  unsigned reps = 1;
  double alpha_amp = 1.0;
  double beta_amp = 0.0;
  bool subset_instances = false;  // instances are subsets of [N]
  Builder builder;

  // Single-copy verifier for x; nullopt means "reject without running".
  std::optional<QuantumCircuit> verifier(ByteView instance, ByteView classical = {}) const;
};

// Descriptors: "par:N", "ghz", "th:T:N", "and:N", "or:N", "maj:N",
// "first:N", "tt:N:HEX", "null:N", "univ:BITS", "ss:N:<base descriptor>".
QmaLanguage resolve_language(std::string_view descriptor);

// Policies addressable by a small integer, for the key-policy ABE wrapper.
inline constexpr unsigned kPolicyIdBits = 4;
std::string policy_descriptor(unsigned id, unsigned width);
unsigned policy_id(std::string_view descriptor);

double acceptance_probability(const QmaLanguage& L, ByteView x, const Witness& w);
int qma_verify(const QmaLanguage& L, ByteView x, const Witness& w, std::uint64_t seed);
double majority_tail(double p, unsigned reps);
QmaLanguage amplify(const QmaLanguage& L, unsigned reps);
int amplified_verify(const QmaLanguage& L, ByteView x, const Witness& w, std::uint64_t seed);

enum class Qualification { Yes, No, Unknown };
Qualification is_qualified(const QmaLanguage& L, const BitString& subset);
void monotone_check(const QmaLanguage& L);

// (|000> + sign |111>)/sqrt2 with the bit-flip pattern `flips` applied.
Witness ghz_witness(const BitString& flips, unsigned copies, bool minus = false, Amp global = 1.0);

// Circuit with a declared output map: measure `outputs`, majority over
// `reps` shots, map the outcome word through `table`.
struct PseudoDetProgram {
  QuantumCircuit circuit;
  std::vector<unsigned> outputs;
  std::vector<Bytes> table;
  unsigned reps = 1;

  void check() const;
  std::vector<double> distribution(const BitString& x) const;
  double certificate(const BitString& x) const;  // single-shot weight of the likeliest word
  Bytes run(const BitString& x, std::uint64_t seed) const;
  Bytes encode() const;
  static PseudoDetProgram decode(ByteView data);
};

}  // namespace qnio
