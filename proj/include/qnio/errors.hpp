#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qnio {

// Root of every library error. Each named failure below is its own type so
// callers can catch precisely what they expect.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define QNIO_ERROR(Name)                                   \
  struct Name : Error {                                    \
    explicit Name(const std::string& what = #Name)         \
        : Error(what) {}                                   \
  }

// encoding
QNIO_ERROR(DecodeError);
QNIO_ERROR(BadMagic);
QNIO_ERROR(BadDigest);
QNIO_ERROR(VersionMismatch);

// primitives
QNIO_ERROR(DomainMismatch);
QNIO_ERROR(PuncturedPoint);
QNIO_ERROR(LengthTooLarge);
QNIO_ERROR(MessageTooLong);
QNIO_ERROR(NotBinding);
QNIO_ERROR(SealBroken);

// circuit-ir
QNIO_ERROR(UnknownGate);
QNIO_ERROR(TargetTooSmall);

// qsim / languages
QNIO_ERROR(TooManyQubits);
QNIO_ERROR(BadCircuitText);
QNIO_ERROR(WidthMismatch);
QNIO_ERROR(UnknownLanguage);

// qfhe
QNIO_ERROR(KeyMismatch);
QNIO_ERROR(MalformedCiphertext);
QNIO_ERROR(DepthExceeded);

// cvqc / null-iO / proofs
QNIO_ERROR(JudgeReject);
QNIO_ERROR(MalformedProof);
QNIO_ERROR(InsufficientCopies);
QNIO_ERROR(ProofFailed);
QNIO_ERROR(InvalidWitness);
QNIO_ERROR(UnknownRelation);
QNIO_ERROR(SetupProofInvalid);
QNIO_ERROR(NoValidNizk);
QNIO_ERROR(UnknownPolicy);

// attacks
QNIO_ERROR(NoAcceptingProof);
QNIO_ERROR(RankDeficient);

#undef QNIO_ERROR

// Structural problem in a Program, tagged with the offending node.
struct MalformedCircuit : Error {
  MalformedCircuit(std::size_t node_index, const std::string& why)
      : Error("MalformedCircuit at node " + std::to_string(node_index) + ": " + why),
        node(node_index) {}
  std::size_t node;
};

// A host gate or primitive operation failed while evaluating a node. The
// original exception is attached with std::throw_with_nested.
struct GateFailure : Error {
  explicit GateFailure(std::size_t node_index)
      : Error("gate failure at node " + std::to_string(node_index)), node(node_index) {}
  std::size_t node;
};

struct NotMonotone : Error {
  NotMonotone(unsigned smaller, unsigned larger)
      : Error("NotMonotone: " + std::to_string(smaller) + " qualified but superset " +
              std::to_string(larger) + " is not"),
        subset(smaller),
        superset(larger) {}
  unsigned subset;
  unsigned superset;
};

}  // namespace qnio
