#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qnio/circuit_ir.hpp"
#include "qnio/cvqc.hpp"

namespace qnio {

// A toy-protocol verifier reachable only through its sealed evaluator. When
// `oracle` is set the verifier expects hashed proofs, and the attacker hashes
// each query through the public oracle first.
struct VerifierTarget {
  SealedProgram verifier;
  ToyParams toy;
  std::shared_ptr<RandomOracle> oracle;

  int query(const CvqcProof& pi) const;
};

enum class TargetMode : std::uint8_t { Plain = 0, Hashed = 1, Null = 2 };

// Test-harness side of an attack instance: the target plus the escrowed keys.
struct ToyInstance {
  Statement statement;
  CvqcKeys keys;
  VerifierTarget target;
};

ToyInstance make_toy_instance(const Statement& q, const ToyParams& toy, TargetMode mode, std::uint64_t seed);
VerifierTarget make_target(const Statement& q, const DualModeKeys& keys, TargetMode mode);
CvqcProof honest_proof(const ToyInstance& inst, std::uint64_t seed);

inline constexpr int kUndetermined = -1;

struct AttackTranscript {
  std::vector<std::pair<Bytes, int>> queries;  // (proof bytes, verdict)
  std::vector<int> recovered;                  // 0, 1 or kUndetermined per position
  std::size_t query_count = 0;
};

AttackTranscript attack_basis_flip(const VerifierTarget& target, const CvqcProof& accepting);
AttackTranscript attack_stats(const VerifierTarget& target, const CvqcProof& accepting, std::size_t samples,
                              double threshold = 0.25, std::uint64_t seed = 0);

struct LinearAttackResult {
  AttackTranscript transcript;
  std::vector<std::uint8_t> secrets;
};
// `deltas` lists the d-differences tried at every position; unit vectors by default.
LinearAttackResult attack_linear(const VerifierTarget& target, const CvqcProof& accepting,
                                 const std::vector<std::uint8_t>& deltas = {});

// Solves A s = b over GF(2) for a w-bit s; throws RankDeficient below full rank.
std::uint8_t solve_gf2(const std::vector<std::pair<std::uint8_t, int>>& equations, unsigned width);

}  // namespace qnio
