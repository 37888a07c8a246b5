#include "qnio/attacks.hpp"

#include <cmath>

namespace qnio {

namespace {

Program verifier_program(const VerifierSpec& spec, TargetMode mode) {
  ProgramBuilder b;
  auto proof = b.input();
  const char* gate = mode == TargetMode::Plain ? "CVQC_VERIFY" : mode == TargetMode::Hashed ? "CVQC_VERIFY_STAR"
                                                                                              : "CVQC_TDVERIFY";
  return b.build({b.host(gate, {b.constant(spec.encode()), proof})});
}

void require_accepting(const VerifierTarget& target, const CvqcProof& pi, AttackTranscript& t) {
  int v = target.query(pi);
  t.queries.emplace_back(pi.encode(), v);
  ++t.query_count;
  if (v != 1) throw NoAcceptingProof();
}

int record(const VerifierTarget& target, const CvqcProof& pi, AttackTranscript& t) {
  int v = target.query(pi);
  t.queries.emplace_back(pi.encode(), v);
  ++t.query_count;
  return v;
}

}  // namespace

int VerifierTarget::query(const CvqcProof& pi) const {
  Value out;
  if (oracle) {
    out = verifier.call({hash_proof(pi, *oracle).encode()});
  } else {
    out = verifier.call({pi.encode()});
  }
  return is_true(out) ? 1 : 0;
}

VerifierTarget make_target(const Statement& q, const DualModeKeys& keys, TargetMode mode) {
  auto spec = VerifierSpec::from(q, keys);
  auto program = verifier_program(spec, mode);
  VerifierTarget t;
  t.verifier = obf_io(program, program.size());
  t.toy = keys.keys.r.params;
  if (mode != TargetMode::Plain) t.oracle = keys.oracle;
  return t;
}

ToyInstance make_toy_instance(const Statement& q, const ToyParams& toy, TargetMode mode, std::uint64_t seed) {
  auto rng = Drbg::from_u64(seed).fork("attack-instance");
  auto keys = mode == TargetMode::Null ? sim_gen(q, Proto::Toy, rng, toy) : dual_keygen(q, Proto::Toy, rng, toy);
  return {q, keys.keys, make_target(q, keys, mode)};
}

CvqcProof honest_proof(const ToyInstance& inst, std::uint64_t seed) {
  return cvqc_prove(inst.keys.pp, Witness::none(inst.statement.reps), seed);
}

AttackTranscript attack_basis_flip(const VerifierTarget& target, const CvqcProof& accepting) {
  AttackTranscript t;
  require_accepting(target, accepting, t);
  for (std::size_t i = 0; i < accepting.pairs.size(); ++i) {
    auto flipped = accepting;
    flipped.pairs[i].b ^= 1;
    t.recovered.push_back(record(target, flipped, t) == 0 ? 1 : 0);
  }
  return t;
}

AttackTranscript attack_stats(const VerifierTarget& target, const CvqcProof& accepting, std::size_t samples,
                              double threshold, std::uint64_t seed) {
  AttackTranscript t;
  require_accepting(target, accepting, t);
  if (samples == 0) throw std::invalid_argument("samples must be positive");
  auto rng = Drbg::from_u64(seed).fork("attack-stats");
  const double band = 2.0 * 0.5 / std::sqrt(static_cast<double>(samples));
  for (std::size_t i = 0; i < accepting.pairs.size(); ++i) {
    std::size_t base = 0, flip = 0;
    for (std::size_t j = 0; j < samples; ++j) {
      auto resalted = accepting;
      resalted.salt = static_cast<std::uint32_t>(rng.u64());
      base += record(target, resalted, t);
      resalted.pairs[i].b ^= 1;
      flip += record(target, resalted, t);
    }
    double gap = (static_cast<double>(base) - static_cast<double>(flip)) / static_cast<double>(samples);
    if (std::abs(gap - threshold) < band) {
      t.recovered.push_back(kUndetermined);
    } else {
      t.recovered.push_back(gap > threshold ? 1 : 0);
    }
  }
  return t;
}

std::uint8_t solve_gf2(const std::vector<std::pair<std::uint8_t, int>>& equations, unsigned width) {
  std::vector<std::pair<std::uint8_t, int>> rows = equations;
  std::uint8_t solution = 0;
  std::vector<int> pivot_row(width, -1);
  std::size_t rank = 0;
  for (unsigned col = 0; col < width && rank < rows.size(); ++col) {
    const std::uint8_t mask = static_cast<std::uint8_t>(1u << (width - 1 - col));
    std::size_t pick = rank;
    while (pick < rows.size() && !(rows[pick].first & mask)) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[rank], rows[pick]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r].first & mask)) {
        rows[r].first ^= rows[rank].first;
        rows[r].second ^= rows[rank].second;
      }
    }
    pivot_row[col] = static_cast<int>(rank);
    ++rank;
  }
  if (rank < width) throw RankDeficient("rank " + std::to_string(rank) + " < " + std::to_string(width));
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rows[r].second) throw RankDeficient("inconsistent equations");
  for (unsigned col = 0; col < width; ++col)
    if (rows[static_cast<std::size_t>(pivot_row[col])].second)
      solution |= static_cast<std::uint8_t>(1u << (width - 1 - col));
  return solution;
}

LinearAttackResult attack_linear(const VerifierTarget& target, const CvqcProof& accepting,
                                 const std::vector<std::uint8_t>& deltas) {
  LinearAttackResult out;
  auto& t = out.transcript;
  require_accepting(target, accepting, t);
  const unsigned w = target.toy.secret_bits;
  std::vector<std::uint8_t> tries = deltas;
  if (tries.empty())
    for (unsigned j = 0; j < w; ++j) tries.push_back(static_cast<std::uint8_t>(1u << j));
  for (std::size_t i = 0; i < accepting.pairs.size(); ++i) {
    std::vector<std::pair<std::uint8_t, int>> equations;
    for (auto delta : tries) {
      auto shifted = accepting;
      shifted.pairs[i].d ^= delta;
      // accepted iff <delta, s_i> = 0
      equations.emplace_back(delta, record(target, shifted, t) ? 0 : 1);
    }
    out.secrets.push_back(solve_gf2(equations, w));
  }
  return out;
}

}  // namespace qnio
