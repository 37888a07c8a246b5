#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "qnio/bytes.hpp"
#include "qnio/primitives.hpp"
#include "qnio/qfhe.hpp"
#include "qnio/qma_lang.hpp"

namespace qnio {

enum class Proto : std::uint8_t { Oracle = 1, Toy = 2 };

// Which positions the toy verifier checks.
enum class CheckVariant : std::uint8_t {
  Standard = 0,      // Hadamard positions only
  FreshTerms = 1,    // Hadamard positions in a subset re-derived from PRF(pi, salt)
  AllPositions = 2,  // every position, no commitment structure
};

struct ToyParams {
  unsigned positions = 8;    // K
  unsigned secret_bits = 4;  // w
  unsigned tolerance = 0;    // tau
  CheckVariant variant = CheckVariant::Standard;

  static ToyParams standard() { return {}; }
  static ToyParams mini() { return {4, 2, 0, CheckVariant::Standard}; }
  unsigned proof_bits() const { return positions * (1 + secret_bits); }
  friend bool operator==(const ToyParams&, const ToyParams&) = default;
};

struct CvqcParams {
  Proto proto = Proto::Oracle;
  Bytes envelope;  // sealed; opened only by the prover boundary

  Bytes encode() const;
  static CvqcParams decode(ByteView data);
  friend bool operator==(const CvqcParams&, const CvqcParams&) = default;
};

struct CvqcVerifyKey {
  Proto proto = Proto::Oracle;
  Digest statement_digest{};
  // oracle protocol
  PrfKey mac_key;
  // toy protocol
  ToyParams params;
  BitString basis;                    // 1 = Hadamard
  std::vector<std::uint8_t> secrets;  // s_i, w bits each
  BitString target;
  int out_bit = 0;
  PrfKey subset_key;  // FreshTerms only

  Bytes encode() const;
  static CvqcVerifyKey decode(ByteView data);
  friend bool operator==(const CvqcVerifyKey&, const CvqcVerifyKey&) = default;
};

struct CvqcKeys {
  CvqcParams pp;
  CvqcVerifyKey r;
};

struct ToyPair {
  std::uint8_t b = 0;
  std::uint8_t d = 0;
  friend bool operator==(const ToyPair&, const ToyPair&) = default;
};

struct CvqcProof {
  Proto proto = Proto::Oracle;
  Key16 tag{};
  std::vector<ToyPair> pairs;
  std::uint32_t salt = 0;

  Bytes encode() const;
  static CvqcProof decode(ByteView data);
  friend bool operator==(const CvqcProof&, const CvqcProof&) = default;
};

struct HashedProof {
  CvqcProof proof;
  OracleAnswer h;

  Bytes encode() const;
  static HashedProof decode(ByteView data);
  friend bool operator==(const HashedProof&, const HashedProof&) = default;
};

// Amplified language and instance behind a statement.
QmaLanguage statement_language(const Statement& q);

// ---- base protocols ----

CvqcKeys cvqc_keygen(const Statement& q, Proto proto, Drbg& rng, const ToyParams& toy = {});
CvqcKeys toy_keygen_explicit(const Statement& q, const ToyParams& toy, const BitString& basis,
                             std::vector<std::uint8_t> secrets, const BitString& target, int out_bit,
                             const PrfKey& subset_key = {});
CvqcProof cvqc_prove(const CvqcParams& pp, const Witness& w, std::uint64_t seed);
int cvqc_verify(const Statement& q, const CvqcProof& pi, const CvqcVerifyKey& r);

// Every toy proof for the given parameters, in counting order.
std::vector<CvqcProof> enumerate_toy_proofs(const ToyParams& toy);
CvqcProof random_toy_proof(const ToyParams& toy, Drbg& rng);

// ---- dual-mode layer ----

HashedProof star_prove(const CvqcParams& pp, const Witness& w, const RandomOracle& oracle, std::uint64_t seed);
HashedProof hash_proof(const CvqcProof& pi, const RandomOracle& oracle);
int star_verify(const Statement& q, const HashedProof& hp, const CvqcVerifyKey& r, const RandomOracle& oracle);

struct DualModeKeys {
  CvqcKeys keys;
  PrfKey td;
  Key16 oracle_seed{};
  std::shared_ptr<RandomOracle> oracle;
};

// Honest setup with a uniform oracle, drawn from the same sampler order.
DualModeKeys dual_keygen(const Statement& q, Proto proto, Drbg& rng, const ToyParams& toy = {});
DualModeKeys td_gen(const Statement& q, Proto proto, Drbg& rng, const ToyParams& toy = {});
DualModeKeys sim_gen(const Statement& q, Proto proto, Drbg& rng, const ToyParams& toy = {});
int td_verify(const Statement& q, const HashedProof& hp, const PrfKey& td, const RandomOracle& oracle);

// Everything a sealed verifier needs to rebuild its oracle and check proofs.
struct VerifierSpec {
  Statement statement;
  CvqcVerifyKey key;
  OracleMode mode = OracleMode::Uniform;
  Key16 oracle_seed{};
  PrfKey td;  // trapdoor, or the keyed-oracle PRF key of the VBB variant

  static VerifierSpec from(const Statement& q, const DualModeKeys& k);
  std::shared_ptr<RandomOracle> oracle() const;
  Bytes encode() const;
  static VerifierSpec decode(ByteView data);
};

// ---- blind two-message wrapper (toy protocol) ----

struct ToyFirstMessage {
  Commitment y;  // commitment to the measured outcomes
  Bytes state;   // prover-private continuation, includes pp
};
ToyFirstMessage toy_prove1(const CvqcParams& pp, const Witness& w, std::uint64_t seed);
// Fiat-Shamir challenge: d_i is bits [i*w, (i+1)*w) of the oracle head.
Key16 toy_challenge(ByteView first_message, const RandomOracle& oracle);
std::uint8_t challenge_term(const Key16& challenge, unsigned index, unsigned width);
CvqcProof toy_prove2(ByteView state, const Key16& challenge);
int toy_verify4(const Statement& q, ByteView first_message, const CvqcProof& pi, const CvqcVerifyKey& r,
                const RandomOracle& oracle);

struct BlindKeys {
  QfhePublicKey pk;
  QfheCiphertext ct_pp;
  CvqcVerifyKey r;
  QfheSecretKey sk;
  std::shared_ptr<RandomOracle> oracle;
};
struct BlindProof {
  QfheCiphertext ct1;
  QfheCiphertext ct2;
};
BlindKeys blind_keygen(const Statement& q, const ToyParams& toy, Drbg& rng);
BlindProof blind_prove(const QfhePublicKey& pk, const QfheCiphertext& ct_pp, const Witness& w,
                       const RandomOracle& oracle, std::uint64_t seed);
int blind_verify(const Statement& q, const BlindProof& proof, const BlindKeys& keys);

}  // namespace qnio
