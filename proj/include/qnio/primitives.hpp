#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qnio/bytes.hpp"
#include "qnio/errors.hpp"
#include "qnio/hash.hpp"

namespace qnio {

// Deterministic randomness expander: HMAC-SHA-256 in counter mode over a
// seed. Every sampler in the library draws from one of these so that a fixed
// seed reproduces every artifact byte for byte.
class Drbg {
 public:
  explicit Drbg(ByteView seed);
  static Drbg from_u64(std::uint64_t seed);

  Bytes bytes(std::size_t n);
  Key16 key();
  std::uint64_t u64();
  std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound)
  int bit() { return static_cast<int>(u64() & 1); }
  Drbg fork(std::string_view label) const;
  Bytes seed_for(std::string_view label) const;  // 32-byte derived seed

 private:
  Digest key_;
  std::uint64_t counter_ = 0;
  Bytes pool_;
  std::size_t used_ = 0;
};

// ---- PRF and the GGM puncturable PRF ----

struct PrfKey {
  Key16 bytes{};
  unsigned domain_bits = 0;  // 0 = variable-length inputs

  static PrfKey sample(Drbg& rng, unsigned domain_bits = 0);
  Bytes encode() const;
  static PrfKey decode(ByteView data);
  friend bool operator==(const PrfKey&, const PrfKey&) = default;
};

Key16 prf_eval(const PrfKey& k, ByteView x);
int prf_bit(const PrfKey& k, ByteView x);  // lowest bit of prf_eval

// Length-doubling expander G(s) = (G_0(s), G_1(s)).
Key16 ggm_half(const Key16& s, int side);

struct PuncturedKey {
  std::vector<std::pair<unsigned, Key16>> path_keys;  // (level, sibling subkey)
  BitString point;
  unsigned domain_bits = 0;

  Bytes encode() const;
  static PuncturedKey decode(ByteView data);
};

Key16 ggm_eval(const PrfKey& k, const BitString& x);
PuncturedKey ggm_punct(const PrfKey& k, const BitString& z);
Key16 ggm_eval_punct(const PuncturedKey& kz, const BitString& x);

// ---- PRG, OWF, commitment ----

inline constexpr std::size_t kMaxPrgOutput = std::size_t{1} << 16;
Bytes prg(ByteView seed, std::size_t out_len);
Digest owf(ByteView x);

struct Commitment {
  Bytes payload;  // 64 bytes
  friend bool operator==(const Commitment&, const Commitment&) = default;
};
inline constexpr std::size_t kMaxCommitMessage = 64;
Commitment commit(ByteView m, const Key16& r);
bool verify_open(const Commitment& c, ByteView m, const Key16& r);

// ---- Programmable random oracle ----

inline constexpr unsigned kOracleBits = 129;

struct OracleAnswer {
  Key16 head{};       // first 128 bits, G(x)
  std::uint8_t last = 0;  // bit 129

  Bytes encode() const;
  static OracleAnswer decode(ByteView data);
  friend bool operator==(const OracleAnswer&, const OracleAnswer&) = default;
};

enum class OracleMode : std::uint8_t { Uniform = 0, TdGen = 1, SimGen = 2 };

class RandomOracle {
 public:
  using Predicate = std::function<bool(ByteView)>;

  static std::shared_ptr<RandomOracle> uniform(const Key16& seed);
  static std::shared_ptr<RandomOracle> tdgen(const Key16& seed, const PrfKey& td, Predicate verify);
  static std::shared_ptr<RandomOracle> simgen(const Key16& seed, const PrfKey& td);

  OracleAnswer query(ByteView x) const;
  OracleMode mode() const { return mode_; }
  const Key16& seed() const { return seed_; }
  std::size_t table_size() const;

 private:
  RandomOracle(OracleMode mode, const Key16& seed, PrfKey td, Predicate verify);
  OracleAnswer compute(ByteView x) const;

  OracleMode mode_;
  Key16 seed_;
  PrfKey td_;
  Predicate verify_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, OracleAnswer> table_;
};

// ---- Sometimes-binding statistically-hiding commitment (modeled) ----

struct SbshGen {
  Key16 ck0{};
  Key16 gen_rand{};
};

struct SbshKeys {
  Key16 ck0{};
  Key16 ck1{};
  unsigned binding_bits = 4;
};

SbshGen sbsh_gen(Drbg& rng);
Key16 sbsh_key(const Key16& ck0, Drbg& rng);
bool sbsh_binding(const SbshKeys& keys);
Bytes sbsh_com(const SbshKeys& keys, ByteView m, const Key16& r);
Bytes sbsh_ext(const Key16& gen_rand, const SbshKeys& keys, ByteView c);

// ---- Harness sealing ----
// Authenticated deterministic encryption under a fixed harness key. It stands
// for every "only the harness can open this" boundary: sealed program
// constants, CVQC parameter envelopes, QFHE wrapping keys.
Bytes seal(std::string_view label, ByteView plaintext);
Bytes unseal(std::string_view label, ByteView blob);

}  // namespace qnio
