#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qnio/circuit_ir.hpp"
#include "qnio/nullio.hpp"
#include "qnio/proofs.hpp"

namespace qnio {

// ---- ciphertext-policy ABE ----

struct AbeMasterKey {
  PrfKey k;
  unsigned attribute_bits = 0;

  Bytes encode() const;
  static AbeMasterKey decode(ByteView data);
};

struct AbePublicKey {
  unsigned attribute_bits = 0;
  SealedProgram check;  // (x, s) -> [prg(s) == prg(sk_x)]

  Bytes encode() const;
  static AbePublicKey decode(ByteView data);
};

struct AbeKeys {
  AbePublicKey mpk;
  AbeMasterKey msk;
};

struct AbeUserKey {
  BitString attribute;
  Key16 key{};

  Bytes encode() const;
  static AbeUserKey decode(ByteView data);
};

struct AbeCiphertext {
  std::string policy;  // language descriptor evaluated on the attribute
  NioConfig cfg;
  SealedProgram program;  // (x, s) -> WE ciphertext or bottom

  Bytes encode() const;
  static AbeCiphertext decode(ByteView data);
};

inline constexpr unsigned kMaxAttributeBits = 10;
inline constexpr std::size_t kAbePrgBytes = 32;

AbeKeys abe_gen(unsigned attribute_bits, std::uint64_t seed);
AbeUserKey abe_keygen(const AbeMasterKey& msk, const BitString& x);
AbeCiphertext abe_enc(const AbePublicKey& mpk, const std::string& policy, ByteView message, ByteView coins,
                      const NioConfig& cfg = {});
AbeCiphertext abe_enc(const AbePublicKey& mpk, const std::string& policy, ByteView message, std::uint64_t seed,
                      const NioConfig& cfg = {});
std::optional<Bytes> abe_dec(const AbeUserKey& key, const AbeCiphertext& ct, std::uint64_t seed = 0);

// Key-policy wrapper: keys carry a catalogue policy, ciphertexts an attribute.
struct KpUserKey {
  std::string policy;
  AbeUserKey inner;  // CP key on the policy id

  Bytes encode() const;
  static KpUserKey decode(ByteView data);
};
struct KpCiphertext {
  BitString attribute;
  AbeCiphertext inner;

  Bytes encode() const;
  static KpCiphertext decode(ByteView data);
};
AbeKeys kp_gen(std::uint64_t seed);
KpUserKey kp_keygen(const AbeMasterKey& msk, const std::string& policy);
KpCiphertext kp_enc(const AbePublicKey& mpk, const BitString& x, ByteView message, ByteView coins,
                    const NioConfig& cfg = {});
std::optional<Bytes> kp_dec(const KpUserKey& key, const KpCiphertext& ct, std::uint64_t seed = 0);

// Per-index hybrid programs for the ABE security argument. Hybrid i encrypts
// m1 to attributes below i and m0 to the rest; the chain moves i to i+1.
struct AbeHybrids {
  Program e, e1, e2, e3;
  Program e3_null, e_next_null;  // e3 and hybrid i+1, both under p_star
  Program p, p1, p2, p3, p_star;
  std::size_t e_budget = 0;
  std::size_t p_budget = 0;
};
AbeHybrids abe_hybrid_family(const AbeKeys& keys, const std::string& policy, const BitString& index, ByteView m0,
                             ByteView m1, const PrfKey& coins_key, const NioConfig& cfg, std::uint64_t seed);
struct AbeRangeScan {
  std::size_t samples = 0;
  std::size_t hits = 0;
};
std::vector<HybridCheck> abe_hybrid_checks(const AbeKeys& keys, const std::string& policy, const BitString& index,
                                           const NioConfig& cfg, std::uint64_t seed, AbeRangeScan* scan = nullptr,
                                           std::size_t scan_samples = 10000);

// ---- quantum lockable obfuscation ----

enum class LockedKind : std::uint8_t { Circuit = 1, AbeDecrypt = 2 };

struct QLockObf {
  QfhePublicKey pk;
  QfheCiphertext ct;  // encrypted program description
  SealedProgram cc;   // compute-and-compare over QFHE decryption

  Bytes encode() const;
  static QLockObf decode(ByteView data);
};

// Locks a pseudo-deterministic program with a 16-byte output.
QLockObf qlock_obf(const PseudoDetProgram& program, const Key16& lock, ByteView payload, std::uint64_t seed);
QLockObf qlock_obf_payload(LockedKind kind, ByteView description, const Key16& lock, ByteView payload, Drbg& rng);
Value qlock_eval(const QLockObf& obj, const BitString& x, std::uint64_t seed = 0);
Value qlock_eval_raw(const QLockObf& obj, ByteView input, std::uint64_t seed = 0);
QLockObf qlock_sim(std::size_t description_size, std::size_t payload_size, std::uint64_t seed);

// ---- one-sided attribute hiding ----

struct PeCiphertext {
  QLockObf locked;

  Bytes encode() const;
  static PeCiphertext decode(ByteView data);
};
PeCiphertext pe_enc(const AbePublicKey& mpk, const std::string& policy, ByteView message, std::uint64_t seed,
                    const NioConfig& cfg = {});
Value pe_dec(const AbeUserKey& key, const PeCiphertext& ct, std::uint64_t seed = 0);

// ---- constrained PRF ----

struct CprfKey {
  PrfKey k;
  AbeMasterKey msk;

  Bytes encode() const;
  static CprfKey decode(ByteView data);
};
struct CprfPublic {
  unsigned input_bits = 0;
  AbePublicKey mpk;
  NioConfig cfg;
  SealedProgram program;  // x -> key-policy ciphertext of PRF(k, x)

  Bytes encode() const;
  static CprfPublic decode(ByteView data);
};
struct CprfSetup {
  CprfPublic pp;
  CprfKey key;
  PrfKey coins_key;  // escrow for the hybrid checks
};
CprfSetup cprf_gen(unsigned input_bits, std::uint64_t seed, const NioConfig& cfg = {});
Key16 cprf_eval(const CprfKey& key, const BitString& x);
KpUserKey cprf_constrain(const CprfKey& key, const std::string& policy);
std::optional<Key16> cprf_ceval(const CprfPublic& pp, const KpUserKey& constrained, const BitString& x,
                                std::uint64_t seed = 0);

std::vector<HybridCheck> cprf_hybrid_checks(const CprfSetup& setup, const BitString& x_star, std::uint64_t seed);

// ---- secret sharing for monotone languages ----

struct Share {
  unsigned party = 0;
  Key16 opening{};
  std::string lang;  // derived language descriptor
  std::vector<Commitment> commitments;
  WeCiphertext ct;

  Bytes encode() const;
  static Share decode(ByteView data);
};

std::vector<Share> ss_share(const std::string& base_lang, unsigned parties, int secret, std::uint64_t seed,
                            const NioConfig& cfg = {});
std::optional<int> ss_rec(const std::vector<Share>& available, const Witness& w, std::uint64_t seed = 0);
std::vector<Share> subset_of(const std::vector<Share>& shares, const BitString& subset);

}  // namespace qnio
