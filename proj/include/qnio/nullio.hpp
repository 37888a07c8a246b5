#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "qnio/circuit_ir.hpp"
#include "qnio/cvqc.hpp"
#include "qnio/qfhe.hpp"

namespace qnio {

struct NioConfig {
  Proto base = Proto::Oracle;
  ToyParams toy;
  unsigned copies = 5;  // witness copies k

  Bytes encode() const;
  static NioConfig decode(ByteView data);
  friend bool operator==(const NioConfig&, const NioConfig&) = default;
};

enum class NioVariant : std::uint8_t { IO = 1, VBB = 2 };

// Setup used for the sealed verifier: the honest one, the steps of the
// security argument, and the always-reject endpoint.
enum class NullStage : std::uint8_t { Honest = 0, TdParams = 1, TdVerify = 2, SimParams = 3, Reject = 4 };
inline constexpr NullStage kNullStages[] = {NullStage::Honest, NullStage::TdParams, NullStage::TdVerify,
                                            NullStage::SimParams, NullStage::Reject};

struct ObfuscatedNullCircuit {
  NioVariant variant = NioVariant::IO;
  Digest statement_digest{};
  unsigned copies = 1;
  QfhePublicKey pk;
  QfheCiphertext ct_pp;  // IO variant
  CvqcParams pp;         // VBB variant: sealed envelope only
  SealedProgram circuit;
  SealedProgram oracle;  // IO variant: public handle to the shared random oracle

  Bytes encode() const;
  static ObfuscatedNullCircuit decode(ByteView data);
};

ObfuscatedNullCircuit nio_obf(const Statement& q, const NioConfig& cfg, Drbg& rng,
                              NullStage stage = NullStage::Honest, const std::optional<Bytes>& payload = {});
ObfuscatedNullCircuit nio_obf(const Statement& q, const NioConfig& cfg, std::uint64_t seed);

// Runs the prover under QFHE and applies the sealed verifier. Returns the
// released payload (or the bit when no payload was embedded), ⊥ otherwise.
Value nio_eval_value(const ObfuscatedNullCircuit& obj, const Witness& w, std::uint64_t seed);
int nio_eval(const ObfuscatedNullCircuit& obj, const Witness& w, std::uint64_t seed);

OracleAnswer nio_oracle_query(const ObfuscatedNullCircuit& obj, ByteView x);
// Feeds an adversarial (hashed) proof, encrypted under the public key.
Value nio_inject(const ObfuscatedNullCircuit& obj, ByteView hashed_proof, Drbg& rng);

struct VbbNullObfuscation {
  ObfuscatedNullCircuit obj;
  std::shared_ptr<SimHandle> sim;
  PrfKey escrow_key;  // test hook: the branch-0 PRF key
};
VbbNullObfuscation nio_obf_vbb(const Statement& q, const NioConfig& cfg, Drbg& rng,
                               const std::optional<Bytes>& payload = {});

// ---- witness encryption ----

struct WeCiphertext {
  ObfuscatedNullCircuit inner;
  Digest statement_digest{};

  Bytes encode() const;
  static WeCiphertext decode(ByteView data);
};

Statement we_statement(std::string lang, Bytes instance, const NioConfig& cfg);
WeCiphertext we_enc(const Statement& q, ByteView message, ByteView coins, const NioConfig& cfg);
WeCiphertext we_enc(const Statement& q, int bit, std::uint64_t seed, const NioConfig& cfg);
std::optional<Bytes> we_dec(const Statement& q, const WeCiphertext& c, const Witness& w, std::uint64_t seed);
std::optional<Bytes> we_dec_bqp(const Statement& q, const WeCiphertext& c, std::uint64_t seed);

// Host-gate form: the language descriptor and configuration bundled as one constant.
Bytes we_params(std::string_view lang, const NioConfig& cfg);
Bytes we_enc_gate(ByteView params, ByteView instance, ByteView message, ByteView coins);

}  // namespace qnio
