#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qnio/circuit_ir.hpp"
#include "qnio/nullio.hpp"

namespace qnio {

// ---- NIZK ----

struct NizkCrs {
  std::string lang;
  unsigned statement_bits = 0;
  NioConfig nio;
  SealedProgram prover;    // x -> WE ciphertext
  SealedProgram verifier;  // (x, y) -> bit

  Bytes encode() const;
  static NizkCrs decode(ByteView data);
};

// Setup randomness kept for the simulator and the hybrid checks.
struct NizkEscrow {
  PrfKey k0;
  PrfKey k1;
};

struct NizkSetup {
  NizkCrs crs;
  NizkEscrow escrow;
};

NizkSetup nizk_setup(const std::string& lang, unsigned statement_bits, const NioConfig& cfg, std::uint64_t seed);
Key16 nizk_prove(const NizkCrs& crs, const Witness& w, const BitString& x, std::uint64_t seed);
int nizk_verify(const NizkCrs& crs, const Key16& proof, const BitString& x);
Key16 nizk_sim(const NizkEscrow& escrow, const BitString& x);

struct NizkHybrids {
  Program p, p1, p2, p3, p_star;
  Program v, v1, v2, v_star;
};
NizkHybrids nizk_hybrid_family(const NizkCrs& crs, const NizkEscrow& escrow, const BitString& x_star,
                               std::uint64_t seed);

struct HybridCheck {
  std::string name;
  bool everywhere = true;  // false: compared away from the special point only
  EquivReport report;
};
std::vector<HybridCheck> nizk_hybrid_checks(const NizkCrs& crs, const NizkEscrow& escrow, const BitString& x_star,
                                            std::uint64_t seed);

// ---- modeled NIWI and ZAP ----

using Relation = std::function<bool(ByteView statement, ByteView witness)>;
void register_relation(const std::string& name, Relation check);
bool relation_holds(const std::string& name, ByteView statement, ByteView witness);

Key16 niwi_prove(const std::string& rel, ByteView statement, ByteView witness);
int niwi_verify(const std::string& rel, const Key16& proof, ByteView statement);

Key16 zap_setup(Drbg& rng);
Key16 zap_prove(const Key16& crs, const std::string& rel, ByteView statement, ByteView witness);
int zap_verify(const Key16& crs, const std::string& rel, const Key16& proof, ByteView statement);

// ---- ZAPR ----

struct ZaprCrs {
  NizkCrs crs0;
  NizkCrs crs1;
  Digest y0{};
  Digest y1{};
  Key16 ck0{};
  unsigned binding_bits = 4;
  Key16 zap_crs{};
  Key16 setup_proof{};

  Bytes encode() const;
  static ZaprCrs decode(ByteView data);
};

struct ZaprProof {
  Key16 ck1{};
  Bytes c_nizk;
  Bytes c_owf;
  Key16 zap_proof{};

  Bytes encode() const;
  static ZaprProof decode(ByteView data);
};

ZaprCrs zapr_setup(const std::string& lang, unsigned statement_bits, const NioConfig& cfg, std::uint64_t seed,
                   unsigned binding_bits = 4);
ZaprProof zapr_prove(const ZaprCrs& crs, const Witness& w, const BitString& x, std::uint64_t seed);
int zapr_verify(const ZaprCrs& crs, const ZaprProof& proof, const BitString& x);

}  // namespace qnio
