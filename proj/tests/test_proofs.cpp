#include <doctest.h>

#include "qnio/proofs.hpp"

using namespace qnio;

namespace {
NioConfig mini_config() {
  NioConfig cfg;
  cfg.copies = 3;
  return cfg;
}
}  // namespace

TEST_CASE("nizk completeness and simulation") {
  auto s = nizk_setup("par:3", 3, mini_config(), 1);
  auto crs = NizkCrs::decode(s.crs.encode());
  for (unsigned v = 0; v < 8; ++v) {
    BitString x(3, v);
    if (x.popcount() % 2 == 0) {
      CHECK_THROWS_AS(nizk_prove(crs, Witness::none(3), x, v), ProofFailed);
      continue;
    }
    auto pi = nizk_prove(crs, Witness::none(3), x, v);
    CHECK(nizk_verify(crs, pi, x) == 1);
    CHECK(pi == nizk_sim(s.escrow, x));
    auto bad = pi;
    bad[3] ^= 0x10;
    CHECK(nizk_verify(crs, bad, x) == 0);
  }
  CHECK_THROWS(nizk_setup("par:3", 4, mini_config(), 1));
}

TEST_CASE("nizk with a quantum witness") {
  auto cfg = mini_config();
  auto s = nizk_setup("ghz", 3, cfg, 2);
  BitString x = BitString::parse("110");
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    try {
      ok += nizk_verify(s.crs, nizk_prove(s.crs, ghz_witness(x, cfg.copies), x, seed), x);
    } catch (const ProofFailed&) {
    }
  }
  CHECK(ok >= 4);
}

TEST_CASE("nizk hybrid programs") {
  auto s = nizk_setup("par:3", 3, mini_config(), 3);
  auto checks = nizk_hybrid_checks(s.crs, s.escrow, BitString::parse("110"), 4);
  CHECK(checks.size() == 7);
  int away = 0;
  for (const auto& c : checks) {
    CHECK_MESSAGE(c.report.equivalent, c.name);
    CHECK(c.report.tested > 0);
    away += !c.everywhere;
  }
  CHECK(away == 3);
  // the endpoints really differ at the special point
  auto h = nizk_hybrid_family(s.crs, s.escrow, BitString::parse("110"), 4);
  CHECK_FALSE(equiv_check(evaluator(h.p), evaluator(h.p_star), DomainSpec::exhaustive({3})));
}

TEST_CASE("modeled niwi and zap") {
  register_relation("test-even-byte", [](ByteView stmt, ByteView w) {
    return stmt.size() == 1 && w.size() == 1 && (stmt[0] + w[0]) % 2 == 0;
  });
  Bytes stmt{4};
  auto pi = niwi_prove("test-even-byte", stmt, Bytes{2});
  CHECK(niwi_verify("test-even-byte", pi, stmt) == 1);
  CHECK(niwi_verify("test-even-byte", pi, Bytes{5}) == 0);
  // witness indistinguishable: any valid witness gives the same proof
  CHECK(niwi_prove("test-even-byte", stmt, Bytes{0}) == pi);
  CHECK_THROWS_AS(niwi_prove("test-even-byte", stmt, Bytes{1}), InvalidWitness);
  CHECK_THROWS_AS(niwi_prove("no-such-relation", stmt, Bytes{1}), UnknownRelation);
  CHECK_FALSE(relation_holds("test-even-byte", stmt, Bytes{3}));

  auto rng = Drbg::from_u64(5);
  auto crs = zap_setup(rng);
  auto z = zap_prove(crs, "test-even-byte", stmt, Bytes{2});
  CHECK(zap_verify(crs, "test-even-byte", z, stmt) == 1);
  CHECK(zap_verify(zap_setup(rng), "test-even-byte", z, stmt) == 0);
}

TEST_CASE("zapr round trip") {
  auto cfg = mini_config();
  auto crs = ZaprCrs::decode(zapr_setup("par:3", 3, cfg, 6).encode());
  BitString x = BitString::parse("010");
  auto proof = ZaprProof::decode(zapr_prove(crs, Witness::none(2 * cfg.copies), x, 7).encode());
  CHECK(zapr_verify(crs, proof, x) == 1);
  CHECK(zapr_verify(crs, proof, BitString::parse("011")) == 0);
  CHECK_THROWS_AS(zapr_prove(crs, Witness::none(cfg.copies), x, 7), InsufficientCopies);
  CHECK_THROWS_AS(zapr_prove(crs, Witness::none(2 * cfg.copies), BitString::parse("011"), 7), NoValidNizk);
  auto broken = crs;
  broken.setup_proof[0] ^= 1;
  CHECK_THROWS_AS(zapr_prove(broken, Witness::none(2 * cfg.copies), x, 7), SetupProofInvalid);
}
