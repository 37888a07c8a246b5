#include <doctest.h>

#include "qnio/encdelegate.hpp"

using namespace qnio;

namespace {

NioConfig mini_config() {
  NioConfig cfg;
  cfg.copies = 3;
  return cfg;
}

bool accepts(const std::string& policy, const BitString& x) {
  return acceptance_probability(resolve_language(policy), x.bytes(), Witness::none()) > 0.5;
}

}  // namespace

TEST_CASE("abe decrypts exactly for satisfying attributes") {
  auto keys = abe_gen(3, 1);
  auto mpk = AbePublicKey::decode(keys.mpk.encode());
  auto msk = AbeMasterKey::decode(keys.msk.encode());
  const Bytes m = to_bytes("abe");
  for (const char* policy : {"maj:3", "or:3"}) {
    auto ct = AbeCiphertext::decode(abe_enc(mpk, policy, m, 2, mini_config()).encode());
    for (unsigned v = 0; v < 8; ++v) {
      BitString x(3, v);
      auto key = AbeUserKey::decode(abe_keygen(msk, x).encode());
      auto got = abe_dec(key, ct, v);
      if (accepts(policy, x)) {
        REQUIRE(got.has_value());
        CHECK(*got == m);
      } else {
        CHECK_FALSE(got.has_value());
      }
    }
  }
  CHECK_THROWS(abe_enc(mpk, "par:4", m, 2, mini_config()));
  CHECK_THROWS(abe_gen(kMaxAttributeBits + 1, 1));
}

TEST_CASE("abe keys from another master key fail") {
  auto a = abe_gen(3, 3);
  auto b = abe_gen(3, 4);
  auto ct = abe_enc(a.mpk, "or:3", Bytes{1}, 5, mini_config());
  CHECK_FALSE(abe_dec(abe_keygen(b.msk, BitString::parse("111")), ct).has_value());
  auto forged = abe_keygen(a.msk, BitString::parse("111"));
  forged.key[0] ^= 1;
  CHECK_FALSE(abe_dec(forged, ct).has_value());
}

TEST_CASE("abe hybrid chain at one index") {
  auto keys = abe_gen(3, 6);
  AbeRangeScan scan;
  auto checks = abe_hybrid_checks(keys, "par:3", BitString::parse("101"), mini_config(), 7, &scan, 500);
  CHECK(checks.size() == 8);
  for (const auto& c : checks) CHECK_MESSAGE(c.report.equivalent, c.name);
  CHECK(scan.samples == 500);
  CHECK(scan.hits == 0);
}

TEST_CASE("key-policy wrapper") {
  auto keys = kp_gen(8);
  auto key = KpUserKey::decode(kp_keygen(keys.msk, "and:4").encode());
  for (unsigned v : {0u, 7u, 15u}) {
    BitString x(4, v);
    auto ct = KpCiphertext::decode(kp_enc(keys.mpk, x, Bytes{9}, be64(v), mini_config()).encode());
    auto got = kp_dec(key, ct, v);
    CHECK(got.has_value() == (v == 15));
  }
  CHECK_THROWS_AS(kp_keygen(keys.msk, "th:2:4"), UnknownPolicy);
}

TEST_CASE("lockable obfuscation of a program") {
  PseudoDetProgram p;
  p.circuit.qubits = 5;
  p.circuit.ancillas = 1;
  for (unsigned i = 0; i < 4; ++i) p.circuit.add(GateKind::CNOT, i, 4);
  p.outputs = {4};
  Key16 lock{}, other{};
  lock[0] = 1;
  p.table = {to_bytes(other), to_bytes(lock)};
  auto obj = QLockObf::decode(qlock_obf(p, lock, to_bytes("pay"), 9).encode());
  for (unsigned v = 0; v < 16; ++v) {
    BitString x(4, v);
    auto got = qlock_eval(obj, x, v);
    CHECK(got.has_value() == static_cast<bool>(x.popcount() & 1));
    if (got) CHECK(*got == to_bytes("pay"));
  }
  auto sim = qlock_sim(p.encode().size(), 3, 10);
  CHECK(sim.cc.declared_size() == obj.cc.declared_size());
  CHECK(sim.ct.encode().size() == obj.ct.encode().size());
  for (unsigned v = 0; v < 16; ++v) CHECK_FALSE(qlock_eval(sim, BitString(4, v), v).has_value());
}

TEST_CASE("attribute-hiding encryption") {
  auto keys = abe_gen(3, 11);
  auto ct = PeCiphertext::decode(pe_enc(keys.mpk, "maj:3", to_bytes("pe"), 12, mini_config()).encode());
  for (unsigned v = 0; v < 8; ++v) {
    BitString x(3, v);
    auto got = pe_dec(abe_keygen(keys.msk, x), ct, v);
    CHECK(got.has_value() == accepts("maj:3", x));
    if (got) CHECK(*got == to_bytes("pe"));
  }
}

TEST_CASE("constrained prf") {
  auto s = cprf_gen(4, 13, mini_config());
  auto pp = CprfPublic::decode(s.pp.encode());
  auto key = CprfKey::decode(s.key.encode());
  CHECK(cprf_eval(key, BitString(4, 3)) != cprf_eval(key, BitString(4, 4)));
  auto ck = cprf_constrain(key, "or:4");
  for (unsigned v = 0; v < 16; ++v) {
    BitString x(4, v);
    auto got = cprf_ceval(pp, ck, x, v);
    if (v) {
      REQUIRE(got.has_value());
      CHECK(*got == cprf_eval(key, x));
    } else {
      CHECK_FALSE(got.has_value());
    }
  }
  for (const auto& c : cprf_hybrid_checks(s, BitString(4, 6), 14)) CHECK_MESSAGE(c.report.equivalent, c.name);
  CHECK_THROWS(cprf_gen(9, 1));
}

TEST_CASE("secret sharing follows the access structure") {
  auto cfg = mini_config();
  for (int secret : {0, 1}) {
    auto shares = ss_share("th:2:3", 3, secret, 15 + static_cast<std::uint64_t>(secret), cfg);
    REQUIRE(shares.size() == 3);
    CHECK(Share::decode(shares[1].encode()).encode() == shares[1].encode());
    for (unsigned v = 0; v < 8; ++v) {
      BitString subset(3, v);
      auto got = ss_rec(subset_of(shares, subset), Witness::none(cfg.copies), v);
      if (subset.popcount() >= 2) {
        REQUIRE(got.has_value());
        CHECK(*got == secret);
      } else {
        CHECK_FALSE(got.has_value());
      }
    }
  }
  // subset_of reads the first bit as party 0
  auto shares = ss_share("or:3", 3, 1, 17, cfg);
  auto one = subset_of(shares, BitString::parse("100"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].party == 0);
  CHECK_THROWS(ss_share("par:3", 3, 1, 1, cfg));
}
