#include <doctest.h>

#include <cmath>

#include "qnio/qma_lang.hpp"

using namespace qnio;

TEST_CASE("parity verifier is deterministic") {
  auto L = resolve_language("par:4");
  CHECK(L.instance_bits == 4);
  for (unsigned v = 0; v < 16; ++v) {
    BitString x(4, v);
    double p = acceptance_probability(L, x.bytes(), Witness::none());
    CHECK(p == doctest::Approx(x.popcount() % 2 ? 1.0 : 0.0));
  }
  CHECK_THROWS_AS(resolve_language("par:0"), UnknownLanguage);
  CHECK_THROWS_AS(resolve_language("nope:3"), UnknownLanguage);
  CHECK_THROWS(acceptance_probability(L, Bytes{1, 2}, Witness::none()));
}

TEST_CASE("ghz witness acceptance") {
  auto L = resolve_language("ghz");
  CHECK(L.witness_qubits == 3);
  for (unsigned v = 0; v < 8; ++v) {
    BitString x(3, v);
    CHECK(acceptance_probability(L, x.bytes(), ghz_witness(x, 1)) == doctest::Approx(1.0));
    // a global phase changes nothing
    CHECK(acceptance_probability(L, x.bytes(), ghz_witness(x, 1, false, Amp(0, 1))) == doctest::Approx(1.0));
    CHECK(acceptance_probability(L, x.bytes(), ghz_witness(x, 1, true)) == doctest::Approx(0.0));
    auto other = BitString(3, v ^ 1);
    CHECK(acceptance_probability(L, x.bytes(), ghz_witness(other, 1)) <= L.beta + 1e-9);
  }
  CHECK_THROWS_AS(acceptance_probability(L, Bytes{0}, Witness::none()), WidthMismatch);
}

TEST_CASE("amplification tails") {
  CHECK(majority_tail(1.0, 5) == doctest::Approx(1.0));
  CHECK(majority_tail(0.5, 5) == doctest::Approx(0.5));
  CHECK(majority_tail(0.5, 1) == doctest::Approx(0.5));
  // 3 reps at p: p^3 + 3p^2(1-p)
  CHECK(majority_tail(0.8, 3) == doctest::Approx(0.512 + 3 * 0.64 * 0.2));
  auto L = amplify(resolve_language("ghz"), 5);
  CHECK(L.reps == 5);
  CHECK_THROWS(amplify(L, 4));
  BitString x(3, 5);
  CHECK_THROWS_AS(amplified_verify(L, x.bytes(), ghz_witness(x, 3), 0), InsufficientCopies);
  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(amplified_verify(L, x.bytes(), ghz_witness(x, 5), seed) == 1);
}

TEST_CASE("threshold access structures") {
  auto L = resolve_language("th:2:4");
  CHECK(L.subset_instances);
  for (unsigned v = 0; v < 16; ++v) {
    BitString s(4, v);
    CHECK(is_qualified(L, s) == (s.popcount() >= 2 ? Qualification::Yes : Qualification::No));
  }
  monotone_check(L);
  for (const char* d : {"and:3", "or:3", "maj:5", "first:3"}) monotone_check(resolve_language(d));
  CHECK_THROWS_AS(monotone_check(resolve_language("tt:2:09")), NotMonotone);  // empty set qualifies, {1} does not
}

TEST_CASE("boolean families") {
  struct Row {
    const char* desc;
    unsigned bits;
    bool (*pred)(const BitString&);
  };
  const Row rows[] = {
      {"and:3", 3, [](const BitString& x) { return x.popcount() == 3; }},
      {"or:3", 3, [](const BitString& x) { return x.popcount() > 0; }},
      {"maj:3", 3, [](const BitString& x) { return x.popcount() >= 2; }},
      {"null:3", 3, [](const BitString&) { return false; }},
  };
  for (const auto& r : rows) {
    auto L = resolve_language(r.desc);
    for (unsigned v = 0; v < (1u << r.bits); ++v) {
      BitString x(r.bits, v);
      CHECK(acceptance_probability(L, x.bytes(), Witness::none()) == doctest::Approx(r.pred(x) ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("policy catalogue") {
  for (unsigned id = 0; id < 6; ++id) CHECK(policy_id(policy_descriptor(id, 4)) == id);
  CHECK_THROWS_AS(policy_descriptor(9, 4), UnknownPolicy);
  CHECK_THROWS_AS(policy_id("th:2:4"), UnknownPolicy);
  // univ:x accepts policy id p exactly when policy p accepts x
  BitString attr = BitString::parse("1101");
  auto U = resolve_language("univ:" + attr.text());
  for (unsigned id = 0; id < 16; ++id) {
    double p = acceptance_probability(U, BitString(kPolicyIdBits, id).bytes(), Witness::none());
    if (id >= 6) {
      CHECK(p == 0.0);
      continue;
    }
    auto P = resolve_language(policy_descriptor(id, 4));
    CHECK(p == doctest::Approx(acceptance_probability(P, attr.bytes(), Witness::none())));
  }
}

TEST_CASE("statement encoding") {
  Statement q{"par:3", BitString::parse("101").bytes(), 5};
  CHECK(Statement::decode(q.encode()) == q);
  auto q2 = q;
  q2.reps = 3;
  CHECK(q2.digest() != q.digest());
  CHECK_THROWS(Statement::decode(Bytes{0, 0}));
}

TEST_CASE("pseudo-deterministic programs") {
  PseudoDetProgram p;
  p.circuit.qubits = 3;
  p.circuit.add(GateKind::CNOT, 0, 2).add(GateKind::CNOT, 1, 2);
  p.outputs = {2};
  p.table = {to_bytes("even"), to_bytes("odd")};
  p.reps = 3;
  for (unsigned v = 0; v < 4; ++v) {
    BitString x(3, v << 1);
    auto expect = BitString(3, v << 1).popcount() % 2 ? "odd" : "even";
    CHECK(p.run(x, v) == to_bytes(expect));
    CHECK(p.certificate(x) == doctest::Approx(1.0));
  }
  auto q = PseudoDetProgram::decode(p.encode());
  CHECK(q.encode() == p.encode());
  p.reps = 2;
  CHECK_THROWS_AS(p.check(), WidthMismatch);
}
