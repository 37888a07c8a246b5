#include <doctest.h>

#include "qnio/qfhe.hpp"

using namespace qnio;

TEST_CASE("encrypt then decrypt") {
  auto keys = qfhe_gen(1);
  CHECK(qfhe_pair(keys.pk, keys.sk));
  CHECK_FALSE(qfhe_pair(keys.pk, qfhe_gen(2).sk));
  auto rng = Drbg::from_u64(3);
  for (std::size_t n : {0u, 1u, 17u, 300u}) {
    auto m = rng.bytes(n);
    auto ct = qfhe_enc(keys.pk, m, rng);
    CHECK(qfhe_dec(keys.sk, ct) == m);
    CHECK(QfheCiphertext::decode(ct.encode()) == ct);
    CHECK(ct.depth() == 0);
  }
  CHECK(QfhePublicKey::decode(keys.pk.encode()) == keys.pk);
}

TEST_CASE("ciphertext length leaks only a size bucket") {
  auto keys = qfhe_gen(4);
  auto rng = Drbg::from_u64(5);
  auto a = qfhe_enc(keys.pk, Bytes(3), rng);
  auto b = qfhe_enc(keys.pk, Bytes(9), rng);
  CHECK(a.metadata() == b.metadata());
  CHECK(a.encode().size() == b.encode().size());
  CHECK(a.encode() != qfhe_enc(keys.pk, Bytes(3), rng).encode());
}

TEST_CASE("wrong keys and tampering are rejected") {
  auto keys = qfhe_gen(6);
  auto other = qfhe_gen(7);
  auto rng = Drbg::from_u64(8);
  auto ct = qfhe_enc(keys.pk, to_bytes("secret"), rng);
  CHECK_THROWS_AS(qfhe_dec(other.sk, ct), KeyMismatch);
  auto bytes = ct.encode();
  bytes[bytes.size() - 20] ^= 1;
  bool rejected = false;
  try {
    qfhe_dec(keys.sk, QfheCiphertext::decode(bytes));
  } catch (const MalformedCiphertext&) {
    rejected = true;
  }
  CHECK(rejected);
  CHECK_THROWS_AS(QfheCiphertext::decode(Bytes{1, 2, 3}), MalformedCiphertext);
  CHECK_THROWS_AS(qfhe_eval(other.pk, [](ByteView p, std::uint64_t) { return to_bytes(p); }, ct, 0), KeyMismatch);
}

TEST_CASE("homomorphic evaluation") {
  auto keys = qfhe_gen(9);
  auto rng = Drbg::from_u64(10);
  auto ct = qfhe_enc(keys.pk, Bytes{1, 2, 3}, rng);
  auto rev = qfhe_eval(keys.pk, [](ByteView p, std::uint64_t) { return Bytes(p.rbegin(), p.rend()); }, ct, 0);
  CHECK(qfhe_dec(keys.sk, rev) == Bytes{3, 2, 1});
  CHECK(rev.depth() == 1);

  // parity circuit on three bits, output on qubit 0
  QuantumCircuit c;
  c.qubits = 4;
  c.ancillas = 1;
  c.add(GateKind::CNOT, 1, 0).add(GateKind::CNOT, 2, 0).add(GateKind::CNOT, 3, 0);
  for (unsigned v = 0; v < 8; ++v) {
    BitString x(3, v);
    auto enc = qfhe_enc(keys.pk, x.bytes(), rng);
    auto out = qfhe_dec(keys.sk, qfhe_eval(keys.pk, c, enc, v));
    CHECK(out == Bytes{static_cast<std::uint8_t>(x.popcount() & 1)});
  }
}

TEST_CASE("depth limit") {
  auto keys = qfhe_gen(11);
  auto rng = Drbg::from_u64(12);
  auto ct = qfhe_enc(keys.pk, Bytes{0}, rng);
  auto inc = [](ByteView p, std::uint64_t) { return Bytes{static_cast<std::uint8_t>(p[0] + 1)}; };
  for (unsigned i = 0; i < kQfheMaxDepth; ++i) ct = qfhe_eval(keys.pk, inc, ct, i);
  CHECK(qfhe_dec(keys.sk, ct) == Bytes{static_cast<std::uint8_t>(kQfheMaxDepth)});
  CHECK_THROWS_AS(qfhe_eval(keys.pk, inc, ct, 0), DepthExceeded);
}
