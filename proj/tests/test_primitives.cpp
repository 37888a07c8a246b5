#include <doctest.h>

#include "qnio/envelope.hpp"
#include "qnio/primitives.hpp"

using namespace qnio;

namespace {
PrfKey counting_key(unsigned domain) {
  Key16 k;
  for (unsigned i = 0; i < 16; ++i) k[i] = static_cast<std::uint8_t>(i);
  return PrfKey{k, domain};
}
}  // namespace

// Vectors below were computed with hashlib/hmac (tools/oracle_vectors.py).
TEST_CASE("prf and ggm match the reference vectors") {
  auto k = counting_key(8);
  CHECK(hex(prf_eval(k, to_bytes("abc"))) == "d601cc177559b0248459787f7e804ed7");
  CHECK(hex(prf_eval(k, Bytes{})) == "07eff8b326b7798c9ccfcbdbe579489a");
  CHECK(hex(ggm_half(k.bytes, 0)) == "23bb842412745468d897d75ec47aae60");
  CHECK(hex(ggm_half(k.bytes, 1)) == "74ca5a0b7404802921bcd795afc30507");
  CHECK(hex(ggm_eval(k, BitString(8, 0xb2))) == "825ce774abd53ea53a7019ae02bc1a15");
  CHECK(hex(ggm_eval(counting_key(16), BitString(16, 0))) == "3a5b76b645b39b03df97289fc1409bf3");
}

TEST_CASE("prg, owf and commitment vectors") {
  CHECK(hex(prg(to_bytes("seed"), 40)) ==
        "c30919fcb61962cbe41d250955c6c254da11711cb81878a0d8370b3385eb5ccd16604709f1c4ea55");
  CHECK(hex(owf(to_bytes("abc"))) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  auto r = counting_key(0).bytes;
  CHECK(hex(commit(Bytes{1}, r).payload) ==
        "ed49702567d4ca8a368713123980d1d2c92200988a72556b9889cf3fc69a0314"
        "38cda64b5181f979de628d25f58f5d92494ef7394602db041e85bdd520e3c036");
}

TEST_CASE("drbg vectors and fork independence") {
  auto a = Drbg::from_u64(1);
  CHECK(hex(a.bytes(40)) == "4a2b4fa540933df8e9bdb1ef401819f49440a7f851e7dd2805de98c0492c609b7c842aeb9dadbfff");
  auto f = Drbg::from_u64(7).fork("x");
  CHECK(hex(f.bytes(16)) == "b411fdefa9e2a92e92b85b03de3bf2b1");

  // chunked reads give the same stream
  auto b = Drbg::from_u64(1);
  auto part = b.bytes(7);
  auto rest = b.bytes(33);
  CHECK(hex(concat(part, rest)) == "4a2b4fa540933df8e9bdb1ef401819f49440a7f851e7dd2805de98c0492c609b7c842aeb9dadbfff");

  auto c = Drbg::from_u64(9);
  CHECK(c.fork("a").bytes(16) != c.fork("b").bytes(16));
  for (int i = 0; i < 200; ++i) CHECK(c.below(7) < 7);
}

TEST_CASE("oracle and sealing vectors") {
  auto o = RandomOracle::uniform(counting_key(0).bytes);
  auto ans = o->query(to_bytes("abc"));
  CHECK(hex(ans.head) == "3fe7accd780976c10c324d104570c94c");
  CHECK(ans.last == 0);
  CHECK(o->query(to_bytes("abc")) == ans);
  CHECK(o->table_size() == 1);

  auto sealed = seal("t", to_bytes("hello"));
  CHECK(hex(sealed) == "78e76d5b547ebf1c2a4618d4c0975ee6f15f8fdd55");
  CHECK(unseal("t", sealed) == to_bytes("hello"));
  CHECK_THROWS_AS(unseal("u", sealed), SealBroken);
  sealed.back() ^= 1;
  CHECK_THROWS_AS(unseal("t", sealed), SealBroken);
}

TEST_CASE("envelope layout") {
  auto env = wrap_envelope(ArtifactType::WeCiphertext, to_bytes("hi"));
  CHECK(hex(env) ==
        "514e4b3100000001000000060000000268699c539074996392cab17232bb1d9ea1b57b675577d4be7c8a9210fa2a3196e69c");
  CHECK(open_envelope(env, ArtifactType::WeCiphertext) == to_bytes("hi"));
  CHECK_THROWS_AS(open_envelope(env, ArtifactType::NizkCrs), DecodeError);

  auto bad = env;
  bad[0] = 'X';
  CHECK_THROWS_AS(open_envelope(bad), BadMagic);
  bad = env;
  bad[16] ^= 1;
  CHECK_THROWS_AS(open_envelope(bad), BadDigest);
  CHECK_THROWS_AS(open_envelope(ByteView(env).first(10)), DecodeError);
}

TEST_CASE("punctured GGM agrees off the point on both domains") {
  auto rng = Drbg::from_u64(3);
  for (unsigned domain : {8u, 16u}) {
    auto k = PrfKey::sample(rng, domain);
    auto z = BitString(domain, rng.below(std::uint64_t{1} << domain));
    auto kz = ggm_punct(k, z);
    CHECK(kz.path_keys.size() == domain);
    CHECK_THROWS_AS(ggm_eval_punct(kz, z), PuncturedPoint);
    auto round = PuncturedKey::decode(kz.encode());
    for (int i = 0; i < 300; ++i) {
      auto x = BitString(domain, rng.below(std::uint64_t{1} << domain));
      if (x == z) continue;
      CHECK(ggm_eval_punct(round, x) == ggm_eval(k, x));
    }
  }
}

TEST_CASE("domain and length guards") {
  auto k = counting_key(8);
  CHECK_THROWS_AS(ggm_eval(k, BitString(9, 0)), DomainMismatch);
  CHECK_THROWS_AS(ggm_eval(counting_key(0), BitString(8, 0)), DomainMismatch);
  CHECK_THROWS_AS(prg(Bytes{1}, kMaxPrgOutput + 1), LengthTooLarge);
  CHECK(prg(Bytes{1}, 0).empty());
  CHECK_THROWS_AS(commit(Bytes(kMaxCommitMessage + 1), k.bytes), MessageTooLong);
  CHECK_THROWS_AS(PrfKey::decode(Bytes(16)), DecodeError);
}

TEST_CASE("commitments open only to the committed message") {
  auto rng = Drbg::from_u64(5);
  for (int i = 0; i < 50; ++i) {
    auto m = rng.bytes(1 + rng.below(40));
    auto r = rng.key();
    auto c = commit(m, r);
    CHECK(c.payload.size() == 64);
    CHECK(verify_open(c, m, r));
    auto m2 = m;
    m2[0] ^= 1;
    CHECK_FALSE(verify_open(c, m2, r));
    CHECK_FALSE(verify_open(c, m, rng.key()));
  }
}

TEST_CASE("trapdoor oracle last bit tracks the predicate") {
  auto rng = Drbg::from_u64(11);
  auto td = PrfKey::sample(rng);
  auto seed = rng.key();
  auto pred = [](ByteView x) { return !x.empty() && x[0] == 'y'; };
  auto tdo = RandomOracle::tdgen(seed, td, pred);
  auto sim = RandomOracle::simgen(seed, td);
  auto uni = RandomOracle::uniform(seed);
  for (int i = 0; i < 64; ++i) {
    auto x = rng.bytes(8);
    x[0] = i % 2 ? 'y' : 'n';
    auto a = tdo->query(x);
    CHECK(a.head == uni->query(x).head);
    CHECK((a.last ^ prf_bit(td, x)) == (pred(x) ? 1 : 0));
    CHECK(sim->query(x).last == prf_bit(td, x));
  }
}

TEST_CASE("sometimes-binding commitment extracts when binding") {
  auto rng = Drbg::from_u64(13);
  int binding = 0;
  for (int i = 0; i < 200; ++i) {
    auto gen = sbsh_gen(rng);
    SbshKeys keys{gen.ck0, sbsh_key(gen.ck0, rng), 4};
    auto m = rng.bytes(24);
    auto c = sbsh_com(keys, m, rng.key());
    if (sbsh_binding(keys)) {
      ++binding;
      CHECK(sbsh_ext(gen.gen_rand, keys, c) == m);
    } else {
      CHECK_THROWS_AS(sbsh_ext(gen.gen_rand, keys, c), NotBinding);
    }
  }
  // binding with probability 2^-4
  CHECK(binding > 0);
  CHECK(binding < 40);
}

TEST_CASE("bit strings and the canonical encoder") {
  auto b = BitString::parse("1011");
  CHECK(b.value() == 11);
  CHECK(b.bit(0) == 1);
  CHECK(b.bit(1) == 0);
  CHECK(b.text() == "1011");
  CHECK(b.popcount() == 3);
  CHECK(b.widened(8).text() == "00001011");
  CHECK(BitString::from_bytes(BitString(12, 0xabc).bytes(), 12) == BitString(12, 0xabc));
  CHECK_THROWS_AS(BitString::parse("10x"), DecodeError);

  auto data = Writer().u8(1).u32(2).blob(to_bytes("xy")).str("s").bits(b).take();
  Reader r(data);
  CHECK(r.u8() == 1);
  CHECK(r.u32() == 2);
  CHECK(r.blob() == to_bytes("xy"));
  CHECK(r.str() == "s");
  CHECK(r.bits() == b);
  CHECK(r.done());
  Reader short_read(ByteView(data).first(3));
  short_read.u8();
  CHECK_THROWS_AS(short_read.u32(), DecodeError);
}
