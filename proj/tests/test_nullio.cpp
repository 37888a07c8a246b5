#include <doctest.h>

#include "qnio/nullio.hpp"

using namespace qnio;

namespace {
NioConfig mini_config(Proto base = Proto::Oracle) {
  NioConfig cfg;
  cfg.base = base;
  cfg.copies = 3;
  cfg.toy = ToyParams::mini();
  return cfg;
}
}  // namespace

TEST_CASE("config encoding") {
  auto cfg = mini_config(Proto::Toy);
  CHECK(NioConfig::decode(cfg.encode()) == cfg);
}

TEST_CASE("parity null circuits evaluate to the parity") {
  for (auto base : {Proto::Oracle, Proto::Toy}) {
    auto cfg = mini_config(base);
    for (unsigned v = 0; v < 8; ++v) {
      BitString x(3, v);
      auto q = we_statement("par:3", x.bytes(), cfg);
      auto obj = ObfuscatedNullCircuit::decode(nio_obf(q, cfg, v).encode());
      CHECK(nio_eval(obj, Witness::none(cfg.copies), v) == static_cast<int>(x.popcount() & 1));
    }
  }
}

TEST_CASE("every proof stage outputs zero on a no-instance") {
  auto cfg = mini_config(Proto::Toy);
  auto q = we_statement("par:3", BitString::parse("011").bytes(), cfg);
  for (auto stage : kNullStages) {
    auto rng = Drbg::from_u64(static_cast<std::uint64_t>(stage) + 10);
    auto obj = nio_obf(q, cfg, rng, stage);
    CHECK(nio_eval(obj, Witness::none(cfg.copies), 1) == 0);
  }
  auto yes = we_statement("par:3", BitString::parse("111").bytes(), cfg);
  auto rng = Drbg::from_u64(20);
  CHECK(nio_eval(nio_obf(yes, cfg, rng, NullStage::Honest), Witness::none(cfg.copies), 1) == 1);
  CHECK(nio_eval(nio_obf(yes, cfg, rng, NullStage::TdParams), Witness::none(cfg.copies), 1) == 1);
  CHECK(nio_eval(nio_obf(yes, cfg, rng, NullStage::Reject), Witness::none(cfg.copies), 1) == 0);
}

TEST_CASE("ghz statements need the witness") {
  auto cfg = mini_config();
  BitString x = BitString::parse("101");
  auto q = we_statement("ghz", x.bytes(), cfg);
  auto obj = nio_obf(q, cfg, 3);
  int good = 0;
  for (std::uint64_t s = 0; s < 10; ++s) good += nio_eval(obj, ghz_witness(x, cfg.copies), s);
  CHECK(good >= 9);
  CHECK_THROWS_AS(nio_eval(obj, ghz_witness(x, cfg.copies - 1), 0), InsufficientCopies);
}

TEST_CASE("embedded payloads are released on acceptance only") {
  auto cfg = mini_config();
  auto rng = Drbg::from_u64(30);
  auto yes = we_statement("par:3", BitString::parse("100").bytes(), cfg);
  auto no = we_statement("par:3", BitString::parse("101").bytes(), cfg);
  auto a = nio_obf(yes, cfg, rng, NullStage::Honest, to_bytes("m"));
  auto b = nio_obf(no, cfg, rng, NullStage::Honest, to_bytes("m"));
  CHECK(nio_eval_value(a, Witness::none(cfg.copies), 0) == Value(to_bytes("m")));
  CHECK_FALSE(nio_eval_value(b, Witness::none(cfg.copies), 0).has_value());
}

TEST_CASE("vbb variant") {
  auto cfg = mini_config();
  auto rng = Drbg::from_u64(40);
  auto q = we_statement("par:3", BitString::parse("111").bytes(), cfg);
  auto v = nio_obf_vbb(q, cfg, rng);
  CHECK(v.obj.variant == NioVariant::VBB);
  CHECK(nio_eval(v.obj, Witness::none(cfg.copies), 0) == 1);
  CHECK(ObfuscatedNullCircuit::decode(v.obj.encode()).variant == NioVariant::VBB);
}

TEST_CASE("witness encryption") {
  auto cfg = mini_config();
  const Bytes m{0xde, 0xad};
  for (unsigned v = 0; v < 8; ++v) {
    BitString x(3, v);
    auto q = we_statement("par:3", x.bytes(), cfg);
    auto c = WeCiphertext::decode(we_enc(q, m, be64(v), cfg).encode());
    auto got = we_dec_bqp(q, c, v);
    if (x.popcount() & 1) {
      REQUIRE(got.has_value());
      CHECK(*got == m);
    } else {
      CHECK_FALSE(got.has_value());
    }
  }
  auto q = we_statement("par:3", BitString::parse("001").bytes(), cfg);
  auto other = we_statement("par:3", BitString::parse("010").bytes(), cfg);
  auto c = we_enc(q, 1, 5, cfg);
  CHECK(we_dec(q, c, Witness::none(cfg.copies), 0) == std::optional<Bytes>(Bytes{1}));
  CHECK_FALSE(we_dec(other, c, Witness::none(cfg.copies), 0).has_value());
  // same inputs, same ciphertext
  CHECK(we_enc(q, 1, 5, cfg).encode() == c.encode());
  CHECK(we_enc(q, 1, 6, cfg).encode() != c.encode());
}

TEST_CASE("witness encryption gate matches direct encryption") {
  auto cfg = mini_config();
  auto x = BitString::parse("100");
  auto coins = to_bytes("coins");
  auto direct = we_enc(we_statement("par:3", x.bytes(), cfg), to_bytes("hi"), coins, cfg);
  auto gate = we_enc_gate(we_params("par:3", cfg), x.bytes(), to_bytes("hi"), coins);
  CHECK(gate == direct.encode());
}
