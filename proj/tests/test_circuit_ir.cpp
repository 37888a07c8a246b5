#include <doctest.h>

#include "qnio/circuit_ir.hpp"
#include "qnio/primitives.hpp"

using namespace qnio;

namespace {

// out = ite(x == y, x ^ y, x || y)
Program sample_program() {
  ProgramBuilder b;
  auto x = b.input();
  auto y = b.input();
  return b.build({b.ite(b.eq(x, y), b.bxor(x, y), b.concat({x, y}))});
}

Value byte(std::uint8_t v) { return Bytes{v}; }

}  // namespace

TEST_CASE("interpreter semantics") {
  auto p = sample_program();
  validate(p);
  auto same = evaluate(p, std::vector<Value>{byte(3), byte(3)});
  CHECK(same.at(0) == Bytes{0});
  auto diff = evaluate(p, std::vector<Value>{byte(3), byte(4)});
  CHECK(diff.at(0) == Bytes{3, 4});
  auto bot = evaluate(p, std::vector<Value>{kBottom, byte(4)});
  CHECK_FALSE(bot.at(0).has_value());

  ProgramBuilder b;
  auto in = b.input();
  auto s = b.slice(in, 1, 2);
  auto p2 = b.build({s, b.eq(b.bottom(), b.bottom())});
  auto out = evaluate(p2, std::vector<Value>{Bytes{9, 8, 7, 6}});
  CHECK(out[0] == Bytes{8, 7});
  CHECK(is_true(out[1]));
  CHECK_THROWS_AS(evaluate(p2, std::vector<Value>{Bytes{1}}), MalformedCircuit);
}

TEST_CASE("serialization round trip and validation") {
  auto p = sample_program();
  auto q = Program::deserialize(p.serialize());
  CHECK(q == p);
  CHECK_THROWS(Program::deserialize(Bytes{1, 2, 3}));

  Program dangling({Node{Op::Const, {}, Bytes{1}, 0, 0}}, {5}, 0);
  CHECK_THROWS_AS(validate(dangling), MalformedCircuit);
  Program no_input({Node{Op::Const, {}, Bytes{1}, 0, 0}}, {0}, 1);
  CHECK_THROWS_AS(validate(no_input), MalformedCircuit);

  ProgramBuilder g;
  auto x = g.input();
  auto bad = g.build({g.host("NO_SUCH_GATE", {x})});
  CHECK_THROWS_AS(validate(bad, standard_registry()), UnknownGate);
  CHECK_THROWS_AS(evaluate(bad, std::vector<Value>{byte(0)}), UnknownGate);
}

TEST_CASE("padding keeps the function") {
  auto p = sample_program();
  auto padded = pad(p, 40);
  CHECK(padded.size() == 40);
  CHECK(equiv_check(evaluator(p), evaluator(padded), DomainSpec::exhaustive({4, 4})));
  CHECK_THROWS_AS(pad(p, 2), TargetTooSmall);
}

TEST_CASE("sealed programs hide nothing but behave identically") {
  auto p = sample_program();
  auto sealed = obf_io(p, 30);
  CHECK(sealed.declared_size() == 30);
  CHECK(sealed.input_arity() == 2);
  CHECK(sealed.mode() == SealMode::IO);
  auto again = SealedProgram::deserialize(sealed.serialize());
  CHECK(equiv_check(evaluator(p), evaluator(again), DomainSpec::exhaustive({4, 4})));
  CHECK(again.serialize() == sealed.serialize());
  auto blob = sealed.serialize();
  blob[blob.size() / 2] ^= 1;
  CHECK_THROWS(SealedProgram::deserialize(blob));
}

TEST_CASE("host gates inside programs") {
  auto rng = Drbg::from_u64(21);
  auto k = PrfKey::sample(rng, 8);
  ProgramBuilder b;
  auto x = b.input();
  auto p = b.build({b.host("GGM", {b.constant(k.encode()), x})});
  for (unsigned v = 0; v < 256; ++v) {
    BitString xs(8, v);
    CHECK(evaluate(p, std::vector<Value>{xs.bytes()}).at(0) == to_bytes(ggm_eval(k, xs)));
  }
  // strict gates turn malformed inputs into bottom
  CHECK_FALSE(evaluate(p, std::vector<Value>{Bytes{1, 2}}).at(0).has_value());
}

TEST_CASE("vbb handle counts queries") {
  auto vbb = obf_vbb(sample_program(), 12);
  CHECK(vbb.sealed.mode() == SealMode::VBB);
  std::vector<Value> in{byte(1), byte(1)};
  vbb.sim->query(in);
  vbb.sim->query(in);
  CHECK(vbb.sim->query_count() == 2);
  CHECK(vbb.sim->declared_size() == 12);
}

TEST_CASE("lockable obfuscation releases only on the lock") {
  ProgramBuilder b;
  auto x = b.input();
  auto inner = b.build({b.host("PRF", {b.constant(PrfKey{Key16{}, 0}.encode()), x})});
  Key16 lock = prf_eval(PrfKey{Key16{}, 0}, Bytes{0x42});
  auto locked = lockobf(LockSpec{lock, to_bytes("payload"), inner});
  CHECK(locked.mode() == SealMode::LOCK);
  CHECK(locked.declared_size() == inner.size() + kLockOverhead);
  CHECK(locked.payload_size() == 7);
  int released = 0;
  for (unsigned v = 0; v < 256; ++v) {
    auto out = locked.call({Bytes{static_cast<std::uint8_t>(v)}});
    if (out) {
      ++released;
      CHECK(v == 0x42);
      CHECK(*out == to_bytes("payload"));
    }
  }
  CHECK(released == 1);

  auto sim = lockobf_sim(inner.size(), 7, 1);
  CHECK(sim.declared_size() == locked.declared_size());
  CHECK(sim.payload_size() == locked.payload_size());
  for (unsigned v = 0; v < 256; ++v) CHECK_FALSE(sim.call({Bytes{static_cast<std::uint8_t>(v)}}).has_value());
}

TEST_CASE("equivalence reports find differences") {
  ProgramBuilder b;
  auto x = b.input();
  auto id = b.build({x});
  ProgramBuilder c;
  auto y = c.input();
  auto flip_zero = c.build({c.ite(c.eq(y, c.constant(Bytes{0})), c.constant(Bytes{1}), y)});
  auto r = equiv_report(evaluator(id), evaluator(flip_zero), DomainSpec::exhaustive({8}));
  CHECK_FALSE(r.equivalent);
  CHECK(r.tested == 256);
  CHECK(r.mismatches.size() == 1);
  CHECK(r.mismatches[0][0] == Bytes{0});

  auto rnd = DomainSpec::random({4, 2}, 50, 7).enumerate();
  CHECK(rnd.size() == 50);
  CHECK(rnd == DomainSpec::random({4, 2}, 50, 7).enumerate());
  CHECK(rnd[0][0]->size() == 4);
}
