#include <doctest.h>

#include "qnio/cvqc.hpp"

using namespace qnio;

namespace {
Statement par(const char* x, unsigned reps = 1) { return Statement{"par:3", BitString::parse(x).bytes(), reps}; }
}  // namespace

TEST_CASE("oracle protocol completeness and soundness") {
  auto rng = Drbg::from_u64(1);
  auto yes = cvqc_keygen(par("111"), Proto::Oracle, rng);
  auto pi = cvqc_prove(yes.pp, Witness::none(), 1);
  CHECK(cvqc_verify(par("111"), pi, yes.r) == 1);
  CHECK(cvqc_verify(par("011"), pi, yes.r) == 0);
  CHECK(CvqcProof::decode(pi.encode()) == pi);
  CHECK(CvqcParams::decode(yes.pp.encode()) == yes.pp);
  CHECK(CvqcVerifyKey::decode(yes.r.encode()) == yes.r);

  auto no = cvqc_keygen(par("011"), Proto::Oracle, rng);
  CHECK_THROWS_AS(cvqc_prove(no.pp, Witness::none(), 1), JudgeReject);
  auto forged = pi;
  forged.tag[0] ^= 1;
  CHECK(cvqc_verify(par("111"), forged, yes.r) == 0);
}

TEST_CASE("toy protocol completeness on yes instances") {
  auto rng = Drbg::from_u64(2);
  for (auto toy : {ToyParams::mini(), ToyParams::standard()}) {
    auto keys = cvqc_keygen(par("100"), Proto::Toy, rng, toy);
    for (std::uint64_t s = 0; s < 10; ++s) CHECK(cvqc_verify(par("100"), cvqc_prove(keys.pp, Witness::none(), s), keys.r) == 1);
  }
}

TEST_CASE("toy proof space") {
  auto all = enumerate_toy_proofs(ToyParams::mini());
  CHECK(all.size() == (std::size_t{1} << ToyParams::mini().proof_bits()));
  CHECK(ToyParams::mini().proof_bits() == 12);
  CHECK(all.front().pairs.size() == 4);
  CHECK(all.front() != all.back());
}

TEST_CASE("no-instance toy verifier accepts nothing in the mini space") {
  auto rng = Drbg::from_u64(3);
  auto keys = cvqc_keygen(par("110"), Proto::Toy, rng, ToyParams::mini());
  std::size_t accepted = 0;
  for (const auto& pi : enumerate_toy_proofs(ToyParams::mini())) accepted += cvqc_verify(par("110"), pi, keys.r);
  CHECK(accepted == 0);
}

TEST_CASE("trapdoor verification matches honest verification") {
  auto rng = Drbg::from_u64(4);
  auto q = par("010");
  auto td = td_gen(q, Proto::Toy, rng, ToyParams::mini());
  std::size_t accepted = 0;
  for (const auto& pi : enumerate_toy_proofs(ToyParams::mini())) {
    auto hp = hash_proof(pi, *td.oracle);
    int a = star_verify(q, hp, td.keys.r, *td.oracle);
    CHECK(a == td_verify(q, hp, td.td, *td.oracle));
    accepted += a;
  }
  CHECK(accepted > 0);
  // a wrong oracle bit is never accepted
  auto hp = star_prove(td.keys.pp, Witness::none(), *td.oracle, 0);
  CHECK(star_verify(q, hp, td.keys.r, *td.oracle) == 1);
  hp.h.last ^= 1;
  CHECK(star_verify(q, hp, td.keys.r, *td.oracle) == 0);
  CHECK(HashedProof::decode(hp.encode()) == hp);
}

TEST_CASE("simulated setup rejects everything") {
  auto rng = Drbg::from_u64(5);
  auto q = par("001");
  auto sim = sim_gen(q, Proto::Toy, rng, ToyParams::mini());
  for (const auto& pi : enumerate_toy_proofs(ToyParams::mini()))
    CHECK(td_verify(q, hash_proof(pi, *sim.oracle), sim.td, *sim.oracle) == 0);
  auto honest = hash_proof(cvqc_prove(sim.keys.pp, Witness::none(), 0), *sim.oracle);
  CHECK(td_verify(q, honest, sim.td, *sim.oracle) == 0);
}

TEST_CASE("dual-mode setups share the parameter distribution") {
  auto q = par("100");
  auto a = Drbg::from_u64(6);
  auto b = Drbg::from_u64(6);
  auto c = Drbg::from_u64(6);
  auto honest = dual_keygen(q, Proto::Toy, a, ToyParams::mini());
  auto td = td_gen(q, Proto::Toy, b, ToyParams::mini());
  auto sim = sim_gen(q, Proto::Toy, c, ToyParams::mini());
  CHECK(honest.keys.pp == td.keys.pp);
  CHECK(td.keys.r == sim.keys.r);
  CHECK(honest.oracle->mode() == OracleMode::Uniform);
  CHECK(td.oracle->mode() == OracleMode::TdGen);
  CHECK(sim.oracle->mode() == OracleMode::SimGen);
  auto spec = VerifierSpec::from(q, td);
  auto back = VerifierSpec::decode(spec.encode());
  CHECK(back.encode() == spec.encode());
  CHECK(back.oracle()->query(Bytes{1}) == td.oracle->query(Bytes{1}));
}

TEST_CASE("fresh-term and all-position variants") {
  auto rng = Drbg::from_u64(7);
  for (auto variant : {CheckVariant::FreshTerms, CheckVariant::AllPositions}) {
    auto toy = ToyParams::standard();
    toy.variant = variant;
    auto keys = cvqc_keygen(par("100"), Proto::Toy, rng, toy);
    for (std::uint64_t s = 0; s < 5; ++s) CHECK(cvqc_verify(par("100"), cvqc_prove(keys.pp, Witness::none(), s), keys.r) == 1);
  }
}

TEST_CASE("blind two-message protocol") {
  auto rng = Drbg::from_u64(8);
  auto q = par("111");
  auto keys = blind_keygen(q, ToyParams::mini(), rng);
  auto proof = blind_prove(keys.pk, keys.ct_pp, Witness::none(), *keys.oracle, 3);
  CHECK(blind_verify(q, proof, keys) == 1);
  CHECK(blind_verify(par("011"), proof, keys) == 0);
}

TEST_CASE("fiat-shamir challenge terms") {
  Key16 ch{};
  ch[0] = 0b10110100;
  CHECK(challenge_term(ch, 0, 2) == 0b10);
  CHECK(challenge_term(ch, 1, 2) == 0b11);
  CHECK(challenge_term(ch, 2, 2) == 0b01);
  CHECK(challenge_term(ch, 1, 4) == 0b0100);
}
