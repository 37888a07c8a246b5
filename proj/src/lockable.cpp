#include "qnio/encdelegate.hpp"

namespace qnio {

namespace {

Program decrypt_program(const Key16& sk) {
  ProgramBuilder b;
  auto ct = b.input();
  return b.build({b.host("QFHE_DEC", {b.constant(sk), ct})});
}

Bytes locked_description(LockedKind kind, ByteView description) {
  return Writer().u8(static_cast<std::uint8_t>(kind)).blob(description).take();
}

// The universal evaluator run under QFHE: applies the encrypted description
// to the hardwired input.
Bytes run_locked(ByteView plain, ByteView input, std::uint64_t seed) {
  Reader r(plain);
  auto kind = r.u8();
  auto description = r.blob();
  r.expect_end();
  if (kind == static_cast<std::uint8_t>(LockedKind::Circuit)) {
    Reader in(input);
    auto x = in.bits();
    in.expect_end();
    return PseudoDetProgram::decode(description).run(x, seed);
  }
  if (kind == static_cast<std::uint8_t>(LockedKind::AbeDecrypt)) {
    auto out = abe_dec(AbeUserKey::decode(input), AbeCiphertext::decode(description), seed);
    return out ? *out : Bytes{};
  }
  throw DecodeError("locked description kind");
}

}  // namespace

Bytes QLockObf::encode() const { return Writer().blob(pk.encode()).blob(ct.encode()).blob(cc.serialize()).take(); }

QLockObf QLockObf::decode(ByteView data) {
  Reader r(data);
  QLockObf o;
  o.pk = QfhePublicKey::decode(r.blob());
  o.ct = QfheCiphertext::decode(r.blob());
  o.cc = SealedProgram::deserialize(r.blob());
  r.expect_end();
  return o;
}

QLockObf qlock_obf_payload(LockedKind kind, ByteView description, const Key16& lock, ByteView payload, Drbg& rng) {
  auto keys = qfhe_gen(rng);
  QLockObf o;
  o.pk = keys.pk;
  o.ct = qfhe_enc(keys.pk, locked_description(kind, description), rng);
  o.cc = lockobf(LockSpec{lock, to_bytes(payload), decrypt_program(keys.sk.bytes)});
  return o;
}

QLockObf qlock_obf(const PseudoDetProgram& program, const Key16& lock, ByteView payload, std::uint64_t seed) {
  program.check();
  auto rng = Drbg::from_u64(seed).fork("qlock");
  return qlock_obf_payload(LockedKind::Circuit, program.encode(), lock, payload, rng);
}

Value qlock_eval_raw(const QLockObf& obj, ByteView input, std::uint64_t seed) {
  Bytes in = to_bytes(input);
  QfheFunction f = [in](ByteView plain, std::uint64_t s) {
    try {
      return run_locked(plain, in, s);
    } catch (const Error&) {
      return Bytes{};
    }
  };
  auto evaluated = qfhe_eval(obj.pk, f, obj.ct, seed);
  return obj.cc.call({evaluated.encode()});
}

Value qlock_eval(const QLockObf& obj, const BitString& x, std::uint64_t seed) {
  return qlock_eval_raw(obj, Writer().bits(x).take(), seed);
}

QLockObf qlock_sim(std::size_t description_size, std::size_t payload_size, std::uint64_t seed) {
  auto rng = Drbg::from_u64(seed).fork("qlock-sim");
  auto keys = qfhe_gen(rng);
  QLockObf o;
  o.pk = keys.pk;
  o.ct = qfhe_enc(keys.pk, Bytes(locked_description(LockedKind::Circuit, Bytes(description_size)).size(), 0), rng);
  o.cc = lockobf_sim(decrypt_program(Key16{}).size(), payload_size, 1);
  return o;
}

// ---- one-sided attribute hiding ----

Bytes PeCiphertext::encode() const { return locked.encode(); }

PeCiphertext PeCiphertext::decode(ByteView data) { return {QLockObf::decode(data)}; }

PeCiphertext pe_enc(const AbePublicKey& mpk, const std::string& policy, ByteView message, std::uint64_t seed,
                    const NioConfig& cfg) {
  auto rng = Drbg::from_u64(seed).fork("pe-enc");
  auto lock = rng.key();
  auto inner = abe_enc(mpk, policy, to_bytes(lock), rng.bytes(32), cfg);
  return {qlock_obf_payload(LockedKind::AbeDecrypt, inner.encode(), lock, message, rng)};
}

Value pe_dec(const AbeUserKey& key, const PeCiphertext& ct, std::uint64_t seed) {
  return qlock_eval_raw(ct.locked, key.encode(), seed);
}

}  // namespace qnio
