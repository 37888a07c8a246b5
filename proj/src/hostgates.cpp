#include <map>
#include <mutex>

#include "qnio/circuit_ir.hpp"
#include "qnio/cvqc.hpp"
#include "qnio/encdelegate.hpp"
#include "qnio/nullio.hpp"

namespace qnio {

namespace {

using Args = std::span<const Value>;

// Small memo for decoded constants that gates see on every call.
template <typename T>
class DecodeCache {
 public:
  template <typename Make>
  std::shared_ptr<const T> get(const Bytes& key, Make make) {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    if (entries_.size() >= 64) entries_.clear();
    auto value = std::make_shared<const T>(make());
    entries_.emplace(key, value);
    return value;
  }

 private:
  std::mutex mutex_;
  std::map<Bytes, std::shared_ptr<const T>> entries_;
};

struct SpecEntry {
  VerifierSpec spec;
  std::shared_ptr<RandomOracle> oracle;
};

std::shared_ptr<const SpecEntry> spec_of(const Bytes& data) {
  static DecodeCache<SpecEntry> cache;
  return cache.get(data, [&] {
    auto spec = VerifierSpec::decode(data);
    auto oracle = spec.oracle();
    return SpecEntry{std::move(spec), std::move(oracle)};
  });
}

std::shared_ptr<const SealedProgram> sealed_of(const Bytes& data) {
  static DecodeCache<SealedProgram> cache;
  return cache.get(data, [&] { return SealedProgram::deserialize(data); });
}

void need(Args a, std::size_t n) {
  if (a.size() != n) throw MalformedCircuit(0, "host gate arity");
}

bool any_bottom(Args a) {
  for (const auto& v : a)
    if (!v) return true;
  return false;
}

// Value gate: bottom in, bottom out; library errors also become bottom.
HostFn strict(std::size_t arity, std::function<Bytes(Args)> f) {
  return [arity, f = std::move(f)](Args a) -> Value {
    need(a, arity);
    if (any_bottom(a)) return kBottom;
    try {
      return f(a);
    } catch (const Error&) {
      return kBottom;
    }
  };
}

// Verdict gate: bottom or malformed input rejects.
HostFn verdict(std::function<int(Args)> f) {
  return [f = std::move(f)](Args a) -> Value {
    need(a, 2);
    if (any_bottom(a)) return bit_value(false);
    try {
      return bit_value(f(a) == 1);
    } catch (const Error&) {
      return bit_value(false);
    }
  };
}

BitString domain_point(ByteView x, unsigned domain_bits) { return BitString::from_bytes(x, domain_bits); }

HostRegistry build_registry() {
  HostRegistry r;
  r.add("PRF", strict(2, [](Args a) { return to_bytes(prf_eval(PrfKey::decode(*a[0]), *a[1])); }));
  r.add("GGM", strict(2, [](Args a) {
          auto k = PrfKey::decode(*a[0]);
          return to_bytes(ggm_eval(k, domain_point(*a[1], k.domain_bits)));
        }));
  r.add("GGM_PUNCT", strict(2, [](Args a) {
          auto k = PuncturedKey::decode(*a[0]);
          return to_bytes(ggm_eval_punct(k, domain_point(*a[1], k.domain_bits)));
        }));
  r.add("PRG", strict(2, [](Args a) {
          Reader len(*a[1]);
          auto n = len.u32();
          len.expect_end();
          return prg(*a[0], n);
        }));
  r.add("OWF", strict(1, [](Args a) { return to_bytes(owf(*a[0])); }));
  r.add("COMMIT", strict(2, [](Args a) { return commit(*a[0], key16(*a[1])).payload; }));
  r.add("LESS", strict(2, [](Args a) {
          if (a[0]->size() != a[1]->size()) throw DomainMismatch("LESS operands differ in length");
          return *bit_value(*a[0] < *a[1]);
        }));
  r.add("QFHE_DEC", strict(2, [](Args a) {
          return qfhe_dec(QfheSecretKey{key16(*a[0])}, QfheCiphertext::decode(*a[1]));
        }));
  r.add("CVQC_VERIFY", verdict([](Args a) {
          auto e = spec_of(*a[0]);
          return cvqc_verify(e->spec.statement, CvqcProof::decode(*a[1]), e->spec.key);
        }));
  r.add("CVQC_VERIFY_STAR", verdict([](Args a) {
          auto e = spec_of(*a[0]);
          return star_verify(e->spec.statement, HashedProof::decode(*a[1]), e->spec.key, *e->oracle);
        }));
  r.add("CVQC_TDVERIFY", verdict([](Args a) {
          auto e = spec_of(*a[0]);
          return td_verify(e->spec.statement, HashedProof::decode(*a[1]), e->spec.td, *e->oracle);
        }));
  // VBB variant: the hash is a keyed PRF held inside the sealed program.
  r.add("CVQC_VERIFY_KEYED", verdict([](Args a) {
          auto e = spec_of(*a[0]);
          auto hp = HashedProof::decode(*a[1]);
          auto pi = hp.proof.encode();
          if (hp.h.head != prf_eval(e->spec.td, pi) || hp.h.last != 0) return 0;
          return cvqc_verify(e->spec.statement, hp.proof, e->spec.key);
        }));
  r.add("RO_QUERY", strict(2, [](Args a) { return spec_of(*a[0])->oracle->query(*a[1]).encode(); }));
  r.add("WE_ENC", strict(4, [](Args a) { return we_enc_gate(*a[0], *a[1], *a[2], *a[3]); }));
  r.add("KPABE_ENC", strict(4, [](Args a) {
          Reader ctx(*a[0]);
          auto mpk = AbePublicKey::decode(ctx.blob());
          auto cfg = NioConfig::decode(ctx.blob());
          auto width = ctx.u8();
          ctx.expect_end();
          return kp_enc(mpk, BitString::from_bytes(*a[1], width), *a[2], *a[3], cfg).encode();
        }));
  r.add("SEALED_EVAL", [](Args a) -> Value {
    if (a.empty() || !a[0]) return kBottom;
    try {
      auto program = sealed_of(*a[0]);
      auto out = (*program)(a.subspan(1));
      return out.empty() ? kBottom : out.front();
    } catch (const Error&) {
      return kBottom;
    }
  });
  return r;
}

}  // namespace

const HostRegistry& standard_registry() {
  static const HostRegistry registry = build_registry();
  return registry;
}

}  // namespace qnio
