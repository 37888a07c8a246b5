#include "qnio/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "qnio/attacks.hpp"
#include "qnio/encdelegate.hpp"
#include "qnio/envelope.hpp"
#include "qnio/proofs.hpp"
#include "qnio/selftest.hpp"

namespace qnio {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProtocolFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  std::string lang = "par";
  std::string params = "default";

  bool mini() const { return params == "mini"; }

  NioConfig config() const {
    NioConfig cfg;
    if (mini()) cfg.copies = 3;
    return cfg;
  }
  ToyParams toy() const { return mini() ? ToyParams::mini() : ToyParams::standard(); }
};

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

Bytes load(const std::string& path, ArtifactType type) { return open_envelope(read_file(path), type); }

json save(const std::string& path, ArtifactType type, ByteView payload) {
  auto env = wrap_envelope(type, payload);
  write_file(path, env);
  return json{{"file", path}, {"type", artifact_name(type)}, {"bytes", env.size()},
              {"sha256", hex(to_bytes(sha256(env)))}};
}

BitString parse_bits(const std::string& text) {
  try {
    return BitString::parse(text);
  } catch (const Error&) {
    throw UsageError("not a bit string: " + text);
  }
}

// Short family names take their width from the instance.
std::string descriptor(const std::string& lang, unsigned width) {
  static const std::vector<std::string> families = {"par", "and", "or", "maj", "first", "null"};
  for (const auto& f : families)
    if (lang == f) return f + ":" + std::to_string(width);
  if (lang.rfind("th:", 0) == 0 && std::count(lang.begin(), lang.end(), ':') == 1)
    return lang + ":" + std::to_string(width);
  return lang;
}

Bytes parse_message(const std::string& text) {
  if (text == "0" || text == "1") return Bytes{static_cast<std::uint8_t>(text[0] - '0')};
  if (text.rfind("0x", 0) == 0) return from_hex(text.substr(2));
  return to_bytes(text);
}

std::string format_message(ByteView m) {
  if (m.size() == 1 && m[0] <= 1) return std::string(1, static_cast<char>('0' + m[0]));
  return "0x" + hex(m);
}

Witness witness_for(const std::string& desc, const BitString& x, const std::string& flips, unsigned copies) {
  auto L = resolve_language(desc);
  if (L.witness_qubits == 0) return Witness::none(copies);
  if (desc != "ghz") throw UsageError("no witness preparation for " + desc);
  return ghz_witness(flips.empty() ? x : parse_bits(flips), copies);
}

Bytes escrow_encode(const NizkEscrow& e) { return Writer().blob(e.k0.encode()).blob(e.k1.encode()).take(); }

NizkEscrow escrow_decode(ByteView data) {
  Reader r(data);
  NizkEscrow e;
  e.k0 = PrfKey::decode(r.blob());
  e.k1 = PrfKey::decode(r.blob());
  r.expect_end();
  return e;
}

json report_json(const EquivReport& r) {
  return json{{"equivalent", r.equivalent}, {"tested", r.tested}, {"mismatches", r.mismatches.size()}};
}

json checks_json(const std::vector<HybridCheck>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    auto j = report_json(c.report);
    j["name"] = c.name;
    j["domain"] = c.everywhere ? "all" : "away from special point";
    arr.push_back(j);
  }
  return arr;
}

void print(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---- command tree ----

class Cli {
 public:
  Cli(std::ostream& out) : out_(out) {}

  void build(CLI::App& app) {
    app.require_subcommand(1);
    // global options may also follow the subcommand
    app.fallthrough();
    app.add_option("--seed", g_.seed, "Seed for every sampler")->capture_default_str();
    app.add_option("--lang", g_.lang, "Language or policy: par, and, or, maj, first, null, th:T, ghz, or a full descriptor")
        ->capture_default_str();
    app.add_option("--params", g_.params, "Parameter set")->check(CLI::IsMember({"mini", "default"}))->capture_default_str();
    cvqc(app);
    nio(app);
    we(app);
    nizk(app);
    zapr(app);
    abe(app);
    cprf(app);
    share(app);
    pe(app);
    attack(app);
    selftest(app);
  }

 private:
  std::ostream& out_;
  Globals g_;
  // shared option storage; each run uses the fields its subcommand declared
  std::string x_, m_, in_, out_file_, pp_, key_, proof_, crs_, escrow_, policy_, witness_, proto_ = "oracle",
      report_, dir_, mpk_, msk_;
  std::vector<std::string> inputs_;
  unsigned bits_ = 4, parties_ = 3, instances_ = 10, samples_ = 500;
  int secret_ = 1, only_ = 0;
  bool timings_ = false;

  CLI::App* sub(CLI::App& parent, const std::string& name, const std::string& help) {
    auto* s = parent.add_subcommand(name, help);
    return s;
  }

  std::string desc() const { return descriptor(g_.lang, static_cast<unsigned>(x_.size())); }
  Statement statement() const { return we_statement(desc(), parse_bits(x_).bytes(), g_.config()); }
  // Decryption reads the copy count from the ciphertext, not from --params.
  Statement statement(unsigned copies) const { return Statement{desc(), parse_bits(x_).bytes(), copies}; }

  void cvqc(CLI::App& app) {
    auto* c = sub(app, "cvqc", "Classical verification of a quantum statement");
    c->require_subcommand(1);
    auto* kg = sub(*c, "keygen", "Sample public parameters and a verification key");
    kg->add_option("--x", x_, "Instance bits")->required();
    kg->add_option("--proto", proto_)->check(CLI::IsMember({"oracle", "toy"}));
    kg->add_option("--pp", pp_)->required();
    kg->add_option("--key", key_)->required();
    kg->callback([this] {
      auto rng = Drbg::from_u64(g_.seed).fork("cli-cvqc");
      auto keys = cvqc_keygen(statement(), proto_ == "toy" ? Proto::Toy : Proto::Oracle, rng, g_.toy());
      print(out_, json{{"pp", save(pp_, ArtifactType::CvqcParams, keys.pp.encode())},
                       {"key", save(key_, ArtifactType::CvqcVerifyKey, keys.r.encode())}});
    });
    for (const char* mode : {"tdgen", "simgen"}) {
      auto* tg = sub(*c, mode, std::string(mode) == "tdgen" ? "Trapdoor setup with a programmed oracle"
                                                            : "Simulated setup whose oracle rejects everything");
      tg->add_option("--x", x_, "Instance bits")->required();
      tg->add_option("--proto", proto_)->check(CLI::IsMember({"oracle", "toy"}));
      tg->add_option("--pp", pp_)->required();
      tg->add_option("--spec", key_, "Verifier spec with trapdoor and oracle seed")->required();
      tg->callback([this, mode] {
        auto rng = Drbg::from_u64(g_.seed).fork("cli-cvqc");
        auto q = statement();
        auto p = proto_ == "toy" ? Proto::Toy : Proto::Oracle;
        auto keys = std::string(mode) == "tdgen" ? td_gen(q, p, rng, g_.toy()) : sim_gen(q, p, rng, g_.toy());
        print(out_, json{{"pp", save(pp_, ArtifactType::CvqcParams, keys.keys.pp.encode())},
                         {"spec", save(key_, ArtifactType::VerifierSpec, VerifierSpec::from(q, keys).encode())}});
      });
    }
    auto* tv = sub(*c, "tdverify", "Hash a proof through the spec's oracle and check it with the trapdoor");
    tv->add_option("--spec", key_)->required();
    tv->add_option("--proof", proof_)->required();
    tv->callback([this] {
      auto spec = VerifierSpec::decode(load(key_, ArtifactType::VerifierSpec));
      auto pi = CvqcProof::decode(load(proof_, ArtifactType::CvqcProof));
      auto oracle = spec.oracle();
      int v = td_verify(spec.statement, hash_proof(pi, *oracle), spec.td, *oracle);
      print(out_, json{{"accept", v}});
      if (!v) throw ProtocolFailure("proof rejected");
    });
    auto* pr = sub(*c, "prove", "Run the honest prover");
    pr->add_option("--x", x_, "Instance bits (used for the witness)")->required();
    pr->add_option("--pp", pp_)->required();
    pr->add_option("--witness", witness_, "GHZ flip pattern");
    pr->add_option("--out", out_file_)->required();
    pr->callback([this] {
      auto pp = CvqcParams::decode(load(pp_, ArtifactType::CvqcParams));
      auto w = witness_for(desc(), parse_bits(x_), witness_, g_.config().copies);
      CvqcProof pi;
      try {
        pi = cvqc_prove(pp, w, g_.seed);
      } catch (const JudgeReject&) {
        throw ProtocolFailure("prover could not produce an accepting proof");
      }
      print(out_, json{{"proof", save(out_file_, ArtifactType::CvqcProof, pi.encode())}});
    });
    auto* vf = sub(*c, "verify", "Check a proof");
    vf->add_option("--x", x_)->required();
    vf->add_option("--key", key_)->required();
    vf->add_option("--proof", proof_)->required();
    vf->callback([this] {
      auto r = CvqcVerifyKey::decode(load(key_, ArtifactType::CvqcVerifyKey));
      auto pi = CvqcProof::decode(load(proof_, ArtifactType::CvqcProof));
      int v = cvqc_verify(statement(), pi, r);
      print(out_, json{{"accept", v}});
      if (!v) throw ProtocolFailure("proof rejected");
    });
  }

  void nio(CLI::App& app) {
    auto* c = sub(app, "nio", "Null-iO obfuscation of a verifier circuit");
    c->require_subcommand(1);
    auto* ob = sub(*c, "obf", "Obfuscate the verifier for an instance");
    ob->add_option("--x", x_)->required();
    ob->add_option("--out", out_file_)->required();
    ob->callback([this] {
      auto obj = nio_obf(statement(), g_.config(), g_.seed);
      print(out_, json{{"obfuscation", save(out_file_, ArtifactType::NullObfuscation, obj.encode())}});
    });
    auto* ev = sub(*c, "eval", "Evaluate on witness copies");
    ev->add_option("--x", x_)->required();
    ev->add_option("--in", in_)->required();
    ev->add_option("--witness", witness_);
    ev->callback([this] {
      auto obj = ObfuscatedNullCircuit::decode(load(in_, ArtifactType::NullObfuscation));
      auto w = witness_for(desc(), parse_bits(x_), witness_, obj.copies);
      out_ << nio_eval(obj, w, g_.seed) << "\n";
    });
  }

  void we(CLI::App& app) {
    auto* c = sub(app, "we", "Witness encryption");
    c->require_subcommand(1);
    auto* en = sub(*c, "enc", "Encrypt to a statement");
    en->add_option("--x", x_)->required();
    en->add_option("--m", m_, "0, 1, 0x<hex> or text")->required();
    en->add_option("--out", out_file_, "Ciphertext file")->default_val("we.qnk");
    en->callback([this] {
      auto ct = we_enc(statement(), parse_message(m_), be64(g_.seed), g_.config());
      print(out_, json{{"ciphertext", save(out_file_, ArtifactType::WeCiphertext, ct.encode())}});
    });
    auto* de = sub(*c, "dec", "Decrypt with witness copies");
    de->add_option("--x", x_)->required();
    de->add_option("--in", in_, "Ciphertext file")->default_val("we.qnk");
    de->add_option("--witness", witness_);
    de->callback([this] {
      auto ct = WeCiphertext::decode(load(in_, ArtifactType::WeCiphertext));
      auto w = witness_for(desc(), parse_bits(x_), witness_, ct.inner.copies);
      auto m = we_dec(statement(ct.inner.copies), ct, w, g_.seed);
      if (!m) throw ProtocolFailure("decryption returned bottom");
      out_ << format_message(*m) << "\n";
    });
  }

  void nizk(CLI::App& app) {
    auto* c = sub(app, "nizk", "Non-interactive zero knowledge");
    c->require_subcommand(1);
    auto* st = sub(*c, "setup", "Sample a reference string");
    st->add_option("--bits", bits_, "Statement width")->capture_default_str();
    st->add_option("--crs", crs_)->required();
    st->add_option("--escrow", escrow_, "Setup randomness for the simulator");
    st->callback([this] {
      auto s = nizk_setup(descriptor(g_.lang, bits_), bits_, g_.config(), g_.seed);
      json j{{"crs", save(crs_, ArtifactType::NizkCrs, s.crs.encode())}};
      if (!escrow_.empty()) j["escrow"] = save(escrow_, ArtifactType::NizkEscrow, escrow_encode(s.escrow));
      print(out_, j);
    });
    auto* pr = sub(*c, "prove", "Prove membership");
    pr->add_option("--crs", crs_)->required();
    pr->add_option("--x", x_)->required();
    pr->add_option("--witness", witness_);
    pr->add_option("--out", out_file_)->required();
    pr->callback([this] {
      auto crs = NizkCrs::decode(load(crs_, ArtifactType::NizkCrs));
      auto x = parse_bits(x_);
      Key16 pi;
      try {
        pi = nizk_prove(crs, witness_for(crs.lang, x, witness_, crs.nio.copies), x, g_.seed);
      } catch (const ProofFailed&) {
        throw ProtocolFailure("no proof: decryption of the prover output failed");
      }
      print(out_, json{{"proof", save(out_file_, ArtifactType::NizkProof, pi)}, {"hex", hex(pi)}});
    });
    auto* vf = sub(*c, "verify", "Verify a proof");
    vf->add_option("--crs", crs_)->required();
    vf->add_option("--x", x_)->required();
    vf->add_option("--proof", proof_)->required();
    vf->callback([this] {
      auto crs = NizkCrs::decode(load(crs_, ArtifactType::NizkCrs));
      int v = nizk_verify(crs, key16(load(proof_, ArtifactType::NizkProof)), parse_bits(x_));
      print(out_, json{{"accept", v}});
      if (!v) throw ProtocolFailure("proof rejected");
    });
    auto* sm = sub(*c, "sim", "Simulate a proof from the escrow");
    sm->add_option("--escrow", escrow_)->required();
    sm->add_option("--x", x_)->required();
    sm->add_option("--out", out_file_)->required();
    sm->callback([this] {
      auto e = escrow_decode(load(escrow_, ArtifactType::NizkEscrow));
      auto pi = nizk_sim(e, parse_bits(x_));
      print(out_, json{{"proof", save(out_file_, ArtifactType::NizkProof, pi)}, {"hex", hex(pi)}});
    });
    auto* hy = sub(*c, "hybrids", "Check the soundness hybrid programs");
    hy->add_option("--crs", crs_)->required();
    hy->add_option("--escrow", escrow_)->required();
    hy->add_option("--x", x_)->required();
    hy->callback([this] {
      auto crs = NizkCrs::decode(load(crs_, ArtifactType::NizkCrs));
      auto e = escrow_decode(load(escrow_, ArtifactType::NizkEscrow));
      auto checks = nizk_hybrid_checks(crs, e, parse_bits(x_), g_.seed);
      print(out_, json{{"checks", checks_json(checks)}});
      for (const auto& c : checks)
        if (!c.report.equivalent) throw ProtocolFailure("hybrid check failed: " + c.name);
    });
  }

  void zapr(CLI::App& app) {
    auto* c = sub(app, "zapr", "Two-message witness-indistinguishable proofs with a private-coin setup");
    c->require_subcommand(1);
    auto* st = sub(*c, "setup", "Verifier setup message");
    st->add_option("--bits", bits_)->capture_default_str();
    st->add_option("--out", out_file_)->required();
    st->callback([this] {
      auto crs = zapr_setup(descriptor(g_.lang, bits_), bits_, g_.config(), g_.seed);
      print(out_, json{{"crs", save(out_file_, ArtifactType::ZaprCrs, crs.encode())}});
    });
    auto* pr = sub(*c, "prove", "Prover message");
    pr->add_option("--crs", crs_)->required();
    pr->add_option("--x", x_)->required();
    pr->add_option("--witness", witness_);
    pr->add_option("--out", out_file_)->required();
    pr->callback([this] {
      auto crs = ZaprCrs::decode(load(crs_, ArtifactType::ZaprCrs));
      auto x = parse_bits(x_);
      auto w = witness_for(crs.crs0.lang, x, witness_, 2 * crs.crs0.nio.copies);
      ZaprProof p;
      try {
        p = zapr_prove(crs, w, x, g_.seed);
      } catch (const NoValidNizk&) {
        throw ProtocolFailure("no reference string produced a valid proof");
      }
      print(out_, json{{"proof", save(out_file_, ArtifactType::ZaprProof, p.encode())}, {"hex", hex(p.encode())}});
    });
    auto* vf = sub(*c, "verify", "Verify");
    vf->add_option("--crs", crs_)->required();
    vf->add_option("--x", x_)->required();
    vf->add_option("--proof", proof_)->required();
    vf->callback([this] {
      auto crs = ZaprCrs::decode(load(crs_, ArtifactType::ZaprCrs));
      auto p = ZaprProof::decode(load(proof_, ArtifactType::ZaprProof));
      int v = zapr_verify(crs, p, parse_bits(x_));
      print(out_, json{{"accept", v}});
      if (!v) throw ProtocolFailure("proof rejected");
    });
  }

  std::string policy_for(unsigned width) const { return policy_.empty() ? descriptor(g_.lang, width) : policy_; }

  void abe(CLI::App& app) {
    auto* c = sub(app, "abe", "Ciphertext-policy attribute-based encryption");
    c->require_subcommand(1);
    auto* gen = sub(*c, "gen", "Master keys");
    gen->add_option("--bits", bits_, "Attribute width")->capture_default_str();
    gen->add_option("--mpk", mpk_)->required();
    gen->add_option("--msk", msk_)->required();
    gen->callback([this] {
      auto keys = abe_gen(bits_, g_.seed);
      print(out_, json{{"mpk", save(mpk_, ArtifactType::AbePublicKey, keys.mpk.encode())},
                       {"msk", save(msk_, ArtifactType::AbeMasterKey, keys.msk.encode())}});
    });
    auto* kg = sub(*c, "keygen", "Key for an attribute");
    kg->add_option("--msk", msk_)->required();
    kg->add_option("--x", x_)->required();
    kg->add_option("--out", out_file_)->required();
    kg->callback([this] {
      auto msk = AbeMasterKey::decode(load(msk_, ArtifactType::AbeMasterKey));
      auto key = abe_keygen(msk, parse_bits(x_));
      print(out_, json{{"key", save(out_file_, ArtifactType::AbeUserKey, key.encode())}});
    });
    auto* en = sub(*c, "enc", "Encrypt under a policy");
    en->add_option("--mpk", mpk_)->required();
    en->add_option("--policy", policy_, "Policy descriptor; defaults to --lang at the attribute width");
    en->add_option("--m", m_)->required();
    en->add_option("--out", out_file_)->required();
    en->callback([this] {
      auto mpk = AbePublicKey::decode(load(mpk_, ArtifactType::AbePublicKey));
      auto ct = abe_enc(mpk, policy_for(mpk.attribute_bits), parse_message(m_), g_.seed, g_.config());
      print(out_, json{{"ciphertext", save(out_file_, ArtifactType::AbeCiphertext, ct.encode())}});
    });
    auto* de = sub(*c, "dec", "Decrypt");
    de->add_option("--key", key_)->required();
    de->add_option("--in", in_)->required();
    de->callback([this] {
      auto key = AbeUserKey::decode(load(key_, ArtifactType::AbeUserKey));
      auto m = abe_dec(key, AbeCiphertext::decode(load(in_, ArtifactType::AbeCiphertext)), g_.seed);
      if (!m) throw ProtocolFailure("decryption returned bottom");
      out_ << format_message(*m) << "\n";
    });
  }

  void cprf(CLI::App& app) {
    auto* c = sub(app, "cprf", "Constrained PRF");
    c->require_subcommand(1);
    auto* gen = sub(*c, "gen", "Public parameters and master key");
    gen->add_option("--bits", bits_)->capture_default_str();
    gen->add_option("--pp", pp_)->required();
    gen->add_option("--key", key_)->required();
    gen->callback([this] {
      auto s = cprf_gen(bits_, g_.seed, g_.config());
      print(out_, json{{"pp", save(pp_, ArtifactType::CprfPublic, s.pp.encode())},
                       {"key", save(key_, ArtifactType::CprfKey, s.key.encode())}});
    });
    auto* ev = sub(*c, "eval", "Evaluate with the master key");
    ev->add_option("--key", key_)->required();
    ev->add_option("--x", x_)->required();
    ev->callback([this] {
      auto key = CprfKey::decode(load(key_, ArtifactType::CprfKey));
      out_ << hex(cprf_eval(key, parse_bits(x_))) << "\n";
    });
    auto* co = sub(*c, "constrain", "Key constrained to a policy");
    co->add_option("--key", key_)->required();
    co->add_option("--policy", policy_, "Policy descriptor; defaults to --lang at width 4");
    co->add_option("--out", out_file_)->required();
    co->callback([this] {
      auto key = CprfKey::decode(load(key_, ArtifactType::CprfKey));
      auto k = cprf_constrain(key, policy_for(4));
      print(out_, json{{"key", save(out_file_, ArtifactType::KpUserKey, k.encode())}});
    });
    auto* ce = sub(*c, "ceval", "Evaluate with a constrained key");
    ce->add_option("--pp", pp_)->required();
    ce->add_option("--key", key_)->required();
    ce->add_option("--x", x_)->required();
    ce->callback([this] {
      auto pp = CprfPublic::decode(load(pp_, ArtifactType::CprfPublic));
      auto k = KpUserKey::decode(load(key_, ArtifactType::KpUserKey));
      auto v = cprf_ceval(pp, k, parse_bits(x_), g_.seed);
      if (!v) throw ProtocolFailure("constrained evaluation returned bottom");
      out_ << hex(*v) << "\n";
    });
  }

  void share(CLI::App& app) {
    auto* c = sub(app, "share", "Secret sharing for monotone languages");
    c->require_subcommand(1);
    auto* dl = sub(*c, "deal", "Share a bit, one file per party");
    dl->add_option("--parties", parties_)->capture_default_str();
    dl->add_option("--s", secret_)->check(CLI::IsMember({0, 1}))->capture_default_str();
    dl->add_option("--out-dir", dir_)->required();
    dl->callback([this] {
      std::filesystem::create_directories(dir_);
      auto shares = ss_share(descriptor(g_.lang, parties_), parties_, secret_, g_.seed, g_.config());
      json files = json::array();
      for (const auto& s : shares)
        files.push_back(save(dir_ + "/share_" + std::to_string(s.party + 1) + ".qnk", ArtifactType::Share, s.encode()));
      print(out_, json{{"shares", files}});
    });
    auto* rc = sub(*c, "reconstruct", "Recover the bit from a subset of shares");
    rc->add_option("--in", inputs_)->required();
    rc->add_option("--witness", witness_);
    rc->callback([this] {
      std::vector<Share> shares;
      for (const auto& f : inputs_) shares.push_back(Share::decode(load(f, ArtifactType::Share)));
      auto s = ss_rec(shares, Witness::none(shares.front().ct.inner.copies), g_.seed);
      if (!s) throw ProtocolFailure("subset is not qualified");
      out_ << *s << "\n";
    });
  }

  void pe(CLI::App& app) {
    auto* c = sub(app, "pe", "One-sided attribute-hiding encryption");
    c->require_subcommand(1);
    auto* en = sub(*c, "enc", "Encrypt");
    en->add_option("--mpk", mpk_)->required();
    en->add_option("--policy", policy_);
    en->add_option("--m", m_)->required();
    en->add_option("--out", out_file_)->required();
    en->callback([this] {
      auto mpk = AbePublicKey::decode(load(mpk_, ArtifactType::AbePublicKey));
      auto ct = pe_enc(mpk, policy_for(mpk.attribute_bits), parse_message(m_), g_.seed, g_.config());
      print(out_, json{{"ciphertext", save(out_file_, ArtifactType::PeCiphertext, ct.encode())}});
    });
    auto* de = sub(*c, "dec", "Decrypt");
    de->add_option("--key", key_)->required();
    de->add_option("--in", in_)->required();
    de->callback([this] {
      auto key = AbeUserKey::decode(load(key_, ArtifactType::AbeUserKey));
      auto m = pe_dec(key, PeCiphertext::decode(load(in_, ArtifactType::PeCiphertext)), g_.seed);
      if (!m) throw ProtocolFailure("decryption returned bottom");
      out_ << format_message(*m) << "\n";
    });
  }

  json run_attack(const std::string& kind, json& transcripts) {
    ToyParams toy = g_.toy();
    if (kind == "stats") toy.variant = CheckVariant::FreshTerms;
    if (kind == "linear") toy.variant = CheckVariant::AllPositions;
    auto rng = Drbg::from_u64(g_.seed).fork("cli-attack");
    std::size_t exact = 0, correct_positions = 0, undetermined = 0, positions = 0, queries = 0;
    for (unsigned i = 0; i < instances_; ++i) {
      BitString x(4, 0);
      do x = BitString(4, rng.below(16));
      while (!(x.popcount() & 1));
      auto inst = make_toy_instance(Statement{"par:4", x.bytes(), 1}, toy,
                                    kind == "linear" ? TargetMode::Hashed : TargetMode::Plain, rng.u64());
      auto proof = honest_proof(inst, i);
      AttackTranscript t;
      bool ok = true;
      if (kind == "linear") {
        auto r = attack_linear(inst.target, proof);
        t = r.transcript;
        ok = r.secrets == inst.keys.r.secrets;
        positions += toy.positions;
        for (unsigned j = 0; j < toy.positions; ++j) correct_positions += r.secrets[j] == inst.keys.r.secrets[j];
      } else {
        t = kind == "flip" ? attack_basis_flip(inst.target, proof) : attack_stats(inst.target, proof, samples_, 0.25, i);
        for (unsigned j = 0; j < toy.positions; ++j) {
          ++positions;
          if (t.recovered[j] == kUndetermined) {
            ++undetermined;
            ok = false;
          } else if (t.recovered[j] == inst.keys.r.basis.bit(j)) {
            ++correct_positions;
          } else {
            ok = false;
          }
        }
      }
      exact += ok;
      queries += t.query_count;
      json q = json::array();
      for (const auto& [bytes, verdict] : t.queries) q.push_back(json{{"proof", hex(bytes)}, {"verdict", verdict}});
      transcripts.push_back(json{{"instance", i},
                                 {"basis", inst.keys.r.basis.text()},
                                 {"recovered", t.recovered},
                                 {"query_count", t.query_count},
                                 {"queries", q}});
    }
    return json{{"attack", kind},
                {"instances", instances_},
                {"exact", exact},
                {"accuracy", positions ? static_cast<double>(correct_positions) / static_cast<double>(positions) : 0.0},
                {"undetermined", undetermined},
                {"queries", queries}};
  }

  void attack(CLI::App& app) {
    auto* c = sub(app, "attack", "Attacks on an obfuscated toy verifier");
    c->require_subcommand(1);
    for (const char* kind : {"flip", "stats", "linear"}) {
      auto* a = sub(*c, kind, std::string("Run the ") + kind + " attack");
      a->add_option("--instances", instances_)->capture_default_str();
      a->add_option("--report", report_, "Write transcripts as JSON");
      if (std::string(kind) == "stats") a->add_option("--samples", samples_)->capture_default_str();
      a->callback([this, kind] {
        json transcripts = json::array();
        auto summary = run_attack(kind, transcripts);
        if (!report_.empty()) {
          json full = summary;
          full["transcripts"] = transcripts;
          auto text = full.dump(1);
          write_file(report_, to_bytes(text));
        }
        print(out_, summary);
      });
    }
  }

  void selftest(CLI::App& app) {
    auto* s = sub(app, "selftest", "Run the library acceptance suites");
    s->add_option("--only", only_, "Run one suite")->check(CLI::Range(1, kLibraryCriteria));
    s->add_flag("--timings", timings_, "Include wall-clock times");
    s->callback([this] {
      auto scale = g_.mini() ? Scale::Mini : Scale::Full;
      std::vector<CheckResult> results;
      if (only_) {
        results.push_back(run_criterion(only_, scale));
      } else {
        results = run_selftest(scale);
      }
      json arr = json::array();
      bool all = true;
      for (const auto& r : results) {
        json j{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}};
        if (timings_) j["seconds"] = r.seconds;
        arr.push_back(j);
        all = all && r.pass;
      }
      print(out_, json{{"params", g_.params}, {"pass", all}, {"suites", arr}});
      if (!all) throw ProtocolFailure("selftest failed");
    });
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Null-iO and friends for quantum circuits: reference implementation", "qnio"};
  Cli cli(out);
  cli.build(app);
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("qnio");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ProtocolFailure& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qnio
