#include "qnio/qma_lang.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "qnio/hash.hpp"
#include "qnio/primitives.hpp"

namespace qnio {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::string> split(std::string_view s, std::size_t max_parts) {
  std::vector<std::string> parts;
  while (parts.size() + 1 < max_parts) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos) break;
    parts.emplace_back(s.substr(0, colon));
    s.remove_prefix(colon + 1);
  }
  parts.emplace_back(s);
  return parts;
}

unsigned number(const std::string& s) {
  unsigned v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw UnknownLanguage("bad number in descriptor: " + s);
  return v;
}

BitString instance_bits(ByteView x, unsigned width) {
  try {
    return BitString::from_bytes(x, width);
  } catch (const DomainMismatch&) {
    throw WidthMismatch("instance width does not match language");
  }
}

// Wires: 0 = output, 1..n = instance, then n-2 ladder ancillas.
void load_instance(QuantumCircuit& c, const BitString& x) {
  for (unsigned i = 0; i < x.width(); ++i)
    if (x.bit(i)) c.add(GateKind::X, 1 + i);
}

void multi_controlled_x(QuantumCircuit& c, unsigned n) {
  if (n == 1) {
    c.add(GateKind::CNOT, 1, 0);
    return;
  }
  if (n == 2) {
    c.add(GateKind::CCX, 1, 2, 0);
    return;
  }
  const unsigned anc = 1 + n;
  std::vector<Gate> ladder;
  ladder.push_back(Gate{GateKind::CCX, {1, 2, anc}});
  for (unsigned k = 3; k < n; ++k) ladder.push_back(Gate{GateKind::CCX, {anc + k - 3, k, anc + k - 2}});
  for (const auto& g : ladder) c.gates.push_back(g);
  c.add(GateKind::CCX, anc + n - 3, n, 0);
  for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) c.gates.push_back(*it);
}

// Exact truth table compiled into a sum of disjoint minterms.
QmaLanguage truth_table(std::string name, unsigned n, std::vector<bool> table) {
  if (n == 0 || n > 6) throw UnknownLanguage("truth-table languages take 1..6 bits");
  QmaLanguage L;
  L.name = std::move(name);
  L.instance_bits = n;
  L.subset_instances = true;
  L.builder = [n, table](ByteView inst, ByteView) -> std::optional<QuantumCircuit> {
    auto x = instance_bits(inst, n);
    QuantumCircuit c;
    c.qubits = 1 + n + (n > 2 ? n - 2 : 0);
    c.ancillas = c.qubits;
    load_instance(c, x);
    for (std::uint64_t v = 0; v < table.size(); ++v) {
      if (!table[v]) continue;
      BitString term(n, v);
      for (unsigned i = 0; i < n; ++i)
        if (!term.bit(i)) c.add(GateKind::X, 1 + i);
      multi_controlled_x(c, n);
      for (unsigned i = 0; i < n; ++i)
        if (!term.bit(i)) c.add(GateKind::X, 1 + i);
    }
    return c;
  };
  return L;
}

template <typename F>
std::vector<bool> tabulate(unsigned n, F f) {
  std::vector<bool> t(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < t.size(); ++v) t[v] = f(BitString(n, v));
  return t;
}

QmaLanguage parity(unsigned n) {
  if (n == 0 || n > kMaxQubits - 1) throw UnknownLanguage("par takes 1..11 bits");
  QmaLanguage L;
  L.name = "par:" + std::to_string(n);
  L.instance_bits = n;
  L.builder = [n](ByteView inst, ByteView) -> std::optional<QuantumCircuit> {
    auto x = instance_bits(inst, n);
    QuantumCircuit c;
    c.qubits = n + 1;
    c.ancillas = n + 1;
    load_instance(c, x);
    for (unsigned i = 0; i < n; ++i) c.add(GateKind::CNOT, 1 + i, 0);
    return c;
  };
  return L;
}

QmaLanguage ghz() {
  QmaLanguage L;
  L.name = "ghz";
  L.instance_bits = 3;
  L.witness_qubits = 3;
  L.alpha = 1.0;
  L.beta = 0.5;
  L.alpha_amp = L.alpha;
  L.beta_amp = L.beta;
  L.builder = [](ByteView inst, ByteView) -> std::optional<QuantumCircuit> {
    auto x = instance_bits(inst, 3);
    QuantumCircuit c;
    c.qubits = 5;
    c.ancillas = 2;
    for (unsigned i = 0; i < 3; ++i)
      if (x.bit(i)) c.add(GateKind::X, i);
    // Undo the GHZ preparation, then test for |000> into qubit 4.
    c.add(GateKind::CNOT, 0, 1).add(GateKind::CNOT, 0, 2).add(GateKind::H, 0);
    c.add(GateKind::X, 0).add(GateKind::X, 1).add(GateKind::X, 2);
    c.add(GateKind::CCX, 0, 1, 3).add(GateKind::CCX, 3, 2, 4);
    c.add(GateKind::CNOT, 4, 0).add(GateKind::CNOT, 0, 4).add(GateKind::CNOT, 4, 0);
    return c;
  };
  return L;
}

QmaLanguage null_language(unsigned n) {
  QmaLanguage L;
  L.name = "null:" + std::to_string(n);
  L.instance_bits = n;
  L.builder = [n](ByteView inst, ByteView) -> std::optional<QuantumCircuit> {
    if (n) instance_bits(inst, n);
    QuantumCircuit c;
    c.qubits = 1;
    c.ancillas = 1;
    return c;
  };
  return L;
}

QmaLanguage universal(const BitString& attribute) {
  QmaLanguage L;
  L.name = "univ:" + attribute.text();
  L.instance_bits = kPolicyIdBits;
  L.builder = [attribute](ByteView inst, ByteView classical) -> std::optional<QuantumCircuit> {
    auto id = instance_bits(inst, kPolicyIdBits);
    std::string policy;
    try {
      policy = policy_descriptor(static_cast<unsigned>(id.value()), attribute.width());
    } catch (const UnknownPolicy&) {
      return std::nullopt;
    }
    return resolve_language(policy).verifier(attribute.bytes(), classical);
  };
  return L;
}

constexpr std::size_t kOpeningBytes = 17;

QmaLanguage shared_secret(unsigned parties, const std::string& base_desc) {
  auto base = resolve_language(base_desc);
  if (!base.subset_instances || base.instance_bits != parties)
    throw UnknownLanguage("secret sharing needs a subset language over N parties");
  QmaLanguage L;
  L.name = "ss:" + std::to_string(parties) + ":" + base_desc;
  L.witness_qubits = base.witness_qubits;
  L.alpha = base.alpha;
  L.beta = base.beta;
  L.alpha_amp = base.alpha;
  L.beta_amp = base.beta;
  L.builder = [parties, base](ByteView inst, ByteView classical) -> std::optional<QuantumCircuit> {
    if (inst.size() != parties * 64) throw WidthMismatch("expected N commitments");
    if (classical.size() != parties * kOpeningBytes) return std::nullopt;
    BitString x(parties, 0);
    for (unsigned i = 0; i < parties; ++i) {
      auto entry = classical.subspan(i * kOpeningBytes, kOpeningBytes);
      if (entry[0] != 1) continue;
      Commitment c{to_bytes(inst.subspan(i * 64, 64))};
      Bytes msg{static_cast<std::uint8_t>(i + 1)};
      if (verify_open(c, msg, key16(entry.subspan(1)))) x = x.with_bit(i, 1);
    }
    return base.verifier(x.bytes(), {});
  };
  return L;
}

}  // namespace

// ---- Statement ----

Bytes Statement::encode() const { return Writer().str(lang).blob(instance).u8(static_cast<std::uint8_t>(reps)).take(); }

Statement Statement::decode(ByteView data) {
  Reader r(data);
  Statement s;
  s.lang = r.str();
  s.instance = r.blob();
  s.reps = r.u8();
  r.expect_end();
  return s;
}

Digest Statement::digest() const { return sha256(encode()); }

// ---- languages ----

std::optional<QuantumCircuit> QmaLanguage::verifier(ByteView instance, ByteView classical) const {
  auto c = builder(instance, classical);
  if (c) {
    c->check();
    if (c->input_width() != witness_qubits) throw WidthMismatch("verifier/witness width");
  }
  return c;
}

QmaLanguage resolve_language(std::string_view descriptor) {
  auto parts = split(descriptor, 3);
  const auto& kind = parts[0];
  auto arg = [&](std::size_t i) -> unsigned {
    if (parts.size() <= i) throw UnknownLanguage("missing argument in " + std::string(descriptor));
    return number(parts[i]);
  };
  if (kind == "par") return parity(arg(1));
  if (kind == "ghz" && parts.size() == 1) return ghz();
  if (kind == "null") return null_language(parts.size() > 1 ? arg(1) : 0);
  if (kind == "univ" && parts.size() == 2) return universal(BitString::parse(parts[1]));
  if (kind == "ss" && parts.size() == 3) return shared_secret(arg(1), parts[2]);
  if (kind == "th" && parts.size() == 3) {
    unsigned t = arg(1), n = arg(2);
    return truth_table(std::string(descriptor), n, tabulate(n, [t](const BitString& x) { return x.popcount() >= t; }));
  }
  if (kind == "and" || kind == "or" || kind == "maj" || kind == "first") {
    unsigned n = arg(1);
    auto f = [&](const BitString& x) {
      if (kind == "and") return x.popcount() == n;
      if (kind == "or") return x.popcount() > 0;
      if (kind == "maj") return 2 * x.popcount() > n;
      return x.bit(0) == 1;
    };
    return truth_table(std::string(descriptor), n, tabulate(n, f));
  }
  if (kind == "tt" && parts.size() == 3) {
    unsigned n = arg(1);
    if (n == 0 || n > 6) throw UnknownLanguage("tt takes 1..6 bits");
    Bytes mask;
    try {
      mask = from_hex(parts[2]);
    } catch (const DecodeError&) {
      throw UnknownLanguage("tt table must be hex");
    }
    std::vector<bool> table(std::size_t{1} << n);
    if (mask.size() * 8 < table.size()) throw UnknownLanguage("tt table too short");
    for (std::size_t v = 0; v < table.size(); ++v) table[v] = (mask[v / 8] >> (v % 8)) & 1;
    return truth_table(std::string(descriptor), n, table);
  }
  throw UnknownLanguage("UnknownLanguage: " + std::string(descriptor));
}

namespace {
const char* const kPolicies[] = {"par", "and", "or", "maj", "null", "first"};
}

std::string policy_descriptor(unsigned id, unsigned width) {
  if (id >= std::size(kPolicies)) throw UnknownPolicy("policy id " + std::to_string(id));
  return std::string(kPolicies[id]) + ":" + std::to_string(width);
}

unsigned policy_id(std::string_view descriptor) {
  auto kind = descriptor.substr(0, descriptor.find(':'));
  for (unsigned i = 0; i < std::size(kPolicies); ++i)
    if (kind == kPolicies[i]) return i;
  throw UnknownPolicy("policy not in catalogue: " + std::string(descriptor));
}

double acceptance_probability(const QmaLanguage& L, ByteView x, const Witness& w) {
  if (w.state.qubits() != L.witness_qubits) throw WidthMismatch("witness has the wrong number of qubits");
  auto c = L.verifier(x, w.classical);
  if (!c) return 0.0;
  return std::clamp(evolve(*c, w.state).prob_one(0), 0.0, 1.0);
}

int qma_verify(const QmaLanguage& L, ByteView x, const Witness& w, std::uint64_t seed) {
  return uniform01(seed) < acceptance_probability(L, x, w) ? 1 : 0;
}

double majority_tail(double p, unsigned reps) {
  double total = 0;
  for (unsigned k = (reps + 1) / 2; k <= reps; ++k) {
    double binom = std::exp(std::lgamma(reps + 1.0) - std::lgamma(k + 1.0) - std::lgamma(reps - k + 1.0));
    total += binom * std::pow(p, k) * std::pow(1 - p, reps - k);
  }
  return total;
}

QmaLanguage amplify(const QmaLanguage& L, unsigned reps) {
  if (reps == 0 || reps % 2 == 0 || reps > 15) throw Error("amplification needs odd reps <= 15");
  QmaLanguage out = L;
  out.reps = reps;
  out.alpha_amp = majority_tail(L.alpha, reps);
  out.beta_amp = majority_tail(L.beta, reps);
  return out;
}

int amplified_verify(const QmaLanguage& L, ByteView x, const Witness& w, std::uint64_t seed) {
  if (w.copies < L.reps) throw InsufficientCopies();
  double p = acceptance_probability(L, x, w);
  unsigned accepts = 0;
  for (unsigned i = 0; i < L.reps; ++i) accepts += uniform01(mix(seed, i)) < p ? 1 : 0;
  return 2 * accepts > L.reps ? 1 : 0;
}

Qualification is_qualified(const QmaLanguage& L, const BitString& subset) {
  if (!L.subset_instances || subset.width() != L.instance_bits) throw WidthMismatch("not a subset instance");
  if (L.witness_qubits != 0) return Qualification::Unknown;
  double p = acceptance_probability(L, subset.bytes(), Witness::none());
  if (p >= 1 - kTolerance) return Qualification::Yes;
  if (p <= kTolerance) return Qualification::No;
  return Qualification::Unknown;
}

void monotone_check(const QmaLanguage& L) {
  const unsigned n = L.instance_bits;
  if (!L.subset_instances || n > 10) throw WidthMismatch("monotone_check needs subset instances (<= 10 bits)");
  std::vector<Qualification> q(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < q.size(); ++v) q[v] = is_qualified(L, BitString(n, v));
  for (std::uint64_t v = 0; v < q.size(); ++v) {
    if (q[v] != Qualification::Yes) continue;
    for (unsigned i = 0; i < n; ++i) {
      auto sup = v | (std::uint64_t{1} << i);
      if (sup != v && q[sup] != Qualification::Yes)
        throw NotMonotone(static_cast<unsigned>(v), static_cast<unsigned>(sup));
    }
  }
}

Witness ghz_witness(const BitString& flips, unsigned copies, bool minus, Amp global) {
  if (flips.width() != 3) throw WidthMismatch("GHZ witness has three qubits");
  std::uint64_t a = 0;
  for (unsigned i = 0; i < 3; ++i)
    if (flips.bit(i)) a |= std::uint64_t{1} << i;
  std::vector<Amp> amps(8, Amp{0, 0});
  const double h = 0.70710678118654752440;
  amps[a] = global * h;
  amps[a ^ 7] = global * (minus ? -h : h);
  return Witness{StateVector::from_amplitudes(std::move(amps)), copies, {}};
}

// ---- pseudo-deterministic programs ----

void PseudoDetProgram::check() const {
  circuit.check();
  if (outputs.empty() || outputs.size() > 8) throw WidthMismatch("1..8 output wires");
  for (auto q : outputs)
    if (q >= circuit.qubits) throw WidthMismatch("output wire out of range");
  if (table.size() != (std::size_t{1} << outputs.size())) throw WidthMismatch("output table size");
  if (reps == 0 || reps % 2 == 0 || reps > 15) throw WidthMismatch("reps must be odd and <= 15");
}

std::vector<double> PseudoDetProgram::distribution(const BitString& x) const {
  auto s = evolve(circuit, StateVector::from_bits(x));
  std::vector<double> dist(table.size(), 0.0);
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    std::size_t word = 0;
    for (std::size_t k = 0; k < outputs.size(); ++k) word |= ((i >> outputs[k]) & 1) << k;
    dist[word] += std::norm(s[i]);
  }
  return dist;
}

double PseudoDetProgram::certificate(const BitString& x) const {
  auto d = distribution(x);
  return *std::max_element(d.begin(), d.end());
}

Bytes PseudoDetProgram::run(const BitString& x, std::uint64_t seed) const {
  check();
  auto dist = distribution(x);
  std::vector<unsigned> counts(dist.size(), 0);
  for (unsigned r = 0; r < reps; ++r) {
    double u = uniform01(mix(seed, r));
    std::size_t word = 0;
    double acc = 0;
    for (; word + 1 < dist.size(); ++word) {
      acc += dist[word];
      if (u < acc) break;
    }
    ++counts[word];
  }
  auto best = std::max_element(counts.begin(), counts.end()) - counts.begin();
  return table[static_cast<std::size_t>(best)];
}

Bytes PseudoDetProgram::encode() const {
  Writer w;
  w.blob(encode_circuit(circuit)).u8(static_cast<std::uint8_t>(outputs.size()));
  for (auto q : outputs) w.u8(static_cast<std::uint8_t>(q));
  w.u16(static_cast<std::uint16_t>(table.size()));
  for (const auto& t : table) w.blob(t);
  w.u8(static_cast<std::uint8_t>(reps));
  return w.take();
}

PseudoDetProgram PseudoDetProgram::decode(ByteView data) {
  Reader r(data);
  PseudoDetProgram p;
  p.circuit = decode_circuit(r.blob());
  p.outputs.resize(r.u8());
  for (auto& q : p.outputs) q = r.u8();
  p.table.resize(r.u16());
  for (auto& t : p.table) t = r.blob();
  p.reps = r.u8();
  r.expect_end();
  p.check();
  return p;
}

}  // namespace qnio
