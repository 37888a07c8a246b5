#include "qnio/circuit_ir.hpp"

#include <algorithm>
#include <exception>

#include "qnio/primitives.hpp"

namespace qnio {

bool is_true(const Value& v) {
  return v && std::any_of(v->begin(), v->end(), [](std::uint8_t b) { return b != 0; });
}

// ---- builder ----

NodeId ProgramBuilder::push(Node n) {
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId ProgramBuilder::input() { return push(Node{Op::Input, {}, {}, arity_++, 0}); }
NodeId ProgramBuilder::constant(ByteView bytes) { return push(Node{Op::Const, {}, to_bytes(bytes), 0, 0}); }
NodeId ProgramBuilder::bottom() { return push(Node{Op::Bottom, {}, {}, 0, 0}); }
NodeId ProgramBuilder::concat(std::vector<NodeId> parts) { return push(Node{Op::Concat, std::move(parts), {}, 0, 0}); }
NodeId ProgramBuilder::slice(NodeId of, std::uint32_t offset, std::uint32_t length) {
  return push(Node{Op::Slice, {of}, {}, offset, length});
}
NodeId ProgramBuilder::bxor(NodeId x, NodeId y) { return push(Node{Op::Xor, {x, y}, {}, 0, 0}); }
NodeId ProgramBuilder::eq(NodeId x, NodeId y) { return push(Node{Op::Eq, {x, y}, {}, 0, 0}); }
NodeId ProgramBuilder::ite(NodeId c, NodeId t, NodeId e) { return push(Node{Op::Ite, {c, t, e}, {}, 0, 0}); }
NodeId ProgramBuilder::host(std::string_view name, std::vector<NodeId> args) {
  return push(Node{Op::Host, std::move(args), to_bytes(name), 0, 0});
}

std::vector<NodeId> ProgramBuilder::inline_program(const Program& p, const std::vector<NodeId>& inputs) {
  if (inputs.size() != p.input_arity()) throw MalformedCircuit(0, "inlined program arity mismatch");
  std::vector<NodeId> map(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Node n = p.nodes()[i];
    if (n.op == Op::Input) {
      map[i] = inputs.at(n.a);
      continue;
    }
    for (auto& a : n.args) a = map.at(a);
    map[i] = push(std::move(n));
  }
  std::vector<NodeId> outs;
  for (auto o : p.outputs()) outs.push_back(map.at(o));
  return outs;
}

Program ProgramBuilder::build(std::vector<NodeId> outputs) const { return Program(nodes_, std::move(outputs), arity_); }

// ---- registry ----

void HostRegistry::add(std::string name, HostFn fn) { gates_[std::move(name)] = std::move(fn); }

const HostFn* HostRegistry::find(std::string_view name) const {
  auto it = gates_.find(name);
  return it == gates_.end() ? nullptr : &it->second;
}

// ---- validation / padding ----

namespace {

std::size_t expected_args(Op op) {
  switch (op) {
    case Op::Const:
    case Op::Bottom:
    case Op::Input:
      return 0;
    case Op::Slice:
      return 1;
    case Op::Xor:
    case Op::Eq:
      return 2;
    case Op::Ite:
      return 3;
    case Op::Concat:
    case Op::Host:
      return SIZE_MAX;
  }
  return SIZE_MAX;
}

void validate_structure(const Program& p, const HostRegistry* registry) {
  std::vector<bool> slot_seen(p.input_arity(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Node& n = p.nodes()[i];
    if (n.op < Op::Const || n.op > Op::Host) throw MalformedCircuit(i, "unknown opcode");
    auto want = expected_args(n.op);
    if (want != SIZE_MAX && n.args.size() != want) throw MalformedCircuit(i, "wrong argument count");
    for (auto a : n.args)
      if (a >= i) throw MalformedCircuit(i, "argument does not precede node");
    if (n.op == Op::Input) {
      if (n.a >= p.input_arity()) throw MalformedCircuit(i, "input slot out of range");
      slot_seen[n.a] = true;
    }
    if (n.op == Op::Host && registry && !registry->find(to_string(n.data)))
      throw UnknownGate("UnknownGate: " + to_string(n.data));
  }
  for (std::size_t s = 0; s < slot_seen.size(); ++s)
    if (!slot_seen[s]) throw MalformedCircuit(p.size(), "input slot " + std::to_string(s) + " unused");
  for (auto o : p.outputs())
    if (o >= p.size()) throw MalformedCircuit(p.size(), "output refers past the end");
}

}  // namespace

void validate(const Program& p) { validate_structure(p, nullptr); }
void validate(const Program& p, const HostRegistry& registry) { validate_structure(p, &registry); }

Program pad(const Program& p, std::size_t target) {
  if (target < p.size()) throw TargetTooSmall();
  auto nodes = p.nodes();
  while (nodes.size() < target) nodes.push_back(Node{Op::Const, {}, {}, 0, 0});
  return Program(std::move(nodes), p.outputs(), p.input_arity());
}

// ---- interpreter ----

namespace {

class Interpreter {
 public:
  Interpreter(const Program& p, std::span<const Value> inputs, const HostRegistry& reg)
      : p_(p), inputs_(inputs), reg_(reg), memo_(p.size()), done_(p.size(), false) {}

  const Value& eval(std::uint32_t i) {
    if (done_[i]) return memo_[i];
    memo_[i] = compute(i);
    done_[i] = true;
    return memo_[i];
  }

 private:
  Value compute(std::uint32_t i) {
    const Node& n = p_.nodes()[i];
    switch (n.op) {
      case Op::Const:
        return n.data;
      case Op::Bottom:
        return kBottom;
      case Op::Input:
        return inputs_[n.a];
      case Op::Concat: {
        Bytes out;
        for (auto a : n.args) {
          const auto& v = eval(a);
          if (!v) return kBottom;
          out.insert(out.end(), v->begin(), v->end());
        }
        return out;
      }
      case Op::Slice: {
        const auto& v = eval(n.args[0]);
        if (!v) return kBottom;
        if (std::size_t{n.a} + n.b > v->size()) throw MalformedCircuit(i, "slice out of range");
        return Bytes(v->begin() + n.a, v->begin() + n.a + n.b);
      }
      case Op::Xor: {
        const auto& x = eval(n.args[0]);
        const auto& y = eval(n.args[1]);
        if (!x || !y) return kBottom;
        if (x->size() != y->size()) throw MalformedCircuit(i, "xor of unequal lengths");
        return xor_bytes(*x, *y);
      }
      case Op::Eq:
        return bit_value(eval(n.args[0]) == eval(n.args[1]));
      case Op::Ite: {
        const auto& c = eval(n.args[0]);
        if (!c) return kBottom;
        return eval(is_true(c) ? n.args[1] : n.args[2]);
      }
      case Op::Host: {
        auto name = to_string(n.data);
        const HostFn* fn = reg_.find(name);
        if (!fn) throw UnknownGate("UnknownGate: " + name);
        std::vector<Value> args;
        args.reserve(n.args.size());
        for (auto a : n.args) args.push_back(eval(a));
        try {
          return (*fn)(args);
        } catch (...) {
          std::throw_with_nested(GateFailure(i));
        }
      }
    }
    throw MalformedCircuit(i, "unknown opcode");
  }

  const Program& p_;
  std::span<const Value> inputs_;
  const HostRegistry& reg_;
  std::vector<Value> memo_;
  std::vector<bool> done_;
};

}  // namespace

std::vector<Value> evaluate(const Program& p, std::span<const Value> inputs, const HostRegistry& registry) {
  if (inputs.size() != p.input_arity())
    throw MalformedCircuit(0, "expected " + std::to_string(p.input_arity()) + " inputs");
  Interpreter in(p, inputs, registry);
  std::vector<Value> out;
  for (auto o : p.outputs()) out.push_back(in.eval(o));
  return out;
}

// ---- serialization ----

namespace {
constexpr std::uint16_t kProgramVersion = 1;
constexpr std::uint16_t kSealedVersion = 1;
const Bytes kProgramMagic = to_bytes("QPRG");
const Bytes kSealedMagic = to_bytes("QSEL");
}  // namespace

Bytes Program::serialize() const {
  Writer w;
  w.raw(kProgramMagic).u16(kProgramVersion).u32(arity_).u32(static_cast<std::uint32_t>(nodes_.size()));
  for (const auto& n : nodes_) {
    w.u8(static_cast<std::uint8_t>(n.op)).u32(n.a).u32(n.b).blob(n.data).u32(static_cast<std::uint32_t>(n.args.size()));
    for (auto a : n.args) w.u32(a);
  }
  w.u32(static_cast<std::uint32_t>(outputs_.size()));
  for (auto o : outputs_) w.u32(o);
  return w.take();
}

Program Program::deserialize(ByteView data) {
  Reader r(data);
  if (r.raw(4) != kProgramMagic) throw BadMagic("not a program");
  if (r.u16() != kProgramVersion) throw VersionMismatch("program version");
  auto arity = r.u32();
  auto count = r.u32();
  std::vector<Node> nodes;
  for (std::uint32_t i = 0; i < count; ++i) {
    Node n;
    n.op = static_cast<Op>(r.u8());
    n.a = r.u32();
    n.b = r.u32();
    n.data = r.blob();
    auto nargs = r.u32();
    for (std::uint32_t j = 0; j < nargs; ++j) n.args.push_back(r.u32());
    nodes.push_back(std::move(n));
  }
  std::vector<std::uint32_t> outs(r.u32());
  for (auto& o : outs) o = r.u32();
  r.expect_end();
  Program p(std::move(nodes), std::move(outs), arity);
  validate(p);
  return p;
}

// ---- sealing ----

SealedProgram seal_program(const Program& p, std::size_t target, SealMode mode, std::size_t payload_size) {
  validate(p, standard_registry());
  SealedProgram s;
  s.program_ = std::make_shared<const Program>(pad(p, target));
  s.declared_size_ = target;
  s.mode_ = mode;
  s.payload_size_ = payload_size;
  return s;
}

std::vector<Value> SealedProgram::operator()(std::span<const Value> inputs) const {
  return evaluate(*program_, inputs, standard_registry());
}

Value SealedProgram::call(std::initializer_list<Value> inputs) const {
  std::vector<Value> in(inputs);
  return (*this)(in).at(0);
}

std::uint32_t SealedProgram::input_arity() const { return program_->input_arity(); }

Bytes SealedProgram::serialize() const {
  return Writer()
      .raw(kSealedMagic)
      .u16(kSealedVersion)
      .u8(static_cast<std::uint8_t>(mode_))
      .u32(static_cast<std::uint32_t>(declared_size_))
      .u32(static_cast<std::uint32_t>(payload_size_))
      .blob(seal("sealed-program", program_->serialize()))
      .take();
}

SealedProgram SealedProgram::deserialize(ByteView data) {
  Reader r(data);
  if (r.raw(4) != kSealedMagic) throw BadMagic("not a sealed program");
  if (r.u16() != kSealedVersion) throw VersionMismatch("sealed program version");
  auto mode = static_cast<SealMode>(r.u8());
  std::size_t declared = r.u32();
  std::size_t payload = r.u32();
  auto program = Program::deserialize(unseal("sealed-program", r.blob()));
  r.expect_end();
  if (program.size() != declared) throw DecodeError("declared size mismatch");
  SealedProgram s;
  s.program_ = std::make_shared<const Program>(std::move(program));
  s.declared_size_ = declared;
  s.mode_ = mode;
  s.payload_size_ = payload;
  return s;
}

SealedProgram obf_io(const Program& p, std::size_t target) { return seal_program(p, target, SealMode::IO); }

std::vector<Value> SimHandle::query(std::span<const Value> inputs) {
  ++count_;
  return sealed_(inputs);
}

VbbObfuscation obf_vbb(const Program& p, std::size_t target) {
  auto sealed = seal_program(p, target, SealMode::VBB);
  return {sealed, std::make_shared<SimHandle>(sealed)};
}

SealedProgram lockobf(const LockSpec& spec) {
  ProgramBuilder b;
  std::vector<NodeId> ins;
  for (std::uint32_t i = 0; i < spec.inner.input_arity(); ++i) ins.push_back(b.input());
  auto y = b.inline_program(spec.inner, ins).at(0);
  auto u = b.constant(spec.lock);
  auto hit = b.eq(y, u);
  auto z = b.constant(spec.payload);
  auto none = b.bottom();
  auto out = b.ite(hit, z, none);
  auto p = b.build({out});
  return seal_program(p, spec.inner.size() + kLockOverhead, SealMode::LOCK, spec.payload.size());
}

SealedProgram lockobf_sim(std::size_t inner_size, std::size_t payload_size, std::uint32_t arity) {
  ProgramBuilder b;
  for (std::uint32_t i = 0; i < arity; ++i) b.input();
  auto none = b.bottom();
  return seal_program(b.build({none}), inner_size + kLockOverhead, SealMode::LOCK, payload_size);
}

// ---- equivalence ----

DomainSpec DomainSpec::exhaustive(std::vector<unsigned> widths) {
  DomainSpec d;
  d.kind = Kind::Exhaustive;
  d.widths = std::move(widths);
  return d;
}

DomainSpec DomainSpec::random(std::vector<std::size_t> lengths, std::size_t samples, std::uint64_t seed) {
  DomainSpec d;
  d.kind = Kind::Random;
  d.lengths = std::move(lengths);
  d.samples = samples;
  d.seed = seed;
  return d;
}

DomainSpec DomainSpec::explicit_points(std::vector<std::vector<Value>> points) {
  DomainSpec d;
  d.kind = Kind::Explicit;
  d.points = std::move(points);
  return d;
}

std::vector<std::vector<Value>> DomainSpec::enumerate() const {
  std::vector<std::vector<Value>> out;
  switch (kind) {
    case Kind::Explicit:
      return points;
    case Kind::Random: {
      auto rng = Drbg::from_u64(seed);
      for (std::size_t s = 0; s < samples; ++s) {
        std::vector<Value> pt;
        for (auto len : lengths) pt.push_back(rng.bytes(len));
        out.push_back(std::move(pt));
      }
      return out;
    }
    case Kind::Exhaustive: {
      unsigned total = 0;
      for (auto w : widths) total += w;
      if (total > 16) throw DomainMismatch("exhaustive domain limited to 2^16 points");
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << total); ++v) {
        std::vector<Value> pt;
        unsigned shift = total;
        for (auto w : widths) {
          shift -= w;
          pt.push_back(BitString(w, (v >> shift) & ((std::uint64_t{1} << w) - 1)).bytes());
        }
        out.push_back(std::move(pt));
      }
      return out;
    }
  }
  return out;
}

Evaluator evaluator(const Program& p) {
  return [p](std::span<const Value> in) { return evaluate(p, in); };
}

Evaluator evaluator(const SealedProgram& p) {
  return [p](std::span<const Value> in) { return p(in); };
}

EquivReport equiv_report(const Evaluator& a, const Evaluator& b, const DomainSpec& domain) {
  EquivReport report;
  for (const auto& pt : domain.enumerate()) {
    ++report.tested;
    if (a(pt) != b(pt)) {
      report.equivalent = false;
      if (report.mismatches.size() < 16) report.mismatches.push_back(pt);
    }
  }
  return report;
}

bool equiv_check(const Evaluator& a, const Evaluator& b, const DomainSpec& domain) {
  return equiv_report(a, b, domain).equivalent;
}

}  // namespace qnio
