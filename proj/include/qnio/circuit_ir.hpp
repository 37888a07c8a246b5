#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qnio/bytes.hpp"
#include "qnio/errors.hpp"

namespace qnio {

// A wire value: a byte string, or the distinguished bottom value.
using Value = std::optional<Bytes>;
inline const Value kBottom = std::nullopt;

enum class Op : std::uint8_t { Const = 1, Bottom, Input, Concat, Slice, Xor, Eq, Ite, Host };

struct Node {
  Op op = Op::Const;
  std::vector<std::uint32_t> args;
  Bytes data;             // constant bytes, or host gate name
  std::uint32_t a = 0;    // input slot, or slice offset
  std::uint32_t b = 0;    // slice length
  friend bool operator==(const Node&, const Node&) = default;
};

class Program {
 public:
  Program() = default;
  Program(std::vector<Node> nodes, std::vector<std::uint32_t> outputs, std::uint32_t arity)
      : nodes_(std::move(nodes)), outputs_(std::move(outputs)), arity_(arity) {}

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::uint32_t>& outputs() const { return outputs_; }
  std::uint32_t input_arity() const { return arity_; }
  std::size_t size() const { return nodes_.size(); }

  Bytes serialize() const;
  static Program deserialize(ByteView data);
  friend bool operator==(const Program&, const Program&) = default;

 private:
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> outputs_;
  std::uint32_t arity_ = 0;
};

using NodeId = std::uint32_t;

class ProgramBuilder {
 public:
  NodeId input();
  NodeId constant(ByteView bytes);
  NodeId bottom();
  NodeId concat(std::vector<NodeId> parts);
  NodeId slice(NodeId of, std::uint32_t offset, std::uint32_t length);
  NodeId bxor(NodeId x, NodeId y);
  NodeId eq(NodeId x, NodeId y);
  NodeId ite(NodeId cond, NodeId then_node, NodeId else_node);
  NodeId host(std::string_view name, std::vector<NodeId> args);
  // Copies another program's nodes, wiring its inputs to `inputs`; returns its outputs.
  std::vector<NodeId> inline_program(const Program& p, const std::vector<NodeId>& inputs);
  Program build(std::vector<NodeId> outputs) const;

 private:
  NodeId push(Node n);
  std::vector<Node> nodes_;
  std::uint32_t arity_ = 0;
};

using HostFn = std::function<Value(std::span<const Value>)>;

class HostRegistry {
 public:
  void add(std::string name, HostFn fn);
  const HostFn* find(std::string_view name) const;

 private:
  std::map<std::string, HostFn, std::less<>> gates_;
};

// Registry holding every host gate the library's constructions use.
const HostRegistry& standard_registry();

void validate(const Program& p);
void validate(const Program& p, const HostRegistry& registry);
Program pad(const Program& p, std::size_t target);
std::vector<Value> evaluate(const Program& p, std::span<const Value> inputs,
                            const HostRegistry& registry = standard_registry());

enum class SealMode : std::uint8_t { IO = 1, VBB = 2, LOCK = 3 };

// Opaque evaluator over a padded program. No accessor exposes the program.
class SealedProgram {
 public:
  std::vector<Value> operator()(std::span<const Value> inputs) const;
  Value call(std::initializer_list<Value> inputs) const;  // first output

  std::size_t declared_size() const { return declared_size_; }
  std::uint32_t input_arity() const;
  SealMode mode() const { return mode_; }
  std::size_t payload_size() const { return payload_size_; }

  Bytes serialize() const;
  static SealedProgram deserialize(ByteView data);

 private:
  friend SealedProgram seal_program(const Program&, std::size_t, SealMode, std::size_t);
  std::shared_ptr<const Program> program_;
  std::size_t declared_size_ = 0;
  SealMode mode_ = SealMode::IO;
  std::size_t payload_size_ = 0;
};

SealedProgram seal_program(const Program& p, std::size_t target, SealMode mode, std::size_t payload_size = 0);

SealedProgram obf_io(const Program& p, std::size_t target);

// Black-box oracle access to a VBB-sealed program, with a query counter.
class SimHandle {
 public:
  explicit SimHandle(SealedProgram sealed) : sealed_(std::move(sealed)) {}
  std::vector<Value> query(std::span<const Value> inputs);
  std::size_t query_count() const { return count_; }
  std::size_t declared_size() const { return sealed_.declared_size(); }

 private:
  SealedProgram sealed_;
  std::atomic<std::size_t> count_{0};
};

struct VbbObfuscation {
  SealedProgram sealed;
  std::shared_ptr<SimHandle> sim;
};
VbbObfuscation obf_vbb(const Program& p, std::size_t target);

struct LockSpec {
  Key16 lock{};
  Bytes payload;
  Program inner;
};

inline constexpr std::size_t kLockOverhead = 5;
SealedProgram lockobf(const LockSpec& spec);
SealedProgram lockobf_sim(std::size_t inner_size, std::size_t payload_size, std::uint32_t arity);

// Points at which two evaluators are compared.
struct DomainSpec {
  enum class Kind { Exhaustive, Random, Explicit };
  Kind kind = Kind::Exhaustive;
  std::vector<unsigned> widths;        // exhaustive: bit width per input (total <= 16)
  std::vector<std::size_t> lengths;    // random: byte length per input
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<Value>> points;  // explicit

  static DomainSpec exhaustive(std::vector<unsigned> widths);
  static DomainSpec random(std::vector<std::size_t> lengths, std::size_t samples, std::uint64_t seed);
  static DomainSpec explicit_points(std::vector<std::vector<Value>> points);
  std::vector<std::vector<Value>> enumerate() const;
};

using Evaluator = std::function<std::vector<Value>(std::span<const Value>)>;
Evaluator evaluator(const Program& p);
Evaluator evaluator(const SealedProgram& p);

struct EquivReport {
  bool equivalent = true;
  std::size_t tested = 0;
  std::vector<std::vector<Value>> mismatches;  // capped
};
EquivReport equiv_report(const Evaluator& a, const Evaluator& b, const DomainSpec& domain);
bool equiv_check(const Evaluator& a, const Evaluator& b, const DomainSpec& domain);

// Common single-byte truth values.
inline Value bit_value(bool b) { return Bytes{static_cast<std::uint8_t>(b ? 1 : 0)}; }
bool is_true(const Value& v);

}  // namespace qnio
