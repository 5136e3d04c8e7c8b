#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "vck/error.hpp"
#include "vck/field.hpp"

namespace vck::hauth {

enum class GateOp { kAdd, kMul, kAddConst, kMulConst };

template <class F>
struct Gate {
  GateOp op;
  std::size_t lhs;
  std::size_t rhs = 0;  // unused by the constant gates
  F constant{};
};

// Arithmetic circuit over input slots. Wires 0..inputs-1 are the inputs;
// every gate appends one wire. Any type with +, * and scalar +, * (field
// elements, tag polynomials, group polynomials) can be pushed through it.
template <class F>
class Circuit {
 public:
  explicit Circuit(std::size_t num_inputs) : num_inputs_(num_inputs), output_(0) {
    if (num_inputs == 0) throw UsageError("circuit needs at least one input");
  }

  static Circuit identity() { return Circuit(1); }

  std::size_t add(std::size_t a, std::size_t b) { return push({GateOp::kAdd, a, b}); }
  std::size_t mul(std::size_t a, std::size_t b) { return push({GateOp::kMul, a, b}); }
  std::size_t add_const(std::size_t a, F c) { return push({GateOp::kAddConst, a, 0, c}); }
  std::size_t mul_const(std::size_t a, F c) { return push({GateOp::kMulConst, a, 0, c}); }
  void set_output(std::size_t wire) {
    check_wire(wire);
    output_ = wire;
  }

  std::size_t num_inputs() const { return num_inputs_; }
  std::size_t num_wires() const { return num_inputs_ + gates_.size(); }
  std::size_t output() const { return output_; }
  std::span<const Gate<F>> gates() const { return gates_; }

  // Syntactic degree of the output wire: inputs have degree 1, addition takes
  // the max and multiplication the sum.
  std::size_t degree() const {
    return propagate([](std::size_t a, std::size_t b) { return std::max(a, b); },
                     [](std::size_t a, std::size_t b) { return a + b; }, 1);
  }

  // Number of multiplication gates on the deepest input-to-output path.
  std::size_t mul_depth() const {
    return propagate([](std::size_t a, std::size_t b) { return std::max(a, b); },
                     [](std::size_t a, std::size_t b) { return std::max(a, b) + 1; }, 0);
  }

  template <class V>
  V evaluate(std::span<const V> inputs) const {
    if (inputs.size() != num_inputs_) throw UsageError("circuit input count mismatch");
    std::vector<V> wires(inputs.begin(), inputs.end());
    wires.reserve(num_wires());
    for (const Gate<F>& g : gates_) {
      switch (g.op) {
        case GateOp::kAdd: wires.push_back(wires[g.lhs] + wires[g.rhs]); break;
        case GateOp::kMul: wires.push_back(wires[g.lhs] * wires[g.rhs]); break;
        case GateOp::kAddConst: wires.push_back(wires[g.lhs] + g.constant); break;
        case GateOp::kMulConst: wires.push_back(wires[g.lhs] * g.constant); break;
      }
    }
    return wires[output_];
  }

  // Text format, one statement per line:
  //   inputs N | add a b | mul a b | addc a c | mulc a c | out w
  // The output defaults to the last wire. '#' starts a comment.
  static Circuit parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<Circuit> c;
    bool explicit_output = false;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string op;
      if (!(ls >> op)) continue;
      if (op == "inputs") {
        std::size_t n = 0;
        if (c || !(ls >> n)) throw UsageError("circuit: 'inputs N' must come first, once");
        c.emplace(n);
        continue;
      }
      if (!c) throw UsageError("circuit: missing 'inputs N' header");
      std::size_t a = 0;
      if (!(ls >> a)) throw UsageError("circuit: malformed line '" + line + "'");
      if (op == "out") {
        c->set_output(a);
        explicit_output = true;
        continue;
      }
      std::int64_t b = 0;
      if (!(ls >> b)) throw UsageError("circuit: malformed line '" + line + "'");
      if (op == "add") {
        c->add(a, static_cast<std::size_t>(b));
      } else if (op == "mul") {
        c->mul(a, static_cast<std::size_t>(b));
      } else if (op == "addc") {
        c->add_const(a, F::from_signed(b));
      } else if (op == "mulc") {
        c->mul_const(a, F::from_signed(b));
      } else {
        throw UsageError("circuit: unknown gate '" + op + "'");
      }
    }
    if (!c) throw UsageError("circuit: empty description");
    if (!explicit_output) c->output_ = c->num_wires() - 1;
    return *c;
  }

 private:
  void check_wire(std::size_t w) const {
    if (w >= num_wires()) throw UsageError("circuit gate references an undefined wire");
  }

  std::size_t push(Gate<F> g) {
    check_wire(g.lhs);
    if (g.op == GateOp::kAdd || g.op == GateOp::kMul) check_wire(g.rhs);
    gates_.push_back(g);
    output_ = num_wires() - 1;
    return output_;
  }

  template <class AddRule, class MulRule>
  std::size_t propagate(AddRule add_rule, MulRule mul_rule, std::size_t input_value) const {
    std::vector<std::size_t> v(num_inputs_, input_value);
    for (const Gate<F>& g : gates_) {
      switch (g.op) {
        case GateOp::kAdd: v.push_back(add_rule(v[g.lhs], v[g.rhs])); break;
        case GateOp::kMul: v.push_back(mul_rule(v[g.lhs], v[g.rhs])); break;
        case GateOp::kAddConst:
        case GateOp::kMulConst: v.push_back(v[g.lhs]); break;
      }
    }
    return v[output_];
  }

  std::size_t num_inputs_;
  std::vector<Gate<F>> gates_;
  std::size_t output_;
};

}  // namespace vck::hauth
