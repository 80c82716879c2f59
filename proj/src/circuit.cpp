#include "sipserlab/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace sipserlab {

int Circuit::add_input(std::int64_t var) {
  Gate g;
  g.kind = Kind::Input;
  g.var = var;
  gates.push_back(std::move(g));
  if (var >= num_vars) num_vars = var + 1;
  return static_cast<int>(gates.size()) - 1;
}

int Circuit::add_gate(Kind kind, std::vector<int> children) {
  if (kind == Kind::Input) throw std::invalid_argument("use add_input for inputs");
  Gate g;
  g.kind = kind;
  g.children = std::move(children);
  gates.push_back(std::move(g));
  return static_cast<int>(gates.size()) - 1;
}

int Circuit::depth() const {
  std::vector<int> d(gates.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].kind == Kind::Input) {
      d[i] = 0;
    } else {
      int m = -1;
      for (int c : gates[i].children) m = std::max(m, d[c]);
      d[i] = m + 1;  // empty gate (constant) sits at depth 0
    }
    best = std::max(best, d[i]);
  }
  return gates.empty() ? 0 : d[output];
}

int Circuit::max_fanin() const {
  int m = 0;
  for (const Gate& g : gates) m = std::max(m, static_cast<int>(g.children.size()));
  return m;
}

bool Circuit::eval_row(std::uint64_t row) const {
  std::vector<char> val(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.kind) {
      case Kind::Input:
        val[i] = static_cast<char>((row >> g.var) & 1);
        break;
      case Kind::And: {
        char v = 1;
        for (int c : g.children)
          if (!val[c]) {
            v = 0;
            break;
          }
        val[i] = v;
        break;
      }
      case Kind::Or: {
        char v = 0;
        for (int c : g.children)
          if (val[c]) {
            v = 1;
            break;
          }
        val[i] = v;
        break;
      }
    }
  }
  return val[output] != 0;
}

bool Circuit::eval(const std::vector<bool>& x) const {
  if (static_cast<std::int64_t>(x.size()) != num_vars)
    throw std::invalid_argument("assignment length mismatch");
  std::uint64_t row = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) row |= std::uint64_t{1} << i;
  return eval_row(row);
}

Circuit Circuit::pruned() const {
  std::vector<char> keep(gates.size(), 0);
  std::vector<int> stack{output};
  keep[output] = 1;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    for (int c : gates[id].children)
      if (!keep[c]) {
        keep[c] = 1;
        stack.push_back(c);
      }
  }
  Circuit out;
  out.num_vars = num_vars;
  std::vector<int> remap(gates.size(), -1);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (!keep[i]) continue;
    Gate g = gates[i];
    for (int& c : g.children) c = remap[c];
    remap[i] = static_cast<int>(out.gates.size());
    out.gates.push_back(std::move(g));
  }
  out.output = remap[output];
  return out;
}

void Circuit::validate() const {
  if (gates.empty() || output < 0 || output >= static_cast<int>(gates.size()))
    throw std::logic_error("circuit has no valid output gate");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    if (g.kind == Kind::Input) {
      if (g.var < 0 || g.var >= num_vars) throw std::logic_error("input var out of range");
      continue;
    }
    for (int c : g.children)
      if (c < 0 || c >= static_cast<int>(i)) throw std::logic_error("children must precede parents");
  }
}

CircuitMetrics circuit_metrics(const Circuit& c) {
  return CircuitMetrics{c.size(), c.depth(), c.max_fanin()};
}

TruthTable truth_table(const Circuit& c) {
  if (c.num_vars > TruthTable::kMaxVars)
    throw std::invalid_argument("truth table limited to 24 variables");
  TruthTable t(static_cast<int>(c.num_vars));
  for (std::uint64_t r = 0; r < t.rows(); ++r) t.set(r, c.eval_row(r));
  return t;
}

}  // namespace sipserlab
