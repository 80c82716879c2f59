#pragma once

#include <cstdint>
#include <vector>

#include "sipserlab/boolfn.hpp"

namespace sipserlab {

// Unbounded fan-in AND/OR DAG in topological order (children precede
// parents). Size counts every gate, inputs included; inputs sit at depth 0.
// An And with no children is the constant 1, an Or with no children the
// constant 0.
class Circuit {
 public:
  enum class Kind : unsigned char { Input, And, Or };

  struct Gate {
    Kind kind = Kind::Input;
    std::int64_t var = -1;
    std::vector<int> children;
  };

  std::vector<Gate> gates;
  int output = -1;
  std::int64_t num_vars = 0;

  int add_input(std::int64_t var);
  int add_gate(Kind kind, std::vector<int> children);

  std::int64_t size() const { return static_cast<std::int64_t>(gates.size()); }
  int depth() const;
  int max_fanin() const;

  bool eval_row(std::uint64_t row) const;  // num_vars <= 64
  bool eval(const std::vector<bool>& x) const;

  // Drops gates unreachable from the output (layer splicing can orphan
  // intermediates); relative order is preserved.
  Circuit pruned() const;

  void validate() const;  // child ids precede parents, vars in range
};

struct CircuitMetrics {
  std::int64_t size = 0;
  int depth = 0;
  int max_fanin = 0;
};

CircuitMetrics circuit_metrics(const Circuit& c);

TruthTable truth_table(const Circuit& c);

}  // namespace sipserlab
