#pragma once

#include <cstdint>
#include <vector>

#include "sipserlab/circuit.hpp"

namespace sipserlab {

// Undirected adjacency variables x_{i,j} for unordered pairs i < j, densely
// indexed; x_{i,i} is the constant 1 (paths may stall), which the builders
// compile away rather than materialize.
int pair_count(int n);
int pair_index(int n, int i, int j);

// Distance <= k by halving: R_k(i,j) = OR_m R_ceil(k/2)(i,m) AND
// R_floor(k/2)(m,j), subcircuits shared across entries. Depth 2*ceil(log2 k);
// k = 1 is the bare edge variable. Unary gates collapse here.
Circuit build_squaring_circuit(int n, int k, int s = 0, int t = 1);

// d rounds of a depth-2 OR-of-ANDs layer, each computing "distance <= t_i in
// the previous round's graph" for every pair. Per-round budgets t_i satisfy
// t_1*...*t_d >= k with exact piece bookkeeping, so acceptance is exactly
// distance <= k; degenerate rounds keep their OR-of-AND shell so the depth
// is exactly 2d.
Circuit build_power_circuit(int n, int k, int d, int s = 0, int t = 1);

std::vector<int> power_round_budgets(int k, int d);

// adj holds one bit per unordered pair (dense order).
bool bfs_oracle(const std::vector<bool>& adj, int n, int s, int t, int k);

}  // namespace sipserlab
