#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sipserlab/rational.hpp"
#include "sipserlab/sipser.hpp"

namespace sipserlab {

// Series-parallel multigraph with distinguished endpoints; one edge per
// formula variable. Parallel edges are first-class; simplicity is a checked
// property, never an assumption.
struct SPGraph {
  int vertex_count = 0;
  int s = 0;
  int t = 0;

  struct Edge {
    int a = 0;
    int b = 0;
    std::int64_t var = 0;
  };
  std::vector<Edge> edges;

  bool is_simple() const;  // no repeated unordered vertex pair
};

// Series composition at ANDs (endpoint chaining), parallel composition at
// ORs (endpoint identification). Vertex ids: s = 0, t = 1, internals in
// first-use order along the edge list.
SPGraph formula_to_graph(const Formula& f);

// Spanning subgraph keeping edges whose assignment bit is 1.
SPGraph subgraph(const SPGraph& g, const std::vector<bool>& z);

std::optional<int> shortest_st_path(const SPGraph& g);

// Plain edge-list text ("a b var" per line, header comment with s/t) for
// hand-off to external graph tools.
std::string edge_list_text(const SPGraph& g);

// Product of AND fan-ins down any root-to-leaf alternation; requires the
// per-layer fan-ins to be uniform and throws otherwise.
std::int64_t and_fanin_product(const Formula& f);

// Connectivity criterion for one assignment: s-t connectivity in the
// subgraph holds iff f(z) = 1, and a connected subgraph realizes the full
// graph's shortest distance exactly.
bool check_connectivity_equivalence(const Formula& f, const SPGraph& g, std::int64_t path_len,
                                    const std::vector<bool>& z);

struct ReductionParams {
  BigInt n, k;
  int d = 0;
  bool degenerate = false;  // outside the d >= 2, (k/2)^(1/d) >= 2 regime
  BigInt u0, k0, n_prime, w0;
  BigInt n0_power_base;     // (u0*w0)^d; exact n0 = base * w0^(33/100)
  double n0_display = 0.0;  // floating rendition of n0
  SipserParams dagger;      // u0, w0, floor(w0^(33/100)), d
};

// u0 = floor((k/2)^(1/d)), k0 = u0^d, n' = floor(n/2), and w0 the largest
// integer with (u0 w)^d * w^(33/100) <= n', decided by comparing
// (u0 w)^(100 d) * w^33 against n'^100 in exact integers.
ReductionParams reduction_params(const BigInt& n, const BigInt& k, int d);

}  // namespace sipserlab
