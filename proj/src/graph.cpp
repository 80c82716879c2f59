#include "sipserlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>

namespace sipserlab {

bool SPGraph::is_simple() const {
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    auto key = std::minmax(e.a, e.b);
    if (!seen.insert({key.first, key.second}).second) return false;
  }
  return true;
}

namespace {

// Recursive construction over its own scratch vertex ids, remapped at the
// end: s -> 0, t -> 1, the rest in first-use order along the edge list.
struct GraphBuilder {
  const Formula& f;
  std::vector<SPGraph::Edge> edges;
  int next_vertex = 0;

  explicit GraphBuilder(const Formula& formula) : f(formula) {}

  int fresh() { return next_vertex++; }

  // Returns (s, t) of the subgraph for this node.
  std::pair<int, int> build(int node) {
    const Formula::Node& n = f.nodes[node];
    if (n.op == Formula::Op::Var) {
      int s = fresh(), t = fresh();
      edges.push_back(SPGraph::Edge{s, t, n.var});
      return {s, t};
    }
    std::vector<std::pair<int, int>> parts;
    parts.reserve(n.children.size());
    for (int c : n.children) parts.push_back(build(c));
    if (n.op == Formula::Op::And) {
      // chain: identify t_i with s_{i+1}
      for (std::size_t i = 0; i + 1 < parts.size(); ++i)
        rename(parts[i + 1].first, parts[i].second);
      return {parts.front().first, parts.back().second};
    }
    // parallel: identify all s_i and all t_i
    int s = parts.front().first, t = parts.front().second;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      rename(parts[i].first, s);
      rename(parts[i].second, t);
    }
    return {s, t};
  }

  void rename(int from, int to) {
    if (from == to) return;
    for (SPGraph::Edge& e : edges) {
      if (e.a == from) e.a = to;
      if (e.b == from) e.b = to;
    }
  }
};

}  // namespace

SPGraph formula_to_graph(const Formula& f) {
  if (!f.is_read_once())
    throw std::invalid_argument("graph construction requires a read-once formula");
  GraphBuilder b(f);
  auto [s, t] = b.build(f.root);

  SPGraph g;
  std::vector<int> remap(b.next_vertex, -1);
  int next = 0;
  remap[s] = next++;
  remap[t] = next++;
  for (SPGraph::Edge& e : b.edges) {
    if (remap[e.a] < 0) remap[e.a] = next++;
    if (remap[e.b] < 0) remap[e.b] = next++;
    e.a = remap[e.a];
    e.b = remap[e.b];
  }
  g.vertex_count = next;
  g.s = 0;
  g.t = 1;
  g.edges = std::move(b.edges);
  return g;
}

SPGraph subgraph(const SPGraph& g, const std::vector<bool>& z) {
  SPGraph out;
  out.vertex_count = g.vertex_count;
  out.s = g.s;
  out.t = g.t;
  for (const SPGraph::Edge& e : g.edges) {
    if (e.var < 0 || e.var >= static_cast<std::int64_t>(z.size()))
      throw std::invalid_argument("assignment length mismatch");
    if (z[e.var]) out.edges.push_back(e);
  }
  return out;
}

std::optional<int> shortest_st_path(const SPGraph& g) {
  std::vector<std::vector<int>> adj(g.vertex_count);
  for (const SPGraph::Edge& e : g.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<int> dist(g.vertex_count, -1);
  std::deque<int> queue{g.s};
  dist[g.s] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == g.t) return dist[v];
    for (int w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return std::nullopt;
}

std::string edge_list_text(const SPGraph& g) {
  std::string out = "c vertices " + std::to_string(g.vertex_count) + " s " +
                    std::to_string(g.s) + " t " + std::to_string(g.t) + "\n";
  for (const SPGraph::Edge& e : g.edges)
    out += std::to_string(e.a) + " " + std::to_string(e.b) + " " + std::to_string(e.var) + "\n";
  return out;
}

namespace {

// Product of AND fan-ins below `node`; throws on non-uniform layers.
std::int64_t fanin_product(const Formula& f, int node) {
  const Formula::Node& n = f.nodes[node];
  if (n.op == Formula::Op::Var) return 1;
  std::int64_t child = -1;
  for (int c : n.children) {
    std::int64_t p = fanin_product(f, c);
    if (child < 0)
      child = p;
    else if (child != p)
      throw std::invalid_argument("AND fan-ins are not uniform per layer");
  }
  if (n.op == Formula::Op::And) return static_cast<std::int64_t>(n.children.size()) * child;
  return child;
}

}  // namespace

std::int64_t and_fanin_product(const Formula& f) { return fanin_product(f, f.root); }

bool check_connectivity_equivalence(const Formula& f, const SPGraph& g, std::int64_t path_len,
                                    const std::vector<bool>& z) {
  SPGraph h = subgraph(g, z);
  std::optional<int> dist = shortest_st_path(h);
  bool value = f.eval(z);
  if (dist.has_value() != value) return false;
  // A connected subgraph realizes the full graph's shortest distance exactly.
  if (dist && *dist != path_len) return false;
  return true;
}

namespace {

BigInt ipow(const BigInt& base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Largest integer u with u^d <= cap.
BigInt integer_root_floor(const BigInt& cap, int d) {
  if (cap < 1) return 0;
  BigInt lo = 1, hi = 2;
  while (ipow(hi, d) <= cap) hi *= 2;
  while (lo + 1 < hi) {
    BigInt mid = (lo + hi) / 2;
    if (ipow(mid, d) <= cap)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

ReductionParams reduction_params(const BigInt& n, const BigInt& k, int d) {
  if (n < 1 || k < 1 || d < 1) throw std::invalid_argument("need n, k >= 1 and d >= 1");
  ReductionParams out;
  out.n = n;
  out.k = k;
  out.d = d;
  out.u0 = integer_root_floor(k / 2, d);
  out.degenerate = d < 2 || out.u0 < 2;
  out.k0 = ipow(out.u0, d);
  out.n_prime = n / 2;
  if (out.degenerate) return out;

  // w0 = max w with (u0 w)^(100 d) * w^33 <= n'^100; all exact integers.
  BigInt target = ipow(out.n_prime, 100);
  auto fits = [&](const BigInt& w) {
    return ipow(out.u0 * w, 100 * d) * ipow(w, 33) <= target;
  };
  BigInt lo = 0, hi = 1;
  while (fits(hi)) hi *= 2;
  while (lo + 1 < hi) {
    BigInt mid = (lo + hi) / 2;
    if (fits(mid))
      lo = mid;
    else
      hi = mid;
  }
  out.w0 = lo;
  out.n0_power_base = ipow(out.u0 * out.w0, d);
  out.n0_display = out.n0_power_base.convert_to<double>() *
                   std::pow(out.w0.convert_to<double>(), 0.33);

  BigInt wb = integer_root_floor(ipow(out.w0, 33), 100);  // floor(w0^(33/100))
  if (wb < 1) wb = 1;
  if (out.w0 <= 1000000000) {
    out.dagger = SipserParams{static_cast<int>(out.u0.convert_to<long>()),
                              static_cast<int>(out.w0.convert_to<long>()),
                              static_cast<int>(wb.convert_to<long>()), d};
  }
  return out;
}

}  // namespace sipserlab
