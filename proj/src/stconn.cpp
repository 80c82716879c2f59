#include "sipserlab/stconn.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace sipserlab {

int pair_count(int n) { return n * (n - 1) / 2; }

int pair_index(int n, int i, int j) {
  if (i == j) throw std::invalid_argument("no variable for a self loop");
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n) throw std::invalid_argument("node out of range");
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

namespace {

constexpr int kConstOne = -1;  // stall edges; dropped inside ANDs

struct SquaringBuilder {
  int n;
  Circuit out;
  std::map<std::tuple<int, int, int>, int> memo;  // (k, min, max) -> gate id
  std::vector<int> inputs;

  explicit SquaringBuilder(int nodes) : n(nodes), inputs(pair_count(nodes), -1) {
    out.num_vars = pair_count(nodes);
  }

  int input(int i, int j) {
    int v = pair_index(n, i, j);
    if (inputs[v] < 0) inputs[v] = out.add_input(v);
    return inputs[v];
  }

  // Gate computing distance(i, j) <= k, or kConstOne when i == j.
  int reach(int k, int i, int j) {
    if (i == j) return kConstOne;
    auto key = std::make_tuple(k, std::min(i, j), std::max(i, j));
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int id;
    if (k == 1) {
      id = input(i, j);
    } else {
      int hi = (k + 1) / 2, lo = k / 2;
      std::vector<std::vector<int>> found;
      for (int m = 0; m < n; ++m) {
        std::vector<int> kids;
        int a = reach(hi, i, m);
        int b = reach(lo, m, j);
        if (a != kConstOne) kids.push_back(a);
        if (b != kConstOne) kids.push_back(b);
        std::sort(kids.begin(), kids.end());
        kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
        if (std::find(found.begin(), found.end(), kids) == found.end())
          found.push_back(std::move(kids));
      }
      std::vector<int> or_kids;
      for (std::vector<int>& kids : found) {
        if (kids.size() == 1)
          or_kids.push_back(kids[0]);  // unary AND collapses
        else
          or_kids.push_back(out.add_gate(Circuit::Kind::And, std::move(kids)));
      }
      std::sort(or_kids.begin(), or_kids.end());
      or_kids.erase(std::unique(or_kids.begin(), or_kids.end()), or_kids.end());
      id = or_kids.size() == 1 ? or_kids[0] : out.add_gate(Circuit::Kind::Or, std::move(or_kids));
    }
    memo.emplace(key, id);
    return id;
  }
};

struct PowerBuilder {
  int n;
  std::vector<std::int64_t> cumulative;  // T_i = t_1 * ... * t_i
  Circuit out;
  std::map<std::tuple<int, std::int64_t, int, int>, int> memo;  // (level, budget, min, max)
  std::vector<int> inputs;

  PowerBuilder(int nodes, const std::vector<int>& budgets)
      : n(nodes), inputs(pair_count(nodes), -1) {
    out.num_vars = pair_count(nodes);
    cumulative.push_back(1);
    for (int t : budgets) cumulative.push_back(cumulative.back() * t);
  }

  int input(int i, int j) {
    int v = pair_index(n, i, j);
    if (inputs[v] < 0) inputs[v] = out.add_input(v);
    return inputs[v];
  }

  // Entry of the level-`lvl` relation: distance(a, b) <= budget in the input
  // graph, with budget <= T_lvl. Always an OR-of-ANDs over level lvl-1
  // entries, so each level contributes exactly two layers.
  int entry(int lvl, std::int64_t budget, int a, int b) {
    if (a == b) return kConstOne;
    if (lvl == 0) return input(a, b);  // budget is necessarily 1
    auto key = std::make_tuple(lvl, budget, std::min(a, b), std::max(a, b));
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    std::int64_t below = cumulative[lvl - 1];
    int pieces = static_cast<int>((budget + below - 1) / below);
    std::int64_t last = budget - static_cast<std::int64_t>(pieces - 1) * below;

    std::set<std::vector<int>> found;
    std::vector<int> mids(pieces - 1, 0);
    for (;;) {
      std::vector<int> kids;
      int prev = a;
      for (int p = 0; p < pieces; ++p) {
        int next = p + 1 == pieces ? b : mids[p];
        std::int64_t piece_budget = p + 1 == pieces ? last : below;
        int id = entry(lvl - 1, piece_budget, prev, next);
        if (id != kConstOne) kids.push_back(id);
        prev = next;
      }
      std::sort(kids.begin(), kids.end());
      kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
      found.insert(std::move(kids));  // never empty while a != b
      int p = pieces - 1;
      while (--p >= 0) {
        if (++mids[p] < n) break;
        mids[p] = 0;
      }
      if (p < 0) break;
    }
    std::vector<int> or_kids;
    for (const std::vector<int>& kids : found)
      or_kids.push_back(out.add_gate(Circuit::Kind::And, kids));
    int id = out.add_gate(Circuit::Kind::Or, std::move(or_kids));
    memo.emplace(key, id);
    return id;
  }
};

}  // namespace

Circuit build_squaring_circuit(int n, int k, int s, int t) {
  if (n < 2 || k < 1 || s == t) throw std::invalid_argument("need n >= 2, k >= 1, s != t");
  SquaringBuilder b(n);
  b.out.output = b.reach(k, s, t);
  b.out.validate();
  return b.out;
}

std::vector<int> power_round_budgets(int k, int d) {
  // Greedy minimal budgets with product >= k: each round takes the ceiling
  // root of what remains over the rounds left.
  auto covers = [](int t, int e, std::int64_t cap) {
    std::int64_t v = 1;
    for (int i = 0; i < e; ++i) {
      v *= t;
      if (v >= cap) return true;
    }
    return v >= cap;
  };
  std::vector<int> budgets;
  std::int64_t rem = k;
  for (int i = 0; i < d; ++i) {
    int rounds_left = d - i;
    int t = 1;
    while (!covers(t, rounds_left, rem)) ++t;
    budgets.push_back(t);
    rem = (rem + t - 1) / t;
  }
  return budgets;
}

Circuit build_power_circuit(int n, int k, int d, int s, int t) {
  if (n < 2 || k < 1 || d < 1 || s == t)
    throw std::invalid_argument("need n >= 2, k >= 1, d >= 1, s != t");
  PowerBuilder b(n, power_round_budgets(k, d));
  if (b.cumulative[d] < k) throw std::logic_error("budgets do not cover k");
  b.out.output = b.entry(d, k, s, t);
  b.out.validate();
  return b.out;
}

bool bfs_oracle(const std::vector<bool>& adj, int n, int s, int t, int k) {
  if (static_cast<int>(adj.size()) != pair_count(n))
    throw std::invalid_argument("adjacency length mismatch");
  if (s == t) return true;
  std::vector<int> dist(n, -1);
  std::deque<int> queue{s};
  dist[s] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (dist[v] >= k) continue;
    for (int w = 0; w < n; ++w) {
      if (w == v || dist[w] >= 0) continue;
      if (adj[pair_index(n, v, w)]) {
        dist[w] = dist[v] + 1;
        if (w == t) return dist[w] <= k;
        queue.push_back(w);
      }
    }
  }
  return false;
}

}  // namespace sipserlab
