#include "sipserlab/boolfn.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace sipserlab {

TruthTable::TruthTable(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 0 || num_vars > kMaxVars)
    throw std::invalid_argument("truth table limited to 24 variables");
  std::uint64_t n_rows = std::uint64_t{1} << num_vars;
  words_.assign((n_rows + 63) / 64, 0);
}

bool TruthTable::is_constant() const {
  bool v = get(0);
  for (std::uint64_t r = 1; r < rows(); ++r)
    if (get(r) != v) return false;
  return true;
}

std::string TruthTable::to_string() const {
  std::string s(rows(), '0');
  for (std::uint64_t r = 0; r < rows(); ++r)
    if (get(r)) s[r] = '1';
  return s;
}

TruthTable TruthTable::from_string(const std::string& bits) {
  int nv = 0;
  while ((std::uint64_t{1} << nv) < bits.size()) ++nv;
  if ((std::uint64_t{1} << nv) != bits.size())
    throw std::invalid_argument("bit string length must be a power of two");
  TruthTable t(nv);
  for (std::uint64_t r = 0; r < bits.size(); ++r) {
    if (bits[r] != '0' && bits[r] != '1')
      throw std::invalid_argument("bit string must be over {0,1}");
    t.set(r, bits[r] == '1');
  }
  return t;
}

TruthTable TruthTable::restrict_var(int v, bool b) const {
  if (v < 0 || v >= num_vars_) throw std::invalid_argument("variable out of range");
  TruthTable out(num_vars_ - 1);
  std::uint64_t low_mask = (std::uint64_t{1} << v) - 1;
  for (std::uint64_t r = 0; r < out.rows(); ++r) {
    std::uint64_t full = (r & low_mask) | ((r & ~low_mask) << 1) |
                         (std::uint64_t{b} << v);
    out.set(r, get(full));
  }
  return out;
}

Restriction Restriction::composed_with(const Restriction& later) const {
  if (size() != later.size()) throw std::invalid_argument("restriction length mismatch");
  Restriction out = *this;
  for (std::int64_t i = 0; i < size(); ++i)
    if (out.values_[i] == Trit::Star) out.values_[i] = later.values_[i];
  return out;
}

std::string Restriction::to_string() const {
  std::string s;
  s.reserve(values_.size());
  for (Trit t : values_)
    s.push_back(t == Trit::Star ? '*' : (t == Trit::One ? '1' : '0'));
  return s;
}

Restriction Restriction::from_string(const std::string& s) {
  Restriction r(static_cast<std::int64_t>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    switch (s[i]) {
      case '0': r.set(i, Trit::Zero); break;
      case '1': r.set(i, Trit::One); break;
      case '*': r.set(i, Trit::Star); break;
      default: throw std::invalid_argument("restriction characters must be 0/1/*");
    }
  }
  return r;
}

bool Term::has_var(std::int64_t v) const {
  for (const Literal& l : lits)
    if (l.var == v) return true;
  return false;
}

bool Term::contradictory() const {
  for (std::size_t i = 0; i < lits.size(); ++i)
    for (std::size_t j = i + 1; j < lits.size(); ++j)
      if (lits[i].var == lits[j].var && lits[i].positive != lits[j].positive) return true;
  return false;
}

Dnf Dnf::constant(std::int64_t num_vars, bool value) {
  Dnf f;
  f.num_vars = num_vars;
  if (value) f.terms.push_back(Term{});  // single empty term
  return f;
}

bool Dnf::is_syntactic_constant(bool* value) const {
  if (terms.empty()) {
    *value = false;
    return true;
  }
  for (const Term& t : terms)
    if (t.lits.empty()) {
      *value = true;
      return true;
    }
  return false;
}

Dnf dual_dnf(const Cnf& f) {
  Dnf d;
  d.num_vars = f.num_vars;
  d.terms = f.clauses;
  return d;
}

Cnf dual_cnf(const Dnf& f) {
  Cnf c;
  c.num_vars = f.num_vars;
  c.clauses = f.terms;
  return c;
}

RestrictedTerm restrict_term(const Term& t, const Restriction& rho) {
  RestrictedTerm out;
  out.status = TermStatus::Satisfied;
  for (const Literal& l : t.lits) {
    Trit v = rho[l.var];
    if (v == Trit::Star) {
      out.live.lits.push_back(l);
      continue;
    }
    bool bit = (v == Trit::One);
    if (bit != l.positive) {
      out.status = TermStatus::Falsified;
      out.live.lits.clear();
      return out;
    }
  }
  if (!out.live.lits.empty()) out.status = TermStatus::Live;
  return out;
}

bool eval_dnf(const Dnf& f, const std::vector<bool>& x) {
  if (static_cast<std::int64_t>(x.size()) != f.num_vars)
    throw std::invalid_argument("assignment length mismatch");
  for (const Term& t : f.terms) {
    bool sat = true;
    for (const Literal& l : t.lits)
      if (x[l.var] != l.positive) {
        sat = false;
        break;
      }
    if (sat) return true;
  }
  return false;
}

bool eval_dnf_row(const Dnf& f, std::uint64_t row) {
  for (const Term& t : f.terms) {
    bool sat = true;
    for (const Literal& l : t.lits)
      if ((((row >> l.var) & 1) != 0) != l.positive) {
        sat = false;
        break;
      }
    if (sat) return true;
  }
  return false;
}

Dnf restrict_dnf(const Dnf& f, const Restriction& rho) {
  if (rho.size() != f.num_vars) throw std::invalid_argument("restriction length mismatch");
  Dnf out;
  out.num_vars = f.num_vars;
  for (const Term& t : f.terms) {
    RestrictedTerm rt = restrict_term(t, rho);
    if (rt.status == TermStatus::Falsified) continue;
    if (rt.status == TermStatus::Satisfied) return Dnf::constant(f.num_vars, true);
    out.terms.push_back(std::move(rt.live));
  }
  return out;
}

Dnf normalize_dnf(const Dnf& f) {
  Dnf out;
  out.num_vars = f.num_vars;
  for (const Term& t : f.terms) {
    Term sorted = t;
    std::sort(sorted.lits.begin(), sorted.lits.end(), [](const Literal& a, const Literal& b) {
      return a.var != b.var ? a.var < b.var : a.positive < b.positive;
    });
    bool contradictory = false;
    Term merged;
    for (const Literal& l : sorted.lits) {
      if (!merged.lits.empty() && merged.lits.back().var == l.var) {
        if (merged.lits.back().positive != l.positive) {
          contradictory = true;
          break;
        }
        continue;  // same-sign duplicate
      }
      merged.lits.push_back(l);
    }
    if (!contradictory) out.terms.push_back(std::move(merged));
  }
  return out;
}

TruthTable truth_table(const Dnf& f) {
  if (f.num_vars > TruthTable::kMaxVars)
    throw std::invalid_argument("truth table limited to 24 variables");
  TruthTable t(static_cast<int>(f.num_vars));
  for (std::uint64_t r = 0; r < t.rows(); ++r) t.set(r, eval_dnf_row(f, r));
  return t;
}

TruthTable truth_table(const TruthTable& t) { return t; }

int DecisionTree::depth() const {
  if (root < 0) return 0;
  struct Item {
    int id;
    int d;
  };
  std::vector<Item> stack{{root, 0}};
  int best = 0;
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const Node& n = nodes[it.id];
    if (n.var < 0) {
      best = std::max(best, it.d);
      continue;
    }
    stack.push_back({n.child0, it.d + 1});
    stack.push_back({n.child1, it.d + 1});
  }
  return best;
}

bool DecisionTree::eval_row(std::uint64_t row) const {
  int id = root;
  while (!is_leaf(id)) {
    const Node& n = nodes[id];
    id = ((row >> n.var) & 1) ? n.child1 : n.child0;
  }
  return nodes[id].leaf_value != 0;
}

bool DecisionTree::no_repeated_queries() const {
  std::vector<std::int64_t> path;
  auto walk = [&](auto&& self, int id) -> bool {
    const Node& n = nodes[id];
    if (n.var < 0) return true;
    for (std::int64_t v : path)
      if (v == n.var) return false;
    path.push_back(n.var);
    bool ok = self(self, n.child0) && self(self, n.child1);
    path.pop_back();
    return ok;
  };
  return root < 0 || walk(walk, root);
}

TruthTable truth_table(const DecisionTree& t) {
  if (t.num_vars > TruthTable::kMaxVars)
    throw std::invalid_argument("truth table limited to 24 variables");
  TruthTable out(static_cast<int>(t.num_vars));
  for (std::uint64_t r = 0; r < out.rows(); ++r) out.set(r, t.eval_row(r));
  return out;
}

namespace {

struct TableKey {
  int num_vars;
  std::vector<std::uint64_t> words;
  bool operator==(const TableKey&) const = default;
};

struct TableKeyHash {
  std::size_t operator()(const TableKey& k) const {
    std::size_t h = std::hash<int>()(k.num_vars);
    for (std::uint64_t w : k.words) h = h * 0x9e3779b97f4a7c15ull + std::hash<std::uint64_t>()(w);
    return h;
  }
};

int dt_depth_rec(const TruthTable& t,
                 std::unordered_map<TableKey, int, TableKeyHash>& memo) {
  if (t.is_constant()) return 0;
  TableKey key{t.num_vars(), t.words()};
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  int best = t.num_vars();
  for (int v = 0; v < t.num_vars(); ++v) {
    TruthTable t0 = t.restrict_var(v, false);
    TruthTable t1 = t.restrict_var(v, true);
    if (t0 == t1) continue;  // irrelevant variable, querying it never helps
    int d = 1 + std::max(dt_depth_rec(t0, memo), dt_depth_rec(t1, memo));
    best = std::min(best, d);
  }
  memo.emplace(std::move(key), best);
  return best;
}

}  // namespace

int optimal_dt_depth(const TruthTable& t) {
  if (t.num_vars() > 16)
    throw std::invalid_argument("optimal_dt_depth limited to 16 variables");
  std::unordered_map<TableKey, int, TableKeyHash> memo;
  return dt_depth_rec(t, memo);
}

bool is_subfunction(const TruthTable& g, const TruthTable& f) {
  int ng = g.num_vars(), nf = f.num_vars();
  if (ng > nf || nf > 16)
    throw std::invalid_argument("is_subfunction requires g.vars <= f.vars <= 16");
  // Choose the free set S (|S| = ng), fix the complement, try every
  // assignment-of-g-variables-to-S bijection.
  std::vector<int> subset(ng);
  std::vector<int> perm(ng);
  auto check_subset = [&](const std::vector<int>& s) {
    std::vector<int> rest;
    for (int v = 0; v < nf; ++v)
      if (std::find(s.begin(), s.end(), v) == s.end()) rest.push_back(v);
    std::uint64_t fixings = std::uint64_t{1} << rest.size();
    for (std::uint64_t fix = 0; fix < fixings; ++fix) {
      for (int p = 0; p < ng; ++p) perm[p] = p;
      do {
        bool match = true;
        for (std::uint64_t y = 0; y < g.rows() && match; ++y) {
          std::uint64_t row = 0;
          for (std::size_t i = 0; i < rest.size(); ++i)
            if ((fix >> i) & 1) row |= std::uint64_t{1} << rest[i];
          for (int j = 0; j < ng; ++j)
            if ((y >> j) & 1) row |= std::uint64_t{1} << s[perm[j]];
          if (f.get(row) != g.get(y)) match = false;
        }
        if (match) return true;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return false;
  };
  // Enumerate subsets of size ng in lexicographic order.
  for (int i = 0; i < ng; ++i) subset[i] = i;
  for (;;) {
    if (check_subset(subset)) return true;
    int i = ng - 1;
    while (i >= 0 && subset[i] == nf - ng + i) --i;
    if (i < 0) return false;
    ++subset[i];
    for (int j = i + 1; j < ng; ++j) subset[j] = subset[j - 1] + 1;
  }
}

}  // namespace sipserlab
