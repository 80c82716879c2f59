#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sipserlab/boolfn.hpp"
#include "sipserlab/circuit.hpp"
#include "sipserlab/rng.hpp"

using namespace sipserlab;

namespace {

Dnf or_of(int m) {
  Dnf f;
  f.num_vars = m;
  for (int i = 0; i < m; ++i) f.terms.push_back(Term{{Literal{i, true}}});
  return f;
}

Dnf and_of(int m) {
  Dnf f;
  f.num_vars = m;
  Term t;
  for (int i = 0; i < m; ++i) t.lits.push_back(Literal{i, true});
  f.terms.push_back(t);
  return f;
}

Restriction all_star(std::int64_t n) { return Restriction(n); }

}  // namespace

TEST_CASE("eval_dnf basics") {
  // x0 OR (x1 AND NOT x2)
  Dnf f;
  f.num_vars = 3;
  f.terms.push_back(Term{{Literal{0, true}}});
  f.terms.push_back(Term{{Literal{1, true}, Literal{2, false}}});
  CHECK(eval_dnf(f, {true, false, true}));
  CHECK(eval_dnf(f, {false, true, false}));
  CHECK_FALSE(eval_dnf(f, {false, false, false}));
  CHECK_FALSE(eval_dnf(f, {false, true, true}));

  Dnf empty;
  empty.num_vars = 2;
  CHECK_FALSE(eval_dnf(empty, {true, true}));

  Dnf one = Dnf::constant(2, true);
  CHECK(eval_dnf(one, {false, false}));

  CHECK_THROWS_AS(eval_dnf(f, {true}), std::invalid_argument);
}

TEST_CASE("contradictory term removed by normalization only") {
  Dnf f;
  f.num_vars = 1;
  f.terms.push_back(Term{{Literal{0, true}, Literal{0, false}}});
  CHECK(f.terms.size() == 1);           // kept syntactically
  CHECK_FALSE(eval_dnf(f, {true}));     // but never satisfied
  CHECK_FALSE(eval_dnf(f, {false}));
  Dnf n = normalize_dnf(f);
  CHECK(n.terms.empty());
  CHECK(truth_table(f) == truth_table(n));
}

TEST_CASE("restrict_dnf") {
  // T = x0 AND NOT x1; rho fixes x0 = 1
  Dnf f;
  f.num_vars = 2;
  f.terms.push_back(Term{{Literal{0, true}, Literal{1, false}}});
  Restriction rho = Restriction::from_string("1*");
  Dnf g = restrict_dnf(f, rho);
  REQUIRE(g.terms.size() == 1);
  CHECK(g.terms[0].lits == std::vector<Literal>{Literal{1, false}});

  // all-star is the identity
  Dnf id = restrict_dnf(f, all_star(2));
  CHECK(truth_table(id) == truth_table(f));

  // a fully satisfied term makes the whole DNF the constant 1
  Dnf g2 = restrict_dnf(f, Restriction::from_string("10"));
  bool v;
  CHECK(g2.is_syntactic_constant(&v));
  CHECK(v);

  // a falsified literal deletes the term
  Dnf g3 = restrict_dnf(f, Restriction::from_string("0*"));
  CHECK(g3.terms.empty());
}

TEST_CASE("restriction composition law") {
  SplitRng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 4;
    Dnf f;
    f.num_vars = n;
    int terms = 1 + rng.bounded(4);
    for (int t = 0; t < terms; ++t) {
      Term term;
      for (int v = 0; v < n; ++v) {
        switch (rng.bounded(3)) {
          case 0: term.lits.push_back(Literal{v, true}); break;
          case 1: term.lits.push_back(Literal{v, false}); break;
          default: break;
        }
      }
      f.terms.push_back(term);
    }
    auto random_restriction = [&] {
      Restriction r(n);
      for (int v = 0; v < n; ++v) r.set(v, static_cast<Trit>(rng.bounded(3)));
      return r;
    };
    Restriction a = random_restriction(), b = random_restriction();
    Dnf lhs = restrict_dnf(restrict_dnf(f, a), b);
    Dnf rhs = restrict_dnf(f, a.composed_with(b));
    CHECK(truth_table(lhs) == truth_table(rhs));
  }
}

TEST_CASE("truth tables") {
  CHECK(truth_table(or_of(2)).to_string() == "0111");
  CHECK(truth_table(and_of(2)).to_string() == "0001");
  TruthTable t = truth_table(or_of(3));
  CHECK(truth_table(t) == t);  // idempotence
  CHECK(TruthTable::from_string(t.to_string()) == t);
  CHECK_THROWS_AS(TruthTable(25), std::invalid_argument);
}

TEST_CASE("restriction strings") {
  Restriction r = Restriction::from_string("01*1");
  CHECK(r.to_string() == "01*1");
  CHECK(r[2] == Trit::Star);
  CHECK_THROWS_AS(Restriction::from_string("012"), std::invalid_argument);
}

TEST_CASE("optimal_dt_depth") {
  TruthTable constant(3);
  CHECK(optimal_dt_depth(constant) == 0);
  for (int m = 1; m <= 4; ++m) CHECK(optimal_dt_depth(truth_table(or_of(m))) == m);

  // XOR of two variables: both relevant on every path
  TruthTable x(2);
  x.set(1, true);
  x.set(2, true);
  CHECK(optimal_dt_depth(x) == 2);

  CHECK_THROWS_AS(optimal_dt_depth(TruthTable(17)), std::invalid_argument);
}

TEST_CASE("optimal_dt_depth bounds") {
  SplitRng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    TruthTable t(4);
    for (std::uint64_t r = 0; r < t.rows(); ++r) t.set(r, rng.bounded(2) == 1);
    int d = optimal_dt_depth(t);
    CHECK(d <= t.num_vars());
    CHECK((d == 0) == t.is_constant());
  }
}

TEST_CASE("is_subfunction") {
  TruthTable or2 = truth_table(or_of(2));
  TruthTable or3 = truth_table(or_of(3));
  TruthTable and2 = truth_table(and_of(2));
  CHECK(is_subfunction(or2, or2));
  CHECK(is_subfunction(or2, or3));
  CHECK_FALSE(is_subfunction(and2, or2));
  CHECK_THROWS_AS(is_subfunction(or2, TruthTable(17)), std::invalid_argument);
}

TEST_CASE("decision tree depth dominates the optimum") {
  SplitRng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    // random tree over 4 variables, random queries without repeats per path
    DecisionTree t;
    t.num_vars = 4;
    auto build = [&](auto&& self, std::uint8_t used, int depth) -> int {
      bool make_leaf = depth >= 3 || rng.bounded(3) == 0 || used == 0b1111;
      if (make_leaf) {
        DecisionTree::Node n;
        n.leaf_value = static_cast<int>(rng.bounded(2));
        t.nodes.push_back(n);
        return static_cast<int>(t.nodes.size()) - 1;
      }
      int var;
      do {
        var = static_cast<int>(rng.bounded(4));
      } while (used & (1 << var));
      int c0 = self(self, used | (1 << var), depth + 1);
      int c1 = self(self, used | (1 << var), depth + 1);
      DecisionTree::Node n;
      n.var = var;
      n.child0 = c0;
      n.child1 = c1;
      t.nodes.push_back(n);
      return static_cast<int>(t.nodes.size()) - 1;
    };
    t.root = build(build, 0, 0);
    CHECK(t.no_repeated_queries());
    CHECK(t.depth() >= optimal_dt_depth(truth_table(t)));
  }
}

TEST_CASE("circuit evaluation agrees with truth table") {
  SplitRng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 3 + static_cast<int>(rng.bounded(3));
    Circuit c;
    std::vector<int> pool;
    for (int v = 0; v < n; ++v) pool.push_back(c.add_input(v));
    for (int g = 0; g < 6; ++g) {
      int fanin = 2 + static_cast<int>(rng.bounded(3));
      std::vector<int> kids;
      for (int i = 0; i < fanin; ++i)
        kids.push_back(pool[rng.bounded(pool.size())]);
      pool.push_back(c.add_gate(rng.bounded(2) ? Circuit::Kind::And : Circuit::Kind::Or,
                                std::move(kids)));
    }
    c.output = pool.back();
    c.validate();
    TruthTable t = truth_table(c);
    for (std::uint64_t r = 0; r < t.rows(); ++r) CHECK(t.get(r) == c.eval_row(r));
  }
}

TEST_CASE("circuit metrics conventions") {
  Circuit single;
  single.output = single.add_input(0);
  CHECK(circuit_metrics(single).size == 1);
  CHECK(circuit_metrics(single).depth == 0);

  Circuit orm;
  std::vector<int> kids;
  for (int v = 0; v < 5; ++v) kids.push_back(orm.add_input(v));
  orm.output = orm.add_gate(Circuit::Kind::Or, std::move(kids));
  CHECK(circuit_metrics(orm).size == 6);
  CHECK(circuit_metrics(orm).depth == 1);
  CHECK(circuit_metrics(orm).max_fanin == 5);
}
