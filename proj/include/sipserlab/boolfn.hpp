#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sipserlab {

// Exhaustive-evaluation semantics carrier. Row indexing is little-endian:
// variable i is bit i of the row index. Hard cap of 24 variables; anything
// larger is an error, never a silent truncation.
class TruthTable {
 public:
  static constexpr int kMaxVars = 24;

  TruthTable() = default;
  explicit TruthTable(int num_vars);

  int num_vars() const { return num_vars_; }
  std::uint64_t rows() const { return std::uint64_t{1} << num_vars_; }

  bool get(std::uint64_t row) const {
    return (words_[row >> 6] >> (row & 63)) & 1;
  }
  void set(std::uint64_t row, bool v) {
    std::uint64_t mask = std::uint64_t{1} << (row & 63);
    if (v)
      words_[row >> 6] |= mask;
    else
      words_[row >> 6] &= ~mask;
  }

  bool is_constant() const;
  bool constant_value() const { return get(0); }

  // Row 0 first, '0'/'1' characters.
  std::string to_string() const;
  static TruthTable from_string(const std::string& bits);

  // Fixes variable v to b and drops it; remaining variables close ranks.
  TruthTable restrict_var(int v, bool b) const;

  bool operator==(const TruthTable&) const = default;

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  int num_vars_ = 0;
  std::vector<std::uint64_t> words_;
};

enum class Trit : unsigned char { Zero = 0, One = 1, Star = 2 };

// A value in {0,1,*} per variable (dense index order).
class Restriction {
 public:
  Restriction() = default;
  explicit Restriction(std::int64_t n) : values_(n, Trit::Star) {}

  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  Trit operator[](std::int64_t i) const { return values_[i]; }
  void set(std::int64_t i, Trit t) { values_[i] = t; }

  // Composition rho rho': rho wins wherever it is not star.
  Restriction composed_with(const Restriction& later) const;

  std::string to_string() const;
  static Restriction from_string(const std::string& s);

  bool operator==(const Restriction&) const = default;

 private:
  std::vector<Trit> values_;
};

struct Literal {
  std::int64_t var = 0;
  bool positive = true;

  bool operator==(const Literal&) const = default;
};

struct Term {
  std::vector<Literal> lits;

  int width() const { return static_cast<int>(lits.size()); }
  bool has_var(std::int64_t v) const;
  bool contradictory() const;  // some variable occurs with both signs
};

// Term order is significant (CanonicalDT processes terms first-to-first) and
// is preserved by every transformation here.
struct Dnf {
  std::int64_t num_vars = 0;
  std::vector<Term> terms;

  static Dnf constant(std::int64_t num_vars, bool value);
  bool is_syntactic_constant(bool* value) const;
};

struct Cnf {
  std::int64_t num_vars = 0;
  std::vector<Term> clauses;
};

// Dual DNF: swap AND/OR keeping literal signs; computes NOT f(NOT x).
Dnf dual_dnf(const Cnf& f);
Cnf dual_cnf(const Dnf& f);

enum class TermStatus { Live, Satisfied, Falsified };

struct RestrictedTerm {
  TermStatus status = TermStatus::Live;
  Term live;  // surviving literals when status == Live
};

RestrictedTerm restrict_term(const Term& t, const Restriction& rho);

bool eval_dnf(const Dnf& f, const std::vector<bool>& x);
bool eval_dnf_row(const Dnf& f, std::uint64_t row);  // num_vars <= 64

// Drops satisfied literals, deletes falsified terms; if any term becomes
// empty the result is the constant-1 DNF (a single empty term).
Dnf restrict_dnf(const Dnf& f, const Restriction& rho);

// Sorts literals by address, merges same-sign duplicates, deletes
// contradictory terms. The only place contradictions are simplified.
Dnf normalize_dnf(const Dnf& f);

TruthTable truth_table(const Dnf& f);
TruthTable truth_table(const TruthTable& t);  // idempotence anchor

// Binary query tree. Leaves carry a bit; internal nodes carry the queried
// variable plus bookkeeping used by the switching-lemma encoder: the index of
// the term that spawned the node's group and a group id shared by all nodes
// of one exhaustive-query subtree.
class DecisionTree {
 public:
  struct Node {
    std::int64_t var = -1;  // -1 marks a leaf
    int child0 = -1;
    int child1 = -1;
    int leaf_value = -1;
    int term_index = -1;
    int group_id = -1;
  };

  std::vector<Node> nodes;
  int root = -1;
  std::int64_t num_vars = 0;

  bool is_leaf(int id) const { return nodes[id].var < 0; }
  int depth() const;  // maximum number of queries on a root-to-leaf path
  bool eval_row(std::uint64_t row) const;
  bool no_repeated_queries() const;
};

TruthTable truth_table(const DecisionTree& t);

// Minimum decision tree depth, by memoized recursion over subfunctions.
// Brute-force oracle; capped at 16 variables.
int optimal_dt_depth(const TruthTable& t);

// True iff g arises from f by fixing all but g.num_vars() variables and
// renaming the free ones. Exhaustive search; capped at 16 variables.
bool is_subfunction(const TruthTable& g, const TruthTable& f);

}  // namespace sipserlab
