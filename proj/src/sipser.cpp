#include "sipserlab/sipser.hpp"

#include <algorithm>
#include <stdexcept>

namespace sipserlab {

void SipserParams::validate() const {
  if (u < 2) throw std::invalid_argument("u must be >= 2");
  if (w < 1 || w_b < 1) throw std::invalid_argument("w and w_b must be >= 1");
  if (d < 0) throw std::invalid_argument("d must be >= 0");
}

AddressSpace::AddressSpace(SipserParams p) : p_(p) {
  p_.validate();
  if (p_.d == 0) {
    dims_ = {p_.w_b};
    n_ = p_.w_b;
    num_blocks_ = 1;
    return;
  }
  dims_.push_back(p_.w);
  for (int i = 1; i < p_.d; ++i) {
    dims_.push_back(p_.u);
    dims_.push_back(p_.w);
  }
  dims_.push_back(p_.u);
  dims_.push_back(p_.w_b);
  n_ = 1;
  for (int dim : dims_) n_ *= dim;
  num_blocks_ = n_ / block_size();
}

std::int64_t AddressSpace::num_level2_or() const {
  if (p_.d < 1) throw std::domain_error("no level-2 OR gates when d == 0");
  return num_blocks_ / p_.w;
}

std::int64_t AddressSpace::address_to_index(const std::vector<int>& tuple) const {
  if (tuple.size() != dims_.size()) throw std::invalid_argument("address arity mismatch");
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (tuple[i] < 0 || tuple[i] >= dims_[i])
      throw std::invalid_argument("address component out of range");
    idx = idx * dims_[i] + tuple[i];
  }
  return idx;
}

std::vector<int> AddressSpace::index_to_address(std::int64_t index) const {
  if (index < 0 || index >= n_) throw std::invalid_argument("index out of range");
  std::vector<int> tuple(dims_.size());
  for (std::size_t i = dims_.size(); i-- > 0;) {
    tuple[i] = static_cast<int>(index % dims_[i]);
    index /= dims_[i];
  }
  return tuple;
}

int Formula::add_var(std::int64_t v) {
  Node n;
  n.op = Op::Var;
  n.var = v;
  nodes.push_back(std::move(n));
  if (v >= num_vars) num_vars = v + 1;
  return static_cast<int>(nodes.size()) - 1;
}

int Formula::add_gate(Op op, std::vector<int> children) {
  Node n;
  n.op = op;
  n.children = std::move(children);
  nodes.push_back(std::move(n));
  return static_cast<int>(nodes.size()) - 1;
}

bool Formula::eval_row(std::uint64_t row) const {
  std::vector<char> val(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    switch (n.op) {
      case Op::Var:
        val[i] = static_cast<char>((row >> n.var) & 1);
        break;
      case Op::And: {
        char v = 1;
        for (int c : n.children)
          if (!val[c]) v = 0;
        val[i] = v;
        break;
      }
      case Op::Or: {
        char v = 0;
        for (int c : n.children)
          if (val[c]) v = 1;
        val[i] = v;
        break;
      }
    }
  }
  return val[root] != 0;
}

bool Formula::eval(const std::vector<bool>& x) const {
  if (static_cast<std::int64_t>(x.size()) != num_vars)
    throw std::invalid_argument("assignment length mismatch");
  std::uint64_t row = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) row |= std::uint64_t{1} << i;
  return eval_row(row);
}

int Formula::depth() const {
  std::vector<int> d(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].op == Op::Var) continue;
    int m = 0;
    for (int c : nodes[i].children) m = std::max(m, d[c]);
    d[i] = m + 1;
  }
  return d[root];
}

bool Formula::is_read_once() const {
  std::vector<int> seen(num_vars, 0);
  for (const Node& n : nodes)
    if (n.op == Op::Var) seen[n.var]++;
  for (int c : seen)
    if (c != 1) return false;
  return true;
}

TruthTable truth_table(const Formula& f) {
  if (f.num_vars > TruthTable::kMaxVars)
    throw std::invalid_argument("truth table limited to 24 variables");
  TruthTable t(static_cast<int>(f.num_vars));
  for (std::uint64_t r = 0; r < t.rows(); ++r) t.set(r, f.eval_row(r));
  return t;
}

namespace {

// Children are created in ascending address order, so leaf i ends up holding
// variable i.
int build_or_level(Formula& f, const SipserParams& p, int and_layers_below,
                   std::int64_t& next_var);

int build_and_level(Formula& f, const SipserParams& p, int and_layers_below,
                    std::int64_t& next_var) {
  std::vector<int> kids;
  kids.reserve(p.u);
  for (int a = 0; a < p.u; ++a)
    kids.push_back(build_or_level(f, p, and_layers_below - 1, next_var));
  return f.add_gate(Formula::Op::And, std::move(kids));
}

int build_or_level(Formula& f, const SipserParams& p, int and_layers_below,
                   std::int64_t& next_var) {
  std::vector<int> kids;
  if (and_layers_below == 0) {
    kids.reserve(p.w_b);
    for (int b = 0; b < p.w_b; ++b) kids.push_back(f.add_var(next_var++));
  } else {
    kids.reserve(p.w);
    for (int b = 0; b < p.w; ++b)
      kids.push_back(build_and_level(f, p, and_layers_below, next_var));
  }
  return f.add_gate(Formula::Op::Or, std::move(kids));
}

}  // namespace

Formula build_skewed_sipser(const SipserParams& p) {
  p.validate();
  Formula f;
  std::int64_t next_var = 0;
  f.root = build_or_level(f, p, p.d, next_var);
  return f;
}

Formula build_cnf_sipser(int u, int w_b) {
  if (u < 2 || w_b < 1) throw std::invalid_argument("need u >= 2 and w_b >= 1");
  Formula f;
  std::vector<int> sections;
  std::int64_t v = 0;
  for (int a = 0; a < u; ++a) {
    std::vector<int> leaves;
    for (int b = 0; b < w_b; ++b) leaves.push_back(f.add_var(v++));
    sections.push_back(f.add_gate(Formula::Op::Or, std::move(leaves)));
  }
  f.root = f.add_gate(Formula::Op::And, std::move(sections));
  return f;
}

Formula build_dagger(const SipserParams& p) {
  Formula base = build_skewed_sipser(p);
  Formula f;
  std::vector<int> remap(base.nodes.size());
  for (std::size_t i = 0; i < base.nodes.size(); ++i) {
    const Formula::Node& n = base.nodes[i];
    if (n.op == Formula::Op::Var) {
      int a = f.add_var(2 * n.var);
      int b = f.add_var(2 * n.var + 1);
      remap[i] = f.add_gate(Formula::Op::And, {a, b});
    } else {
      std::vector<int> kids;
      kids.reserve(n.children.size());
      for (int c : n.children) kids.push_back(remap[c]);
      remap[i] = f.add_gate(n.op, std::move(kids));
    }
  }
  f.root = remap[base.root];
  return f;
}

namespace {

// De Morgan conversion working state. make_* splice children of same-kind
// child gates (layer collapsing) but keep unary gates as gates.
struct Converter {
  const Formula& f;
  const SipserParams& p;
  Circuit out;
  std::vector<int> input_ids;

  explicit Converter(const Formula& formula, const SipserParams& params)
      : f(formula), p(params), input_ids(formula.num_vars, -1) {}

  int input(std::int64_t var) {
    if (input_ids[var] < 0) input_ids[var] = out.add_input(var);
    return input_ids[var];
  }

  int make(Circuit::Kind kind, const std::vector<int>& raw) {
    std::vector<int> kids;
    for (int id : raw) {
      const Circuit::Gate& g = out.gates[id];
      if (g.kind == kind) {
        for (int c : g.children)
          if (std::find(kids.begin(), kids.end(), c) == kids.end()) kids.push_back(c);
      } else if (std::find(kids.begin(), kids.end(), id) == kids.end()) {
        kids.push_back(id);
      }
    }
    return out.add_gate(kind, std::move(kids));
  }

  bool converted_layer(int and_level) const { return (p.d - and_level) % 2 == 0; }

  // and_layers_below: AND layers strictly below this OR gate.
  int build_or(int node, int and_layers_below) {
    const Formula::Node& n = f.nodes[node];
    std::vector<int> kids;
    for (int c : n.children) {
      if (and_layers_below == 0)
        kids.push_back(input(f.nodes[c].var));
      else if (converted_layer(and_layers_below))
        kids.push_back(convert_and(c, and_layers_below));
      else
        kids.push_back(build_and(c, and_layers_below));
    }
    return make(Circuit::Kind::Or, kids);
  }

  int build_and(int node, int and_level) {
    const Formula::Node& n = f.nodes[node];
    std::vector<int> kids;
    for (int c : n.children) kids.push_back(build_or(c, and_level - 1));
    return make(Circuit::Kind::And, kids);
  }

  // AND of ORs -> OR over all one-child-per-OR picks of the AND of the picks.
  int convert_and(int node, int and_level) {
    const Formula::Node& n = f.nodes[node];
    std::vector<std::vector<int>> picks;  // built gate ids per OR child
    for (int or_child : n.children) {
      const Formula::Node& o = f.nodes[or_child];
      std::vector<int> ids;
      for (int g : o.children) {
        if (and_level == 1)
          ids.push_back(input(f.nodes[g].var));
        else
          ids.push_back(build_and(g, and_level - 1));
      }
      picks.push_back(std::move(ids));
    }
    std::vector<int> tuple_ands;
    std::vector<int> choice(picks.size(), 0);
    bool done = false;
    while (!done) {
      std::vector<int> tuple;
      for (std::size_t i = 0; i < picks.size(); ++i) tuple.push_back(picks[i][choice[i]]);
      tuple_ands.push_back(make(Circuit::Kind::And, tuple));
      done = true;
      for (std::size_t i = picks.size(); i-- > 0;) {
        if (++choice[i] < static_cast<int>(picks[i].size())) {
          done = false;
          break;
        }
        choice[i] = 0;
      }
    }
    return make(Circuit::Kind::Or, tuple_ands);
  }
};

}  // namespace

Circuit demorgan_convert(const Formula& f, const SipserParams& p) {
  p.validate();
  Converter conv(f, p);
  conv.out.num_vars = f.num_vars;
  conv.out.output = conv.build_or(f.root, p.d);
  Circuit out = conv.out.pruned();
  out.validate();
  return out;
}

Dnf skewed_sipser_d1_dnf(const AddressSpace& space) {
  const SipserParams& p = space.params();
  if (p.d != 1) throw std::invalid_argument("DNF expansion implemented for d == 1");
  Dnf f;
  f.num_vars = space.n();
  for (std::int64_t beta = 0; beta < space.num_blocks(); ++beta) {
    std::vector<int> pick(p.u, 0);
    for (;;) {
      Term t;
      for (int a = 0; a < p.u; ++a)
        t.lits.push_back(Literal{beta * space.block_size() + a * p.w_b + pick[a], true});
      f.terms.push_back(std::move(t));
      int i = p.u - 1;
      while (i >= 0 && ++pick[i] == p.w_b) pick[i--] = 0;
      if (i < 0) break;
    }
  }
  return f;
}

}  // namespace sipserlab
