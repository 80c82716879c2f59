#include "sipserlab/switching.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "sipserlab/parallel.hpp"

namespace sipserlab {

Rational PslParams::bound() const {
  if (q <= 0 || q >= 1) throw std::invalid_argument("bound requires q in (0,1)");
  Rational base = Rational(8) * q * r * formula_params.u / (Rational(1) - q);
  Rational out = 1;
  for (int i = 0; i < s; ++i) out *= base;
  return out;
}

std::string ThetaImage::key() const {
  std::string k;
  for (const BlockRestriction& b : composed.blocks) {
    if (b.star)
      k += "*;";
    else
      k += std::to_string(b.section) + ":" + std::to_string(b.bit) + ";";
  }
  k += "|";
  for (std::uint8_t b : path_bits) k += char('0' + b);
  k += "|";
  for (std::uint8_t b : eta_code) k += char('0' + b);
  return k;
}

namespace {

int location_bits(int r) {
  int b = 0;
  while ((1 << b) < r) ++b;
  return b;
}

bool pattern_satisfies(const BlockRestriction& pat, int tau, bool positive, int w_b) {
  Trit v = pat.value_at(tau, w_b);
  return (v == Trit::One) == positive;
}

// The 2u patterns in the fixed deterministic order sigma uses: expansion
// string under 0 < 1 first, ties (possible only at u = 2) broken by
// (section, bit).
std::vector<BlockRestriction> patterns_lex(int u, int w_b) {
  std::vector<std::pair<std::string, BlockRestriction>> items;
  for (int a = 0; a < u; ++a)
    for (int z = 0; z < 2; ++z) {
      BlockRestriction p = BlockRestriction::pattern(a, z);
      std::string key(u * w_b, '0');
      for (int tau = 0; tau < u * w_b; ++tau)
        key[tau] = p.value_at(tau, w_b) == Trit::One ? '1' : '0';
      items.emplace_back(std::move(key), p);
    }
  std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    if (x.second.section != y.second.section) return x.second.section < y.second.section;
    return x.second.bit < y.second.bit;
  });
  std::vector<BlockRestriction> out;
  out.reserve(items.size());
  for (auto& it : items) out.push_back(it.second);
  return out;
}

struct BlockLits {
  std::int64_t block;
  std::vector<std::pair<int, bool>> lits;  // (tau, sign)
};

// Live literals grouped by block, ascending block address.
std::vector<BlockLits> group_by_block(const Term& live, const AddressSpace& space) {
  std::vector<BlockLits> groups;
  for (const Literal& l : live.lits) {
    std::int64_t beta = space.block_of(l.var);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const BlockLits& g) { return g.block == beta; });
    if (it == groups.end()) {
      groups.push_back(BlockLits{beta, {{space.tau_of(l.var), l.positive}}});
    } else {
      it->lits.emplace_back(space.tau_of(l.var), l.positive);
    }
  }
  std::sort(groups.begin(), groups.end(),
            [](const BlockLits& a, const BlockLits& b) { return a.block < b.block; });
  return groups;
}

std::optional<BlockRestriction> first_satisfying_pattern(
    const std::vector<std::pair<int, bool>>& lits, const std::vector<BlockRestriction>& lex,
    int w_b) {
  for (const BlockRestriction& p : lex) {
    bool ok = true;
    for (const auto& [tau, sign] : lits)
      if (!pattern_satisfies(p, tau, sign, w_b)) {
        ok = false;
        break;
      }
    if (ok) return p;
  }
  return std::nullopt;
}

bool term_proj_killed(const Term& live, const AddressSpace& space) {
  for (std::size_t i = 0; i < live.lits.size(); ++i)
    for (std::size_t j = i + 1; j < live.lits.size(); ++j)
      if (space.block_of(live.lits[i].var) == space.block_of(live.lits[j].var) &&
          live.lits[i].positive != live.lits[j].positive)
        return true;
  return false;
}

// -1 when non-constant, else 0/1. Semantic check over the variables that
// actually occur in the projected DNF.
int semantic_constant(const Dnf& proj) {
  bool v;
  if (proj.is_syntactic_constant(&v)) return v ? 1 : 0;
  std::vector<std::int64_t> vars;
  for (const Term& t : proj.terms)
    for (const Literal& l : t.lits)
      if (std::find(vars.begin(), vars.end(), l.var) == vars.end()) vars.push_back(l.var);
  if (vars.size() > 20) throw std::invalid_argument("projected DNF too wide for constancy check");
  std::uint64_t rows = std::uint64_t{1} << vars.size();
  bool first = true;
  bool value = false;
  for (std::uint64_t m = 0; m < rows; ++m) {
    bool any = false;
    for (const Term& t : proj.terms) {
      bool sat = true;
      for (const Literal& l : t.lits) {
        std::size_t pos = std::find(vars.begin(), vars.end(), l.var) - vars.begin();
        if ((((m >> pos) & 1) != 0) != l.positive) {
          sat = false;
          break;
        }
      }
      if (sat) {
        any = true;
        break;
      }
    }
    if (first) {
      value = any;
      first = false;
    } else if (any != value) {
      return -1;
    }
  }
  return value ? 1 : 0;
}

void require_normalized(const Dnf& f) {
  Dnf n = normalize_dnf(f);
  if (n.terms.size() != f.terms.size())
    throw std::invalid_argument("DNF must be normalized first");
  for (std::size_t i = 0; i < f.terms.size(); ++i)
    if (!(n.terms[i].lits == f.terms[i].lits))
      throw std::invalid_argument("DNF must be normalized first");
}

struct TreeBuilder {
  const Dnf& f;
  const AddressSpace& space;
  const std::vector<BlockRestriction> lex;
  DecisionTree tree;
  bool fallback = false;
  int next_group = 0;

  TreeBuilder(const Dnf& dnf, const AddressSpace& sp)
      : f(dnf), space(sp), lex(patterns_lex(sp.params().u, sp.params().w_b)) {
    tree.num_vars = sp.num_blocks();
  }

  int leaf(int value) {
    DecisionTree::Node n;
    n.leaf_value = value;
    tree.nodes.push_back(n);
    return static_cast<int>(tree.nodes.size()) - 1;
  }

  void fix_block(Restriction& rho, std::int64_t beta, bool bit) const {
    int bs = space.block_size();
    for (int tau = 0; tau < bs; ++tau)
      rho.set(beta * bs + tau, bit ? Trit::One : Trit::Zero);
  }

  int build(const Restriction& rho) {
    Dnf proj = project_dnf(f, rho, space);
    int cval = semantic_constant(proj);
    if (cval >= 0) return leaf(cval);

    int term_idx = -1;
    Term live;
    for (std::size_t t = 0; t < f.terms.size(); ++t) {
      RestrictedTerm rt = restrict_term(f.terms[t], rho);
      if (rt.status != TermStatus::Live) continue;
      bool ok = true;
      for (const BlockLits& g : group_by_block(rt.live, space))
        if (!first_satisfying_pattern(g.lits, lex, space.params().w_b)) {
          ok = false;
          break;
        }
      if (ok) {
        term_idx = static_cast<int>(t);
        live = std::move(rt.live);
        break;
      }
    }
    if (term_idx < 0) {
      // Width >= u can leave every live term support-unsatisfiable while the
      // projection is still non-constant; extend with the first term whose
      // projection is not killed. Never fires when width <= u-1.
      for (std::size_t t = 0; t < f.terms.size(); ++t) {
        RestrictedTerm rt = restrict_term(f.terms[t], rho);
        if (rt.status != TermStatus::Live) continue;
        if (term_proj_killed(rt.live, space)) continue;
        term_idx = static_cast<int>(t);
        live = std::move(rt.live);
        fallback = true;
        break;
      }
    }
    if (term_idx < 0)
      throw std::logic_error("no usable term although projection is non-constant");

    std::vector<std::int64_t> eta;
    for (const BlockLits& g : group_by_block(live, space)) eta.push_back(g.block);
    int group = next_group++;
    return subtree(rho, eta, 0, term_idx, group);
  }

  int subtree(const Restriction& rho, const std::vector<std::int64_t>& eta, std::size_t j,
              int term_idx, int group) {
    if (j == eta.size()) return build(rho);
    Restriction r0 = rho;
    fix_block(r0, eta[j], false);
    int c0 = subtree(r0, eta, j + 1, term_idx, group);
    Restriction r1 = rho;
    fix_block(r1, eta[j], true);
    int c1 = subtree(r1, eta, j + 1, term_idx, group);
    DecisionTree::Node n;
    n.var = eta[j];
    n.child0 = c0;
    n.child1 = c1;
    n.term_index = term_idx;
    n.group_id = group;
    tree.nodes.push_back(n);
    return static_cast<int>(tree.nodes.size()) - 1;
  }
};

}  // namespace

std::optional<ProjRestriction> supp_satisfiable(const Term& t, const Restriction& rho,
                                                const Rational& q, const AddressSpace& space) {
  RestrictedTerm rt = restrict_term(t, rho);
  if (rt.status == TermStatus::Falsified) return std::nullopt;
  ProjRestriction witness;
  witness.params = space.params();
  witness.q = q;
  witness.blocks.assign(space.num_blocks(), BlockRestriction::all_star());
  if (rt.status == TermStatus::Satisfied) return witness;
  std::vector<BlockRestriction> lex = patterns_lex(space.params().u, space.params().w_b);
  for (const BlockLits& g : group_by_block(rt.live, space)) {
    std::optional<BlockRestriction> p =
        first_satisfying_pattern(g.lits, lex, space.params().w_b);
    if (!p) return std::nullopt;
    witness.blocks[g.block] = *p;
  }
  return witness;
}

CanonicalDtResult canonical_dt(const Dnf& f, const Restriction& rho, const AddressSpace& space) {
  require_normalized(f);
  if (rho.size() != space.n()) throw std::invalid_argument("restriction length mismatch");
  TreeBuilder b(f, space);
  b.tree.root = b.build(rho);
  return CanonicalDtResult{std::move(b.tree), b.fallback};
}

ProjRestriction support_element(const AddressSpace& space, const Rational& q,
                                std::int64_t index) {
  std::vector<BlockRestriction> supp = enumerate_support(space.params().u);
  ProjRestriction rho;
  rho.params = space.params();
  rho.q = q;
  rho.blocks.assign(space.num_blocks(), BlockRestriction::all_star());
  std::int64_t radix = static_cast<std::int64_t>(supp.size());
  for (std::int64_t i = space.num_blocks(); i-- > 0;) {
    rho.blocks[i] = supp[index % radix];
    index /= radix;
  }
  if (index != 0) throw std::invalid_argument("support index out of range");
  return rho;
}

SupportScan scan_support(const Dnf& f, const AddressSpace& space) {
  Dnf nf = normalize_dnf(f);
  double size_estimate =
      std::pow(2.0 * space.params().u + 1, static_cast<double>(space.num_blocks()));
  if (size_estimate > 1e7) throw std::invalid_argument("support too large to enumerate");
  std::int64_t total = 1;
  for (std::int64_t i = 0; i < space.num_blocks(); ++i) total *= 2 * space.params().u + 1;

  SupportScan scan;
  scan.cdt_depth.resize(total);
  scan.opt_depth.resize(total);
  scan.stars.resize(total);
  // Elements are independent; a partitioned index sweep writes to disjoint
  // slots, so the result is scheduling-invariant.
  constexpr std::int64_t kChunk = 256;
  std::int64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<char> fallback(chunks, 0);
  Rational q_unused = Rational(1, 2);
  parallel_chunks(chunks, [&](std::int64_t c) {
    std::int64_t lo = c * kChunk;
    std::int64_t hi = std::min(total, lo + kChunk);
    for (std::int64_t idx = lo; idx < hi; ++idx) {
      ProjRestriction rho = support_element(space, q_unused, idx);
      Restriction expanded = rho.expand(space);
      CanonicalDtResult res = canonical_dt(nf, expanded, space);
      scan.cdt_depth[idx] = res.tree.depth();
      if (res.used_fallback) fallback[c] = 1;
      scan.opt_depth[idx] = optimal_dt_depth(truth_table(project_dnf(nf, expanded, space)));
      scan.stars[idx] = rho.star_count();
    }
  });
  for (char fb : fallback) scan.any_fallback = scan.any_fallback || fb;
  return scan;
}

namespace {

Rational support_prob(const SupportScan& scan, const AddressSpace& space, const Rational& q,
                      const std::vector<std::int64_t>& indices) {
  Rational per_pattern = (Rational(1) - q) / (2 * space.params().u);
  Rational total = 0;
  for (std::int64_t idx : indices) {
    Rational w = 1;
    std::int64_t stars = scan.stars[idx];
    std::int64_t pats = space.num_blocks() - stars;
    for (std::int64_t i = 0; i < stars; ++i) w *= q;
    for (std::int64_t i = 0; i < pats; ++i) w *= per_pattern;
    total += w;
  }
  return total;
}

BadSetReport bad_set_impl(const Dnf& f, const PslParams& params, const AddressSpace& space,
                          bool with_codec) {
  if (params.s < 1) throw std::invalid_argument("s must be >= 1");
  Dnf nf = normalize_dnf(f);
  for (const Term& t : nf.terms)
    if (t.width() > params.r) throw std::invalid_argument("DNF wider than declared r");

  SupportScan scan = scan_support(nf, space);
  BadSetReport rep;
  rep.params = params;
  rep.support_size = scan.size();
  rep.any_fallback = scan.any_fallback;
  if (scan.any_fallback && params.bound_applies())
    throw std::logic_error("canonical tree fallback fired in the r <= u-1 regime");

  std::vector<std::int64_t> bad, bad_opt;
  for (std::int64_t i = 0; i < scan.size(); ++i) {
    if (scan.cdt_depth[i] >= params.s) bad.push_back(i);
    if (scan.opt_depth[i] >= params.s) bad_opt.push_back(i);
  }
  rep.bad_indices = bad;
  rep.exact_prob = support_prob(scan, space, params.q, bad);
  rep.exact_prob_optimal = support_prob(scan, space, params.q, bad_opt);
  rep.bound = params.bound();
  rep.bound_applies = params.bound_applies();
  rep.bound_holds = rep.exact_prob <= rep.bound;

  if (!with_codec) return rep;

  Rational gamma = 1;
  Rational gamma_base = (Rational(1) - params.q) / (Rational(2) * params.q * space.params().u);
  for (int i = 0; i < params.s; ++i) gamma *= gamma_base;

  rep.injection_ok = true;
  rep.roundtrip_ok = true;
  rep.ratio_ok = true;
  rep.group_mass_ok = true;
  std::set<std::string> images;
  std::map<std::string, Rational> group_mass;
  for (std::int64_t idx : bad) {
    ProjRestriction rho = support_element(space, params.q, idx);
    ThetaImage theta = encode_theta(nf, rho, params.s, params.r, space);
    std::string key = theta.key();
    if (!images.insert(key).second) rep.injection_ok = false;
    ProjRestriction back = decode_theta(nf, theta, params.s, params.r, space);
    if (!(back.blocks == rho.blocks)) rep.roundtrip_ok = false;
    if (weight_ratio(rho, theta) != gamma) rep.ratio_ok = false;
    std::string side(key.substr(key.find('|')));
    group_mass[side] += restriction_weight(theta.composed);
  }
  for (const auto& [k, mass] : group_mass)
    if (mass > 1) rep.group_mass_ok = false;
  return rep;
}

}  // namespace

BadSetReport bad_set(const Dnf& f, const PslParams& params, const AddressSpace& space) {
  return bad_set_impl(f, params, space, /*with_codec=*/true);
}

BadSetReport bad_set_depths_only(const Dnf& f, const PslParams& params,
                                 const AddressSpace& space) {
  return bad_set_impl(f, params, space, /*with_codec=*/false);
}

namespace {

struct PathStep {
  std::int64_t var;
  std::uint8_t bit;
  int term_index;
  int group_id;
};

bool lex_first_long_path(const DecisionTree& t, int id, std::size_t min_len,
                         std::vector<PathStep>& path) {
  const DecisionTree::Node& n = t.nodes[id];
  if (n.var < 0) return path.size() >= min_len;
  for (std::uint8_t bit = 0; bit < 2; ++bit) {
    path.push_back(PathStep{n.var, bit, n.term_index, n.group_id});
    if (lex_first_long_path(t, bit ? n.child1 : n.child0, min_len, path)) return true;
    path.pop_back();
  }
  return false;
}

}  // namespace

ThetaImage encode_theta(const Dnf& f, const ProjRestriction& rho, int s, int r,
                        const AddressSpace& space) {
  require_normalized(f);
  if (s < 1) throw std::invalid_argument("s must be >= 1");
  Restriction expanded = rho.expand(space);
  CanonicalDtResult res = canonical_dt(f, expanded, space);
  if (res.used_fallback)
    throw std::domain_error("theta is defined only in the width <= u-1 regime");
  if (res.tree.depth() < s) throw std::domain_error("restriction is not bad at this s");

  std::vector<PathStep> path;
  if (!lex_first_long_path(res.tree, res.tree.root, static_cast<std::size_t>(s), path))
    throw std::logic_error("no long path despite depth >= s");
  path.resize(s);  // truncation at length s

  // Consecutive runs of one group id = the trees R_1..R_{s'} the path visits.
  struct Group {
    int term_index;
    std::vector<std::int64_t> vars;
    std::vector<std::uint8_t> bits;
  };
  std::vector<Group> groups;
  int last_group = -1;
  for (const PathStep& st : path) {
    if (st.group_id != last_group) {
      groups.push_back(Group{st.term_index, {}, {}});
      last_group = st.group_id;
    }
    groups.back().vars.push_back(st.var);
    groups.back().bits.push_back(st.bit);
  }

  std::vector<BlockRestriction> lex = patterns_lex(space.params().u, space.params().w_b);
  std::vector<BlockRestriction> composed_blocks = rho.blocks;
  Restriction hybrid = expanded;  // rho^(i-1) as the loop advances
  std::vector<std::uint8_t> path_bits;
  std::vector<std::uint8_t> eta_code;
  int lb = location_bits(r);

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const Group& g = groups[gi];
    const Term& term = f.terms[g.term_index];
    RestrictedTerm rt = restrict_term(term, hybrid);
    if (rt.status != TermStatus::Live)
      throw std::logic_error("spawning term is not live against its hybrid");
    std::vector<BlockLits> by_block = group_by_block(rt.live, space);

    for (std::size_t j = 0; j < g.vars.size(); ++j) {
      std::int64_t beta = g.vars[j];
      auto it = std::find_if(by_block.begin(), by_block.end(),
                             [&](const BlockLits& bl) { return bl.block == beta; });
      if (it == by_block.end()) throw std::logic_error("queried block has no live literal");
      std::optional<BlockRestriction> pat =
          first_satisfying_pattern(it->lits, lex, space.params().w_b);
      if (!pat) throw std::logic_error("no satisfying pattern for a queried block");
      composed_blocks[beta] = *pat;

      // location: index of the first literal of this block in the term
      int loc = -1;
      for (std::size_t li = 0; li < term.lits.size(); ++li)
        if (space.block_of(term.lits[li].var) == beta) {
          loc = static_cast<int>(li);
          break;
        }
      if (loc < 0 || loc >= r) throw std::logic_error("literal location out of range");
      for (int b = lb - 1; b >= 0; --b) eta_code.push_back((loc >> b) & 1);
      eta_code.push_back(j + 1 == g.vars.size() ? 1 : 0);
      path_bits.push_back(g.bits[j]);
    }
    // advance the hybrid: (eta_i -> pi^(i)) over the full queried set
    int bs = space.block_size();
    for (std::size_t j = 0; j < g.vars.size(); ++j)
      for (int tau = 0; tau < bs; ++tau)
        hybrid.set(g.vars[j] * bs + tau, g.bits[j] ? Trit::One : Trit::Zero);
  }

  ThetaImage theta;
  theta.composed = ProjRestriction{rho.params, rho.q, std::move(composed_blocks)};
  theta.path_bits = std::move(path_bits);
  theta.eta_code = std::move(eta_code);
  if (static_cast<int>(theta.path_bits.size()) != s)
    throw std::logic_error("path bit count mismatch");
  return theta;
}

ProjRestriction decode_theta(const Dnf& f, const ThetaImage& theta, int s, int r,
                             const AddressSpace& space) {
  require_normalized(f);
  int lb = location_bits(r);
  if (static_cast<int>(theta.path_bits.size()) != s)
    throw DecodeError("shape", "path bits must have length s");
  if (theta.eta_code.size() != static_cast<std::size_t>(s) * (lb + 1))
    throw DecodeError("shape", "eta code must have length s*(ceil(log2 r)+1)");

  // Split eta_code into per-tree segments at terminator bits.
  struct Segment {
    std::vector<int> locations;
  };
  std::vector<Segment> segments;
  Segment current;
  for (std::size_t pos = 0; pos < theta.eta_code.size();) {
    int loc = 0;
    for (int b = 0; b < lb; ++b) loc = (loc << 1) | theta.eta_code[pos++];
    current.locations.push_back(loc);
    std::uint8_t terminator = theta.eta_code[pos++];
    if (terminator) {
      segments.push_back(std::move(current));
      current = Segment{};
    }
  }
  if (!current.locations.empty())
    throw DecodeError("eta-code", "trailing segment without terminator");
  if (segments.empty()) throw DecodeError("eta-code", "no segments");

  std::vector<BlockRestriction> lex = patterns_lex(space.params().u, space.params().w_b);
  Restriction hybrid = theta.composed.expand(space);
  std::vector<std::int64_t> eta_union;
  std::size_t bit_pos = 0;
  int bs = space.block_size();

  for (std::size_t i = 0; i < segments.size(); ++i) {
    bool last = i + 1 == segments.size();
    int term_idx = -1;
    for (std::size_t t = 0; t < f.terms.size(); ++t) {
      RestrictedTerm rt = restrict_term(f.terms[t], hybrid);
      if (rt.status == TermStatus::Satisfied) {
        term_idx = static_cast<int>(t);
        break;
      }
      if (last && rt.status == TermStatus::Live) {
        bool ok = true;
        for (const BlockLits& g : group_by_block(rt.live, space))
          if (!first_satisfying_pattern(g.lits, lex, space.params().w_b)) {
            ok = false;
            break;
          }
        if (ok) {
          term_idx = static_cast<int>(t);
          break;
        }
      }
    }
    if (term_idx < 0) throw DecodeError("term-recovery", "no satisfied term at stage " +
                                                             std::to_string(i + 1));
    const Term& term = f.terms[term_idx];

    std::vector<std::int64_t> eta;
    for (int loc : segments[i].locations) {
      if (loc >= term.width()) throw DecodeError("location", "literal index exceeds term width");
      std::int64_t beta = space.block_of(term.lits[loc].var);
      if (!eta.empty() && beta <= eta.back())
        throw DecodeError("location", "blocks not strictly ascending");
      eta.push_back(beta);
    }
    for (std::int64_t beta : eta) {
      if (std::find(eta_union.begin(), eta_union.end(), beta) != eta_union.end())
        throw DecodeError("eta-overlap", "block rewritten twice");
      bool bit = theta.path_bits[bit_pos++] != 0;
      for (int tau = 0; tau < bs; ++tau)
        hybrid.set(beta * bs + tau, bit ? Trit::One : Trit::Zero);
      eta_union.push_back(beta);
    }
  }
  if (bit_pos != static_cast<std::size_t>(s)) throw DecodeError("shape", "unused path bits");

  ProjRestriction rho;
  rho.params = theta.composed.params;
  rho.q = theta.composed.q;
  rho.blocks = theta.composed.blocks;
  for (std::int64_t beta : eta_union) rho.blocks[beta] = BlockRestriction::all_star();

  // Round-trip verification: the reconstruction must encode back to the
  // exact input triple, otherwise the bits were not a legitimate image.
  try {
    ThetaImage again = encode_theta(f, rho, s, r, space);
    if (!(again.composed.blocks == theta.composed.blocks) ||
        again.path_bits != theta.path_bits || again.eta_code != theta.eta_code)
      throw DecodeError("verify", "triple is not the image of its reconstruction");
  } catch (const DecodeError&) {
    throw;
  } catch (const std::exception& e) {
    throw DecodeError("verify", e.what());
  }
  return rho;
}

Rational weight_ratio(const ProjRestriction& rho, const ThetaImage& theta) {
  return restriction_weight(theta.composed) / restriction_weight(rho);
}

McEstimate psl_monte_carlo(const Dnf& f, const PslParams& params, const AddressSpace& space,
                           std::int64_t trials, std::uint64_t seed, int threads) {
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  Dnf nf = normalize_dnf(f);
  SplitRng master(seed);
  constexpr std::int64_t kChunk = 1024;
  std::int64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::int64_t> hits(chunks, 0);
  parallel_chunks(
      chunks,
      [&](std::int64_t c) {
        SplitRng rng = master.derive(static_cast<std::uint64_t>(c));
        std::int64_t lo = c * kChunk;
        std::int64_t hi = std::min(trials, lo + kChunk);
        std::int64_t count = 0;
        for (std::int64_t i = lo; i < hi; ++i) {
          ProjRestriction rho = sample_proj_restriction(space, params.q, rng);
          CanonicalDtResult res = canonical_dt(nf, rho.expand(space), space);
          if (res.tree.depth() >= params.s) ++count;
        }
        hits[c] = count;
      },
      threads);
  std::int64_t total = 0;
  for (std::int64_t h : hits) total += h;
  McEstimate out;
  out.trials = trials;
  out.seed = seed;
  out.estimate = static_cast<double>(total) / static_cast<double>(trials);
  out.stderr_ = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
  return out;
}

BadSetReport bad_set_cnf(const Cnf& f, const PslParams& params, const AddressSpace& space) {
  return bad_set(dual_dnf(f), params, space);
}

CanonicalDtResult canonical_dt_cnf(const Cnf& f, const Restriction& rho,
                                   const AddressSpace& space) {
  Restriction flipped(rho.size());
  for (std::int64_t i = 0; i < rho.size(); ++i) {
    Trit t = rho[i];
    flipped.set(i, t == Trit::Star ? Trit::Star : (t == Trit::One ? Trit::Zero : Trit::One));
  }
  return canonical_dt(normalize_dnf(dual_dnf(f)), flipped, space);
}

std::optional<WidthViolation> search_u_width_violation(
    const std::vector<SipserParams>& instances, const std::vector<Rational>& qs,
    const std::vector<int>& ss) {
  for (const SipserParams& p : instances) {
    AddressSpace space(p);
    Dnf f = skewed_sipser_d1_dnf(space);
    for (const Rational& q : qs)
      for (int s : ss) {
        PslParams params{p.u, s, q, p};
        BadSetReport rep = bad_set_depths_only(f, params, space);
        if (rep.exact_prob_optimal > rep.bound)
          return WidthViolation{f, params, rep.exact_prob_optimal, rep.bound};
      }
  }
  return std::nullopt;
}

ProjectTrimResult project_and_trim_step(const Circuit& c, const ProjRestriction& rho,
                                        const AddressSpace& space) {
  Trimming trim = trimming_restriction(rho, space);  // checks the certificate
  Restriction expanded = rho.expand(space);
  const SipserParams& p = space.params();

  std::vector<std::int64_t> new_index(space.num_blocks(), -1);
  for (std::size_t j = 0; j < trim.kept_blocks.size(); ++j)
    new_index[trim.kept_blocks[j]] = static_cast<std::int64_t>(j);

  ProjectTrimResult out;
  out.kept_blocks = trim.kept_blocks;
  out.circuit.num_vars = static_cast<std::int64_t>(trim.kept_blocks.size());

  // Gate-wise substitution with constant propagation. konst: -1 live, else
  // the constant value.
  struct Slot {
    int id = -1;
    int konst = -1;
  };
  std::vector<Slot> slots(c.gates.size());
  std::vector<int> input_of(trim.kept_blocks.size(), -1);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Circuit::Gate& g = c.gates[i];
    if (g.kind == Circuit::Kind::Input) {
      Trit v = expanded[g.var];
      if (v != Trit::Star) {
        slots[i].konst = v == Trit::One ? 1 : 0;
        continue;
      }
      std::int64_t beta = space.block_of(g.var);
      if (trim.y_restriction[beta] == Trit::Zero) {
        slots[i].konst = 0;
        continue;
      }
      std::int64_t y = new_index[beta];
      if (input_of[y] < 0) input_of[y] = out.circuit.add_input(y);
      slots[i].id = input_of[y];
      continue;
    }
    bool is_and = g.kind == Circuit::Kind::And;
    int killed = is_and ? 0 : 1;
    bool dead = false;
    std::vector<int> kids;
    for (int ch : g.children) {
      if (slots[ch].konst == killed) {
        dead = true;
        break;
      }
      if (slots[ch].konst < 0) kids.push_back(slots[ch].id);
    }
    if (dead) {
      slots[i].konst = killed;
    } else if (kids.empty()) {
      slots[i].konst = 1 - killed;
    } else {
      std::sort(kids.begin(), kids.end());
      kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
      slots[i].id = out.circuit.add_gate(g.kind, std::move(kids));
    }
  }
  if (slots[c.output].konst >= 0) {
    // Constant output: an empty And is 1, an empty Or is 0.
    out.circuit.output = out.circuit.add_gate(
        slots[c.output].konst ? Circuit::Kind::And : Circuit::Kind::Or, {});
  } else {
    out.circuit.output = slots[c.output].id;
  }
  out.circuit = out.circuit.pruned();

  out.target = build_skewed_sipser(SipserParams{p.u, p.w, p.w_b, p.d - 1});
  return out;
}

Rational size_budget(int u, const Rational& q) {
  Rational base = Rational(16) * u * u * q;
  Rational out(1, 10);
  for (int i = 0; i < u - 1; ++i) out /= base;
  return out;
}

}  // namespace sipserlab
