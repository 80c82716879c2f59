#include "sipserlab/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sipserlab/parallel.hpp"

namespace sipserlab {

Restriction ProjRestriction::expand(const AddressSpace& space) const {
  if (static_cast<std::int64_t>(blocks.size()) != space.num_blocks())
    throw std::invalid_argument("block count mismatch");
  Restriction r(space.n());
  int bs = space.block_size();
  for (std::int64_t beta = 0; beta < space.num_blocks(); ++beta)
    for (int tau = 0; tau < bs; ++tau)
      r.set(beta * bs + tau, blocks[beta].value_at(tau, space.params().w_b));
  return r;
}

std::int64_t ProjRestriction::star_count() const {
  std::int64_t c = 0;
  for (const BlockRestriction& b : blocks)
    if (b.star) ++c;
  return c;
}

static void check_q(const Rational& q) {
  if (q < 0 || q > 1) throw std::invalid_argument("q must lie in [0,1]");
}

BlockRestriction sample_block(int u, const Rational& q, SplitRng& rng) {
  check_q(q);
  if (rng.bernoulli(q)) return BlockRestriction::all_star();
  int section = static_cast<int>(rng.bounded(u));
  int bit = static_cast<int>(rng.bounded(2));
  return BlockRestriction::pattern(section, bit);
}

ProjRestriction sample_proj_restriction(const AddressSpace& space, const Rational& q,
                                        SplitRng& rng) {
  ProjRestriction rho;
  rho.params = space.params();
  rho.q = q;
  rho.blocks.reserve(space.num_blocks());
  for (std::int64_t b = 0; b < space.num_blocks(); ++b)
    rho.blocks.push_back(sample_block(space.params().u, q, rng));
  return rho;
}

std::vector<BlockRestriction> enumerate_support(int u) {
  if (u < 2) throw std::invalid_argument("u must be >= 2");
  std::vector<BlockRestriction> out;
  out.reserve(2 * u + 1);
  out.push_back(BlockRestriction::all_star());
  for (int a = 0; a < u; ++a)
    for (int z = 0; z < 2; ++z) out.push_back(BlockRestriction::pattern(a, z));
  return out;
}

Rational restriction_weight(const ProjRestriction& rho) {
  check_q(rho.q);
  std::int64_t stars = rho.star_count();
  std::int64_t patterns = static_cast<std::int64_t>(rho.blocks.size()) - stars;
  for (const BlockRestriction& b : rho.blocks)
    if (!b.star && (b.section < 0 || b.section >= rho.params.u || (b.bit & ~1)))
      throw std::domain_error("block restriction outside the support");
  Rational w = 1;
  Rational per_pattern = (Rational(1) - rho.q) / (2 * rho.params.u);
  for (std::int64_t i = 0; i < stars; ++i) w *= rho.q;
  for (std::int64_t i = 0; i < patterns; ++i) w *= per_pattern;
  return w;
}

Dnf project_dnf(const Dnf& f, const Restriction& rho, const AddressSpace& space) {
  if (f.num_vars != space.n() || rho.size() != space.n())
    throw std::invalid_argument("shape mismatch with ambient address space");
  Dnf out;
  out.num_vars = space.num_blocks();
  for (const Term& t : f.terms) {
    bool falsified = false;
    bool killed = false;
    Term yterm;
    for (const Literal& l : t.lits) {
      Trit v = rho[l.var];
      if (v != Trit::Star) {
        if ((v == Trit::One) != l.positive) {
          falsified = true;
          break;
        }
        continue;
      }
      std::int64_t y = space.block_of(l.var);
      bool dup = false;
      for (const Literal& seen : yterm.lits) {
        if (seen.var != y) continue;
        if (seen.positive != l.positive) killed = true;
        dup = true;
      }
      if (killed) break;
      if (!dup) yterm.lits.push_back(Literal{y, l.positive});
    }
    if (falsified || killed) continue;
    if (yterm.lits.empty()) return Dnf::constant(space.num_blocks(), true);
    out.terms.push_back(std::move(yterm));
  }
  return out;
}

TruthTable project_semantic(const TruthTable& t, const Restriction& rho,
                            const AddressSpace& space) {
  if (t.num_vars() != space.n() || rho.size() != space.n())
    throw std::invalid_argument("shape mismatch with ambient address space");
  if (space.num_blocks() > 20) throw std::invalid_argument("projection table capped at 20 blocks");
  TruthTable out(static_cast<int>(space.num_blocks()));
  for (std::uint64_t y = 0; y < out.rows(); ++y) {
    std::uint64_t x = 0;
    for (std::int64_t v = 0; v < space.n(); ++v) {
      Trit tv = rho[v];
      bool bit = tv == Trit::Star ? ((y >> space.block_of(v)) & 1) != 0 : tv == Trit::One;
      if (bit) x |= std::uint64_t{1} << v;
    }
    out.set(y, t.get(x));
  }
  return out;
}

CnfSipserFate classify_cnf_sipser_restriction(const BlockRestriction& r, int u, int w_b) {
  if (u < 2 || w_b < 1) throw std::invalid_argument("need u >= 2 and w_b >= 1");
  if (!r.star && (r.section < 0 || r.section >= u)) throw std::domain_error("not in support");
  if (r.star) return CnfSipserFate::Identity;
  // bit = 0 zeroes the named section; bit = 1 zeroes all u-1 others (u >= 2
  // guarantees at least one), so a full section dies either way.
  return CnfSipserFate::Zero;
}

bool survival_certificate(const ProjRestriction& rho, const AddressSpace& space) {
  const SipserParams& p = space.params();
  if (p.d < 1) throw std::invalid_argument("certificate needs at least one AND layer");
  for (std::int64_t g = 0; g < space.num_level2_or(); ++g) {
    int alive = 0;
    for (int j = 0; j < p.w; ++j)
      if (rho.blocks[space.level2_child_block(g, j)].star) ++alive;
    if (alive < p.w_b) return false;
  }
  return true;
}

Trimming trimming_restriction(const ProjRestriction& rho, const AddressSpace& space) {
  if (!survival_certificate(rho, space))
    throw std::domain_error("trimming requires a surviving certificate");
  const SipserParams& p = space.params();
  Trimming out;
  out.y_restriction = Restriction(space.num_blocks());
  for (std::int64_t g = 0; g < space.num_level2_or(); ++g) {
    int kept = 0;
    for (int j = 0; j < p.w; ++j) {
      std::int64_t beta = space.level2_child_block(g, j);
      if (!rho.blocks[beta].star) continue;
      if (kept < p.w_b) {
        out.kept_blocks.push_back(beta);
        ++kept;
      } else {
        out.y_restriction.set(beta, Trit::Zero);
      }
    }
  }
  return out;
}

namespace {

// Pr[Binomial(w, q) >= w_b], exactly.
Rational binomial_tail(int w, const Rational& q, int w_b) {
  Rational total = 0;
  for (int k = w_b; k <= w; ++k) {
    BigInt choose = 1;
    for (int i = 0; i < k; ++i) choose = choose * (w - i) / (i + 1);
    Rational term(choose);
    for (int i = 0; i < k; ++i) term *= q;
    for (int i = 0; i < w - k; ++i) term *= (Rational(1) - q);
    total += term;
  }
  return total;
}

}  // namespace

PreservationProbability preservation_probability_exact(const AddressSpace& space,
                                                       const Rational& q) {
  check_q(q);
  const SipserParams& p = space.params();
  double support_size = std::pow(2.0 * p.u + 1, static_cast<double>(space.num_blocks()));
  if (support_size > 1e7)
    throw std::invalid_argument("support too large for exact enumeration");
  std::int64_t gates = space.num_level2_or();

  PreservationProbability out;
  out.exact = true;
  Rational p_gate = binomial_tail(p.w, q, p.w_b);
  out.closed_form = 1;
  for (std::int64_t g = 0; g < gates; ++g) out.closed_form *= p_gate;

  // Full enumeration over labeled support; cross-checks the closed form.
  std::vector<BlockRestriction> supp = enumerate_support(p.u);
  std::vector<std::size_t> digits(space.num_blocks(), 0);
  ProjRestriction rho;
  rho.params = p;
  rho.q = q;
  rho.blocks.assign(space.num_blocks(), BlockRestriction::all_star());
  Rational total = 0;
  for (;;) {
    for (std::size_t i = 0; i < digits.size(); ++i) rho.blocks[i] = supp[digits[i]];
    if (survival_certificate(rho, space)) total += restriction_weight(rho);
    std::size_t i = digits.size();
    bool done = true;
    while (i-- > 0) {
      if (++digits[i] < supp.size()) {
        done = false;
        break;
      }
      digits[i] = 0;
    }
    if (done) break;
  }
  out.exact_prob = total;
  return out;
}

PreservationProbability preservation_probability_mc(const AddressSpace& space,
                                                    const Rational& q, std::int64_t trials,
                                                    std::uint64_t seed, int threads) {
  check_q(q);
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  const SipserParams& p = space.params();
  SplitRng master(seed);
  constexpr std::int64_t kChunk = 4096;
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
          ProjRestriction rho = sample_proj_restriction(space, q, rng);
          if (survival_certificate(rho, space)) ++count;
        }
        hits[c] = count;
      },
      threads);
  std::int64_t total = 0;
  for (std::int64_t h : hits) total += h;
  PreservationProbability out;
  out.exact = false;
  out.trials = trials;
  out.seed = seed;
  out.estimate = static_cast<double>(total) / static_cast<double>(trials);
  out.stderr_ = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
  Rational p_gate = binomial_tail(p.w, q, p.w_b);
  Rational cf = 1;
  for (std::int64_t g = 0; g < space.num_level2_or(); ++g) cf *= p_gate;
  out.closed_form = cf;
  return out;
}

}  // namespace sipserlab
