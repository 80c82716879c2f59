#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sipserlab/boolfn.hpp"
#include "sipserlab/circuit.hpp"
#include "sipserlab/rational.hpp"
#include "sipserlab/rng.hpp"
#include "sipserlab/sipser.hpp"

namespace sipserlab {

// One block's restriction, kept as a labeled value: AllStar, or
// Pattern(section, bit) meaning the named section takes `bit` and the other
// u-1 sections take 1-bit. The 2u pattern labels are distinct outcomes of
// the distribution even when their expansions coincide (which happens for
// u = 2, where Pattern(a, z) and Pattern(1-a, 1-z) expand identically).
struct BlockRestriction {
  bool star = true;
  int section = 0;
  int bit = 0;

  static BlockRestriction all_star() { return BlockRestriction{}; }
  static BlockRestriction pattern(int section, int bit) {
    return BlockRestriction{false, section, bit};
  }

  Trit value_at(int tau, int w_b) const {
    if (star) return Trit::Star;
    bool in_section = tau / w_b == section;
    return (in_section ? bit : 1 - bit) ? Trit::One : Trit::Zero;
  }

  bool operator==(const BlockRestriction&) const = default;
};

// A support element of the product distribution: one labeled block
// restriction per block, plus the star-probability q it was drawn at.
struct ProjRestriction {
  SipserParams params;
  Rational q;
  std::vector<BlockRestriction> blocks;

  Restriction expand(const AddressSpace& space) const;
  std::int64_t star_count() const;
};

// AllStar with probability q, otherwise uniform over the 2u labeled
// patterns. q may be 0 or 1 for boundary testing.
BlockRestriction sample_block(int u, const Rational& q, SplitRng& rng);

ProjRestriction sample_proj_restriction(const AddressSpace& space, const Rational& q,
                                        SplitRng& rng);

// Deterministic order: AllStar first, then patterns by (section, bit).
std::vector<BlockRestriction> enumerate_support(int u);

// Exact product of per-block weights: q per AllStar, (1-q)/(2u) per pattern.
Rational restriction_weight(const ProjRestriction& rho);

// Substitutes x_{beta,tau} by y_beta where rho is star and by the constant
// otherwise; kills terms containing y and not-y, merges same-sign duplicates.
// rho is any {0,1,*} string over the ambient space (support elements and the
// hybrids arising inside the canonical tree both qualify).
Dnf project_dnf(const Dnf& f, const Restriction& rho, const AddressSpace& space);

// Pointwise pullback of the definition; must agree with project_dnf through
// truth tables.
TruthTable project_semantic(const TruthTable& t, const Restriction& rho,
                            const AddressSpace& space);

enum class CnfSipserFate { Identity, Zero };

// AllStar leaves the block unit intact; every pattern zeroes a full section
// and kills it.
CnfSipserFate classify_cnf_sipser_restriction(const BlockRestriction& r, int u, int w_b);

// True iff every level-2 OR gate keeps at least w_b all-star children.
bool survival_certificate(const ProjRestriction& rho, const AddressSpace& space);

struct Trimming {
  Restriction y_restriction;            // 0 on trimmed survivors, * elsewhere
  std::vector<std::int64_t> kept_blocks;  // w_b survivors per gate, ascending
};

// Keeps the w_b lowest-address surviving children of every level-2 OR gate
// and zeroes the rest; kept_blocks[j] is the block relabeled to variable j of
// the one-level-smaller target.
Trimming trimming_restriction(const ProjRestriction& rho, const AddressSpace& space);

struct PreservationProbability {
  bool exact = true;
  Rational exact_prob;       // exact mode
  Rational closed_form;      // P_gate^{num gates}, P_gate = Pr[Bin(w,q) >= w_b]
  double estimate = 0.0;     // monte carlo mode
  double stderr_ = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

PreservationProbability preservation_probability_exact(const AddressSpace& space,
                                                       const Rational& q);
PreservationProbability preservation_probability_mc(const AddressSpace& space,
                                                    const Rational& q, std::int64_t trials,
                                                    std::uint64_t seed, int threads = 0);

}  // namespace sipserlab
