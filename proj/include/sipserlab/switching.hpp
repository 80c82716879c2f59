#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sipserlab/boolfn.hpp"
#include "sipserlab/circuit.hpp"
#include "sipserlab/projection.hpp"
#include "sipserlab/rational.hpp"
#include "sipserlab/sipser.hpp"

namespace sipserlab {

struct PslParams {
  int r = 1;       // DNF width bound
  int s = 1;       // depth threshold
  Rational q;      // star probability
  SipserParams formula_params;

  // The bound (8qru/(1-q))^s is a theorem only for r <= u-1; wider DNFs are
  // allowed for exploration and flagged.
  bool bound_applies() const { return r <= formula_params.u - 1; }
  Rational bound() const;
};

// Image of one bad restriction under the injection: the composed restriction
// (labels preserved off the rewritten blocks), the s path bits, and the
// per-group eta codes (location bits plus a terminator bit per block).
struct ThetaImage {
  ProjRestriction composed;
  std::vector<std::uint8_t> path_bits;
  std::vector<std::uint8_t> eta_code;

  std::string key() const;  // canonical string, for injectivity checks
};

class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::string stage, const std::string& msg)
      : std::runtime_error(stage + ": " + msg), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// A support element rho' satisfying every literal of t that rho leaves live;
// absent when none exists. Blocks holding live literals are fixed to the
// lexicographically first satisfying pattern, everything else stays star.
std::optional<ProjRestriction> supp_satisfiable(const Term& t, const Restriction& rho,
                                                const Rational& q, const AddressSpace& space);

struct CanonicalDtResult {
  DecisionTree tree;         // over y-variables (one per block)
  bool used_fallback = false;  // a width >= u term forced the extended rule
};

// The canonical decision tree for the projected DNF: halt on a semantically
// constant projection, pick the first term that is live and satisfiable
// within the support, query all its live blocks exhaustively in ascending
// block order, recurse on every outcome. Internal nodes carry the spawning
// term index and a group id per exhaustive subtree.
CanonicalDtResult canonical_dt(const Dnf& f, const Restriction& rho, const AddressSpace& space);

// Per-support-element scan of the full labeled support (2u+1)^{num blocks}.
struct SupportScan {
  std::vector<int> cdt_depth;       // canonical tree depth per element
  std::vector<int> opt_depth;       // optimal depth of the projected function
  std::vector<std::int64_t> stars;  // star count per element
  bool any_fallback = false;

  std::int64_t size() const { return static_cast<std::int64_t>(cdt_depth.size()); }
};

SupportScan scan_support(const Dnf& f, const AddressSpace& space);

// Decodes a flat support index into the labeled restriction (mixed radix over
// enumerate_support order, last block fastest).
ProjRestriction support_element(const AddressSpace& space, const Rational& q, std::int64_t index);

struct BadSetReport {
  PslParams params;
  std::int64_t support_size = 0;
  std::vector<std::int64_t> bad_indices;  // flat support indices
  Rational exact_prob;                    // weight of {CanonicalDT depth >= s}
  Rational exact_prob_optimal;            // weight of {optimal depth >= s}; never larger
  Rational bound;
  bool bound_applies = false;
  bool bound_holds = false;       // exact_prob <= bound
  bool injection_ok = false;      // theta images pairwise distinct
  bool roundtrip_ok = false;      // decode(encode(rho)) == rho for all bad rho
  bool ratio_ok = false;          // weight ratio == ((1-q)/2qu)^s for all bad rho
  bool group_mass_ok = false;     // sum of composed weights per (path,eta) group <= 1
  bool any_fallback = false;
};

// Enumerates the support, computes the bad set and all codec checks.
BadSetReport bad_set(const Dnf& f, const PslParams& params, const AddressSpace& space);

// BadSetReport without the codec sub-checks (used when r >= u, where the
// canonical tree may need the fallback rule and theta is out of domain).
BadSetReport bad_set_depths_only(const Dnf& f, const PslParams& params,
                                 const AddressSpace& space);

ThetaImage encode_theta(const Dnf& f, const ProjRestriction& rho, int s, int r,
                        const AddressSpace& space);

// Inverts encode_theta on its image. The reconstruction is re-encoded and
// compared against the input, so tampered triples either decode to the
// legitimate preimage of some other bad restriction or fail with a
// stage-tagged DecodeError; they never yield a silently wrong answer.
ProjRestriction decode_theta(const Dnf& f, const ThetaImage& theta, int s, int r,
                             const AddressSpace& space);

Rational weight_ratio(const ProjRestriction& rho, const ThetaImage& theta);

struct McEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

// Fraction of sampled restrictions whose canonical tree has depth >= s.
McEstimate psl_monte_carlo(const Dnf& f, const PslParams& params, const AddressSpace& space,
                           std::int64_t trials, std::uint64_t seed, int threads = 0);

// CNF front ends, via duality: flip every block label's bit, swap AND/OR
// keeping literal signs. The distribution is invariant under the flip, so
// exact probabilities match the DNF pipeline on the dual instance.
BadSetReport bad_set_cnf(const Cnf& f, const PslParams& params, const AddressSpace& space);
CanonicalDtResult canonical_dt_cnf(const Cnf& f, const Restriction& rho,
                                   const AddressSpace& space);

struct WidthViolation {
  Dnf dnf;
  PslParams params;
  Rational exact_prob;
  Rational bound;
};

// Sweeps width-u DNFs (the d=1 formula itself) over small parameters hunting
// for exact_prob > bound. The known counterexample needs w to grow, so empty
// results at this scale are expected and fine.
std::optional<WidthViolation> search_u_width_violation(
    const std::vector<SipserParams>& instances, const std::vector<Rational>& qs,
    const std::vector<int>& ss);

struct ProjectTrimResult {
  Circuit circuit;      // projected and trimmed, over the relabeled variables
  Formula target;       // the one-level-smaller target
  std::vector<std::int64_t> kept_blocks;
};

// One round of the project-and-trim driver applied to an arbitrary circuit
// over the level-l variable space; requires a certified restriction.
ProjectTrimResult project_and_trim_step(const Circuit& c, const ProjRestriction& rho,
                                        const AddressSpace& space);

// 0.1 / (16 u^2 q)^(u-1): the size budget the driver run reports.
Rational size_budget(int u, const Rational& q);

}  // namespace sipserlab
