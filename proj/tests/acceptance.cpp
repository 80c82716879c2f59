// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Everything is exact-rational or exhaustive-oracle; the only
// tolerances are the stated Monte Carlo three-standard-error windows.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "sipserlab/experiments.hpp"
#include "sipserlab/graph.hpp"
#include "sipserlab/stconn.hpp"
#include "sipserlab/switching.hpp"

using namespace sipserlab;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, double seconds) {
  std::printf("[%s] criterion %02d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
              seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

void run(int idx, const std::string& name, const std::function<bool()>& body) {
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::printf("  exception: %s\n", e.what());
    ok = false;
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(idx, name, ok, seconds);
}

struct Instance {
  SipserParams params;
  std::vector<int> widths;
};

const std::vector<Instance> kInstances{{SipserParams{2, 2, 2, 1}, {1}},
                                       {SipserParams{3, 2, 3, 1}, {1, 2}}};
const std::vector<Rational> kQs{Rational(1, 20), Rational(1, 10), Rational(1, 5)};
const std::vector<int> kSs{1, 2, 3};
constexpr int kDnfsPerInstance = 500;

// Criteria 1-3 share the per-DNF scan work; collected once.
struct PslOutcome {
  bool bound_ok = true;
  bool injection_ok = true;
  bool roundtrip_ok = true;
  bool ratio_ok = true;
};

PslOutcome psl_outcome;
bool psl_ran = false;

void run_psl_battery() {
  if (psl_ran) return;
  psl_ran = true;
  for (std::size_t ii = 0; ii < kInstances.size(); ++ii) {
    const Instance& inst = kInstances[ii];
    AddressSpace space(inst.params);
    for (int r : inst.widths) {
      SplitRng master(1000 * (ii + 1) + r);
      for (int i = 0; i < kDnfsPerInstance; ++i) {
        SplitRng rng = master.derive(static_cast<std::uint64_t>(i));
        Dnf f = random_dnf(space, r, 8, rng);
        SupportScan scan = scan_support(f, space);
        for (int s : kSs) {
          std::vector<std::int64_t> bad;
          for (std::int64_t j = 0; j < scan.size(); ++j)
            if (scan.cdt_depth[j] >= s) bad.push_back(j);
          for (const Rational& q : kQs) {
            PslParams params{r, s, q, inst.params};
            Rational per_pattern = (Rational(1) - q) / (2 * inst.params.u);
            Rational prob = 0;
            for (std::int64_t j : bad) {
              Rational w = 1;
              for (std::int64_t b = 0; b < scan.stars[j]; ++b) w *= q;
              for (std::int64_t b = scan.stars[j]; b < space.num_blocks(); ++b)
                w *= per_pattern;
              prob += w;
            }
            if (prob > params.bound()) psl_outcome.bound_ok = false;

            Rational gamma = 1;
            Rational gbase = (Rational(1) - q) / (Rational(2) * q * inst.params.u);
            for (int e = 0; e < s; ++e) gamma *= gbase;
            std::set<std::string> images;
            for (std::int64_t j : bad) {
              ProjRestriction rho = support_element(space, q, j);
              ThetaImage theta = encode_theta(f, rho, s, r, space);
              if (!images.insert(theta.key()).second) psl_outcome.injection_ok = false;
              ProjRestriction back = decode_theta(f, theta, s, r, space);
              if (!(back.blocks == rho.blocks)) psl_outcome.roundtrip_ok = false;
              if (weight_ratio(rho, theta) != gamma) psl_outcome.ratio_ok = false;
            }
          }
        }
      }
    }
  }
}

}  // namespace

int main() {
  run(1, "projection switching lemma, exact bound over the full support", [] {
    run_psl_battery();
    return psl_outcome.bound_ok;
  });

  run(2, "theta is injective and decode(encode(rho)) = rho on every bad set", [] {
    run_psl_battery();
    return psl_outcome.injection_ok && psl_outcome.roundtrip_ok;
  });

  run(3, "weight increase equals ((1-q)/2qu)^s exactly for every bad rho", [] {
    run_psl_battery();
    return psl_outcome.ratio_ok;
  });

  run(4, "canonical tree computes the projected function on all support points", [] {
    bool ok = true;
    for (const Instance& inst : kInstances) {
      AddressSpace space(inst.params);
      SplitRng master(2000);
      std::int64_t total = 1;
      for (std::int64_t i = 0; i < space.num_blocks(); ++i) total *= 2 * inst.params.u + 1;
      for (int i = 0; i < 200; ++i) {
        SplitRng rng = master.derive(static_cast<std::uint64_t>(i));
        Dnf f = random_dnf(space, inst.params.u, 8, rng);
        Dnf nf = normalize_dnf(f);
        TruthTable full = truth_table(nf);
        for (std::int64_t idx = 0; idx < total; ++idx) {
          ProjRestriction rho = support_element(space, Rational(1, 10), idx);
          Restriction ex = rho.expand(space);
          CanonicalDtResult res = canonical_dt(nf, ex, space);
          if (!(truth_table(res.tree) == project_semantic(full, ex, space))) ok = false;
        }
      }
    }
    return ok;
  });

  run(5, "block unit dichotomy: identity weight q, zero weight 1-q, section kill", [] {
    bool ok = true;
    Rational q(1, 10);
    for (int u : {2, 3}) {
      for (int w_b : {1, 2, 3}) {
        Formula unit = build_cnf_sipser(u, w_b);
        TruthTable tt = truth_table(unit);
        Rational identity = 0, zero = 0;
        for (const BlockRestriction& b : enumerate_support(u)) {
          CnfSipserFate fate = classify_cnf_sipser_restriction(b, u, w_b);
          Rational w = b.star ? q : (Rational(1) - q) / (2 * u);
          (fate == CnfSipserFate::Identity ? identity : zero) += w;
          // semantic truth of the classification
          bool all_zero = true, unchanged = true;
          for (std::uint64_t row = 0; row < tt.rows(); ++row) {
            std::uint64_t masked = row;
            for (int tau = 0; tau < u * w_b; ++tau) {
              Trit v = b.value_at(tau, w_b);
              if (v == Trit::One) masked |= std::uint64_t{1} << tau;
              if (v == Trit::Zero) masked &= ~(std::uint64_t{1} << tau);
            }
            if (tt.get(masked)) all_zero = false;
            if (tt.get(masked) != tt.get(row)) unchanged = false;
          }
          if (fate == CnfSipserFate::Identity && !unchanged) ok = false;
          if (fate == CnfSipserFate::Zero && !all_zero) ok = false;
        }
        if (identity != q || zero != Rational(1) - q) ok = false;

        // section kill for arbitrary restrictions zeroing a full section
        int rest = (u - 1) * w_b;
        std::int64_t combos = 1;
        for (int i = 0; i < rest; ++i) combos *= 3;
        for (int a = 0; a < u && ok; ++a) {
          for (std::int64_t code = 0; code < combos; ++code) {
            std::int64_t cc = code;
            std::uint64_t force1 = 0, force0 = 0;
            for (int tau = 0; tau < u * w_b; ++tau) {
              if (tau / w_b == a) {
                force0 |= std::uint64_t{1} << tau;
                continue;
              }
              int trit = static_cast<int>(cc % 3);
              cc /= 3;
              if (trit == 1) force1 |= std::uint64_t{1} << tau;
              if (trit == 0) force0 |= std::uint64_t{1} << tau;
            }
            for (std::uint64_t row = 0; row < tt.rows(); ++row)
              if (tt.get((row | force1) & ~force0)) {
                ok = false;
                break;
              }
            if (!ok) break;
          }
        }
      }
    }
    return ok;
  });

  run(6, "target preservation: certificate implies containment, exact = closed form", [] {
    SipserParams p{2, 3, 1, 1};
    AddressSpace space(p);
    Rational q(1, 2);
    TruthTable target_tt = truth_table(build_skewed_sipser(p));
    TruthTable small_tt = truth_table(build_skewed_sipser(SipserParams{p.u, p.w, p.w_b, 0}));

    SplitRng rng(3000);
    int counterexamples = 0;
    for (int i = 0; i < 500; ++i) {
      ProjRestriction rho = sample_proj_restriction(space, q, rng);
      if (!survival_certificate(rho, space)) continue;
      TruthTable proj = project_semantic(target_tt, rho.expand(space), space);
      if (!is_subfunction(small_tt, proj)) ++counterexamples;
    }

    PreservationProbability exact = preservation_probability_exact(space, q);
    bool closed = exact.exact_prob == exact.closed_form;
    // Pr[Bin(3,1/2) >= 1] = 7/8
    bool value = exact.exact_prob == Rational(7, 8);

    PreservationProbability mc = preservation_probability_mc(space, q, 100000, 77);
    bool mc_ok =
        std::abs(mc.estimate - rational_to_double(exact.exact_prob)) <= 3 * mc.stderr_;
    return counterexamples == 0 && closed && value && mc_ok;
  });

  run(7, "series-parallel reduction: connectivity iff formula, path lengths, simplicity", [] {
    bool ok = true;

    // 16-variable alternating formula (OR2 AND2 OR2 AND2), all assignments
    Formula f16;
    {
      std::int64_t next_var = 0;
      std::vector<int> fanins{2, 2, 2, 2};
      auto build = [&](auto&& self, std::size_t layer, bool is_or) -> int {
        if (layer == fanins.size()) return f16.add_var(next_var++);
        std::vector<int> kids;
        for (int i = 0; i < fanins[layer]; ++i) kids.push_back(self(self, layer + 1, !is_or));
        return f16.add_gate(is_or ? Formula::Op::Or : Formula::Op::And, std::move(kids));
      };
      f16.root = build(build, 0, true);
    }
    SPGraph g16 = formula_to_graph(f16);
    std::int64_t len16 = and_fanin_product(f16);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << 16); ++mask) {
      std::vector<bool> z(16);
      for (int i = 0; i < 16; ++i) z[i] = (mask >> i) & 1;
      if (!check_connectivity_equivalence(f16, g16, len16, z)) ok = false;
    }

    // SkewedSipser(2,2,2,1), all 2^8 assignments
    SipserParams p{2, 2, 2, 1};
    Formula fs = build_skewed_sipser(p);
    SPGraph gs = formula_to_graph(fs);
    std::int64_t lens = and_fanin_product(fs);
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
      std::vector<bool> z(8);
      for (int i = 0; i < 8; ++i) z[i] = (mask >> i) & 1;
      if (!check_connectivity_equivalence(fs, gs, lens, z)) ok = false;
    }

    // shortest paths u^d
    struct Case {
      int u, d, expect;
    };
    for (Case c : {Case{2, 1, 2}, Case{2, 2, 4}, Case{3, 1, 3}, Case{3, 2, 9}}) {
      SPGraph g = formula_to_graph(build_skewed_sipser(SipserParams{c.u, 2, 2, c.d}));
      if (shortest_st_path(g) != c.expect) ok = false;
    }

    // dagger graphs are simple
    for (SipserParams dp : {SipserParams{2, 2, 2, 1}, SipserParams{2, 3, 2, 1},
                            SipserParams{3, 2, 2, 1}}) {
      if (!formula_to_graph(build_dagger(dp)).is_simple()) ok = false;
    }
    return ok;
  });

  run(8, "small-distance connectivity circuits match the oracle on all 5-node graphs", [] {
    bool ok = true;
    const int n = 5;
    const std::uint64_t graphs = std::uint64_t{1} << pair_count(n);
    for (int k = 1; k <= 6; ++k) {
      Circuit sq = build_squaring_circuit(n, k);
      int log2k = 0;
      while ((1 << log2k) < k) ++log2k;
      if (k > 1 && sq.depth() != 2 * log2k) ok = false;
      std::vector<Circuit> pows;
      for (int d = 1; d <= 3; ++d) {
        pows.push_back(build_power_circuit(n, k, d));
        if (pows.back().depth() != 2 * d) ok = false;
      }
      for (std::uint64_t mask = 0; mask < graphs && ok; ++mask) {
        std::vector<bool> adj(pair_count(n));
        for (int i = 0; i < pair_count(n); ++i) adj[i] = (mask >> i) & 1;
        bool want = bfs_oracle(adj, n, 0, 1, k);
        if (sq.eval_row(mask) != want) ok = false;
        for (const Circuit& c : pows)
          if (c.eval_row(mask) != want) ok = false;
      }
    }
    return ok;
  });

  run(9, "the distributed conversion has depth d+1 and the same truth table", [] {
    bool ok = true;
    for (SipserParams p : {SipserParams{2, 2, 2, 1}, SipserParams{2, 1, 1, 2},
                           SipserParams{2, 2, 1, 2}}) {
      Formula f = build_skewed_sipser(p);
      Circuit c = demorgan_convert(f, p);
      if (c.depth() != p.d + 1) ok = false;
      if (!(truth_table(c) == truth_table(f))) ok = false;
    }
    return ok;
  });

  run(10, "project-and-trim driver ends at the OR of w_b variables", [] {
    ProjectTrimSpec spec{SipserParams{2, 3, 2, 1}, Rational(1, 2), 4242, 1000};
    ExperimentResult res = run_project_and_trim(spec);
    bool ok = res.ok;
    if (res.report["final_target"] != "OR of 2 variables") ok = false;
    for (const Json& step : res.report["steps"])
      if (step["truth_table_equal"] != true) ok = false;
    if (!res.report.contains("size_budget_S")) ok = false;
    return ok;
  });

  run(11, "identical experiment specs give byte-identical reports", [] {
    PslVerifySpec psl;
    psl.params = SipserParams{3, 2, 3, 1};
    psl.r = 2;
    psl.s = 2;
    psl.q = Rational(1, 10);
    psl.dnfs = 5;
    psl.seed = 99;
    if (run_psl_verify(psl).report_text() != run_psl_verify(psl).report_text()) return false;
    if (run_psl_verify(psl).csv_text() != run_psl_verify(psl).csv_text()) return false;

    PslVerifySpec mc = psl;
    mc.mode = "monte_carlo";
    mc.trials = 5000;
    if (run_psl_verify(mc).report_text() != run_psl_verify(mc).report_text()) return false;

    ProjectTrimSpec pt{SipserParams{2, 3, 2, 1}, Rational(1, 2), 11, 500};
    if (run_project_and_trim(pt).report_text() != run_project_and_trim(pt).report_text())
      return false;

    PreserveVerifySpec pv;
    pv.params = SipserParams{2, 3, 1, 1};
    pv.q = Rational(1, 2);
    pv.mode = "monte_carlo";
    pv.trials = 20000;
    pv.seed = 5;
    return run_preserve_verify(pv).report_text() == run_preserve_verify(pv).report_text();
  });

  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria failed\n", failures);
  return 1;
}
