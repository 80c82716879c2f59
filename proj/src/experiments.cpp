#include "sipserlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sipserlab/graph.hpp"
#include "sipserlab/stconn.hpp"

namespace sipserlab {

std::string ExperimentResult::csv_text() const {
  std::string out = csv_header + "\n";
  for (const std::string& row : csv_rows) out += row + "\n";
  return out;
}

Dnf random_dnf(const AddressSpace& space, int width, int max_terms, SplitRng& rng) {
  if (width < 1 || max_terms < 1) throw std::invalid_argument("width and max_terms must be >= 1");
  if (width > space.n()) throw std::invalid_argument("width exceeds variable count");
  Dnf f;
  f.num_vars = space.n();
  int terms = 1 + static_cast<int>(rng.bounded(max_terms));
  for (int t = 0; t < terms; ++t) {
    int w = 1 + static_cast<int>(rng.bounded(width));
    Term term;
    while (term.width() < w) {
      std::int64_t v = static_cast<std::int64_t>(rng.bounded(space.n()));
      if (term.has_var(v)) continue;
      term.lits.push_back(Literal{v, rng.bounded(2) == 1});
    }
    f.terms.push_back(std::move(term));
  }
  return normalize_dnf(f);
}

Circuit formula_as_circuit(const Formula& f) {
  Circuit c;
  c.num_vars = f.num_vars;
  std::vector<int> remap(f.nodes.size(), -1);
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const Formula::Node& n = f.nodes[i];
    if (n.op == Formula::Op::Var) {
      remap[i] = c.add_input(n.var);
      continue;
    }
    std::vector<int> kids;
    kids.reserve(n.children.size());
    for (int ch : n.children) kids.push_back(remap[ch]);
    remap[i] = c.add_gate(n.op == Formula::Op::And ? Circuit::Kind::And : Circuit::Kind::Or,
                          std::move(kids));
  }
  c.output = remap[f.root];
  return c;
}

namespace {

Json base_spec(const std::string& command) {
  Json spec;
  spec["command"] = command;
  return spec;
}

void stamp(ExperimentResult& res, const Json& spec) {
  res.report["spec"] = spec;
  res.report["spec_hash"] = spec_hash(spec);
}

}  // namespace

ExperimentResult run_build_sipser(const SipserParams& p) {
  Json spec = base_spec("build-sipser");
  spec["params"] = sipser_params_to_json(p);
  ExperimentResult res;
  stamp(res, spec);
  Formula f = build_skewed_sipser(p);
  AddressSpace space(p);
  res.report["type"] = "skewed_sipser";
  res.report["params"] = sipser_params_to_json(p);
  res.report["n"] = space.n();
  res.report["depth"] = f.depth();
  res.report["formula"] = formula_to_json(f);
  return res;
}

ExperimentResult run_build_dagger(const SipserParams& p) {
  Json spec = base_spec("build-dagger");
  spec["params"] = sipser_params_to_json(p);
  ExperimentResult res;
  stamp(res, spec);
  Formula f = build_dagger(p);
  res.report["type"] = "skewed_sipser_dagger";
  res.report["params"] = sipser_params_to_json(p);
  res.report["n"] = f.num_vars;
  res.report["depth"] = f.depth();
  res.report["formula"] = formula_to_json(f);
  return res;
}

ExperimentResult run_to_graph(const Json& formula_file) {
  Json spec = base_spec("to-graph");
  spec["input_hash"] = spec_hash(formula_file);
  ExperimentResult res;
  stamp(res, spec);
  Formula f = formula_from_json(formula_file.contains("formula") ? formula_file.at("formula")
                                                                 : formula_file);
  SPGraph g = formula_to_graph(f);
  res.report["edges"] = static_cast<std::int64_t>(g.edges.size());
  res.report["vertices"] = g.vertex_count;
  res.report["simple"] = g.is_simple();
  std::optional<int> dist = shortest_st_path(g);
  res.report["shortest_st_path"] = dist ? Json(*dist) : Json(nullptr);
  res.report["graph"] = graph_to_json(g);
  res.report["edge_list"] = edge_list_text(g);
  res.ok = g.edges.size() == static_cast<std::size_t>(f.num_vars);
  if (!res.ok) res.failure = "edge count differs from variable count";
  return res;
}

ExperimentResult run_demorgan(const Json& formula_file) {
  Json spec = base_spec("demorgan");
  spec["input_hash"] = spec_hash(formula_file);
  ExperimentResult res;
  stamp(res, spec);
  if (!formula_file.contains("params"))
    throw std::invalid_argument("demorgan input must carry the builder params header");
  SipserParams p = sipser_params_from_json(formula_file.at("params"));
  Formula f = formula_from_json(formula_file.contains("formula") ? formula_file.at("formula")
                                                                 : formula_file);
  Circuit c = demorgan_convert(f, p);
  CircuitMetrics m = circuit_metrics(c);
  res.report["metrics"] =
      Json{{"size", m.size}, {"depth", m.depth}, {"max_fanin", m.max_fanin}};
  res.report["circuit"] = circuit_to_json(c);
  res.csv_header = "spec_hash,u,w,wb,d,size,depth,max_fanin";
  res.csv_rows.push_back(res.report["spec_hash"].get<std::string>() + "," +
                         std::to_string(p.u) + "," + std::to_string(p.w) + "," +
                         std::to_string(p.w_b) + "," + std::to_string(p.d) + "," +
                         std::to_string(m.size) + "," + std::to_string(m.depth) + "," +
                         std::to_string(m.max_fanin));
  if (f.num_vars <= 16) {
    bool equal = truth_table(f) == truth_table(c);
    res.report["truth_table_equal"] = equal;
    res.ok = equal && m.depth == p.d + 1;
    if (!res.ok) res.failure = "conversion changed the function or missed depth d+1";
  }
  return res;
}

ExperimentResult run_build_stconn(int n, int k, int d, const std::string& variant) {
  Json spec = base_spec("build-stconn");
  spec["n"] = n;
  spec["k"] = k;
  spec["d"] = d;
  spec["variant"] = variant;
  ExperimentResult res;
  stamp(res, spec);
  Circuit c;
  if (variant == "squaring")
    c = build_squaring_circuit(n, k);
  else if (variant == "power")
    c = build_power_circuit(n, k, d);
  else
    throw std::invalid_argument("variant must be squaring or power");
  CircuitMetrics m = circuit_metrics(c);

  std::int64_t verified = 0;
  if (n <= 5) {
    int vars = pair_count(n);
    std::uint64_t graphs = std::uint64_t{1} << vars;
    for (std::uint64_t mask = 0; mask < graphs; ++mask) {
      std::vector<bool> adj(vars);
      for (int i = 0; i < vars; ++i) adj[i] = (mask >> i) & 1;
      bool want = bfs_oracle(adj, n, 0, 1, k);
      if (c.eval_row(mask) == want) ++verified;
    }
    res.ok = verified == static_cast<std::int64_t>(graphs);
    if (!res.ok) res.failure = "construction disagrees with the BFS oracle";
  }
  res.report["metrics"] =
      Json{{"size", m.size}, {"depth", m.depth}, {"max_fanin", m.max_fanin}};
  res.report["verified_graphs"] = verified;
  res.report["circuit"] = circuit_to_json(c);
  res.csv_header = "spec_hash,n,k,d,variant,size,depth,verified_graphs";
  res.csv_rows.push_back(res.report["spec_hash"].get<std::string>() + "," + std::to_string(n) +
                         "," + std::to_string(k) + "," + std::to_string(d) + "," + variant + "," +
                         std::to_string(m.size) + "," + std::to_string(m.depth) + "," +
                         std::to_string(verified));
  return res;
}

ExperimentResult run_psl_verify(const PslVerifySpec& spec) {
  Json jspec = base_spec("psl-verify");
  jspec["params"] = sipser_params_to_json(spec.params);
  jspec["r"] = spec.r;
  jspec["s"] = spec.s;
  jspec["q"] = rational_to_string(spec.q);
  jspec["mode"] = spec.mode;
  jspec["trials"] = spec.trials;
  jspec["seed"] = spec.seed;
  jspec["dnfs"] = spec.dnfs;
  jspec["max_terms"] = spec.max_terms;
  jspec["subchecks"] = spec.subchecks;
  ExperimentResult res;
  stamp(res, jspec);

  AddressSpace space(spec.params);
  PslParams params{spec.r, spec.s, spec.q, spec.params};
  SplitRng master(spec.seed);
  res.csv_header =
      "spec_hash,u,w,wb,d,r,s,q,blocks,dnf,support,bad,exact_prob,exact_prob_optimal,bound,"
      "mc_estimate,mc_stderr,seed";
  std::string param_cols = std::to_string(spec.params.u) + "," + std::to_string(spec.params.w) +
                           "," + std::to_string(spec.params.w_b) + "," +
                           std::to_string(spec.params.d) + "," + std::to_string(spec.r) + "," +
                           std::to_string(spec.s) + "," + rational_to_string(spec.q) + "," +
                           std::to_string(space.num_blocks());
  Json per_dnf = Json::array();
  std::string hash = res.report["spec_hash"].get<std::string>();

  for (int i = 0; i < spec.dnfs; ++i) {
    SplitRng rng = master.derive(static_cast<std::uint64_t>(i));
    Dnf f = random_dnf(space, spec.r, spec.max_terms, rng);
    Json entry;
    entry["dnf"] = dnf_to_json(f);
    std::string exact_s = "", exact_opt_s = "", mc_s = "", mc_err_s = "";
    std::string bad_count = "", support_s = "";
    if (spec.mode == "exact") {
      BadSetReport rep = spec.subchecks && params.bound_applies()
                             ? bad_set(f, params, space)
                             : bad_set_depths_only(f, params, space);
      entry["support"] = rep.support_size;
      entry["bad"] = static_cast<std::int64_t>(rep.bad_indices.size());
      entry["exact_prob"] = rational_to_string(rep.exact_prob);
      entry["exact_prob_optimal"] = rational_to_string(rep.exact_prob_optimal);
      entry["bound"] = rational_to_string(rep.bound);
      entry["bound_applies"] = rep.bound_applies;
      entry["bound_holds"] = rep.bound_holds;
      if (spec.subchecks && params.bound_applies()) {
        entry["injection_ok"] = rep.injection_ok;
        entry["roundtrip_ok"] = rep.roundtrip_ok;
        entry["ratio_ok"] = rep.ratio_ok;
        entry["group_mass_ok"] = rep.group_mass_ok;
        if (!(rep.injection_ok && rep.roundtrip_ok && rep.ratio_ok && rep.group_mass_ok)) {
          res.ok = false;
          res.failure = "codec subcheck failed at dnf " + std::to_string(i);
        }
      }
      if (rep.bound_applies && !rep.bound_holds) {
        res.ok = false;
        res.failure = "exact probability exceeds the bound at dnf " + std::to_string(i);
      }
      exact_s = rational_to_string(rep.exact_prob);
      exact_opt_s = rational_to_string(rep.exact_prob_optimal);
      bad_count = std::to_string(rep.bad_indices.size());
      support_s = std::to_string(rep.support_size);
    } else if (spec.mode == "monte_carlo") {
      McEstimate mc = psl_monte_carlo(f, params, space, spec.trials, spec.seed + i);
      entry["mc_estimate"] = format_display(mc.estimate);
      entry["mc_stderr"] = format_display(mc.stderr_);
      mc_s = format_display(mc.estimate);
      mc_err_s = format_display(mc.stderr_);
    } else {
      throw std::invalid_argument("mode must be exact or monte_carlo");
    }
    per_dnf.push_back(std::move(entry));
    res.csv_rows.push_back(hash + "," + param_cols + "," + std::to_string(i) + "," + support_s +
                           "," + bad_count + "," + exact_s + "," + exact_opt_s + "," +
                           rational_to_string(params.bound()) + "," + mc_s + "," + mc_err_s +
                           "," + std::to_string(spec.seed));
  }
  res.report["results"] = std::move(per_dnf);
  res.report["ok"] = res.ok;
  return res;
}

ExperimentResult run_preserve_verify(const PreserveVerifySpec& spec) {
  Json jspec = base_spec("preserve-verify");
  jspec["params"] = sipser_params_to_json(spec.params);
  jspec["q"] = rational_to_string(spec.q);
  jspec["mode"] = spec.mode;
  jspec["trials"] = spec.trials;
  jspec["seed"] = spec.seed;
  jspec["cert_samples"] = spec.cert_samples;
  ExperimentResult res;
  stamp(res, jspec);

  AddressSpace space(spec.params);
  if (spec.mode == "exact") {
    PreservationProbability p = preservation_probability_exact(space, spec.q);
    res.report["exact_prob"] = rational_to_string(p.exact_prob);
    res.report["closed_form"] = rational_to_string(p.closed_form);
    res.ok = p.exact_prob == p.closed_form;
    if (!res.ok) res.failure = "enumeration disagrees with the binomial closed form";
  } else {
    PreservationProbability p =
        preservation_probability_mc(space, spec.q, spec.trials, spec.seed);
    res.report["estimate"] = format_display(p.estimate);
    res.report["stderr"] = format_display(p.stderr_);
    res.report["closed_form"] = rational_to_string(p.closed_form);
    double cf = rational_to_double(p.closed_form);
    res.ok = std::abs(p.estimate - cf) <= 3.0 * std::max(p.stderr_, 1e-12);
    if (!res.ok) res.failure = "estimate more than 3 standard errors from the closed form";
  }

  // Certificate-vs-oracle cross-check at oracle-friendly sizes.
  if (space.n() <= 16 && space.num_blocks() <= 16 && spec.cert_samples > 0) {
    Formula target = build_skewed_sipser(spec.params);
    TruthTable target_tt = truth_table(target);
    SipserParams smaller{spec.params.u, spec.params.w, spec.params.w_b, spec.params.d - 1};
    TruthTable small_tt = truth_table(build_skewed_sipser(smaller));
    SplitRng rng = SplitRng(spec.seed).derive(0xcef5);
    std::int64_t certified = 0, contained = 0;
    for (std::int64_t i = 0; i < spec.cert_samples; ++i) {
      ProjRestriction rho = sample_proj_restriction(space, spec.q, rng);
      if (!survival_certificate(rho, space)) continue;
      ++certified;
      TruthTable proj = project_semantic(target_tt, rho.expand(space), space);
      if (is_subfunction(small_tt, proj)) ++contained;
    }
    res.report["certified_samples"] = certified;
    res.report["contained_samples"] = contained;
    if (certified != contained) {
      res.ok = false;
      res.failure = "a certified restriction failed subfunction containment";
    }
  }
  res.report["ok"] = res.ok;
  std::string hash = res.report["spec_hash"].get<std::string>();
  res.csv_header = "spec_hash,u,w,wb,level,q,mode,value,seed";
  res.csv_rows.push_back(
      hash + "," + std::to_string(spec.params.u) + "," + std::to_string(spec.params.w) + "," +
      std::to_string(spec.params.w_b) + "," + std::to_string(spec.params.d) + "," +
      rational_to_string(spec.q) + "," + spec.mode + "," +
      (spec.mode == "exact" ? res.report["exact_prob"].get<std::string>()
                            : res.report["estimate"].get<std::string>()) +
      "," + std::to_string(spec.seed));
  return res;
}

ExperimentResult run_project_and_trim(const ProjectTrimSpec& spec) {
  Json jspec = base_spec("project-and-trim");
  jspec["params"] = sipser_params_to_json(spec.params);
  jspec["q"] = rational_to_string(spec.q);
  jspec["seed"] = spec.seed;
  jspec["max_retries"] = spec.max_retries;
  ExperimentResult res;
  stamp(res, jspec);

  SipserParams current = spec.params;
  Circuit circuit = formula_as_circuit(build_skewed_sipser(current));
  SplitRng master(spec.seed);
  Json steps = Json::array();

  for (int level = spec.params.d; level >= 1; --level) {
    AddressSpace space(current);
    SplitRng rng = master.derive(static_cast<std::uint64_t>(level));
    int attempts = 0;
    ProjRestriction rho;
    bool found = false;
    while (attempts < spec.max_retries) {
      ++attempts;
      rho = sample_proj_restriction(space, spec.q, rng);
      if (survival_certificate(rho, space)) {
        found = true;
        break;
      }
    }
    Json step;
    step["level"] = level;
    step["attempts"] = attempts;
    if (!found) {
      step["certified"] = false;
      steps.push_back(std::move(step));
      res.ok = false;
      res.failure = "no certified restriction after retry budget at level " +
                    std::to_string(level);
      break;
    }
    step["certified"] = true;
    step["rho"] = proj_restriction_to_json(rho);
    ProjectTrimResult ptr = project_and_trim_step(circuit, rho, space);
    bool equal = truth_table(ptr.circuit) == truth_table(ptr.target);
    step["truth_table_equal"] = equal;
    step["circuit_size"] = ptr.circuit.size();
    steps.push_back(std::move(step));
    if (!equal) {
      res.ok = false;
      res.failure = "projected circuit diverged from the target at level " +
                    std::to_string(level);
      break;
    }
    circuit = std::move(ptr.circuit);
    current.d -= 1;
  }

  res.report["steps"] = std::move(steps);
  res.report["final_target"] = "OR of " + std::to_string(spec.params.w_b) + " variables";
  res.report["size_budget_S"] = rational_to_string(size_budget(spec.params.u, spec.q));
  res.report["size_budget_S_display"] =
      format_display(rational_to_double(size_budget(spec.params.u, spec.q)));
  res.report["ok"] = res.ok;
  return res;
}

}  // namespace sipserlab
