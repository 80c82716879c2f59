// Experiment runner: deterministic reports for the construction and
// verification commands. Exit codes: 0 all asserted properties held, 2 a
// property check failed (see "failure" in the report), 1 usage/shape error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "sipserlab/experiments.hpp"

namespace {

using sipserlab::ExperimentResult;
using sipserlab::Json;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  Json j;
  in >> j;
  return j;
}

int finish(const ExperimentResult& res, const std::string& out_path,
           const std::string& csv_path) {
  if (out_path.empty())
    std::cout << res.report_text();
  else
    write_file(out_path, res.report_text());
  if (!csv_path.empty()) write_file(csv_path, res.csv_text());
  if (!res.ok) {
    std::cerr << "property check failed: " << res.failure << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewed Sipser formulas, random projections, and small-distance "
               "connectivity circuits at desk scale"};
  app.require_subcommand(1);

  sipserlab::SipserParams params;
  std::string in_path, out_path, csv_path;
  std::string q_str = "1/10";
  std::string mode = "exact";
  std::string variant = "squaring";
  std::uint64_t seed = 1;
  std::int64_t trials = 100000;
  int r = 1, s = 1, dnfs = 10, max_terms = 8, retries = 1000;
  std::int64_t cert_samples = 500;
  int n = 5, k = 2, d = 1;

  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--u", params.u, "AND fan-in");
    cmd->add_option("--w", params.w, "OR fan-in");
    cmd->add_option("--wb", params.w_b, "bottom OR fan-in");
    cmd->add_option("--d", params.d, "AND layers");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "report path (stdout when omitted)");
    cmd->add_option("--csv", csv_path, "CSV summary path");
  };

  CLI::App* build = app.add_subcommand("build-sipser", "construct a skewed Sipser formula");
  add_params(build);
  add_out(build);

  CLI::App* dagger = app.add_subcommand("build-dagger", "construct the paired-variable variant");
  add_params(dagger);
  add_out(dagger);

  CLI::App* tograph = app.add_subcommand("to-graph", "series-parallel graph of a formula file");
  tograph->add_option("--in", in_path, "formula JSON")->required();
  std::string edges_path;
  tograph->add_option("--edges", edges_path, "also write a plain edge-list text file");
  add_out(tograph);

  CLI::App* demorgan = app.add_subcommand("demorgan", "depth-(d+1) conversion of a formula file");
  demorgan->add_option("--in", in_path, "formula JSON")->required();
  add_out(demorgan);

  CLI::App* stconn = app.add_subcommand("build-stconn", "small-distance connectivity circuits");
  stconn->add_option("--n", n, "node count");
  stconn->add_option("--k", k, "distance bound");
  stconn->add_option("--d", d, "rounds (power variant)");
  stconn->add_option("--variant", variant, "squaring | power");
  add_out(stconn);

  CLI::App* psl = app.add_subcommand("psl-verify", "switching lemma verification battery");
  add_params(psl);
  psl->add_option("--r", r, "DNF width bound");
  psl->add_option("--s", s, "depth threshold");
  psl->add_option("--q", q_str, "star probability, num/den");
  psl->add_option("--mode", mode, "exact | monte_carlo");
  psl->add_option("--trials", trials, "Monte Carlo trials");
  psl->add_option("--seed", seed, "master seed");
  psl->add_option("--dnfs", dnfs, "random DNFs to verify");
  psl->add_option("--max-terms", max_terms, "term count cap for random DNFs");
  bool no_subchecks = false;
  psl->add_flag("--no-subchecks", no_subchecks, "skip injection/round-trip/ratio checks");
  add_out(psl);

  CLI::App* preserve = app.add_subcommand("preserve-verify", "target preservation probability");
  add_params(preserve);
  preserve->add_option("--q", q_str, "star probability, num/den");
  preserve->add_option("--mode", mode, "exact | monte_carlo");
  preserve->add_option("--trials", trials, "Monte Carlo trials");
  preserve->add_option("--seed", seed, "master seed");
  preserve->add_option("--cert-samples", cert_samples, "certificate-vs-oracle samples");
  add_out(preserve);

  CLI::App* ptrim = app.add_subcommand("project-and-trim", "drive the peel-down loop to depth 0");
  add_params(ptrim);
  ptrim->add_option("--q", q_str, "star probability, num/den");
  ptrim->add_option("--seed", seed, "master seed");
  ptrim->add_option("--retries", retries, "certificate retry budget per level");
  add_out(ptrim);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return finish(sipserlab::run_build_sipser(params), out_path, csv_path);
    if (dagger->parsed()) return finish(sipserlab::run_build_dagger(params), out_path, csv_path);
    if (tograph->parsed()) {
      sipserlab::ExperimentResult res = sipserlab::run_to_graph(read_json(in_path));
      if (!edges_path.empty()) write_file(edges_path, res.report["edge_list"].get<std::string>());
      return finish(res, out_path, csv_path);
    }
    if (demorgan->parsed())
      return finish(sipserlab::run_demorgan(read_json(in_path)), out_path, csv_path);
    if (stconn->parsed())
      return finish(sipserlab::run_build_stconn(n, k, d, variant), out_path, csv_path);
    if (psl->parsed()) {
      sipserlab::PslVerifySpec spec;
      spec.params = params;
      spec.r = r;
      spec.s = s;
      spec.q = sipserlab::rational_from_string(q_str);
      spec.mode = mode;
      spec.trials = trials;
      spec.seed = seed;
      spec.dnfs = dnfs;
      spec.max_terms = max_terms;
      spec.subchecks = !no_subchecks;
      return finish(sipserlab::run_psl_verify(spec), out_path, csv_path);
    }
    if (preserve->parsed()) {
      sipserlab::PreserveVerifySpec spec;
      spec.params = params;
      spec.q = sipserlab::rational_from_string(q_str);
      spec.mode = mode;
      spec.trials = trials;
      spec.seed = seed;
      spec.cert_samples = cert_samples;
      return finish(sipserlab::run_preserve_verify(spec), out_path, csv_path);
    }
    if (ptrim->parsed()) {
      sipserlab::ProjectTrimSpec spec;
      spec.params = params;
      spec.q = sipserlab::rational_from_string(q_str);
      spec.seed = seed;
      spec.max_retries = retries;
      return finish(sipserlab::run_project_and_trim(spec), out_path, csv_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
