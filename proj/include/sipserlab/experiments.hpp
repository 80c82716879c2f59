#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sipserlab/json_io.hpp"
#include "sipserlab/rng.hpp"
#include "sipserlab/switching.hpp"

namespace sipserlab {

// Every runner is a pure function of its spec: identical specs produce
// byte-identical reports. The CLI is a thin shell around these.
struct ExperimentResult {
  Json report;
  std::string csv_header;
  std::vector<std::string> csv_rows;
  bool ok = true;
  std::string failure;  // pointer into the report when a property failed

  std::string report_text() const { return report.dump(2) + "\n"; }
  std::string csv_text() const;
};

// Seeded r-DNF battery generator shared by the verifier commands and tests.
Dnf random_dnf(const AddressSpace& space, int width, int max_terms, SplitRng& rng);

ExperimentResult run_build_sipser(const SipserParams& p);
ExperimentResult run_build_dagger(const SipserParams& p);
ExperimentResult run_to_graph(const Json& formula_file);
ExperimentResult run_demorgan(const Json& formula_file);
ExperimentResult run_build_stconn(int n, int k, int d, const std::string& variant);

struct PslVerifySpec {
  SipserParams params;
  int r = 1;
  int s = 1;
  Rational q;
  std::string mode = "exact";  // exact | monte_carlo
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  int dnfs = 10;
  int max_terms = 8;
  bool subchecks = true;  // injection / round-trip / ratio, on by default
};

ExperimentResult run_psl_verify(const PslVerifySpec& spec);

struct PreserveVerifySpec {
  SipserParams params;  // level = params.d
  Rational q;
  std::string mode = "exact";
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  std::int64_t cert_samples = 500;  // certificate-vs-oracle cross-check
};

ExperimentResult run_preserve_verify(const PreserveVerifySpec& spec);

struct ProjectTrimSpec {
  SipserParams params;
  Rational q;
  std::uint64_t seed = 1;
  int max_retries = 1000;
};

ExperimentResult run_project_and_trim(const ProjectTrimSpec& spec);

// Formula tree lowered to the circuit representation, gate for gate.
Circuit formula_as_circuit(const Formula& f);

}  // namespace sipserlab
