#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sipserlab/experiments.hpp"
#include "sipserlab/graph.hpp"
#include "sipserlab/stconn.hpp"
#include "sipserlab/switching.hpp"

namespace py = pybind11;
using namespace sipserlab;

namespace {

Restriction restriction_from_str(const std::string& s) { return Restriction::from_string(s); }

ProjRestriction proj_from_labels(const SipserParams& p, const std::string& q,
                                 const std::vector<py::tuple>& blocks) {
  ProjRestriction rho;
  rho.params = p;
  rho.q = rational_from_string(q);
  for (const py::tuple& t : blocks) {
    std::string kind = t[0].cast<std::string>();
    if (kind == "star")
      rho.blocks.push_back(BlockRestriction::all_star());
    else
      rho.blocks.push_back(BlockRestriction::pattern(t[1].cast<int>(), t[2].cast<int>()));
  }
  return rho;
}

py::dict bad_set_dict(const BadSetReport& rep) {
  py::dict d;
  d["support"] = rep.support_size;
  d["bad"] = rep.bad_indices.size();
  d["exact_prob"] = rational_to_string(rep.exact_prob);
  d["exact_prob_optimal"] = rational_to_string(rep.exact_prob_optimal);
  d["bound"] = rational_to_string(rep.bound);
  d["bound_applies"] = rep.bound_applies;
  d["bound_holds"] = rep.bound_holds;
  d["injection_ok"] = rep.injection_ok;
  d["roundtrip_ok"] = rep.roundtrip_ok;
  d["ratio_ok"] = rep.ratio_ok;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "skewed Sipser formulas, random projections, switching-lemma machinery, "
            "and small-distance connectivity circuits";

  py::class_<SipserParams>(m, "SipserParams")
      .def(py::init([](int u, int w, int w_b, int d) {
             SipserParams p{u, w, w_b, d};
             p.validate();
             return p;
           }),
           py::arg("u"), py::arg("w"), py::arg("wb"), py::arg("d"))
      .def_readonly("u", &SipserParams::u)
      .def_readonly("w", &SipserParams::w)
      .def_readonly("wb", &SipserParams::w_b)
      .def_readonly("d", &SipserParams::d);

  py::class_<AddressSpace>(m, "AddressSpace")
      .def(py::init<SipserParams>())
      .def_property_readonly("n", &AddressSpace::n)
      .def_property_readonly("num_blocks", &AddressSpace::num_blocks)
      .def("address_to_index", &AddressSpace::address_to_index)
      .def("index_to_address", &AddressSpace::index_to_address)
      .def("block_of", &AddressSpace::block_of);

  py::class_<Formula>(m, "Formula")
      .def_property_readonly("num_vars", [](const Formula& f) { return f.num_vars; })
      .def("depth", &Formula::depth)
      .def("eval", [](const Formula& f, const std::vector<bool>& x) { return f.eval(x); })
      .def("truth_table",
           [](const Formula& f) { return truth_table(f).to_string(); })
      .def("to_json", [](const Formula& f) { return formula_to_json(f).dump(); });

  py::class_<Circuit>(m, "Circuit")
      .def_property_readonly("size", [](const Circuit& c) { return c.size(); })
      .def("depth", &Circuit::depth)
      .def("max_fanin", &Circuit::max_fanin)
      .def("eval", [](const Circuit& c, const std::vector<bool>& x) { return c.eval(x); })
      .def("truth_table",
           [](const Circuit& c) { return truth_table(c).to_string(); })
      .def("to_json", [](const Circuit& c) { return circuit_to_json(c).dump(); });

  py::class_<SPGraph>(m, "SPGraph")
      .def_property_readonly("vertex_count", [](const SPGraph& g) { return g.vertex_count; })
      .def_property_readonly("edges",
                             [](const SPGraph& g) {
                               std::vector<std::tuple<int, int, std::int64_t>> out;
                               for (const SPGraph::Edge& e : g.edges)
                                 out.emplace_back(e.a, e.b, e.var);
                               return out;
                             })
      .def("is_simple", &SPGraph::is_simple)
      .def("shortest_st_path",
           [](const SPGraph& g) -> py::object {
             auto d = shortest_st_path(g);
             if (!d) return py::none();
             return py::int_(*d);
           })
      .def("subgraph", [](const SPGraph& g, const std::vector<bool>& z) { return subgraph(g, z); })
      .def("to_json", [](const SPGraph& g) { return graph_to_json(g).dump(); });

  py::class_<Dnf>(m, "Dnf")
      .def_static("from_json",
                  [](const std::string& text) { return dnf_from_json(Json::parse(text)); })
      .def("to_json", [](const Dnf& f) { return dnf_to_json(f).dump(); })
      .def_property_readonly("num_vars", [](const Dnf& f) { return f.num_vars; })
      .def_property_readonly("num_terms", [](const Dnf& f) { return f.terms.size(); })
      .def("normalize", [](const Dnf& f) { return normalize_dnf(f); })
      .def("truth_table", [](const Dnf& f) { return truth_table(f).to_string(); });

  m.def("build_skewed_sipser", &build_skewed_sipser, py::arg("params"));
  m.def("build_cnf_sipser", &build_cnf_sipser, py::arg("u"), py::arg("wb"));
  m.def("build_dagger", &build_dagger, py::arg("params"));
  m.def("demorgan_convert", &demorgan_convert, py::arg("formula"), py::arg("params"));
  m.def("formula_to_graph", &formula_to_graph, py::arg("formula"));

  m.def("optimal_dt_depth",
        [](const std::string& bits) { return optimal_dt_depth(TruthTable::from_string(bits)); },
        py::arg("truth_table"));
  m.def("is_subfunction",
        [](const std::string& g, const std::string& f) {
          return is_subfunction(TruthTable::from_string(g), TruthTable::from_string(f));
        },
        py::arg("g"), py::arg("f"));

  m.def("enumerate_support", [](int u) {
    std::vector<py::tuple> out;
    for (const BlockRestriction& b : enumerate_support(u)) {
      if (b.star)
        out.push_back(py::make_tuple("star", py::none(), py::none()));
      else
        out.push_back(py::make_tuple("pattern", b.section, b.bit));
    }
    return out;
  });

  m.def("expand_restriction",
        [](const SipserParams& p, const std::string& q, const std::vector<py::tuple>& blocks) {
          AddressSpace space(p);
          return proj_from_labels(p, q, blocks).expand(space).to_string();
        },
        py::arg("params"), py::arg("q"), py::arg("blocks"));

  m.def("restriction_weight",
        [](const SipserParams& p, const std::string& q, const std::vector<py::tuple>& blocks) {
          return rational_to_string(restriction_weight(proj_from_labels(p, q, blocks)));
        },
        py::arg("params"), py::arg("q"), py::arg("blocks"));

  m.def("project_dnf",
        [](const Dnf& f, const std::string& rho, const SipserParams& p) {
          AddressSpace space(p);
          return project_dnf(f, restriction_from_str(rho), space);
        },
        py::arg("dnf"), py::arg("rho"), py::arg("params"));

  m.def("canonical_dt_depth",
        [](const Dnf& f, const std::string& rho, const SipserParams& p) {
          AddressSpace space(p);
          return canonical_dt(normalize_dnf(f), restriction_from_str(rho), space).tree.depth();
        },
        py::arg("dnf"), py::arg("rho"), py::arg("params"));

  m.def("bad_set",
        [](const Dnf& f, const SipserParams& p, int r, int s, const std::string& q) {
          AddressSpace space(p);
          PslParams params{r, s, rational_from_string(q), p};
          return bad_set_dict(params.bound_applies() ? bad_set(f, params, space)
                                                     : bad_set_depths_only(f, params, space));
        },
        py::arg("dnf"), py::arg("params"), py::arg("r"), py::arg("s"), py::arg("q"));

  m.def("psl_monte_carlo",
        [](const Dnf& f, const SipserParams& p, int r, int s, const std::string& q,
           std::int64_t trials, std::uint64_t seed) {
          AddressSpace space(p);
          PslParams params{r, s, rational_from_string(q), p};
          McEstimate mc = psl_monte_carlo(f, params, space, trials, seed);
          return py::make_tuple(mc.estimate, mc.stderr_);
        },
        py::arg("dnf"), py::arg("params"), py::arg("r"), py::arg("s"), py::arg("q"),
        py::arg("trials"), py::arg("seed"));

  m.def("random_dnf",
        [](const SipserParams& p, int width, int max_terms, std::uint64_t seed) {
          AddressSpace space(p);
          SplitRng rng(seed);
          return random_dnf(space, width, max_terms, rng);
        },
        py::arg("params"), py::arg("width"), py::arg("max_terms"), py::arg("seed"));

  m.def("preservation_probability_exact",
        [](const SipserParams& p, const std::string& q) {
          AddressSpace space(p);
          PreservationProbability r =
              preservation_probability_exact(space, rational_from_string(q));
          py::dict d;
          d["exact_prob"] = rational_to_string(r.exact_prob);
          d["closed_form"] = rational_to_string(r.closed_form);
          return d;
        },
        py::arg("params"), py::arg("q"));

  m.def("build_squaring_circuit", &build_squaring_circuit, py::arg("n"), py::arg("k"),
        py::arg("s") = 0, py::arg("t") = 1);
  m.def("build_power_circuit", &build_power_circuit, py::arg("n"), py::arg("k"), py::arg("d"),
        py::arg("s") = 0, py::arg("t") = 1);
  m.def("bfs_oracle", &bfs_oracle, py::arg("adj"), py::arg("n"), py::arg("s"), py::arg("t"),
        py::arg("k"));

  m.def("reduction_params",
        [](const std::string& n, const std::string& k, int d) {
          ReductionParams r = reduction_params(BigInt(n), BigInt(k), d);
          py::dict out;
          out["degenerate"] = r.degenerate;
          out["u0"] = r.u0.str();
          out["k0"] = r.k0.str();
          out["n_prime"] = r.n_prime.str();
          out["w0"] = r.w0.str();
          out["n0_display"] = r.n0_display;
          return out;
        },
        py::arg("n"), py::arg("k"), py::arg("d"));

  m.def("size_budget",
        [](int u, const std::string& q) {
          return rational_to_string(size_budget(u, rational_from_string(q)));
        },
        py::arg("u"), py::arg("q"));
}
