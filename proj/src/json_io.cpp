#include "sipserlab/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace sipserlab {

Json dnf_to_json(const Dnf& f) {
  Json terms = Json::array();
  for (const Term& t : f.terms) {
    Json lits = Json::array();
    for (const Literal& l : t.lits)
      lits.push_back(Json{{"var", l.var}, {"sign", l.positive ? "+" : "-"}});
    terms.push_back(std::move(lits));
  }
  return Json{{"num_vars", f.num_vars}, {"terms", std::move(terms)}};
}

Dnf dnf_from_json(const Json& j) {
  Dnf f;
  f.num_vars = j.at("num_vars").get<std::int64_t>();
  for (const Json& jt : j.at("terms")) {
    Term t;
    for (const Json& jl : jt) {
      std::string sign = jl.at("sign").get<std::string>();
      if (sign != "+" && sign != "-") throw std::invalid_argument("literal sign must be + or -");
      std::int64_t var = jl.at("var").get<std::int64_t>();
      if (var < 0 || var >= f.num_vars) throw std::invalid_argument("literal variable out of range");
      t.lits.push_back(Literal{var, sign == "+"});
    }
    f.terms.push_back(std::move(t));
  }
  return f;
}

namespace {

Json formula_node_to_json(const Formula& f, int id) {
  const Formula::Node& n = f.nodes[id];
  if (n.op == Formula::Op::Var) return Json{{"var", n.var}};
  Json children = Json::array();
  for (int c : n.children) children.push_back(formula_node_to_json(f, c));
  return Json{{"gate", n.op == Formula::Op::Or ? "OR" : "AND"}, {"children", std::move(children)}};
}

int formula_node_from_json(const Json& j, Formula& f) {
  if (j.contains("var")) return f.add_var(j.at("var").get<std::int64_t>());
  std::string gate = j.at("gate").get<std::string>();
  if (gate != "OR" && gate != "AND") throw std::invalid_argument("gate must be OR or AND");
  std::vector<int> kids;
  for (const Json& c : j.at("children")) kids.push_back(formula_node_from_json(c, f));
  return f.add_gate(gate == "OR" ? Formula::Op::Or : Formula::Op::And, std::move(kids));
}

}  // namespace

Json formula_to_json(const Formula& f) {
  return Json{{"num_vars", f.num_vars}, {"root", formula_node_to_json(f, f.root)}};
}

Formula formula_from_json(const Json& j) {
  Formula f;
  f.root = formula_node_from_json(j.at("root"), f);
  std::int64_t declared = j.at("num_vars").get<std::int64_t>();
  if (declared < f.num_vars) throw std::invalid_argument("num_vars smaller than highest leaf");
  f.num_vars = declared;
  return f;
}

Json circuit_to_json(const Circuit& c) {
  Json gates = Json::array();
  for (const Circuit::Gate& g : c.gates) {
    switch (g.kind) {
      case Circuit::Kind::Input:
        gates.push_back(Json{{"kind", "input"}, {"var", g.var}});
        break;
      case Circuit::Kind::And:
        gates.push_back(Json{{"kind", "and"}, {"children", g.children}});
        break;
      case Circuit::Kind::Or:
        gates.push_back(Json{{"kind", "or"}, {"children", g.children}});
        break;
    }
  }
  return Json{{"num_vars", c.num_vars}, {"output", c.output}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const Json& j) {
  Circuit c;
  c.num_vars = j.at("num_vars").get<std::int64_t>();
  for (const Json& jg : j.at("gates")) {
    std::string kind = jg.at("kind").get<std::string>();
    if (kind == "input") {
      c.add_input(jg.at("var").get<std::int64_t>());
    } else if (kind == "and" || kind == "or") {
      c.add_gate(kind == "and" ? Circuit::Kind::And : Circuit::Kind::Or,
                 jg.at("children").get<std::vector<int>>());
    } else {
      throw std::invalid_argument("gate kind must be input/and/or");
    }
  }
  c.output = j.at("output").get<int>();
  c.num_vars = std::max(c.num_vars, j.at("num_vars").get<std::int64_t>());
  c.validate();
  return c;
}

Json graph_to_json(const SPGraph& g) {
  Json edges = Json::array();
  for (const SPGraph::Edge& e : g.edges) edges.push_back(Json::array({e.a, e.b, e.var}));
  return Json{{"vertices", g.vertex_count}, {"s", g.s}, {"t", g.t}, {"edges", std::move(edges)}};
}

SPGraph graph_from_json(const Json& j) {
  SPGraph g;
  g.vertex_count = j.at("vertices").get<int>();
  g.s = j.at("s").get<int>();
  g.t = j.at("t").get<int>();
  for (const Json& je : j.at("edges"))
    g.edges.push_back(SPGraph::Edge{je.at(0).get<int>(), je.at(1).get<int>(),
                                    je.at(2).get<std::int64_t>()});
  return g;
}

Json proj_restriction_to_json(const ProjRestriction& rho) {
  Json blocks = Json::array();
  for (const BlockRestriction& b : rho.blocks) {
    if (b.star)
      blocks.push_back(Json{{"kind", "star"}});
    else
      blocks.push_back(Json{{"kind", "pattern"}, {"section", b.section}, {"bit", b.bit}});
  }
  return Json{{"q", rational_to_string(rho.q)}, {"blocks", std::move(blocks)}};
}

ProjRestriction proj_restriction_from_json(const Json& j, const SipserParams& params) {
  ProjRestriction rho;
  rho.params = params;
  rho.q = rational_from_string(j.at("q").get<std::string>());
  for (const Json& jb : j.at("blocks")) {
    std::string kind = jb.at("kind").get<std::string>();
    if (kind == "star") {
      rho.blocks.push_back(BlockRestriction::all_star());
    } else if (kind == "pattern") {
      rho.blocks.push_back(
          BlockRestriction::pattern(jb.at("section").get<int>(), jb.at("bit").get<int>()));
    } else {
      throw std::invalid_argument("block kind must be star or pattern");
    }
  }
  return rho;
}

Json sipser_params_to_json(const SipserParams& p) {
  return Json{{"u", p.u}, {"w", p.w}, {"wb", p.w_b}, {"d", p.d}};
}

SipserParams sipser_params_from_json(const Json& j) {
  SipserParams p{j.at("u").get<int>(), j.at("w").get<int>(), j.at("wb").get<int>(),
                 j.at("d").get<int>()};
  p.validate();
  return p;
}

std::string format_display(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string spec_hash(const Json& spec) {
  std::string s = spec.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sipserlab
