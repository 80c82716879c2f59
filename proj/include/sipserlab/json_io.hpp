#pragma once

#include <json.hpp>

#include "sipserlab/boolfn.hpp"
#include "sipserlab/circuit.hpp"
#include "sipserlab/graph.hpp"
#include "sipserlab/projection.hpp"
#include "sipserlab/sipser.hpp"

namespace sipserlab {

using Json = nlohmann::ordered_json;

Json dnf_to_json(const Dnf& f);
Dnf dnf_from_json(const Json& j);

Json formula_to_json(const Formula& f);
Formula formula_from_json(const Json& j);

Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

Json graph_to_json(const SPGraph& g);
SPGraph graph_from_json(const Json& j);

Json proj_restriction_to_json(const ProjRestriction& rho);
ProjRestriction proj_restriction_from_json(const Json& j, const SipserParams& params);

Json sipser_params_to_json(const SipserParams& p);
SipserParams sipser_params_from_json(const Json& j);

// 12 significant digits, the display convention for float columns.
std::string format_display(double v);

// FNV-1a over the serialized spec; stamped into every report and CSV row.
std::string spec_hash(const Json& spec);

}  // namespace sipserlab
