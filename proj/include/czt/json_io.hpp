#ifndef CZT_JSON_IO_HPP
#define CZT_JSON_IO_HPP

#include "czt/rcset.hpp"
#include "czt/types.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace czt {

using nlohmann::json;

// Parse errors carry the offending field path.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Mat matrix_from_json(const json& j, const std::string& path);
Vec vector_from_json(const json& j, const std::string& path);
json matrix_to_json(const Mat& M);
json vector_to_json(const Vec& v);

// "czono" (A, b optional) or "zonotope".
ConstrainedZonotope czono_from_json(const json& j, const std::string& path = "set");
// "zonotope", "ellipsoid", or "l1ball".
SymmetricSet symmetric_from_json(const json& j, const std::string& path = "set");
HPolyhedron hpoly_from_json(const json& j, const std::string& path = "set");
Halfspace halfspace_from_json(const json& j, const std::string& path = "set");

json czono_to_json(const ConstrainedZonotope& C);
json symmetric_to_json(const SymmetricSet& S);
json hpoly_to_json(const HPolyhedron& P);

// Scenario configuration: a named model ("double-integrator", "stable-2d",
// "chain") with parameters, or explicit matrices and sets. exact_W carries
// the un-approximated disturbance when the configured one is a covering box.
struct ScenarioConfig {
  RcScenario scenario;
  SymmetricSet exact_W;
  bool inner = true;
  bool emit_boundary = false;
  int directions = 100;
  unsigned seed = 0;
  std::vector<std::string> methods;  // oracle-compare filter; empty = all
};

ScenarioConfig scenario_from_json(const json& j);

}  // namespace czt

#endif  // CZT_JSON_IO_HPP
