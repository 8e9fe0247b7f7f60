#include "czt/json_io.hpp"

#include "czt/czops.hpp"
#include "czt/models.hpp"

#include <cmath>

namespace czt {

namespace {

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path + ": expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path + ": non-finite number");
  return v;
}

}  // namespace

Vec vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = number_at(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Mat matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of rows");
  const size_t rows = j.size();
  size_t cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) throw ParseError(path + "[0]: expected a row array");
    cols = j[0].size();
  }
  Mat M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    std::string rp = path + "[" + std::to_string(i) + "]";
    if (!row.is_array()) throw ParseError(rp + ": expected a row array");
    if (row.size() != cols) throw ParseError(rp + ": row length mismatch");
    for (size_t c = 0; c < cols; ++c)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          number_at(row[c], rp + "[" + std::to_string(c) + "]");
  }
  return M;
}

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json matrix_to_json(const Mat& M) {
  json out = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    out.push_back(row);
  }
  return out;
}

namespace {

std::string type_of(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  if (!j.contains("type") || !j["type"].is_string())
    throw ParseError(path + ".type: expected a string");
  return j["type"].get<std::string>();
}

const json& field(const json& j, const char* name, const std::string& path) {
  if (!j.contains(name)) throw ParseError(path + "." + name + ": missing field");
  return j[name];
}

}  // namespace

ConstrainedZonotope czono_from_json(const json& j, const std::string& path) {
  std::string type = type_of(j, path);
  if (type != "czono" && type != "zonotope")
    throw ParseError(path + ".type: expected \"czono\" or \"zonotope\", got \"" + type + "\"");
  Mat G = matrix_from_json(field(j, "G", path), path + ".G");
  Vec c = vector_from_json(field(j, "c", path), path + ".c");
  if (G.rows() == 0 && c.size() > 0) G = Mat(c.size(), 0);
  if (type == "zonotope" || (!j.contains("A") && !j.contains("b")))
    return ConstrainedZonotope(std::move(G), std::move(c));
  Mat A = matrix_from_json(field(j, "A", path), path + ".A");
  Vec b = vector_from_json(field(j, "b", path), path + ".b");
  if (A.rows() == 0) A = Mat(0, G.cols());
  return ConstrainedZonotope(std::move(G), std::move(c), A, std::move(b));
}

SymmetricSet symmetric_from_json(const json& j, const std::string& path) {
  std::string type = type_of(j, path);
  Mat G = matrix_from_json(field(j, "G", path), path + ".G");
  Vec c = vector_from_json(field(j, "c", path), path + ".c");
  if (G.rows() == 0 && c.size() > 0) G = Mat(c.size(), 0);
  if (type == "zonotope") return SymmetricSet::zonotope(std::move(G), std::move(c));
  if (type == "ellipsoid") return SymmetricSet::ellipsoid(std::move(G), std::move(c));
  if (type == "l1ball") return SymmetricSet::l1_ball_image(std::move(G), std::move(c));
  throw ParseError(path + ".type: expected \"zonotope\", \"ellipsoid\" or \"l1ball\", got \"" +
                   type + "\"");
}

HPolyhedron hpoly_from_json(const json& j, const std::string& path) {
  std::string type = type_of(j, path);
  if (type != "hpoly") throw ParseError(path + ".type: expected \"hpoly\", got \"" + type + "\"");
  Mat H = matrix_from_json(field(j, "H", path), path + ".H");
  Vec k = vector_from_json(field(j, "k", path), path + ".k");
  return HPolyhedron(std::move(H), std::move(k));
}

Halfspace halfspace_from_json(const json& j, const std::string& path) {
  std::string type = type_of(j, path);
  if (type != "halfspace")
    throw ParseError(path + ".type: expected \"halfspace\", got \"" + type + "\"");
  Vec p = vector_from_json(field(j, "p", path), path + ".p");
  return Halfspace(std::move(p), number_at(field(j, "q", path), path + ".q"));
}

json czono_to_json(const ConstrainedZonotope& C) {
  json out;
  out["type"] = "czono";
  out["G"] = matrix_to_json(C.G);
  out["c"] = vector_to_json(C.c);
  if (C.num_constraints() > 0) {
    out["A"] = matrix_to_json(C.dense_A());
    out["b"] = vector_to_json(C.b);
  }
  if (C.is_canonical_empty()) out["empty"] = true;
  return out;
}

json symmetric_to_json(const SymmetricSet& S) {
  json out;
  switch (S.kind) {
    case SymmetricSet::Kind::Zonotope:
      out["type"] = "zonotope";
      break;
    case SymmetricSet::Kind::Ellipsoid:
      out["type"] = "ellipsoid";
      break;
    case SymmetricSet::Kind::CrossPolytope:
      out["type"] = "l1ball";
      break;
    case SymmetricSet::Kind::Generic:
      throw ParseError("symmetric_to_json: generic sets have no JSON form");
  }
  out["G"] = matrix_to_json(S.G);
  out["c"] = vector_to_json(S.c);
  return out;
}

json hpoly_to_json(const HPolyhedron& P) {
  json out;
  out["type"] = "hpoly";
  out["H"] = matrix_to_json(P.H);
  out["k"] = vector_to_json(P.k);
  return out;
}

namespace {

DisturbanceShape shape_from_string(const std::string& s, const std::string& path) {
  if (s == "ball") return DisturbanceShape::Ball;
  if (s == "ellipsoid") return DisturbanceShape::Ellipsoid;
  if (s == "box") return DisturbanceShape::Box;
  throw ParseError(path + ": expected \"ball\", \"ellipsoid\" or \"box\"");
}

int int_field(const json& j, const char* name, int fallback) {
  if (!j.contains(name)) return fallback;
  if (!j[name].is_number_integer()) throw ParseError(std::string(name) + ": expected an integer");
  return j[name].get<int>();
}

double num_field(const json& j, const char* name, double fallback) {
  if (!j.contains(name)) return fallback;
  return number_at(j[name], name);
}

}  // namespace

ScenarioConfig scenario_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("config: expected an object");
  ScenarioConfig cfg;
  if (j.contains("approx")) {
    std::string a = j["approx"].is_string() ? j["approx"].get<std::string>() : "";
    if (a != "inner" && a != "outer") throw ParseError("approx: expected \"inner\" or \"outer\"");
    cfg.inner = a == "inner";
  }
  if (j.contains("emit_boundary")) {
    if (!j["emit_boundary"].is_boolean()) throw ParseError("emit_boundary: expected a boolean");
    cfg.emit_boundary = j["emit_boundary"].get<bool>();
  }
  cfg.directions = int_field(j, "directions", 100);
  if (cfg.directions < 3) throw ParseError("directions: expected at least 3");
  cfg.seed = static_cast<unsigned>(int_field(j, "seed", 0));
  if (j.contains("methods")) {
    if (!j["methods"].is_array()) throw ParseError("methods: expected an array of strings");
    for (const auto& m : j["methods"]) {
      if (!m.is_string()) throw ParseError("methods: expected an array of strings");
      cfg.methods.push_back(m.get<std::string>());
    }
  }

  const json& model = field(j, "model", "config");
  if (model.is_string()) {
    std::string name = model.get<std::string>();
    if (name == "double-integrator") {
      DoubleIntegratorOptions opt;
      opt.dt = num_field(j, "dt", 0.1);
      opt.horizon = int_field(j, "T", 20);
      bool outer_box = false;
      if (j.contains("W")) {
        const json& w = j["W"];
        if (!w.is_object() || !w.contains("kind")) throw ParseError("W: expected {kind, ...}");
        opt.w_shape = shape_from_string(w["kind"].get<std::string>(), "W.kind");
        if (w.contains("zono_outer")) {
          if (!w["zono_outer"].is_boolean()) throw ParseError("W.zono_outer: expected a boolean");
          outer_box = w["zono_outer"].get<bool>();
        }
      }
      opt.w_zono_outer = outer_box;
      cfg.scenario = double_integrator(opt);
      DoubleIntegratorOptions base = opt;
      base.w_zono_outer = false;
      cfg.exact_W = double_integrator(base).W.front();
    } else if (name == "stable-2d") {
      cfg.scenario = stable_2d_system(int_field(j, "T", 100));
      cfg.exact_W = cfg.scenario.W.front();
    } else if (name == "chain") {
      ChainOptions opt;
      opt.num_masses = int_field(j, "masses", 5);
      opt.horizon = int_field(j, "T", 20);
      opt.stiffness = num_field(j, "k", 0.1);
      opt.mass = num_field(j, "m", 0.1);
      opt.damping = num_field(j, "mu", 0.01);
      opt.dt = num_field(j, "dt", 0.1);
      if (j.contains("goal_rep")) {
        std::string g = j["goal_rep"].is_string() ? j["goal_rep"].get<std::string>() : "";
        if (g == "zonotope")
          opt.goal_rep = GoalRep::Zonotope;
        else if (g == "square-stack")
          opt.goal_rep = GoalRep::SquareStack;
        else
          throw ParseError("goal_rep: expected \"square-stack\" or \"zonotope\"");
      }
      if (j.contains("W")) {
        const json& w = j["W"];
        if (!w.is_object() || !w.contains("kind")) throw ParseError("W: expected {kind, ...}");
        opt.w_shape = shape_from_string(w["kind"].get<std::string>(), "W.kind");
      }
      cfg.scenario = spring_mass_chain(opt);
      cfg.exact_W = cfg.scenario.W.front();
    } else {
      throw ParseError("model: unknown name \"" + name + "\"");
    }
  } else if (model.is_object()) {
    RcScenario sc;
    std::string variant = field(j, "variant", "config").is_string()
                              ? j["variant"].get<std::string>()
                              : throw ParseError("variant: expected a string");
    if (variant == "invertible-a")
      sc.variant = RcScenario::Variant::InvertibleA;
    else if (variant == "polytopic-x")
      sc.variant = RcScenario::Variant::PolytopicX;
    else
      throw ParseError("variant: expected \"invertible-a\" or \"polytopic-x\"");
    sc.horizon = int_field(j, "T", 1);
    Mat A = matrix_from_json(field(model, "A", "model"), "model.A");
    Mat B = matrix_from_json(field(model, "B", "model"), "model.B");
    Mat F = model.contains("F") ? matrix_from_json(model["F"], "model.F")
                                : Mat(Mat::Identity(A.rows(), A.cols()));
    sc.A = {A};
    sc.B = {B};
    sc.F = {F};
    sc.U = {czono_from_json(field(model, "U", "model"), "model.U")};
    sc.W = {symmetric_from_json(field(model, "W", "model"), "model.W")};
    HPolyhedron X = hpoly_from_json(field(model, "X", "model"), "model.X");
    sc.X_hrep = {X};
    if (sc.variant == RcScenario::Variant::PolytopicX) sc.X_cz = {invertible_from_hpoly(X)};
    sc.goal = czono_from_json(field(model, "G", "model"), "model.G");
    cfg.scenario = sc;
    cfg.exact_W = sc.W.front();
  } else {
    throw ParseError("model: expected a name or an object");
  }
  return cfg;
}

}  // namespace czt
