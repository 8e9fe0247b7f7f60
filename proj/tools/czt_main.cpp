// Command-line driver: Pontryagin-difference runs, robust-controllable-set
// recursions, chain benchmarks, and polygon-oracle comparisons.

#include "czt/json_io.hpp"
#include "czt/models.hpp"
#include "czt/oracle2d.hpp"
#include "czt/pdiff.hpp"
#include "czt/rcset.hpp"
#include "czt/sets.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace czt;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string format_double(double v) {
  std::ostringstream ss;
  ss << std::setprecision(12) << v;
  return ss.str();
}

fs::path meta_path_for(const fs::path& out) {
  fs::path p = out;
  if (p.extension() == ".json") p.replace_extension(".meta.json");
  else p += ".meta.json";
  return p;
}

double polygon_area_of_points(const std::vector<Eigen::Vector2d>& pts) {
  ConvexPolygon P;
  P.v = pts;
  return polygon_area(P);
}

int cmd_pdiff(const std::string& minuend_path, const std::string& subtrahend_path,
              const std::string& mode, const std::string& out_path) {
  ConstrainedZonotope C = czono_from_json(load_json(minuend_path), "minuend");
  SymmetricSet S = symmetric_from_json(load_json(subtrahend_path), "subtrahend");
  if (mode == "two-stage" && S.kind != SymmetricSet::Kind::Zonotope)
    throw ParseError("two-stage requires a zonotope subtrahend");

  json meta;
  meta["mode"] = mode;
  ConstrainedZonotope result;
  auto t0 = std::chrono::steady_clock::now();
  if (mode == "inner") {
    ConstrainedZonotope Cm = detail::ensure_min_row(C);
    ShrinkDiag D = shrink_diag(Cm, S);
    meta["D"] = vector_to_json(D.d);
    result = inner_pdiff(Cm, S);
  } else if (mode == "outer") {
    result = outer_pdiff(C, S);
  } else if (mode == "two-stage") {
    Vec d;
    result = two_stage_inner_pdiff(C, S, &d);
    if (d.size() > 0) meta["D"] = vector_to_json(d);
  } else {
    throw ParseError("mode: expected inner, outer or two-stage");
  }
  auto t1 = std::chrono::steady_clock::now();

  meta["wall_millis"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  meta["empty"] = result.is_canonical_empty();
  if (!result.is_canonical_empty()) {
    ReprComplexity rc = repr_complexity(result);
    meta["complexity"] = {{"constraints", rc.constraints}, {"dof_order", rc.dof_value()}};
  }
  write_json(out_path, czono_to_json(result));
  write_json(meta_path_for(out_path), meta);
  return result.is_canonical_empty() ? 2 : 0;
}

int cmd_rc(const std::string& config_path, const std::string& out_dir, int directions_override) {
  ScenarioConfig cfg = scenario_from_json(load_json(config_path));
  if (directions_override > 0) cfg.directions = directions_override;
  RcResult res = cfg.inner ? rc_inner(cfg.scenario) : rc_outer(cfg.scenario);

  fs::path dir(out_dir);
  fs::create_directories(dir);
  std::ostringstream summary, timings;
  summary << "t,M,dof,empty\n";
  timings << "t,millis\n";
  const int T = cfg.scenario.horizon;
  for (int t = 0; t <= T; ++t) {
    const size_t st = static_cast<size_t>(t);
    write_json(dir / ("K_" + std::to_string(t) + ".json"), czono_to_json(res.sets[st]));
    summary << t << "," << res.complexities[st].constraints << ","
            << format_double(res.complexities[st].dof_value()) << ","
            << (res.empty[st] ? "true" : "false") << "\n";
    timings << t << "," << format_double(res.step_seconds[st] * 1000.0) << "\n";
    if (cfg.emit_boundary && cfg.scenario.state_dim() == 2 && !res.empty[st]) {
      auto pts = boundary_sample(res.sets[st], cfg.directions);
      if (pts) {
        std::ostringstream bs;
        for (const auto& p : *pts) bs << format_double(p.x()) << "," << format_double(p.y()) << "\n";
        write_text(dir / ("boundary_" + std::to_string(t) + ".csv"), bs.str());
      }
    }
  }
  write_text(dir / "summary.csv", summary.str());
  write_text(dir / "timings.csv", timings.str());
  return 0;
}

int cmd_bench_chain(int masses_lo, int masses_hi, int horizon, const std::string& out_csv,
                    bool parallel) {
  if (masses_lo < 2 || masses_hi > 50 || masses_lo > masses_hi)
    throw ParseError("masses range must lie within 2..50");
  struct Row {
    int n;
    double seconds;
    long M;
    double dof;
  };
  auto run_one = [&](int nm) {
    ChainOptions opt;
    opt.num_masses = nm;
    opt.horizon = horizon;
    RcScenario sc = spring_mass_chain(opt);
    auto t0 = std::chrono::steady_clock::now();
    RcResult res = rc_inner(sc);
    auto t1 = std::chrono::steady_clock::now();
    ReprComplexity rc = res.complexities.front();
    return Row{2 * nm, std::chrono::duration<double>(t1 - t0).count(), rc.constraints,
               rc.dof_value()};
  };

  std::vector<Row> rows;
  if (parallel) {
    std::vector<std::future<Row>> futs;
    for (int nm = masses_lo; nm <= masses_hi; ++nm)
      futs.push_back(std::async(std::launch::async, run_one, nm));
    for (auto& f : futs) rows.push_back(f.get());
  } else {
    for (int nm = masses_lo; nm <= masses_hi; ++nm) rows.push_back(run_one(nm));
  }

  std::ostringstream csv;
  csv << "n,seconds,M,dof\n";
  for (const Row& r : rows)
    csv << r.n << "," << format_double(r.seconds) << "," << r.M << "," << format_double(r.dof)
        << "\n";
  write_text(out_csv, csv.str());
  return 0;
}

int cmd_oracle_compare(const std::string& config_path, const std::string& out_dir,
                       int directions_override) {
  ScenarioConfig cfg = scenario_from_json(load_json(config_path));
  if (directions_override > 0) cfg.directions = directions_override;
  if (cfg.scenario.state_dim() != 2) throw ParseError("oracle-compare requires a 2-D scenario");

  std::vector<std::string> methods = cfg.methods;
  if (methods.empty()) {
    methods = {"inner", "outer", "exact"};
    if (cfg.scenario.W.front().kind == SymmetricSet::Kind::Zonotope)
      methods.insert(methods.begin() + 2, "two-stage");
  }

  // The exact run always uses the un-approximated disturbance; it is the
  // denominator of every ratio.
  RcScenario exact_sc = cfg.scenario;
  exact_sc.W = {cfg.exact_W};
  auto polys = exact_rc_2d(exact_sc);
  double exact_area = polygon_area(polys.front());

  std::ostringstream csv;
  csv << "method,area,ratio,M,dof\n";
  for (const std::string& m : methods) {
    double area = 0.0;
    std::string M_str, dof_str;
    if (m == "exact") {
      area = exact_area;
    } else {
      RcOptions opts;
      if (m == "inner") opts.method = PdiffMethod::Inner;
      else if (m == "outer") opts.method = PdiffMethod::Outer;
      else if (m == "two-stage") opts.method = PdiffMethod::TwoStage;
      else throw ParseError("methods: unknown method \"" + m + "\"");
      RcResult res = rc_recursion(cfg.scenario, opts);
      if (!res.empty.front()) {
        auto pts = boundary_sample(res.initial_set(), cfg.directions);
        if (pts) area = polygon_area_of_points(*pts);
      }
      M_str = std::to_string(res.complexities.front().constraints);
      dof_str = format_double(res.complexities.front().dof_value());
    }
    double ratio = exact_area > 0.0 ? area / exact_area : 0.0;
    csv << m << "," << format_double(area) << "," << format_double(ratio) << "," << M_str << ","
        << dof_str << "\n";
  }
  fs::create_directories(out_dir);
  write_text(fs::path(out_dir) / "ratios.csv", csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained-zonotope set computations and robust controllable sets"};
  app.require_subcommand(1);

  std::string minuend, subtrahend, mode = "inner", out, config;
  int directions = 0;
  int horizon = 20;
  std::string masses = "2:5";
  bool parallel = false;
  unsigned seed = 0;

  auto* pd = app.add_subcommand("pdiff", "Pontryagin difference of two sets");
  pd->add_option("minuend", minuend, "minuend set JSON")->required();
  pd->add_option("subtrahend", subtrahend, "subtrahend set JSON")->required();
  pd->add_option("--mode", mode, "inner | outer | two-stage");
  pd->add_option("--out", out, "result JSON path")->required();

  auto* rc = app.add_subcommand("rc", "robust controllable set recursion");
  rc->add_option("config", config, "scenario config JSON")->required();
  rc->add_option("--out", out, "output directory")->required();
  rc->add_option("--directions", directions, "boundary sample directions");
  rc->add_option("--seed", seed, "seed for randomized configs");

  auto* bench = app.add_subcommand("bench-chain", "mass chain benchmark sweep");
  bench->add_option("--masses", masses, "range, e.g. 2:5");
  bench->add_option("-T,--horizon", horizon, "recursion horizon");
  bench->add_option("--out", out, "output CSV path")->required();
  bench->add_flag("--parallel", parallel, "evaluate chain lengths concurrently");

  auto* oc = app.add_subcommand("oracle-compare", "area ratios against the exact 2-D recursion");
  oc->add_option("config", config, "scenario config JSON")->required();
  oc->add_option("--out", out, "output directory")->required();
  oc->add_option("--directions", directions, "boundary sample directions");
  oc->add_option("--seed", seed, "seed for randomized configs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pd->parsed()) return cmd_pdiff(minuend, subtrahend, mode, out);
    if (rc->parsed()) return cmd_rc(config, out, directions);
    if (bench->parsed()) {
      int lo = 0, hi = 0;
      auto colon = masses.find(':');
      if (colon == std::string::npos) {
        lo = hi = std::stoi(masses);
      } else {
        lo = std::stoi(masses.substr(0, colon));
        hi = std::stoi(masses.substr(colon + 1));
      }
      return cmd_bench_chain(lo, hi, horizon, out, parallel);
    }
    if (oc->parsed()) return cmd_oracle_compare(config, out, directions);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
