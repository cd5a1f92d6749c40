#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jcurve/chained.hpp"
#include "jcurve/error.hpp"
#include "jcurve/io.hpp"
#include "jcurve/offset.hpp"
#include "jcurve/oracle.hpp"
#include "jcurve/separation.hpp"

namespace jcurve::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kHypothesis = 2,
  kInput = 3,
  kTolerance = 4,
};

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::HypothesisViolation:
    case ErrorCode::NotChained:
    case ErrorCode::BSpansMultipleFaces:
    case ErrorCode::FaceBoundaryNotSingleCycle:
    case ErrorCode::ZeroDistance:
    case ErrorCode::NotInComplement:
    case ErrorCode::OnBoundary:
      return kHypothesis;
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::EmptyInput:
    case ErrorCode::CellBudgetExceeded:
      return kInput;
    case ErrorCode::IdenticalCircles:
    case ErrorCode::NotClosed:
    case ErrorCode::RobustnessExhausted:
    case ErrorCode::ToleranceCollapse:
    case ErrorCode::AmbiguousNesting:
    case ErrorCode::ToleranceFailure:
      return kTolerance;
  }
  return kTolerance;
}

struct Options {
  std::string command;
  std::optional<std::string> input;
  std::vector<std::string> set_files;  // NAME=FILE
  std::optional<double> epsilon;
  std::optional<std::string> out;
  std::optional<std::string> svg;
  std::optional<double> grid_res;
  std::vector<std::string> tol;  // KEY=VALUE
  std::optional<std::uint64_t> seed;
  bool force = false;
  double chain_slack = 0.0;
  std::optional<std::string> dump_grid;
};

namespace detail {

using io::Json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ValidationError, "cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ValidationError, "cannot write '" + path + "'");
  out << text;
}

inline std::pair<std::string, std::string> split_assignment(const std::string& s, const char* flag) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error(ErrorCode::ValidationError, std::string(flag) + " expects KEY=VALUE, got '" + s + "'");
  }
  return {s.substr(0, eq), s.substr(eq + 1)};
}

inline io::ProblemSpec load_problem(const Options& o) {
  io::ProblemSpec spec;
  if (o.input) spec = io::parse_problem(read_file(*o.input));
  for (const auto& entry : o.set_files) {
    const auto [name, file] = split_assignment(entry, "--set");
    io::add_set(spec, name, io::parse_csv_points(read_file(file), file));
  }
  if (o.epsilon) {
    if (!(*o.epsilon > 0) || !std::isfinite(*o.epsilon)) {
      throw Error(ErrorCode::ValidationError, "--epsilon must be positive and finite");
    }
    spec.epsilon = o.epsilon;
  }
  if (o.grid_res) {
    if (!(*o.grid_res > 0)) throw Error(ErrorCode::ValidationError, "--grid-res must be positive");
    spec.options.grid_res = o.grid_res;
  }
  for (const auto& entry : o.tol) {
    const auto [key, value] = split_assignment(entry, "--tol");
    double v = 0.0;
    try {
      v = std::stod(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ValidationError, "--tol " + key + ": not a number");
    }
    if (!(v > 0) || !std::isfinite(v)) throw Error(ErrorCode::ValidationError, "--tol " + key + ": must be positive");
    if (key == "join") spec.options.tol_join = v;
    else if (key == "isect") spec.options.tol_isect = v;
    else if (key == "dist") spec.options.tol_dist = v;
    else throw Error(ErrorCode::ValidationError, "--tol: unknown key '" + key + "'");
  }
  if (o.seed) spec.options.seed = o.seed;
  if (o.force) spec.options.force = true;
  return spec;
}

inline double require_epsilon(const io::ProblemSpec& spec) {
  if (!spec.epsilon) throw Error(ErrorCode::ValidationError, "epsilon is required (--epsilon or \"epsilon\")");
  return *spec.epsilon;
}

// Single-set commands read the first of the preferred names that exists.
inline std::pair<std::string, PointSet> single_set(const io::ProblemSpec& spec,
                                                   std::initializer_list<const char*> names) {
  for (const char* n : names) {
    if (spec.sets.count(n)) return {n, spec.set(n)};
  }
  std::string wanted;
  for (const char* n : names) wanted += (wanted.empty() ? "" : " or ") + std::string(n);
  throw Error(ErrorCode::ValidationError, "set " + wanted + " is required");
}

inline Json separation_json(const SeparationResult& r, const SeparationCheck& v) {
  Json j = Json::object();
  j["epsilon"] = r.epsilon;
  j["side_of_A"] = std::string(to_string(r.side_of_A));
  j["side_of_B"] = std::string(to_string(r.side_of_B));
  j["dist_curve_A"] = r.dist_curve_A;
  j["dist_curve_B"] = r.dist_curve_B;
  j["face_bounded"] = r.face_bounded;
  j["hypothesis"] = io::hypothesis_json(r.hypothesis);
  j["verification"] = io::verification_json(v);
  return j;
}

struct Outcome {
  io::CurveDocument doc;
  std::vector<io::SvgLayer> layers;
  std::string svg_only;  // render writes SVG instead of a document
  int status = kOk;
};

inline Outcome run_command(const Options& o, const io::ProblemSpec& spec, std::ostream& err) {
  const TolerancePolicy tol = spec.policy();
  Outcome out;
  auto& meta = out.doc.metadata;
  meta["command"] = o.command;
  meta["seed"] = tol.seed;
  if (spec.duplicates_removed) err << "warning: " << spec.duplicates_removed << " duplicate point(s) removed\n";

  if (o.command == "components") {
    const double eps = require_epsilon(spec);
    const auto [name, M] = single_set(spec, {"M", "A"});
    const double threshold = 2.0 * eps + o.chain_slack;
    meta["set"] = name;
    meta["epsilon"] = eps;
    meta["partition"] = io::partition_json(chained_components(M, threshold));
  } else if (o.command == "distance") {
    const PointSet A = spec.set("A");
    const PointSet B = spec.set("B");
    const ClosestPair cp = closest_pair(A, B);
    meta["rho_AB"] = cp.distance;
    meta["realized_by"] = Json::array({io::point_json(A[cp.a]), io::point_json(B[cp.b])});
  } else if (o.command == "outer") {
    const double eps = require_epsilon(spec);
    const auto [name, A] = single_set(spec, {"A", "M"});
    meta["set"] = name;
    meta["epsilon"] = eps;
    out.doc.curves.push_back(outer_curve(A, eps, tol));
    out.layers.push_back({"curve", out.doc.curves});
  } else if (o.command == "separate") {
    const double eps = require_epsilon(spec);
    const PointSet A = spec.set("A");
    const PointSet B = spec.set("B");
    const SeparationResult r = separating_curve(A, B, eps, tol, spec.options.force);
    const SeparationCheck v = verify_separation(r.curve, A, B, tol);
    out.doc.curves.push_back(r.curve);
    meta["rho_AB"] = r.hypothesis.rho_AB;
    meta["separation"] = separation_json(r, v);
    out.layers.push_back({"curve", out.doc.curves});
    if (!v.pass) out.status = kTolerance;
  } else if (o.command == "midway") {
    const PointSet A = spec.set("A");
    const PointSet B = spec.set("B");
    const MidwayResult m = midway_curve(A, B, tol);
    const SeparationCheck v = verify_separation(m.curve, A, B, tol);
    out.doc.curves.push_back(m.curve);
    meta["rho_AB"] = m.rho_AB;
    meta["epsilon"] = 0.5 * m.rho_AB;
    meta["achieved_dist_A"] = m.achieved_dist_A;
    meta["achieved_dist_B"] = m.achieved_dist_B;
    meta["separation"] = separation_json(m.separation, v);
    out.layers.push_back({"curve", out.doc.curves});
    if (!v.pass) out.status = kTolerance;
  } else if (o.command == "separate-all") {
    const double eps = require_epsilon(spec);
    const auto [name, M] = single_set(spec, {"M", "A"});
    const ComponentSeparation cs = separate_components(M, eps, tol);
    meta["set"] = name;
    meta["epsilon"] = eps;
    meta["partition"] = io::partition_json(cs.partition);
    Json pairs = Json::array();
    for (const auto& p : cs.pairs) {
      Json j = Json::object();
      j["blocks"] = Json::array({p.first, p.second});
      if (p.result) {
        j["curve"] = out.doc.curves.size();
        const SeparationCheck v =
            verify_separation(p.result->curve, cs.partition.blocks[p.first], cs.partition.blocks[p.second], tol);
        j["separation"] = separation_json(*p.result, v);
        out.doc.curves.push_back(p.result->curve);
        if (!v.pass) out.status = std::max(out.status, static_cast<int>(kTolerance));
      } else {
        j["error"] = std::string(to_string(*p.error));
        j["message"] = p.message;
        err << "error: blocks " << p.first << "/" << p.second << ": " << p.message << "\n";
        out.status = std::max(out.status, exit_code_for(*p.error));
      }
      pairs.push_back(std::move(j));
    }
    meta["pairs"] = std::move(pairs);
    out.layers.push_back({"curve", out.doc.curves});
  } else if (o.command == "exists") {
    const double eps = require_epsilon(spec);
    const auto [name, M] = single_set(spec, {"M", "A"});
    meta["set"] = name;
    meta["epsilon"] = eps;
    out.doc.curves.push_back(some_simple_closed_curve(M, eps, tol));
    out.layers.push_back({"curve", out.doc.curves});
  } else if (o.command == "check") {
    const double eps = require_epsilon(spec);
    const HypothesisReport r = check_hypotheses(spec.set("A"), spec.set("B"), eps);
    meta["hypothesis"] = io::hypothesis_json(r);
    for (const auto& v : r.violations) err << "violation: " << v << "\n";
  } else if (o.command == "render") {
    const double eps = require_epsilon(spec);
    const auto [name, A] = single_set(spec, {"A", "M"});
    const OffsetBoundary ob = offset_boundary(A, eps, tol);
    io::SvgLayer outer{"curve", {}};
    io::SvgLayer holes{"hole", {}};
    for (const auto& c : ob.cycles) (c.kind == CycleKind::Outer ? outer : holes).curves.push_back(c);
    out.svg_only = io::emit_svg({outer, holes}, spec.sets);
  } else if (o.command == "oracle-compare") {
    const double eps = require_epsilon(spec);
    const auto [name, A] = single_set(spec, {"A", "M"});
    const OffsetBoundary ob = offset_boundary(A, eps, tol);
    const FaceGraph fg = face_graph(ob, tol);
    const double h = spec.options.grid_res ? *spec.options.grid_res
                                           : oracle::default_cell_size(A.points(), eps);
    const auto grid = oracle::build_distance_grid(A.points(), eps, h);
    if (o.dump_grid) {
      std::ostringstream pgm;
      oracle::write_pgm(pgm, grid);
      write_file(*o.dump_grid, pgm.str());
    }
    const auto comps = oracle::grid_components(grid, eps);
    const auto loops = oracle::grid_boundary(grid, eps);
    const double bound = 2.0 * h * std::sqrt(2.0);
    std::size_t exact_bounded = 0;
    for (const auto& f : fg.faces) exact_bounded += f.bounded ? 1 : 0;
    Json per_cycle = Json::array();
    bool agree = exact_bounded == comps.bounded_count() && loops.size() == ob.cycles.size();
    for (const auto& c : ob.cycles) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& loop : loops) best = std::min(best, oracle::compare_curves(c, loop));
      per_cycle.push_back(best);
      agree = agree && best <= bound;
    }
    meta["set"] = name;
    meta["epsilon"] = eps;
    meta["cell_size"] = h;
    meta["bounded_faces_exact"] = exact_bounded;
    meta["bounded_components_grid"] = comps.bounded_count();
    meta["grid_loops"] = loops.size();
    meta["hausdorff"] = std::move(per_cycle);
    meta["hausdorff_bound"] = bound;
    meta["agree"] = agree;
    out.doc.curves = ob.cycles;
    if (!agree) out.status = kTolerance;
  }
  return out;
}

}  // namespace detail

// Parses argv, runs one subcommand and reports through the exit-code
// contract: 0 success, 2 hypothesis violation, 3 parse/validation error,
// 4 internal tolerance failure.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equidistant simple closed curves around finite planar point sets", "jcurve"};
  Options o;
  app.require_subcommand(1, 1);
  app.add_option("--input", o.input, "problem file (JSON)");
  app.add_option("--set", o.set_files, "NAME=FILE two-column CSV set (repeatable)");
  app.add_option("--epsilon", o.epsilon, "offset distance");
  app.add_option("--out", o.out, "write the curve document here instead of stdout");
  app.add_option("--svg", o.svg, "also write an SVG rendering");
  app.add_option("--grid-res", o.grid_res, "oracle cell size (default epsilon/50)");
  app.add_option("--tol", o.tol, "tolerance override join=|isect=|dist= (repeatable)");
  app.add_option("--seed", o.seed, "seed for ray directions");
  app.add_flag("--force", o.force, "skip hypothesis checks and report geometric obstructions");
  app.add_option("--chain-slack", o.chain_slack, "slack added to the chain threshold (components)");
  app.add_option("--dump-grid", o.dump_grid, "write the oracle distance grid as PGM (oracle-compare)");
  app.fallthrough();

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"components", "2*epsilon-chained components of M (or A)"},
      {"distance", "set distance rho(A,B)"},
      {"outer", "outer boundary curve of a 2*epsilon-chained set A"},
      {"separate", "curve on the epsilon level set of A separating A and B"},
      {"midway", "separating curve equidistant from A and B"},
      {"separate-all", "separate every pair of 2*epsilon-chained components of M"},
      {"exists", "some simple closed curve on the epsilon level set of M"},
      {"check", "report the separation hypotheses for A, B, epsilon"},
      {"render", "SVG of the epsilon level set of A"},
      {"oracle-compare", "compare the exact boundary with the grid oracle"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  std::vector<const char*> argv;
  argv.push_back("jcurve");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }
  o.command = app.get_subcommands().front()->get_name();

  try {
    const io::ProblemSpec spec = detail::load_problem(o);
    detail::Outcome result = detail::run_command(o, spec, err);
    if (!result.svg_only.empty()) {
      if (o.svg) detail::write_file(*o.svg, result.svg_only);
      else out << result.svg_only;
      return result.status;
    }
    const std::string text = io::emit_curves(result.doc);
    if (o.out) detail::write_file(*o.out, text);
    else out << text;
    if (o.svg) detail::write_file(*o.svg, io::emit_svg(result.layers, spec.sets));
    return result.status;
  } catch (const HypothesisViolationError& e) {
    err << "error: hypothesis violation\n";
    for (const auto& v : e.report().violations) err << "  " << v << "\n";
    return kHypothesis;
  } catch (const NotChainedError& e) {
    err << "error: " << e.what() << "\n";
    return kHypothesis;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kTolerance;
  }
}

}  // namespace jcurve::cli
