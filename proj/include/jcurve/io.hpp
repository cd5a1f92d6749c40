#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "jcurve/chained.hpp"
#include "jcurve/error.hpp"
#include "jcurve/geometry.hpp"
#include "jcurve/separation.hpp"
#include "jcurve/tolerance.hpp"

namespace jcurve::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolName = "jcurve";
inline constexpr std::string_view kToolVersion = "1.0.0";

struct ProblemOptions {
  std::optional<double> tol_join;
  std::optional<double> tol_isect;
  std::optional<double> tol_dist;
  std::optional<double> grid_res;
  std::optional<std::uint64_t> seed;
  bool force = false;

  friend bool operator==(const ProblemOptions&, const ProblemOptions&) = default;
};

struct ProblemSpec {
  std::optional<double> epsilon;
  std::map<std::string, std::vector<Point>> sets;  // deduplicated, canonical order
  ProblemOptions options;
  std::size_t duplicates_removed = 0;

  friend bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
    return a.epsilon == b.epsilon && a.sets == b.sets && a.options == b.options;
  }

  PointSet set(const std::string& name) const {
    const auto it = sets.find(name);
    if (it == sets.end()) throw Error(ErrorCode::ValidationError, "no set named '" + name + "'");
    return PointSet(it->second);
  }

  TolerancePolicy policy() const {
    TolerancePolicy p;
    if (options.tol_join) p.join = *options.tol_join;
    if (options.tol_isect) p.isect = *options.tol_isect;
    if (options.tol_dist) p.dist = *options.tol_dist;
    if (options.seed) p.seed = *options.seed;
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw Error(ErrorCode::ValidationError, e.what());
    }
    return p;
  }
};

namespace detail {

inline std::size_t line_of(std::string_view text, std::size_t byte) {
  const auto end = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

inline double finite_number(const Json& v, const std::string& field) {
  if (!v.is_number()) throw Error(ErrorCode::ValidationError, field + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorCode::ValidationError, field + ": value is not finite");
  return x;
}

inline double positive_number(const Json& v, const std::string& field) {
  const double x = finite_number(v, field);
  if (!(x > 0)) throw Error(ErrorCode::ValidationError, field + ": must be positive");
  return x;
}

// Sorts and deduplicates in place; returns the number of removed duplicates.
inline std::size_t canonicalize(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end());
  const auto before = pts.size();
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return before - pts.size();
}

inline void check_set_name(const std::string& name) {
  const bool ok = !name.empty() && std::all_of(name.begin(), name.end(), [](unsigned char ch) {
    return std::isalnum(ch) || ch == '_' || ch == '-';
  });
  if (!ok) throw Error(ErrorCode::ValidationError, "invalid set name '" + name + "'");
}

inline std::vector<Point> parse_point_list(const Json& v, const std::string& name) {
  const std::string field = "sets." + name;
  if (!v.is_array()) {
    throw Error(ErrorCode::ValidationError,
                field + ": expected a finite list of [x, y] points (unbounded sets are not representable)");
  }
  if (v.empty()) throw Error(ErrorCode::ValidationError, field + ": set is empty");
  std::vector<Point> pts;
  pts.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Json& p = v[k];
    const std::string at = field + "[" + std::to_string(k) + "]";
    if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::ValidationError, at + ": expected [x, y]");
    pts.push_back({finite_number(p[0], at + "[0]"), finite_number(p[1], at + "[1]")});
  }
  return pts;
}

}  // namespace detail

// Structured problem text: {"epsilon": e, "sets": {name: [[x, y], ...]},
// "options": {...}}.
inline ProblemSpec parse_problem(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "top level must be an object");

  ProblemSpec spec;
  for (const auto& [key, value] : doc.items()) {
    if (key == "epsilon") {
      spec.epsilon = detail::positive_number(value, "epsilon");
    } else if (key == "sets") {
      if (!value.is_object()) throw Error(ErrorCode::ValidationError, "sets: expected an object");
      for (const auto& [name, pts] : value.items()) {
        detail::check_set_name(name);
        auto list = detail::parse_point_list(pts, name);
        spec.duplicates_removed += detail::canonicalize(list);
        spec.sets[name] = std::move(list);
      }
    } else if (key == "options") {
      if (!value.is_object()) throw Error(ErrorCode::ValidationError, "options: expected an object");
      for (const auto& [opt, v] : value.items()) {
        const std::string field = "options." + opt;
        if (opt == "tol_join") spec.options.tol_join = detail::positive_number(v, field);
        else if (opt == "tol_isect") spec.options.tol_isect = detail::positive_number(v, field);
        else if (opt == "tol_dist") spec.options.tol_dist = detail::positive_number(v, field);
        else if (opt == "grid_res") spec.options.grid_res = detail::positive_number(v, field);
        else if (opt == "seed") {
          if (!v.is_number_unsigned()) throw Error(ErrorCode::ValidationError, field + ": expected a non-negative integer");
          spec.options.seed = v.get<std::uint64_t>();
        } else if (opt == "force") {
          if (!v.is_boolean()) throw Error(ErrorCode::ValidationError, field + ": expected a boolean");
          spec.options.force = v.get<bool>();
        } else {
          throw Error(ErrorCode::ValidationError, "unknown option '" + opt + "'");
        }
      }
    } else {
      throw Error(ErrorCode::ValidationError, "unknown field '" + key + "'");
    }
  }
  return spec;
}

// Two-column numeric CSV; blank lines and '#' comments are skipped.
inline std::vector<Point> parse_csv_points(std::string_view text, const std::string& name = "csv") {
  std::vector<Point> pts;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = name + ":" + std::to_string(lineno);
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::ParseError, where + ": expected 'x,y'");
    double xy[2];
    const std::string cols[2] = {line.substr(0, comma), line.substr(comma + 1)};
    for (int c = 0; c < 2; ++c) {
      std::size_t used = 0;
      try {
        xy[c] = std::stod(cols[c], &used);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, where + ": column " + std::to_string(c + 1) + " is not a number");
      }
      if (cols[c].find_first_not_of(" \t\r", used) != std::string::npos) {
        throw Error(ErrorCode::ParseError, where + ": trailing characters in column " + std::to_string(c + 1));
      }
      if (!std::isfinite(xy[c])) throw Error(ErrorCode::ValidationError, where + ": value is not finite");
    }
    pts.push_back({xy[0], xy[1]});
  }
  if (pts.empty()) throw Error(ErrorCode::ValidationError, name + ": set is empty");
  return pts;
}

inline void add_set(ProblemSpec& spec, const std::string& name, std::vector<Point> pts) {
  detail::check_set_name(name);
  spec.duplicates_removed += detail::canonicalize(pts);
  spec.sets[name] = std::move(pts);
}

inline Json point_json(Point p) { return Json::array({p.x, p.y}); }

inline Json problem_to_json(const ProblemSpec& spec) {
  Json doc = Json::object();
  if (spec.epsilon) doc["epsilon"] = *spec.epsilon;
  Json sets = Json::object();
  for (const auto& [name, pts] : spec.sets) {
    Json list = Json::array();
    for (const Point& p : pts) list.push_back(point_json(p));
    sets[name] = std::move(list);
  }
  doc["sets"] = std::move(sets);
  Json opts = Json::object();
  const auto& o = spec.options;
  if (o.tol_join) opts["tol_join"] = *o.tol_join;
  if (o.tol_isect) opts["tol_isect"] = *o.tol_isect;
  if (o.tol_dist) opts["tol_dist"] = *o.tol_dist;
  if (o.grid_res) opts["grid_res"] = *o.grid_res;
  if (o.seed) opts["seed"] = *o.seed;
  if (o.force) opts["force"] = true;
  if (!opts.empty()) doc["options"] = std::move(opts);
  return doc;
}

inline std::string emit_problem(const ProblemSpec& spec) { return problem_to_json(spec).dump(2) + "\n"; }

inline Json arc_json(const Arc& a) {
  Json j = Json::object();
  j["center"] = point_json(a.center);
  j["center_index"] = a.center_index;
  j["radius"] = a.radius;
  j["start_angle"] = a.start_angle;
  j["end_angle"] = a.end_angle;
  j["ccw"] = a.ccw;
  j["full_circle"] = a.full_circle;
  j["start"] = point_json(a.start_point);
  j["end"] = point_json(a.end_point);
  return j;
}

inline Json cycle_json(const ArcCycle& c) {
  Json j = Json::object();
  j["kind"] = std::string(to_string(c.kind));
  Json arcs = Json::array();
  for (const Arc& a : c.arcs) arcs.push_back(arc_json(a));
  j["arcs"] = std::move(arcs);
  return j;
}

inline Json hypothesis_json(const HypothesisReport& r) {
  Json j = Json::object();
  j["epsilon"] = r.epsilon;
  j["rho_AB"] = r.rho_AB;
  j["rho_exceeds_epsilon"] = r.rho_exceeds_epsilon;
  j["A_chained_at"] = r.A_chained_at;
  j["B_chained_at"] = r.B_chained_at;
  j["violations"] = r.violations;
  return j;
}

inline Json sides_json(const std::vector<Side>& sides) {
  Json j = Json::array();
  for (const Side s : sides) j.push_back(std::string(to_string(s)));
  return j;
}

inline Json verification_json(const SeparationCheck& v) {
  Json j = Json::object();
  j["pass"] = v.pass;
  j["min_dist_A"] = v.min_dist_A;
  j["min_dist_B"] = v.min_dist_B;
  j["sides_A"] = sides_json(v.sides_A);
  j["sides_B"] = sides_json(v.sides_B);
  return j;
}

inline Json partition_json(const ChainPartition& p) {
  Json j = Json::object();
  j["threshold"] = p.threshold;
  Json blocks = Json::array();
  for (const PointSet& b : p.blocks) {
    Json pts = Json::array();
    for (const Point& q : b) pts.push_back(point_json(q));
    blocks.push_back(std::move(pts));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

// Curves plus metadata, serialized with fixed key order and shortest
// round-trip number formatting.
struct CurveDocument {
  std::vector<ArcCycle> curves;
  Json metadata = Json::object();

  Json to_json() const {
    Json doc = Json::object();
    Json list = Json::array();
    for (const ArcCycle& c : curves) list.push_back(cycle_json(c));
    doc["curves"] = std::move(list);
    Json meta = Json::object();
    meta["tool"] = std::string(kToolName);
    meta["version"] = std::string(kToolVersion);
    for (const auto& [k, v] : metadata.items()) meta[k] = v;
    doc["metadata"] = std::move(meta);
    return doc;
  }
};

inline std::string emit_curves(const CurveDocument& doc) { return doc.to_json().dump(2) + "\n"; }

struct SvgLayer {
  std::string css_class;
  std::vector<ArcCycle> curves;
};

namespace detail {

inline std::string num(double v) {
  if (v == 0.0) v = 0.0;  // drop negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// SVG y grows downward; geometry is mirrored so the picture reads upright.
inline std::string svg_xy(Point p) { return num(p.x) + "," + num(-p.y); }

inline std::string svg_path(const ArcCycle& c) {
  std::string d = "M " + svg_xy(c.arcs.front().traversal_start());
  for (const Arc& a : c.arcs) {
    const std::string r = num(a.radius);
    // Counterclockwise in the plane is counterclockwise on screen after the
    // mirror, which SVG spells sweep-flag 0.
    const char* sweep = a.ccw ? "0" : "1";
    if (a.full_circle || a.sweep() >= kTwoPi) {
      const double s = a.ccw ? a.start_angle : a.end_angle;
      const double dir = a.ccw ? 1.0 : -1.0;
      const Point half = on_circle(a.center, a.radius, s + dir * kPi);
      d += " A " + r + " " + r + " 0 0 " + sweep + " " + svg_xy(half);
      d += " A " + r + " " + r + " 0 0 " + sweep + " " + svg_xy(a.traversal_end());
    } else {
      const char* large = a.sweep() > kPi ? "1" : "0";
      d += " A " + r + " " + r + " 0 " + large + " " + sweep + " " + svg_xy(a.traversal_end());
    }
  }
  return d + " Z";
}

}  // namespace detail

// SVG 1.1 drawing: arcs as native elliptical-arc path segments, point sets
// as dots, one style class per layer and per named set.
inline std::string emit_svg(const std::vector<SvgLayer>& layers,
                            const std::map<std::string, std::vector<Point>>& sets) {
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-lo.x, -lo.y};
  auto grow = [&](Point p, double r) {
    lo = {std::min(lo.x, p.x - r), std::min(lo.y, p.y - r)};
    hi = {std::max(hi.x, p.x + r), std::max(hi.y, p.y + r)};
  };
  for (const auto& [name, pts] : sets) {
    for (const Point& p : pts) grow(p, 0.0);
  }
  for (const auto& layer : layers) {
    for (const auto& c : layer.curves) {
      for (const Arc& a : c.arcs) grow(a.center, a.radius);
    }
  }
  if (!std::isfinite(lo.x)) {
    lo = {-1, -1};
    hi = {1, 1};
  }
  const double span = std::max({hi.x - lo.x, hi.y - lo.y, 1e-9});
  const double margin = 0.1 * span;
  const double x0 = lo.x - margin;
  const double y0 = -(hi.y + margin);
  const double w = hi.x - lo.x + 2 * margin;
  const double h = hi.y - lo.y + 2 * margin;
  const double dot_r = 0.004 * std::max(w, h);
  const double stroke = 0.002 * std::max(w, h);

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + detail::num(x0) +
       " " + detail::num(y0) + " " + detail::num(w) + " " + detail::num(h) + "\">\n";
  s += "<style>\n";
  s += "  .curve { fill: none; stroke: #1f77b4; stroke-width: " + detail::num(stroke) + "; }\n";
  s += "  .hole { fill: none; stroke: #d62728; stroke-width: " + detail::num(stroke) +
       "; stroke-dasharray: " + detail::num(4 * stroke) + "; }\n";
  s += "  .set-A { fill: #2ca02c; }\n";
  s += "  .set-B { fill: #ff7f0e; }\n";
  s += "</style>\n";
  for (const auto& layer : layers) {
    for (const auto& c : layer.curves) {
      s += "<path class=\"" + layer.css_class + "\" d=\"" + detail::svg_path(c) + "\"/>\n";
    }
  }
  for (const auto& [name, pts] : sets) {
    s += "<g class=\"set-" + name + "\">\n";
    for (const Point& p : pts) {
      s += "  <circle cx=\"" + detail::num(p.x) + "\" cy=\"" + detail::num(-p.y) + "\" r=\"" +
           detail::num(dot_r) + "\"/>\n";
    }
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace jcurve::io
