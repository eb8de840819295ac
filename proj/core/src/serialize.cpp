#include "rigidity/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "rigidity/error.hpp"

namespace rigidity {
namespace {

using nlohmann::json;

Point parse_point(const json& j, const char* where) {
  if (j.is_number()) return Point{j.get<double>()};
  if (!j.is_array() || j.empty()) {
    throw InputError(fmt::format("{}: each point must be a number or a non-empty array", where));
  }
  Point p;
  for (const auto& c : j) {
    if (!c.is_number()) throw InputError(fmt::format("{}: coordinates must be numbers", where));
    p.push_back(c.get<double>());
  }
  return p;
}

std::vector<Point> parse_points(const json& j, const char* where) {
  if (!j.contains("points") || !j["points"].is_array()) {
    throw InputError(fmt::format("{}: missing \"points\" array", where));
  }
  std::vector<Point> pts;
  for (const auto& p : j["points"]) pts.push_back(parse_point(p, where));
  return pts;
}

json params_json(const ProblemParams& p, const LambdaProfile& lambda) {
  return json{{"n", p.n}, {"m", p.m}, {"d", p.d}, {"r", p.r}, {"c", p.c},
              {"lambda", lambda.values()}};
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  }
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("grid csv: not a number: '" + s + "'");
  }
  if (used != s.size()) throw InputError("grid csv: not a number: '" + s + "'");
  return v;
}

}  // namespace

SetDescriptor parse_set_descriptor(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("set descriptor: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw InputError("set descriptor: expected an object with a string \"type\"");
  }
  const auto type = j["type"].get<std::string>();
  if (type == "finite") return SetDescriptor::finite(parse_points(j, "finite set"));
  if (type == "cloud") return SetDescriptor::cloud(parse_points(j, "cloud"));
  if (type == "power") {
    if (!j.contains("alpha") || !j["alpha"].is_number()) {
      throw InputError("power set: missing numeric \"alpha\"");
    }
    std::optional<std::uint64_t> count;
    if (j.contains("count") && !j["count"].is_null()) {
      const auto& c = j["count"];
      if (!c.is_number_integer()) throw InputError("power set: \"count\" must be an integer");
      if (c.is_number_unsigned()) {
        count = c.get<std::uint64_t>();
      } else {
        const auto v = c.get<std::int64_t>();
        if (v < 0) throw ParameterError("power set: count must be at least 2");
        count = static_cast<std::uint64_t>(v);
      }
    }
    return SetDescriptor::power(j["alpha"].get<double>(), count);
  }
  throw InputError("set descriptor: unknown type '" + type + "'");
}

std::string to_json(const SetDescriptor& set) {
  json j;
  if (const auto* ps = std::get_if<PowerSequence>(&set.variant())) {
    j = json{{"type", "power"}, {"alpha", ps->alpha}};
    if (ps->count) j["count"] = *ps->count;
  } else {
    const auto& pts = set.is_finite() ? std::get<FinitePoints>(set.variant()).points
                                      : std::get<SampledCloud>(set.variant()).points;
    j = json{{"type", set.is_finite() ? "finite" : "cloud"}, {"points", pts}};
    if (set.is_cloud()) j["provenance"] = "extracted";
  }
  return j.dump(2) + "\n";
}

std::string to_json(const BoundReport& report) {
  json curve = json::array();
  json nu = json::array();
  for (const auto& pt : report.eta_curve) {
    curve.push_back({pt.epsilon, pt.eta});
    nu.push_back(pt.nu);
  }
  json j{
      {"gamma", report.gamma},
      {"gamma_epsilon", optional_number(report.gamma_epsilon)},
      {"epsilon0", optional_number(report.epsilon0)},
      {"gamma_closed_form", optional_number(report.gamma_closed_form)},
      {"E_empty", report.e_empty()},
      {"E_epsilons", report.e_epsilons},
      {"eta_curve", curve},
      {"nu", nu},
      {"grid_size", report.grid_size},
      {"params", params_json(report.params, report.lambda)},
  };
  return j.dump(2) + "\n";
}

std::string eta_curve_csv(const BoundReport& report) {
  std::string out = "epsilon,eta,product\n";
  for (const auto& pt : report.eta_curve) {
    out += fmt::format("{:.17g},{:.17g},{:.17g}\n", pt.epsilon, pt.eta, pt.epsilon * pt.eta);
  }
  return out;
}

std::string to_json(const PowerClassification& c, double alpha, const ProblemParams& p) {
  json j{{"alpha", alpha}, {"n", p.n}, {"d", p.d}, {"exponent", c.exponent},
         {"verdict", to_string(c.verdict)}};
  return j.dump(2) + "\n";
}

std::string to_json(const WitnessFunction& w) {
  json pieces = json::array();
  for (const auto& p : w.pieces()) {
    pieces.push_back({{"start", p.start},
                      {"end", p.end},
                      {"kind", p.plateau ? "plateau" : "transition"},
                      {"from", p.from},
                      {"to", p.to}});
  }
  json j{{"radius", w.radius()},
         {"order", w.order()},
         {"smoothstep", w.step().coefficients()},
         {"pieces", pieces},
         {"critical_values", w.critical_values()}};
  return j.dump(2) + "\n";
}

std::string witness_samples_csv(const WitnessFunction& w, std::size_t samples) {
  if (samples < 2) throw ParameterError("witness samples: need at least 2 points");
  std::string out = "x,f";
  for (int k = 1; k <= w.order(); ++k) out += fmt::format(",f{}", k);
  out += "\n";
  const double r = w.radius();
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = i + 1 == samples ? r : -r + 2.0 * r * static_cast<double>(i) / (samples - 1);
    out += fmt::format("{:.17g}", x);
    for (int k = 0; k <= w.order(); ++k) out += fmt::format(",{:.17g}", w.derivative(x, k));
    out += "\n";
  }
  return out;
}

std::string to_json(const SandwichResult& s) {
  json j{{"gamma", s.gamma},
         {"witness_Rd", s.witness_Rd},
         {"ok", s.ok},
         {"epsilon0", optional_number(s.report.epsilon0)},
         {"gamma_closed_form", optional_number(s.report.gamma_closed_form)},
         {"params", params_json(s.report.params, s.report.lambda)}};
  return j.dump(2) + "\n";
}

std::string forward_check_csv(const ForwardCheck& check) {
  std::string out = "epsilon,measured,bound,regime,pass\n";
  for (const auto& r : check.records) {
    out += fmt::format("{:.17g},{},{:.17g},{},{}\n", r.epsilon, r.measured, r.bound,
                       to_string(r.regime), r.pass ? "true" : "false");
  }
  return out;
}

SampledMap parse_grid_csv(std::string_view csv) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char ch : csv) {
      if (ch == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }
  lines.erase(std::remove_if(lines.begin(), lines.end(),
                             [](const std::string& l) {
                               return l.find_first_not_of(" \t\r") == std::string::npos;
                             }),
              lines.end());
  if (lines.size() < 2) throw InputError("grid csv: need a header and at least one row");

  const auto header = split(lines[0], ',');
  int n = 0;
  int m = 0;
  for (const auto& h : header) {
    if (h.size() >= 2 && h[0] == 'x' && h.substr(1) == std::to_string(n + 1) && m == 0) {
      ++n;
    } else if (h.size() >= 2 && h[0] == 'f' && h.substr(1) == std::to_string(m + 1)) {
      ++m;
    } else {
      throw InputError("grid csv: header must be x1,...,xn,f1,...,fm; got column '" + h + "'");
    }
  }
  if (n < 1 || m < 1) throw InputError("grid csv: header needs x and f columns");

  std::vector<std::vector<double>> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i], ',');
    if (cells.size() != header.size()) {
      throw InputError(fmt::format("grid csv: row {} has {} cells, expected {}", i + 1,
                                   cells.size(), header.size()));
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_double(c));
    rows.push_back(std::move(row));
  }

  double r = 0.0;
  for (const auto& row : rows) {
    for (int k = 0; k < n; ++k) r = std::max(r, std::abs(row[static_cast<std::size_t>(k)]));
  }
  std::size_t per_axis = 1;
  {
    const double root = std::pow(static_cast<double>(rows.size()), 1.0 / n);
    per_axis = static_cast<std::size_t>(std::llround(root));
    std::size_t total = 1;
    for (int k = 0; k < n; ++k) total *= per_axis;
    if (total != rows.size()) {
      throw InputError(fmt::format("grid csv: {} rows do not form a full {}-dimensional grid",
                                   rows.size(), n));
    }
  }
  if (per_axis < 3 || !(r > 0.0)) throw InputError("grid csv: grid too small");
  const double h = 2.0 * r / static_cast<double>(per_axis - 1);

  std::vector<double> values(rows.size() * static_cast<std::size_t>(m));
  std::vector<char> seen(rows.size(), 0);
  for (const auto& row : rows) {
    std::size_t node = 0;
    for (int k = 0; k < n; ++k) {
      const double pos = (row[static_cast<std::size_t>(k)] + r) / h;
      const double idx = std::round(pos);
      if (std::abs(pos - idx) > 1e-6 || idx < 0 || idx >= static_cast<double>(per_axis)) {
        throw InputError("grid csv: coordinates are not on a regular grid over [-r, r]^n");
      }
      node = node * per_axis + static_cast<std::size_t>(idx);
    }
    if (seen[node]) throw InputError("grid csv: duplicate grid node");
    seen[node] = 1;
    for (int k = 0; k < m; ++k) {
      values[node * static_cast<std::size_t>(m) + static_cast<std::size_t>(k)] =
          row[static_cast<std::size_t>(n + k)];
    }
  }
  return SampledMap::from_samples(n, m, r, per_axis, std::move(values));
}

}  // namespace rigidity
