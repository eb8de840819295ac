#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "rigidity/rigidity.hpp"

namespace rigidity::cli {
namespace {

namespace fs = std::filesystem;

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int per_decade = 0;
};

// "min:max:points_per_decade", log-spaced.
GridSpec parse_grid_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) {
    throw InputError("--eps expects min:max:points_per_decade, got '" + text + "'");
  }
  try {
    GridSpec g{std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2])};
    return g;
  } catch (const std::exception&) {
    throw InputError("--eps expects numbers in min:max:points_per_decade, got '" + text + "'");
  }
}

std::vector<double> make_grid(const std::string& text, const SetDescriptor* set) {
  if (text.empty()) {
    if (set == nullptr) return log_grid(1e-4, 1e-2, 20);
    return default_eps_grid(*set);
  }
  const GridSpec g = parse_grid_spec(text);
  return log_grid(g.min, g.max, g.per_decade);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON when the argument starts with '{', otherwise a file path.
SetDescriptor load_set(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') return parse_set_descriptor(arg);
  return parse_set_descriptor(read_file(arg));
}

// Writes through a temporary sibling and renames, so a failed run never
// leaves a partial file behind.
void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw InputError("write failed for '" + path + "'");
    }
  }
  fs::rename(tmp, target);
}

struct ParamFlags {
  int n = 1;
  int m = 1;
  int d = 0;
  double r = 1.0;
  std::optional<double> c;
  std::vector<double> lambda;

  void attach(CLI::App* app, bool need_d) {
    app->add_option("--n", n, "Domain dimension n")->capture_default_str();
    app->add_option("--m", m, "Target dimension m")->capture_default_str();
    auto* opt = app->add_option("--d", d, "Smoothness order d");
    if (need_d) opt->required();
    app->add_option("--r", r, "Domain radius r")->capture_default_str();
    app->add_option("--c", c, "Entropy constant c(n,d); defaults to d+1 when n = 1");
    app->add_option("--lambda", lambda, "Near-criticality thresholds lambda_1..lambda_m");
  }

  ProblemParams params() const { return ProblemParams::make(n, m, d, r, c); }

  LambdaProfile profile() const {
    if (lambda.empty()) return LambdaProfile::zeros(m);
    return LambdaProfile(lambda);
  }
};

std::string fmt_optional(const std::optional<double>& v) {
  return v ? fmt::format("{:.10g}", *v) : std::string("n/a");
}

int cmd_cover(const std::string& set_arg, const std::string& eps, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  const SetDescriptor set = load_set(set_arg);
  const auto grid = make_grid(eps, &set);
  const CoveringCurve curve = covering_curve(set, grid);
  const std::string csv = to_csv(curve);
  std::ostream& summary = out_path.empty() ? err : out;
  if (out_path.empty()) {
    out << csv;
  } else {
    write_file_atomic(out_path, csv);
  }
  summary << fmt::format("# entries={}\n", curve.counts.size());
  summary << fmt::format("# exact={}\n", curve.exact ? "true" : "false");
  summary << fmt::format("# loglog_slope={:.6f}\n", loglog_slope(curve.epsilons, curve.counts));
  if (!curve.exact) {
    summary << "# counts are box-count upper estimates (m >= 2), not exact covering numbers\n";
  }
  return kOk;
}

int cmd_classify(double alpha, const ParamFlags& flags, const std::string& out_path,
                 std::ostream& out) {
  const ProblemParams p = flags.params();
  const PowerClassification c = classify_power_sequence(alpha, p);
  out << fmt::format("{}, exponent {:g}\n", to_string(c.verdict), c.exponent);
  if (!out_path.empty()) write_file_atomic(out_path, to_json(c, alpha, p));
  return kOk;
}

int cmd_bound(const std::string& set_arg, const ParamFlags& flags, const std::string& eps,
              const std::string& out_path, const std::string& csv_path, std::ostream& out,
              std::ostream& err) {
  const ProblemParams p = flags.params();
  const LambdaProfile lambda = flags.profile();
  const SetDescriptor set = load_set(set_arg);
  const auto grid = make_grid(eps, &set);
  const BoundReport report = rigidity_bound(p, lambda, set, grid);

  if (!out_path.empty()) write_file_atomic(out_path, to_json(report));
  if (!csv_path.empty()) write_file_atomic(csv_path, eta_curve_csv(report));

  out << fmt::format("gamma = {:.10g}\n", report.gamma);
  out << fmt::format("epsilon0 = {}\n", fmt_optional(report.epsilon0));
  out << fmt::format("gamma_closed_form = {}\n", fmt_optional(report.gamma_closed_form));
  out << fmt::format("E_points = {} of {}\n", report.e_epsilons.size(), report.grid_size);
  if (report.e_empty()) {
    err << "warning: E empty; gamma = 0 is a vacuous bound\n";
  }
  return kOk;
}

int cmd_witness(const std::string& set_arg, const ParamFlags& flags, const std::string& eps,
                double ratio, const std::string& out_path, const std::string& witness_path,
                const std::string& samples_path, std::size_t samples, std::ostream& out,
                std::ostream& err) {
  const ProblemParams p = flags.params();
  const LambdaProfile lambda = flags.profile();
  const SetDescriptor set = load_set(set_arg);
  if (set.is_power() || set.dimension() != 1) {
    throw ParameterError("witness needs a finite one-dimensional set");
  }
  const auto values = set.values_1d();
  const auto grid = make_grid(eps, &set);
  const WitnessLayout layout{ratio};
  const SandwichResult result = sandwich_check(values, p, lambda, grid, layout);

  if (!out_path.empty()) write_file_atomic(out_path, to_json(result));
  if (!witness_path.empty() || !samples_path.empty()) {
    const WitnessFunction w = build_witness(values, p.d, p.r, layout);
    if (!witness_path.empty()) write_file_atomic(witness_path, to_json(w));
    if (!samples_path.empty()) write_file_atomic(samples_path, witness_samples_csv(w, samples));
  }

  out << fmt::format("gamma = {:.10g}\n", result.gamma);
  out << fmt::format("witness_Rd = {:.10g}\n", result.witness_Rd);
  out << fmt::format("ok = {}\n", result.ok ? "true" : "false");
  if (!result.ok) {
    err << "SANDWICH FAILED: lower bound exceeds the R_d of an explicit witness; "
           "the pipeline or the constant convention is falsified\n";
    return kFalsified;
  }
  return kOk;
}

struct ExtractFlags {
  std::string map_name;
  std::string grid_path;
  std::size_t nodes = 0;
  bool check = false;
  std::optional<double> rd;
  std::string eps;
  std::string out_path;
  std::string table_path;
  bool no_bracket = false;
};

int cmd_extract(const ExtractFlags& x, ParamFlags flags, std::ostream& out, std::ostream& err) {
  std::optional<SampledMap> map;
  std::optional<BuiltinMap> builtin;
  if (!x.map_name.empty()) {
    builtin = builtin_map(x.map_name);
    if (!(flags.r > 0.0)) throw ParameterError("--r must be positive");
    const std::size_t nodes = x.nodes ? x.nodes : default_nodes_per_axis(builtin->n);
    map = builtin->sample(flags.r, nodes);
  } else {
    map = parse_grid_csv(read_file(x.grid_path));
    flags.r = map->radius();
  }
  flags.n = map->n();
  flags.m = map->m();
  const LambdaProfile lambda = flags.profile();
  CriticalOptions options;
  options.bracket_sign_changes = !x.no_bracket;

  const NearCriticalSet extracted = near_critical_set(*map, lambda, options);
  if (!x.out_path.empty()) {
    const std::string desc =
        extracted.delta ? to_json(*extracted.delta)
                        : std::string("{\n  \"type\": \"finite\",\n  \"points\": [],\n  \"empty\": true\n}\n");
    write_file_atomic(x.out_path, desc);
  }
  out << fmt::format("grid_step = {:.10g}\n", extracted.grid_step);
  out << fmt::format("near_critical_nodes = {}\n", extracted.nodes.size());
  out << fmt::format("bracketed_sign_changes = {}\n", extracted.bracketed);
  if (extracted.empty()) {
    err << "warning: empty near-critical set; no node meets the thresholds\n";
  } else if (map->m() == 1) {
    const auto v = extracted.delta->values_1d();
    out << fmt::format("values = {} distinct in [{:.10g}, {:.10g}]\n", v.size(), v.front(),
                       v.back());
  }
  if (!x.check) return kOk;

  if (flags.d < 1) throw ParameterError("--check needs --d");
  const ProblemParams p = flags.params();
  std::optional<double> rd = x.rd;
  if (!rd && builtin) rd = builtin->taylor_constant(p.d, p.r);
  const auto grid = make_grid(x.eps, nullptr);
  const ForwardCheck check = empirical_forward_check(*map, lambda, p, grid, rd, options);
  const std::string table = forward_check_csv(check);
  if (x.table_path.empty()) {
    out << table;
  } else {
    write_file_atomic(x.table_path, table);
  }
  out << fmt::format("R_d = {:.10g} ({})\n", check.taylor_constant,
                     check.taylor_measured ? "finite differences" : "exact");
  out << fmt::format("loglog_slope = {:.6f} (reference {:.6f})\n", check.slope,
                     check.reference_slope);
  out << fmt::format("all_pass = {}\n", check.all_pass() ? "true" : "false");
  if (!check.all_pass()) {
    err << "CONVENTION FLAG: measured covering numbers exceed the forward bound for c = "
        << p.c << "\n";
    return kFalsified;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower bounds on derivatives from the geometry of critical values", "rigidity"};
  app.require_subcommand(1);

  std::string set_arg;
  std::string eps;
  std::string out_path;
  std::string csv_path;
  ParamFlags params;

  auto* cover = app.add_subcommand("cover", "Covering-number curve of a value set (CSV)");
  cover->add_option("--set", set_arg, "Set descriptor: JSON file or inline JSON")->required();
  cover->add_option("--eps", eps, "Epsilon grid min:max:points_per_decade");
  cover->add_option("--out", out_path, "Output CSV (default: standard output)");

  auto* bound = app.add_subcommand("bound", "Rigidity lower bound gamma for R_d (JSON report)");
  bound->add_option("--set", set_arg, "Set descriptor: JSON file or inline JSON");
  bound->add_option("--eps", eps, "Epsilon grid min:max:points_per_decade");
  bound->add_option("--out", out_path, "Output JSON report");
  bound->add_option("--csv", csv_path, "Output CSV of the eta curve");
  double alpha = 0.0;
  bool classify_flag = false;
  bound->add_option("--alpha", alpha, "Power-sequence exponent (with --classify)");
  bound->add_flag("--classify", classify_flag, "Classify the power sequence {m^alpha}");
  params.attach(bound, true);

  ParamFlags classify_params;
  double classify_alpha = 0.0;
  std::string classify_out;
  auto* classify = app.add_subcommand("classify", "Alias of bound --classify");
  classify->add_option("--alpha", classify_alpha, "Power-sequence exponent")->required();
  classify->add_option("--out", classify_out, "Output JSON");
  classify_params.attach(classify, true);

  ParamFlags witness_params;
  double ratio = 0.5;
  std::string witness_json;
  std::string samples_csv;
  std::size_t samples = 1001;
  auto* witness = app.add_subcommand("witness", "Witness sandwich check (exit 4 on failure)");
  witness->add_option("--set", set_arg, "Set descriptor: JSON file or inline JSON")->required();
  witness->add_option("--eps", eps, "Epsilon grid min:max:points_per_decade");
  witness->add_option("--ratio", ratio, "Plateau to transition width ratio")->capture_default_str();
  witness->add_option("--out", out_path, "Output JSON {gamma, witness_Rd, ok}");
  witness->add_option("--witness-json", witness_json, "Output piecewise-polynomial JSON");
  witness->add_option("--samples-csv", samples_csv, "Output sample table x,f,f1,...,fd");
  witness->add_option("--samples", samples, "Sample count for --samples-csv")->capture_default_str();
  witness_params.attach(witness, true);

  ParamFlags extract_params;
  ExtractFlags xf;
  auto* extract = app.add_subcommand("extract", "Near-critical values of a sampled map");
  auto* map_opt = extract->add_option("--map", xf.map_name, "Built-in map name");
  auto* grid_opt = extract->add_option("--grid", xf.grid_path, "CSV grid dump x1..xn,f1..fm");
  map_opt->excludes(grid_opt);
  extract->add_option("--nodes", xf.nodes, "Grid nodes per axis for built-in maps");
  extract->add_flag("--check", xf.check, "Run the forward covering-bound check");
  extract->add_option("--rd", xf.rd, "Known Taylor constant R_d of the map");
  extract->add_option("--eps", xf.eps, "Epsilon grid for --check (default 1e-4:1e-2:20)");
  extract->add_option("--out", xf.out_path, "Output set descriptor JSON");
  extract->add_option("--table", xf.table_path, "Output CSV for the forward check");
  extract->add_flag("--no-bracket", xf.no_bracket, "Do not add sign-change nodes (n = 1)");
  extract_params.attach(extract, false);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (cover->parsed()) return cmd_cover(set_arg, eps, out_path, out, err);
    if (classify->parsed()) return cmd_classify(classify_alpha, classify_params, classify_out, out);
    if (bound->parsed()) {
      if (classify_flag) return cmd_classify(alpha, params, out_path, out);
      if (set_arg.empty()) throw ParameterError("bound needs --set (or --alpha with --classify)");
      return cmd_bound(set_arg, params, eps, out_path, csv_path, out, err);
    }
    if (witness->parsed()) {
      return cmd_witness(set_arg, witness_params, eps, ratio, out_path, witness_json, samples_csv,
                         samples, out, err);
    }
    if (extract->parsed()) {
      if (xf.map_name.empty() && xf.grid_path.empty()) {
        err << "error: extract needs --map or --grid\n";
        return kUsage;
      }
      return cmd_extract(xf, extract_params, out, err);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kBadParameter;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kBadParameter;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kUsage;
}

}  // namespace rigidity::cli
