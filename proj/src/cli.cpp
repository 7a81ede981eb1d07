#include "maglab/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "maglab/analysis.hpp"
#include "maglab/diversity.hpp"
#include "maglab/error.hpp"
#include "maglab/fourier.hpp"
#include "maglab/generators.hpp"
#include "maglab/io.hpp"
#include "maglab/magnitude.hpp"
#include "maglab/negative_type.hpp"

namespace maglab::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string matrix;
  std::string spec;
  bool force = false;
};

struct Output {
  std::string json_path;
  std::string csv_path;
};

void add_input(CLI::App* cmd, Input& in) {
  auto* m = cmd->add_option("--matrix", in.matrix, "distance matrix CSV")->check(CLI::ExistingFile);
  auto* s = cmd->add_option("--spec", in.spec, "space spec JSON")->check(CLI::ExistingFile);
  m->excludes(s);
  cmd->add_flag("--force", in.force, "accept a matrix that fails the triangle inequality");
}

void add_output(CLI::App* cmd, Output& out, bool csv) {
  cmd->add_option("--json", out.json_path, "write the JSON report here");
  if (csv) cmd->add_option("--csv", out.csv_path, "write the plot-ready CSV table here");
}

struct Loaded {
  FiniteMetricSpace space;
  json source;
};

Loaded load(const Input& in) {
  if (!in.matrix.empty())
    return {load_space_csv(in.matrix, in.force), json{{"matrix", in.matrix}}};
  if (!in.spec.empty()) {
    const SpaceSpec spec = read_spec_json(in.spec);
    return {generate(spec), json{{"spec", spec_to_json(spec)}}};
  }
  throw UsageError("one of --matrix or --spec is required");
}

std::string format_scalar(const json& v) {
  if (v.is_null()) return "-";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(10) << v.get<double>();
    return s.str();
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_scalar(const json& v) { return !v.is_object() && !v.is_array(); }

void print_table(std::ostream& out, const json& rows, const std::string& indent) {
  std::vector<std::string> cols;
  for (const auto& [key, value] : rows.front().items())
    if (is_scalar(value)) cols.push_back(key);
  std::vector<std::size_t> width;
  for (const auto& c : cols) width.push_back(c.size());
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      line.push_back(row.contains(cols[c]) ? format_scalar(row[cols[c]]) : "");
      width[c] = std::max(width[c], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  out << indent;
  for (std::size_t c = 0; c < cols.size(); ++c) out << std::left << std::setw(static_cast<int>(width[c]) + 2) << cols[c];
  out << '\n';
  for (const auto& line : cells) {
    out << indent;
    for (std::size_t c = 0; c < cols.size(); ++c)
      out << std::left << std::setw(static_cast<int>(width[c]) + 2) << line[c];
    out << '\n';
  }
}

// Human-readable rendering of a report document.
void print_human(std::ostream& out, const json& doc, const std::string& indent = "") {
  for (const auto& [key, value] : doc.items()) {
    if (is_scalar(value)) {
      out << indent << key << ": " << format_scalar(value) << '\n';
    } else if (value.is_object()) {
      out << indent << key << ":\n";
      print_human(out, value, indent + "  ");
    } else if (value.empty()) {
      out << indent << key << ": []\n";
    } else if (value.front().is_object()) {
      out << indent << key << ":\n";
      print_table(out, value, indent + "  ");
    } else if (value.size() <= 8 && std::all_of(value.begin(), value.end(), is_scalar)) {
      out << indent << key << ": [";
      for (std::size_t i = 0; i < value.size(); ++i) out << (i ? ", " : "") << format_scalar(value[i]);
      out << "]\n";
    } else {
      out << indent << key << ": [" << value.size() << " entries]\n";
    }
  }
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream file(path);
  if (!file) throw Error(ErrorKind::Io, "cannot write " + path);
  body(file);
}

// Writes the report document and prints its human rendering.
CommandResult emit(std::ostream& out, const Output& o, const std::string& command, const json& input,
                   const json& report, const std::string& summary, int exit_code = 0) {
  json doc = {{"schema", kSchemaVersion}, {"command", command}, {"input", input}, {"report", report}};
  CommandResult result{exit_code, std::nullopt, summary};
  if (!o.json_path.empty()) {
    write_file(o.json_path, [&](std::ostream& f) { f << doc.dump(2) << '\n'; });
    result.report_path = o.json_path;
  }
  print_human(out, report);
  return result;
}

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> levels;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    try {
      std::size_t used = 0;
      levels.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad level '" + item + "' in --levels");
    }
  }
  if (levels.empty()) throw UsageError("--levels needs at least one level");
  return levels;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

const char* kGrammar =
    "usage:\n"
    "  maglab validate <matrix.csv>\n"
    "  maglab generate --spec f.json --out matrix.csv\n"
    "  maglab magnitude (--matrix f | --spec f.json) [--json out]\n"
    "  maglab diversity (--matrix f | --spec f.json) [--tol x] [--max-iters n] [--positivity] [--json out]\n"
    "  maglab sweep (--matrix f | --spec f.json) --scales a:b:n[log] [--diversity] [--dimension lo:hi]\n"
    "               [--json out] [--csv out]\n"
    "  maglab negtype (--matrix f | --spec f.json) [--scales a:b:n[log]] [--json out]\n"
    "  maglab approx (--family name [--param key=value ...] | --spec f.json) --levels l1,l2,...\n"
    "                [--quadrature] [--json out] [--csv out]\n"
    "  maglab growth --spec template.json --scales a:b:n[log] [--json out] [--csv out]\n"
    "  maglab fourier --p x [--omega-max w] [--step h] [--length L] [--intervals N]\n"
    "                 [--upper-bound --ell l --alpha a --radius R] [--json out] [--csv out]\n"
    "  maglab experiment product-counterexample [--json out]\n"
    "  maglab experiment witness-search --p x --n dim [--budget b] [--seed s]\n"
    "                   [--min-points k] [--max-points k] [--json out]\n";

}  // namespace

std::vector<double> parse_scale_grid(const std::string& text) {
  std::string body = text;
  bool log = false;
  if (body.size() > 3 && body.compare(body.size() - 3, 3, "log") == 0) {
    log = true;
    body.resize(body.size() - 3);
    if (!body.empty() && body.back() == ':') body.pop_back();
  }
  std::vector<std::string> parts;
  std::stringstream s(body);
  std::string item;
  while (std::getline(s, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("scale grid must look like a:b:n or a:b:nlog");
  double a = 0.0, b = 0.0;
  long n = 0;
  try {
    std::size_t ua = 0, ub = 0, un = 0;
    a = std::stod(parts[0], &ua);
    b = std::stod(parts[1], &ub);
    n = std::stol(parts[2], &un);
    if (ua != parts[0].size() || ub != parts[1].size() || un != parts[2].size())
      throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw UsageError("cannot parse scale grid '" + text + "'");
  }
  if (n < 1 || !(a > 0.0) || !(b >= a)) throw UsageError("scale grid needs 0 < a <= b and n >= 1");
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) {
    const double f = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
    grid[k] = log ? std::exp(std::log(a) + f * (std::log(b) - std::log(a))) : a + f * (b - a);
  }
  grid.back() = b;
  return grid;
}

CommandResult run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Magnitude and maximum diversity of finite metric spaces", "maglab"};
  app.require_subcommand(1);
  app.footer(kGrammar);

  Input in;
  Output o;

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check the metric axioms of a distance matrix");
  validate->add_option("matrix", validate_path, "distance matrix CSV")->required()->check(CLI::ExistingFile);
  add_output(validate, o, false);

  std::string generate_out;
  auto* gen = app.add_subcommand("generate", "write the distance matrix of a space spec");
  gen->add_option("--spec", in.spec, "space spec JSON")->required()->check(CLI::ExistingFile);
  gen->add_option("--out", generate_out, "matrix CSV")->required();

  auto* mag = app.add_subcommand("magnitude", "weighting and magnitude");
  add_input(mag, in);
  add_output(mag, o, false);

  DiversityOptions div_options;
  bool positivity = false;
  auto* div = app.add_subcommand("diversity", "maximum diversity by Frank-Wolfe");
  add_input(div, in);
  add_output(div, o, false);
  div->add_option("--tol", div_options.tol, "relative duality gap tolerance")->check(CLI::PositiveNumber);
  div->add_option("--max-iters", div_options.max_iters, "iteration cap")->check(CLI::PositiveNumber);
  div->add_flag("--positivity", positivity, "also decide whether the space is positively weighted");

  std::string scales;
  std::string dimension_range;
  bool with_diversity = false;
  auto* sweep = app.add_subcommand("sweep", "magnitude over a scale grid");
  add_input(sweep, in);
  add_output(sweep, o, true);
  sweep->add_option("--scales", scales, "a:b:n[log]")->required();
  sweep->add_flag("--diversity", with_diversity, "also compute maximum diversity");
  sweep->add_option("--dimension", dimension_range, "lo:hi range for the dimension slope");

  auto* neg = app.add_subcommand("negtype", "negative type and stable positive definiteness");
  add_input(neg, in);
  add_output(neg, o, false);
  neg->add_option("--scales", scales, "a:b:n[log] (default 2^-10 .. 2^4)");

  std::string family_name, levels_text;
  std::vector<std::string> family_params;
  bool quadrature = false;
  auto* approx = app.add_subcommand("approx", "magnitude of nested nets of a compact space");
  add_output(approx, o, true);
  auto* fam = approx->add_option("--family", family_name, "family name");
  approx->add_option("--param", family_params, "key=value family parameter")->needs(fam);
  approx->add_option("--spec", in.spec, "family spec JSON")->check(CLI::ExistingFile)->excludes(fam);
  approx->add_option("--levels", levels_text, "comma-separated refinement levels")->required();
  approx->add_flag("--quadrature", quadrature, "also compute the Rayleigh quotient of the cell measure");

  auto* growth = app.add_subcommand("growth", "net magnitude against the lower growth bound");
  add_output(growth, o, true);
  growth->add_option("--spec", in.spec, "grid_net or interval_net template JSON")->required()->check(CLI::ExistingFile);
  growth->add_option("--scales", scales, "a:b:n[log]")->required();

  double p = 0.0, ell = 1.0, alpha = 1.0, radius = 0.0, length = 40.0;
  int intervals = 1 << 16;
  FrequencyGrid grid;
  bool upper = false;
  auto* four = app.add_subcommand("fourier", "transform of exp(-|x|^p) and the 1-D upper bound");
  add_output(four, o, true);
  four->add_option("--p", p, "exponent in (0, 2]")->required();
  four->add_option("--omega-max", grid.omega_max, "largest frequency");
  four->add_option("--step", grid.step, "frequency step");
  four->add_option("--length", length, "truncation length L");
  four->add_option("--intervals", intervals, "trapezoid intervals N");
  four->add_flag("--upper-bound", upper, "compute the upper bound for |[0, ell]|");
  four->add_option("--ell", ell, "interval length");
  four->add_option("--alpha", alpha, "snowflake exponent");
  four->add_option("--radius", radius, "support radius of the mollified indicator (default ell + 1)");

  auto* exp = app.add_subcommand("experiment", "counterexample experiments");
  exp->require_subcommand(1);
  auto* product = exp->add_subcommand("product-counterexample", "l2 product of two l1 crosses");
  add_output(product, o, false);
  WitnessSearchSpec witness;
  std::uint64_t budget = 10000, seed = 0;
  auto* search = exp->add_subcommand("witness-search", "random subsets of the cube of l_p^n");
  add_output(search, o, false);
  search->add_option("--p", witness.p, "exponent (inf allowed)")->required();
  search->add_option("--n", witness.dim, "dimension")->required();
  search->add_option("--budget", budget, "number of random subsets");
  search->add_option("--seed", seed, "seed");
  search->add_option("--min-points", witness.min_points, "smallest subset size");
  search->add_option("--max-points", witness.max_points, "largest subset size");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return {0, std::nullopt, "help"};
  } catch (const CLI::ParseError& e) {
    err << "maglab: " << e.what() << '\n' << kGrammar;
    return {2, std::nullopt, std::string("usage error: ") + e.what()};
  }

  try {
    if (*validate) {
      const Matrix d = read_matrix_csv(validate_path);
      const ValidationReport report = validate_metric(d);
      const std::string summary = report.ok ? "metric ok" : "not a metric";
      return emit(out, o, "validate", {{"matrix", validate_path}}, to_json(report), summary, report.ok ? 0 : 1);
    }
    if (*gen) {
      const FiniteMetricSpace space = generate(read_spec_json(in.spec));
      write_file(generate_out, [&](std::ostream& f) { write_matrix_csv(f, space.dist()); });
      out << "wrote " << space.size() << " points to " << generate_out << '\n';
      return {0, std::nullopt, "generated " + std::to_string(space.size()) + " points"};
    }
    if (*mag) {
      const Loaded l = load(in);
      const MagnitudeReport report = weighting(l.space);
      return emit(out, o, "magnitude", l.source, to_json(report), "magnitude " + fmt(report.magnitude));
    }
    if (*div) {
      const Loaded l = load(in);
      const DiversityReport report = max_diversity(l.space, div_options);
      json doc = to_json(report);
      if (positivity) doc["positivity"] = to_json(is_positively_weighted(l.space));
      out << "diversity bounds: [" << fmt(report.diversity) << ", " << fmt(report.upper_bound)
          << "], support size " << report.support.size() << '\n';
      return emit(out, o, "diversity", l.source, doc,
                   "diversity in [" + fmt(report.diversity) + ", " + fmt(report.upper_bound) + "]");
    }
    if (*sweep) {
      const Loaded l = load(in);
      const std::vector<double> ts = parse_scale_grid(scales);
      const ScaleSweep result = scale_sweep(l.space, ts, with_diversity);
      json doc = to_json(result);
      if (!dimension_range.empty()) {
        const std::vector<double> range = parse_scale_grid(dimension_range + ":2");
        doc["dimension"] = to_json(magnitude_dimension_estimate(result, range.front(), range.back()));
      }
      if (!o.csv_path.empty()) write_file(o.csv_path, [&](std::ostream& f) { write_sweep_csv(f, result); });
      json input = l.source;
      input["scales"] = scales;
      return emit(out, o, "sweep", input, doc, std::to_string(result.records.size()) + " scales");
    }
    if (*neg) {
      const Loaded l = load(in);
      const StabilityReport report =
          scales.empty() ? stability_scan(l.space) : stability_scan(l.space, parse_scale_grid(scales));
      std::string summary = std::string(to_string(report.classification));
      if (report.first_failing_scale) summary += ", first failing scale " + fmt(*report.first_failing_scale);
      return emit(out, o, "negtype", l.source, to_json(report), summary);
    }
    if (*approx) {
      SpaceSpec family;
      if (!in.spec.empty()) {
        family = read_spec_json(in.spec);
      } else if (!family_name.empty()) {
        family.family = family_from_string(family_name);
        for (const auto& kv : family_params) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) throw UsageError("--param expects key=value, got '" + kv + "'");
          try {
            family.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
          } catch (const std::exception&) {
            throw UsageError("bad value in --param " + kv);
          }
        }
      } else {
        throw UsageError("approx needs --family or --spec");
      }
      const std::vector<int> levels = parse_levels(levels_text);
      family.params[refinement_parameter(family.family)] = levels.back();
      validate_spec(family);
      const ConvergenceStudy study = approx_magnitude(family, levels, quadrature);
      if (!o.csv_path.empty()) write_file(o.csv_path, [&](std::ostream& f) { write_study_csv(f, study); });
      return emit(out, o, "approx", {{"levels", levels}}, to_json(study),
                  "extrapolated limit " + fmt(study.extrapolated_limit));
    }
    if (*growth) {
      const SpaceSpec tmpl = read_spec_json(in.spec);
      const GrowthStudy study = growth_bound_study(tmpl, parse_scale_grid(scales));
      if (!o.csv_path.empty()) write_file(o.csv_path, [&](std::ostream& f) { write_growth_csv(f, study); });
      const auto held = std::count_if(study.checks.begin(), study.checks.end(),
                                      [](const BoundCheck& c) { return c.satisfied; });
      return emit(out, o, "growth", {{"spec", spec_to_json(tmpl)}, {"scales", scales}}, to_json(study),
                  std::to_string(held) + "/" + std::to_string(study.checks.size()) + " bounds hold");
    }
    if (*four) {
      const FourierReport report = gamma_hat_1d(p, length, intervals, grid);
      json doc = to_json(report);
      std::string summary = "fitted c " + fmt(report.fitted_c);
      if (upper) {
        const UpperBoundReport bound = fourier_upper_bound_1d(ell, p, alpha, radius > 0.0 ? radius : ell + 1.0);
        doc["upper_bound"] = to_json(bound);
        summary += ", upper bound " + fmt(bound.bound);
      }
      if (!o.csv_path.empty()) write_file(o.csv_path, [&](std::ostream& f) { write_fourier_csv(f, report); });
      return emit(out, o, "fourier", {{"p", p}, {"length", length}, {"intervals", intervals}}, doc, summary);
    }
    if (*product) {
      const ProductExperiment e = product_counterexample_experiment();
      return emit(out, o, "experiment product-counterexample", json::object(), to_json(e),
                  std::to_string(e.failing_scales.size()) + " failing scales, min lambda " + fmt(e.min_lambda));
    }
    if (*search) {
      const WitnessSearchResult r = witness_search(witness, budget, seed);
      const std::string summary =
          r.witness ? "witness at trial " + std::to_string(r.witness->trial) + ", t " + fmt(r.witness->t)
                    : "no witness in " + std::to_string(r.trials) + " trials";
      return emit(out, o, "experiment witness-search",
                  {{"p", std::isinf(witness.p) ? json("inf") : json(witness.p)},
                   {"n", witness.dim},
                   {"budget", budget},
                   {"seed", seed}},
                  to_json(r), summary);
    }
  } catch (const UsageError& e) {
    err << "maglab: " << e.what() << '\n' << kGrammar;
    return {2, std::nullopt, std::string("usage error: ") + e.what()};
  } catch (const NotPositiveDefiniteError& e) {
    err << e.what() << '\n';
    print_human(err, json{{"diagnostics", to_json(e.diagnostics())}});
    return {1, std::nullopt, e.what()};
  } catch (const Error& e) {
    err << e.what() << '\n';
    return {1, std::nullopt, e.what()};
  }
  err << kGrammar;
  return {2, std::nullopt, "no command"};
}

}  // namespace maglab::cli
