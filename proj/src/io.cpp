#include "maglab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "maglab/error.hpp"

namespace maglab {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Non-finite doubles become the strings "inf", "-inf" and "nan".
json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json opt(const std::optional<double>& x) { return x ? num(*x) : json(nullptr); }

double number_from(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity") return std::numeric_limits<double>::infinity();
  }
  throw Error(ErrorKind::Parse, what + " must be a number");
}

json vec(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(num(v(i)));
  return out;
}

json doubles(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

void csv_precision(std::ostream& out) { out.precision(std::numeric_limits<double>::max_digits10); }

void put(std::ostream& out, const std::optional<double>& x) {
  if (x) out << *x;
}

}  // namespace

Matrix parse_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view cell = trim(rest.substr(0, comma));
      double value = 0.0;
      const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (cell.empty() || ec != std::errc() || end != cell.data() + cell.size())
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": cannot parse '" +
                                          std::string(cell) + "'");
      if (!std::isfinite(value))
        throw Error(ErrorKind::NonFiniteEntry, "line " + std::to_string(line_no));
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n)
      throw Error(ErrorKind::NonSquareMatrix, "row " + std::to_string(i + 1) + " has " +
                                                  std::to_string(rows[i].size()) + " entries, expected " +
                                                  std::to_string(n));
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return parse_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  csv_precision(out);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j);
    out << '\n';
  }
}

FiniteMetricSpace load_space_csv(const std::string& path, bool force) {
  Matrix d = read_matrix_csv(path);
  const ValidationReport report = validate_metric(d);
  if (!report.ok && !force) {
    std::ostringstream msg;
    msg << path << " is not a metric (worst triangle violation " << report.worst_triangle_violation
        << ", asymmetry " << report.worst_asymmetry << ", diagonal " << report.worst_diagonal
        << ", min off-diagonal " << report.min_offdiagonal << ")";
    throw Error(ErrorKind::InvalidMetric, msg.str());
  }
  // With force, triangle violations get through; the constructor still
  // insists on symmetry, a zero diagonal and positive off-diagonal entries.
  return FiniteMetricSpace(std::move(d));
}

SpaceSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "space spec must be a JSON object");
  SpaceSpec spec;
  if (!j.contains("family") || !j["family"].is_string()) throw Error(ErrorKind::Parse, "missing family");
  spec.family = family_from_string(j["family"].get<std::string>());
  if (j.contains("params")) {
    for (const auto& [key, value] : j["params"].items()) {
      if (key == "coords") {
        for (const auto& point : value) {
          std::vector<double> coords;
          for (const auto& x : point) coords.push_back(number_from(x, "coordinate"));
          spec.coords.push_back(std::move(coords));
        }
      } else {
        spec.params[key] = number_from(value, key);
      }
    }
  }
  if (j.contains("scale")) spec.scale = number_from(j["scale"], "scale");
  if (j.contains("snowflake")) spec.snowflake = number_from(j["snowflake"], "snowflake");
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  validate_spec(spec);
  return spec;
}

json spec_to_json(const SpaceSpec& spec) {
  json params = json::object();
  for (const auto& [key, value] : spec.params) params[key] = num(value);
  if (!spec.coords.empty()) params["coords"] = spec.coords;
  return {{"family", std::string(to_string(spec.family))},
          {"params", params},
          {"scale", num(spec.scale)},
          {"snowflake", num(spec.snowflake)},
          {"seed", spec.seed}};
}

SpaceSpec read_spec_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  return spec_from_json(j);
}

json to_json(const ValidationReport& r) {
  json triples = json::array();
  for (const auto& v : r.offending_triples)
    triples.push_back({{"i", v.i}, {"j", v.j}, {"k", v.k}, {"excess", num(v.excess)}});
  return {{"ok", r.ok},
          {"worst_triangle_violation", num(r.worst_triangle_violation)},
          {"worst_asymmetry", num(r.worst_asymmetry)},
          {"worst_diagonal", num(r.worst_diagonal)},
          {"min_offdiagonal", num(r.min_offdiagonal)},
          {"offending_triples", triples}};
}

json to_json(const SpectrumDiagnostics& d) {
  return {{"lambda_min", num(d.lambda_min)},
          {"lambda_max", num(d.lambda_max)},
          {"condition_estimate", num(d.condition_estimate)},
          {"verdict", std::string(to_string(d.verdict))},
          {"tolerance_used", num(d.tolerance_used)},
          {"method", d.method},
          {"iterations", d.iterations}};
}

json to_json(const MagnitudeReport& r) {
  return {{"magnitude", num(r.magnitude)},
          {"weighting", vec(r.weighting)},
          {"residual", num(r.residual)},
          {"positively_weighted", r.positively_weighted},
          {"ill_conditioned", r.ill_conditioned},
          {"least_squares_fallback", r.least_squares_fallback},
          {"diagnostics", to_json(r.diagnostics)}};
}

json to_json(const ScaleSweep& s) {
  json records = json::array();
  for (const auto& r : s.records)
    records.push_back({{"t", num(r.t)},
                       {"lambda_min", num(r.lambda_min)},
                       {"verdict", std::string(to_string(r.verdict))},
                       {"magnitude", opt(r.magnitude)},
                       {"diversity", opt(r.diversity)},
                       {"failure", r.failure}});
  return {{"points", s.points}, {"records", records}};
}

json to_json(const DimensionEstimate& e) {
  return {{"slope", num(e.slope)}, {"standard_error", num(e.standard_error)}, {"records_used", e.records_used}};
}

json to_json(const DiversityReport& r) {
  return {{"diversity", num(r.diversity)},
          {"upper_bound", num(r.upper_bound)},
          {"objective", num(r.objective)},
          {"measure", vec(r.measure)},
          {"support", r.support},
          {"fw_gap", num(r.fw_gap)},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"objective_trace", doubles(r.objective_trace)}};
}

json to_json(const PositivityVerdict& v) {
  return {{"positively_weighted", v.positively_weighted},
          {"certificate", std::string(to_string(v.certificate))},
          {"min_weight", num(v.min_weight)},
          {"magnitude", num(v.magnitude)},
          {"diversity", num(v.diversity)}};
}

json to_json(const NegativeTypeReport& r) {
  return {{"negative_type", r.negative_type},
          {"gram_lambda_min", num(r.gram_lambda_min)},
          {"tolerance_used", num(r.tolerance_used)},
          {"witness", r.witness ? vec(*r.witness) : json(nullptr)},
          {"witness_value", num(r.witness_value)},
          {"basepoint", r.basepoint}};
}

json to_json(const StabilityReport& r) {
  json records = json::array();
  for (const auto& rec : r.records)
    records.push_back({{"t", num(rec.t)},
                       {"lambda_min", num(rec.lambda_min)},
                       {"tolerance", num(rec.tolerance)},
                       {"verdict", std::string(to_string(rec.verdict))}});
  return {{"records", records},
          {"classification", std::string(to_string(r.classification))},
          {"negative_type", to_json(r.negative_type)},
          {"first_failing_scale", opt(r.first_failing_scale)}};
}

json to_json(const ConvergenceStudy& s) {
  json records = json::array();
  for (const auto& r : s.records)
    records.push_back({{"level", r.level},
                       {"points", r.points},
                       {"hausdorff_gap", num(r.hausdorff_gap)},
                       {"magnitude", opt(r.magnitude)},
                       {"quadrature_bound", opt(r.quadrature_bound)},
                       {"lambda_min", num(r.lambda_min)},
                       {"failure", r.failure}});
  return {{"family", spec_to_json(s.family)},
          {"refinement_param", s.refinement_param},
          {"records", records},
          {"extrapolated_limit", num(s.extrapolated_limit)},
          {"fit_slope", num(s.fit_slope)},
          {"fit_residual", num(s.fit_residual)},
          {"nested", s.nested},
          {"monotone", s.monotone}};
}

json to_json(const BoundCheck& b) {
  return {{"t", num(b.t)},
          {"lower_bound", num(b.lower_bound)},
          {"net_magnitude", opt(b.net_magnitude)},
          {"margin", num(b.margin)},
          {"satisfied", b.satisfied}};
}

json to_json(const GrowthStudy& g) {
  json checks = json::array();
  for (const auto& c : g.checks) checks.push_back(to_json(c));
  return {{"checks", checks},
          {"dimension", g.dimension ? to_json(*g.dimension) : json(nullptr)},
          {"dimension_failure", g.dimension_failure}};
}

json to_json(const FourierReport& r) {
  return {{"p", num(r.p)},
          {"omega", doubles(r.omega)},
          {"values", doubles(r.values)},
          {"positive", r.positive},
          {"radially_decreasing", r.radially_decreasing},
          {"fitted_c", num(r.fitted_c)},
          {"tail_bound", num(r.tail_bound)},
          {"error_estimate", num(r.error_estimate)}};
}

json to_json(const UpperBoundReport& r) {
  return {{"bound", num(r.bound)},
          {"argmax_omega", num(r.argmax_omega)},
          {"error_estimate", num(r.error_estimate)},
          {"beta", num(r.beta)},
          {"mollifier_width", num(r.mollifier_width)},
          {"grid_points", r.grid_points}};
}

json to_json(const ProductExperiment& e) {
  return {{"stability", to_json(e.stability)},
          {"failing_scales", doubles(e.failing_scales)},
          {"min_lambda", num(e.min_lambda)},
          {"points", e.points}};
}

json to_json(const WitnessSearchResult& r) {
  json witness = nullptr;
  if (r.witness)
    witness = {{"points", r.witness->points},
               {"t", num(r.witness->t)},
               {"lambda_min", num(r.witness->lambda_min)},
               {"trial", r.witness->trial}};
  return {{"witness", witness},
          {"trials", r.trials},
          {"spaces_tested", r.spaces_tested},
          {"scales_tested", r.scales_tested},
          {"smallest_lambda_seen", num(r.smallest_lambda_seen)}};
}

void write_sweep_csv(std::ostream& out, const ScaleSweep& sweep) {
  csv_precision(out);
  out << "t,lambda_min,magnitude,diversity\n";
  for (const auto& r : sweep.records) {
    out << r.t << ',' << r.lambda_min << ',';
    put(out, r.magnitude);
    out << ',';
    put(out, r.diversity);
    out << '\n';
  }
}

void write_study_csv(std::ostream& out, const ConvergenceStudy& study) {
  csv_precision(out);
  out << "level,value,bound,gap\n";
  for (const auto& r : study.records) {
    out << r.level << ',';
    put(out, r.magnitude);
    out << ',';
    put(out, r.quadrature_bound);
    out << ',' << r.hausdorff_gap << '\n';
  }
}

void write_growth_csv(std::ostream& out, const GrowthStudy& study) {
  csv_precision(out);
  out << "t,value,bound,gap\n";
  for (const auto& c : study.checks) {
    out << c.t << ',';
    put(out, c.net_magnitude);
    out << ',' << c.lower_bound << ',';
    if (c.net_magnitude) out << *c.net_magnitude - c.lower_bound;
    out << '\n';
  }
}

void write_fourier_csv(std::ostream& out, const FourierReport& report) {
  csv_precision(out);
  out << "omega,value,bound,gap\n";
  for (std::size_t k = 0; k < report.omega.size(); ++k) {
    const double floor = report.fitted_c * std::pow(1.0 + report.omega[k], -(1.0 + report.p));
    out << report.omega[k] << ',' << report.values[k] << ',' << floor << ',' << report.values[k] - floor
        << '\n';
  }
}

}  // namespace maglab
