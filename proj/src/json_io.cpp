#include "upsilon/json_io.hpp"

#include <cstdio>

namespace upsilon {

namespace {

Json matrix_entries(const Matrix& m) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      entries.push_back({m(r, c).real(), m(r, c).imag()});
  return entries;
}

Matrix entries_to_matrix(const Json& entries, int rows, int cols) {
  if (static_cast<int>(entries.size()) != rows * cols)
    throw std::invalid_argument("json: entry count does not match dims");
  Matrix m(rows, cols);
  int i = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c, ++i)
      m(r, c) = Complex(entries[i][0].get<double>(), entries[i][1].get<double>());
  return m;
}

}  // namespace

Json to_json(const SquareOperator& m) {
  Json j;
  j["dims"] = m.factor_dims();
  j["entries"] = matrix_entries(m.entries());
  return j;
}

SquareOperator square_operator_from_json(const Json& j) {
  const std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  int total = 1;
  for (int d : dims) total *= d;
  return SquareOperator(entries_to_matrix(j.at("entries"), total, total), dims);
}

Json to_json(const CpMap& n) {
  Json j;
  j["dims"] = {n.dim_in(), n.dim_out()};
  j["trace_preserving"] = n.trace_preserving();
  Json kraus = Json::array();
  for (const auto& k : n.kraus()) kraus.push_back(matrix_entries(k));
  j["kraus"] = std::move(kraus);
  return j;
}

CpMap cp_map_from_json(const Json& j) {
  const auto dims = j.at("dims").get<std::vector<int>>();
  if (dims.size() != 2) throw std::invalid_argument("json: CpMap dims must be [in, out]");
  std::vector<Matrix> kraus;
  for (const auto& k : j.at("kraus"))
    kraus.push_back(entries_to_matrix(k, dims[1], dims[0]));
  return CpMap(std::move(kraus));
}

Json to_json(const OptimizationReport& report) {
  Json j;
  j["value"] = report.best_value;
  if (report.gap) j["gap"] = *report.gap;
  if (report.analytic_upper) j["analytic_upper"] = *report.analytic_upper;
  j["seed"] = report.seed;
  j["restarts"] = report.restarts;
  j["iterations"] = report.iterations_per_restart;
  j["feasibility_error"] = report.best_state.feasibility_error;
  j["state"] = to_json(report.best_state.op);
  return j;
}

Json to_json(const CheckResult& result) {
  Json j;
  j["name"] = result.name;
  j["residual"] = result.residual;
  j["tolerance"] = result.tolerance;
  j["passed"] = result.passed;
  j["trials"] = result.trials;
  j["worst_case_input_digest"] = result.worst_case_input_digest;
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace upsilon
