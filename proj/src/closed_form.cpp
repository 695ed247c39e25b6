#include "upsilon/closed_form.hpp"

#include <cmath>

#include "upsilon/channels.hpp"

namespace upsilon {

TauSpectrum tau_spectrum(int d, double t) {
  if (d < 2) throw std::invalid_argument("tau_spectrum: d must be >= 2");
  if (!gamma_in_range(d, t)) throw std::domain_error("tau_spectrum: t outside CP-range");
  const double dd = static_cast<double>(d) * d;
  return TauSpectrum{(1.0 + t * (d - 1)) / dd, (1.0 - t * (d + 1)) / dd,
                     d * (d + 1) / 2, d * (d - 1) / 2};
}

double tau_norm(int d, double t, double p) {
  if (!(p >= 1.0)) throw std::domain_error("tau_norm: p must be >= 1");
  const TauSpectrum s = tau_spectrum(d, t);
  const double lp = std::max(s.lambda_plus, 0.0);
  const double lm = std::max(s.lambda_minus, 0.0);
  if (std::isinf(p)) return std::max(lp, lm);
  return std::pow(s.mult_plus * std::pow(lp, p) + s.mult_minus * std::pow(lm, p),
                  1.0 / p);
}

double m_value(int d, double t) {
  if (d < 2) throw std::invalid_argument("m_value: d must be >= 2");
  if (!gamma_in_range(d, t)) throw std::domain_error("m_value: t outside CP-range");
  // Entangled branch is active only when t^2 (d+1) strictly exceeds 1.
  if (t * t * (d + 1) > 1.0)
    return t * t + (1.0 - t * t) / (static_cast<double>(d) * d);
  return 1.0 / d;
}

ClosedForm upsilon2_gamma(int d, double t) {
  const double m = m_value(d, t);
  const Branch branch =
      (t * t * (d + 1) > 1.0) ? Branch::entangled : Branch::marginal;
  return ClosedForm{std::sqrt(m), branch, m};
}

CriterionConstants extract_ab(const CpMap& n) {
  // N^dag o N acts on L(A) regardless of the output dimension of N.
  const int d = n.dim_in();
  const Matrix s = superoperator_matrix(compose(hs_adjoint(n), n));

  // Basis superoperators: id -> I_{d^2}; Tr[.] I -> vec(I) vec(I)^T.
  Vector vec_id = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) vec_id(i + i * d) = 1.0;

  const double g11 = static_cast<double>(d) * d;
  const double g12 = d;
  const double g22 = static_cast<double>(d) * d;
  const double r1 = s.trace().real();
  const double r2 = (vec_id.adjoint() * s * vec_id).value().real();

  const double det = g11 * g22 - g12 * g12;
  double a = (g22 * r1 - g12 * r2) / det;
  double b = (g11 * r2 - g12 * r1) / det;
  // Fit noise can push exact zeros slightly negative.
  if (a < 0.0 && a > -1e-10) a = 0.0;
  if (b < 0.0 && b > -1e-10) b = 0.0;

  Matrix fitted = a * Matrix::Identity(d * d, d * d) +
                  b * (vec_id * vec_id.transpose());
  const double residual = (s - fitted).norm();
  return CriterionConstants{a, b, residual, residual <= 1e-8};
}

double upsilon2_general(double a, double b, int d) {
  if (a < 0.0 || b < 0.0)
    throw std::domain_error("upsilon2_general: a, b must be nonnegative");
  return std::sqrt(std::max(a + b / d, a / d + b));
}

double eop_from_norm(double p, double nu) {
  if (!(p > 1.0)) throw std::domain_error("eop_from_norm: p must be > 1");
  if (!(nu > 0.0)) throw std::domain_error("eop_from_norm: nu must be positive");
  return p / (1.0 - p) * std::log2(nu);
}

double upsilon_lower_bound(int d, double t, double p) {
  return std::max(tau_norm(d, t, p),
                  std::isinf(p) ? 1.0 / d : std::pow(d, 1.0 / p - 1.0));
}

AbPair gamma_ab(int d, double t) { return {t * t, (1.0 - t * t) / d}; }

AbPair delta_ab(int d, double p) {
  return {(1.0 - p) * (1.0 - p), p * (2.0 - p) / d};
}

AbPair gamma_complement_ab(int d, double t) {
  const AbPair g = gamma_ab(d, t);
  return {g.b, g.a};
}

AbPair delta_complement_ab(int d, double p) {
  const AbPair g = delta_ab(d, p);
  return {g.b, g.a};
}

const char* branch_name(Branch b) {
  return b == Branch::marginal ? "marginal" : "entangled";
}

}  // namespace upsilon
