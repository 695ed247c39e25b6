#include "upsilon/channels.hpp"

#include <cmath>
#include <string>

namespace upsilon {

namespace {

constexpr double kRangeTol = 1e-12;

double sqrt_clipped(double x) {
  if (x < -kRangeTol) throw std::domain_error("negative radicand");
  return std::sqrt(std::max(x, 0.0));
}

}  // namespace

double gamma_t_min(int d) { return -1.0 / (d - 1); }
double gamma_t_max(int d) { return 1.0 / (d + 1); }

bool gamma_in_range(int d, double t) {
  return t >= gamma_t_min(d) - kRangeTol && t <= gamma_t_max(d) + kRangeTol;
}

double delta_p_max(int d) {
  return static_cast<double>(d) * d / (static_cast<double>(d) * d - 1);
}

bool delta_in_range(int d, double p) {
  return p >= -kRangeTol && p <= delta_p_max(d) + kRangeTol;
}

CpMap make_transpose_depolarizing(int d, double t) {
  if (d < 2) throw std::invalid_argument("make_transpose_depolarizing: d must be >= 2");
  if (!gamma_in_range(d, t))
    throw std::domain_error("make_transpose_depolarizing: t outside CP-range [" +
                            std::to_string(gamma_t_min(d)) + ", " +
                            std::to_string(gamma_t_max(d)) + "]");
  // Choi matrix d*tau with tau = (t/d) Pi + ((1-t)/d^2) I.
  const Matrix pi = swap_operator(d).entries();
  const Matrix choi = t * pi + ((1.0 - t) / d) * Matrix::Identity(d * d, d * d);
  return CpMap(kraus_from_choi(choi, d, d));
}

CpMap make_depolarizing(int d, double p) {
  if (d < 2) throw std::invalid_argument("make_depolarizing: d must be >= 2");
  if (!delta_in_range(d, p))
    throw std::domain_error("make_depolarizing: p outside [0, " +
                            std::to_string(delta_p_max(d)) + "]");
  const Matrix phi = maximally_entangled_state(d).entries();
  const Matrix choi =
      d * (1.0 - p) * phi + (p / d) * Matrix::Identity(d * d, d * d);
  return CpMap(kraus_from_choi(choi, d, d));
}

CpMap make_completely_depolarizing(int d) { return make_depolarizing(d, 1.0); }

Matrix gamma_complement_dilation(int d, double t) {
  if (!gamma_in_range(d, t))
    throw std::domain_error("gamma_complement_dilation: t outside CP-range [" +
                            std::to_string(gamma_t_min(d)) + ", " +
                            std::to_string(gamma_t_max(d)) + "]");
  const double ap = sqrt_clipped((1.0 + (d - 1) * t) / (4.0 * d));
  const double am = sqrt_clipped((1.0 - (d + 1) * t) / (4.0 * d));
  const Matrix id = Matrix::Identity(d * d, d * d);
  return (ap + am) * id + (ap - am) * swap_operator(d).entries();
}

Matrix delta_complement_dilation(int d, double p) {
  if (!delta_in_range(d, p))
    throw std::domain_error("delta_complement_dilation: p outside [0, " +
                            std::to_string(delta_p_max(d)) + "]");
  const double gamma = sqrt_clipped(1.0 - p * (static_cast<double>(d) * d - 1) / (static_cast<double>(d) * d));
  const Matrix id = Matrix::Identity(d * d, d * d);
  const Matrix q = maximally_entangled_state(d).entries();
  return sqrt_clipped(p / d) * id +
         std::sqrt(static_cast<double>(d)) * (-std::sqrt(std::max(p, 0.0)) / d + gamma) * q;
}

namespace {

// Kraus {S (I (x) |j>)} for a dilation S on C^d (x) C^d: realizes
// X -> S (X (x) I) S^dag with output on the full doubled space.
std::vector<Matrix> dilation_to_kraus(const Matrix& s, int d) {
  std::vector<Matrix> kraus;
  kraus.reserve(d);
  for (int j = 0; j < d; ++j) {
    Matrix k(d * d, d);
    for (int i = 0; i < d; ++i) k.col(i) = s.col(i * d + j);
    kraus.push_back(std::move(k));
  }
  return kraus;
}

}  // namespace

CpMap make_gamma_complement(int d, double t) {
  return CpMap(dilation_to_kraus(gamma_complement_dilation(d, t), d));
}

CpMap make_delta_complement(int d, double p) {
  return CpMap(dilation_to_kraus(delta_complement_dilation(d, p), d));
}

CpMap werner_complement_map(int d, double t) {
  const Matrix s = gamma_complement_dilation(d, t);
  std::vector<Matrix> kraus;
  kraus.reserve(d);
  for (int j = 0; j < d; ++j) {
    Matrix k(d, d * d);
    for (int i = 0; i < d; ++i) k.row(i) = s.row(i * d + j);
    kraus.push_back(std::move(k));
  }
  return CpMap(std::move(kraus));
}

SquareOperator werner_state(int d, double t) {
  if (!gamma_in_range(d, t))
    throw std::domain_error("werner_state: t outside CP-range");
  Matrix w = ((1.0 - t) / (static_cast<double>(d) * d)) * Matrix::Identity(d * d, d * d) +
             (t / d) * swap_operator(d).entries();
  return SquareOperator(std::move(w), {d, d});
}

CpMap state_to_cp_map(const SquareOperator& rho) {
  if (rho.num_factors() != 2)
    throw std::invalid_argument("state_to_cp_map: expected factors (d_A, d_B)");
  const int da = rho.factor_dims()[0];
  const int db = rho.factor_dims()[1];
  if (std::abs(trace(rho).real() - 1.0) > 1e-8 || std::abs(trace(rho).imag()) > 1e-8)
    throw std::invalid_argument("state_to_cp_map: input trace is not 1");

  HermitianSpectrum es = hermitian_eig(rho);
  if (es.eigenvalues(es.eigenvalues.size() - 1) < -1e-10)
    throw std::invalid_argument("state_to_cp_map: input is not PSD");

  std::vector<Matrix> kraus;
  for (Eigen::Index a = 0; a < es.eigenvalues.size(); ++a) {
    const double lam = es.eigenvalues(a);
    if (lam <= 1e-12) continue;
    const double s = std::sqrt(static_cast<double>(db) * lam);
    Matrix k(da, db);
    for (int x = 0; x < da; ++x)
      for (int i = 0; i < db; ++i) k(x, i) = s * es.eigenvectors(x * db + i, a);
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) throw std::invalid_argument("state_to_cp_map: zero state");
  return CpMap(std::move(kraus));
}

}  // namespace upsilon
