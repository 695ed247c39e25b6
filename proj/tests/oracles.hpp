#pragma once

// Brute-force reference implementations used as independent oracles by the
// unit tests. Everything here works by direct index arithmetic and stays off
// the library's code paths.

#include <vector>

#include "upsilon/square_operator.hpp"

namespace upsilon::oracle {

inline std::vector<int> decode(int index, const std::vector<int>& dims) {
  std::vector<int> idx(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    idx[k] = index % dims[k];
    index /= dims[k];
  }
  return idx;
}

inline int encode(const std::vector<int>& idx, const std::vector<int>& dims) {
  int v = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) v = v * dims[k] + idx[k];
  return v;
}

inline Matrix naive_kron(const Matrix& a, const Matrix& b) {
  const int ar = static_cast<int>(a.rows()), ac = static_cast<int>(a.cols());
  const int br = static_cast<int>(b.rows()), bc = static_cast<int>(b.cols());
  Matrix out(ar * br, ac * bc);
  for (int i = 0; i < ar * br; ++i)
    for (int j = 0; j < ac * bc; ++j)
      out(i, j) = a(i / br, j / bc) * b(i % br, j % bc);
  return out;
}

// Partial trace by scanning every matrix entry and accumulating those whose
// traced-out indices coincide.
inline Matrix naive_partial_trace(const Matrix& m, const std::vector<int>& dims,
                                  const std::vector<int>& keep) {
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) kept[k] = true;
  std::vector<int> kept_dims;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (kept[k]) kept_dims.push_back(dims[k]);
  int kd = 1;
  for (int d : kept_dims) kd *= d;

  Matrix out = Matrix::Zero(kd, kd);
  const int n = static_cast<int>(m.rows());
  for (int r = 0; r < n; ++r) {
    const auto ri = decode(r, dims);
    for (int c = 0; c < n; ++c) {
      const auto ci = decode(c, dims);
      bool diagonal = true;
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (!kept[k] && ri[k] != ci[k]) diagonal = false;
      if (!diagonal) continue;
      std::vector<int> ro, co;
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (kept[k]) {
          ro.push_back(ri[k]);
          co.push_back(ci[k]);
        }
      out(encode(ro, kept_dims), encode(co, kept_dims)) += m(r, c);
    }
  }
  return out;
}

inline Matrix naive_partial_transpose(const Matrix& m, const std::vector<int>& dims,
                                      int subsystem) {
  const int n = static_cast<int>(m.rows());
  Matrix out(n, n);
  for (int r = 0; r < n; ++r) {
    auto ri = decode(r, dims);
    for (int c = 0; c < n; ++c) {
      auto ci = decode(c, dims);
      std::swap(ri[subsystem], ci[subsystem]);
      out(encode(ri, dims), encode(ci, dims)) = m(r, c);
      std::swap(ri[subsystem], ci[subsystem]);
    }
  }
  return out;
}

// Schatten norm from the eigenvalues of M^dag M.
inline double eig_schatten_norm(const Matrix& m, double p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(m.adjoint() * m));
  double acc = 0.0;
  double top = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double s = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    top = std::max(top, s);
    acc += std::pow(s, p);
  }
  if (std::isinf(p)) return top;
  return std::pow(acc, 1.0 / p);
}

// Explicit tau from the basis expansion (t/d) sum |j><i| (x) |i><j| +
// ((1-t)/d^2) I.
inline Matrix explicit_tau(int d, double t) {
  Matrix out = Matrix::Identity(d * d, d * d) * ((1.0 - t) / (d * d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(j * d + i, i * d + j) += t / d;
  return out;
}

}  // namespace upsilon::oracle
