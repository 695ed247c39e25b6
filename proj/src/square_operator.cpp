#include "upsilon/square_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace upsilon {

namespace {

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

// Strides for row-major multi-indices: stride[k] = prod of dims after k.
std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
    s[k] = s[k + 1] * dims[k + 1];
  return s;
}

void decode(int index, const std::vector<int>& dims, std::vector<int>& out) {
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    out[k] = index % dims[k];
    index /= dims[k];
  }
}

int encode(const std::vector<int>& idx, const std::vector<int>& strides) {
  int v = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) v += idx[k] * strides[k];
  return v;
}

}  // namespace

SquareOperator::SquareOperator(Matrix entries, std::vector<int> factor_dims)
    : entries_(std::move(entries)), factor_dims_(std::move(factor_dims)) {
  if (entries_.rows() != entries_.cols())
    throw std::invalid_argument("SquareOperator: matrix is not square");
  for (int d : factor_dims_)
    if (d <= 0) throw std::invalid_argument("SquareOperator: nonpositive factor dim");
  if (product(factor_dims_) != entries_.rows())
    throw std::invalid_argument("SquareOperator: factor dims do not multiply to dim");
}

SquareOperator::SquareOperator(Matrix entries)
    : entries_(std::move(entries)),
      factor_dims_{static_cast<int>(entries_.rows())} {
  if (entries_.rows() != entries_.cols())
    throw std::invalid_argument("SquareOperator: matrix is not square");
}

SquareOperator SquareOperator::identity(int dim) {
  return SquareOperator(Matrix::Identity(dim, dim), {dim});
}

SquareOperator SquareOperator::zero(int dim) {
  return SquareOperator(Matrix::Zero(dim, dim), {dim});
}

SquareOperator SquareOperator::with_factors(std::vector<int> factor_dims) const {
  return SquareOperator(entries_, std::move(factor_dims));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

SquareOperator tensor_product(const SquareOperator& a, const SquareOperator& b) {
  std::vector<int> dims = a.factor_dims();
  dims.insert(dims.end(), b.factor_dims().begin(), b.factor_dims().end());
  return SquareOperator(kron(a.entries(), b.entries()), std::move(dims));
}

SquareOperator partial_trace(const SquareOperator& m, const std::vector<int>& keep) {
  const auto& dims = m.factor_dims();
  const int nf = m.num_factors();
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= nf)
      throw std::invalid_argument("partial_trace: factor index out of range");
    if (k > 0 && keep[k] <= keep[k - 1])
      throw std::invalid_argument("partial_trace: keep set must be strictly increasing");
  }

  std::vector<int> kept_dims, traced_dims, traced_pos;
  std::vector<bool> is_kept(nf, false);
  for (int k : keep) is_kept[k] = true;
  for (int k = 0; k < nf; ++k) {
    if (is_kept[k]) kept_dims.push_back(dims[k]);
    else { traced_dims.push_back(dims[k]); traced_pos.push_back(k); }
  }

  const int kd = product(kept_dims);
  const int td = product(traced_dims);
  const auto strides = strides_of(dims);
  const auto kept_strides = strides_of(kept_dims);
  const auto traced_strides = strides_of(traced_dims);

  // Offset of a kept multi-index inside the full joint index.
  std::vector<int> kept_full_strides;
  for (int k : keep) kept_full_strides.push_back(strides[k]);
  std::vector<int> traced_full_strides;
  for (int k : traced_pos) traced_full_strides.push_back(strides[k]);

  std::vector<int> ki(kept_dims.size()), kj(kept_dims.size()), ti(traced_dims.size());
  Matrix out = Matrix::Zero(kd, kd);
  for (int i = 0; i < kd; ++i) {
    decode(i, kept_dims, ki);
    const int ri = encode(ki, kept_full_strides);
    for (int j = 0; j < kd; ++j) {
      decode(j, kept_dims, kj);
      const int rj = encode(kj, kept_full_strides);
      Complex acc = 0.0;
      for (int t = 0; t < td; ++t) {
        decode(t, traced_dims, ti);
        const int off = encode(ti, traced_full_strides);
        acc += m.entries()(ri + off, rj + off);
      }
      out(i, j) = acc;
    }
  }
  return SquareOperator(std::move(out), kept_dims.empty() ? std::vector<int>{1} : kept_dims);
}

SquareOperator partial_transpose(const SquareOperator& m, int subsystem) {
  const auto& dims = m.factor_dims();
  if (subsystem < 0 || subsystem >= m.num_factors())
    throw std::invalid_argument("partial_transpose: factor index out of range");
  const auto strides = strides_of(dims);
  const int n = m.dim();
  const int ds = dims[subsystem];
  const int st = strides[subsystem];

  Matrix out(n, n);
  std::vector<int> ri(dims.size()), ci(dims.size());
  for (int r = 0; r < n; ++r) {
    decode(r, dims, ri);
    for (int c = 0; c < n; ++c) {
      decode(c, dims, ci);
      const int rs = r + (ci[subsystem] - ri[subsystem]) * st;
      const int cs = c + (ri[subsystem] - ci[subsystem]) * st;
      out(r, c) = m.entries()(rs, cs);
      (void)ds;
    }
  }
  return SquareOperator(std::move(out), dims);
}

SquareOperator permute_factors(const SquareOperator& m, const std::vector<int>& perm) {
  const auto& dims = m.factor_dims();
  const int nf = m.num_factors();
  if (static_cast<int>(perm.size()) != nf)
    throw std::invalid_argument("permute_factors: permutation length mismatch");
  std::vector<bool> seen(nf, false);
  for (int p : perm) {
    if (p < 0 || p >= nf || seen[p])
      throw std::invalid_argument("permute_factors: not a permutation");
    seen[p] = true;
  }

  std::vector<int> new_dims(nf);
  for (int k = 0; k < nf; ++k) new_dims[k] = dims[perm[k]];
  const auto old_strides = strides_of(dims);
  const auto new_strides = strides_of(new_dims);

  const int n = m.dim();
  // row_map[new index] = old index
  std::vector<int> map(n);
  std::vector<int> xi(nf);
  for (int x = 0; x < n; ++x) {
    decode(x, new_dims, xi);
    int old_index = 0;
    for (int k = 0; k < nf; ++k) old_index += xi[k] * old_strides[perm[k]];
    map[x] = old_index;
    (void)new_strides;
  }
  Matrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = m.entries()(map[r], map[c]);
  return SquareOperator(std::move(out), new_dims);
}

SquareOperator swap_operator(int d) {
  if (d < 1) throw std::invalid_argument("swap_operator: d must be positive");
  Matrix pi = Matrix::Zero(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) pi(l * d + k, k * d + l) = 1.0;
  return SquareOperator(std::move(pi), {d, d});
}

SquareOperator maximally_entangled_state(int d) {
  if (d < 1) throw std::invalid_argument("maximally_entangled_state: d must be positive");
  Matrix phi = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) phi(i * d + i, j * d + j) = 1.0 / d;
  return SquareOperator(std::move(phi), {d, d});
}

double schatten_norm(const SquareOperator& m, double p) {
  if (!(p >= 1.0))
    throw std::domain_error("schatten_norm: p must be >= 1");
  Eigen::JacobiSVD<Matrix> svd(m.entries());
  const auto& sv = svd.singularValues();
  if (std::isinf(p)) return sv.size() ? sv(0) : 0.0;
  if (p == 2.0) return sv.norm();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), p);
  return std::pow(acc, 1.0 / p);
}

HermitianSpectrum hermitian_eig(const SquareOperator& m) {
  const Matrix& a = m.entries();
  const double scale = std::max(1.0, a.norm());
  if ((a - a.adjoint()).norm() > 1e-8 * scale)
    throw std::invalid_argument("hermitian_eig: operator is not Hermitian within tolerance");
  Matrix h = 0.5 * (a + Matrix(a.adjoint()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed");

  const int n = m.dim();
  HermitianSpectrum out;
  out.eigenvalues = RealVector(n);
  out.eigenvectors = Matrix(n, n);
  for (int i = 0; i < n; ++i) {
    out.eigenvalues(i) = es.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

Complex trace(const SquareOperator& m) { return m.entries().trace(); }

double purity(const SquareOperator& m) {
  return (m.entries() * m.entries()).trace().real();
}

std::vector<std::pair<double, int>> cluster_eigenvalues(const RealVector& descending,
                                                        double tol) {
  std::vector<std::pair<double, int>> clusters;
  for (Eigen::Index i = 0; i < descending.size(); ++i) {
    const double v = descending(i);
    if (!clusters.empty()) {
      auto& [mean, count] = clusters.back();
      if (std::abs(v - mean) <= tol) {
        mean = (mean * count + v) / (count + 1);
        ++count;
        continue;
      }
    }
    clusters.emplace_back(v, 1);
  }
  return clusters;
}

}  // namespace upsilon
