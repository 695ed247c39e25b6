#include "upsilon/cp_map.hpp"

#include <cmath>

namespace upsilon {

CpMap::CpMap(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw std::invalid_argument("CpMap: empty Kraus list");
  dim_out_ = static_cast<int>(kraus_.front().rows());
  dim_in_ = static_cast<int>(kraus_.front().cols());
  for (const auto& k : kraus_)
    if (k.rows() != dim_out_ || k.cols() != dim_in_)
      throw std::invalid_argument("CpMap: inconsistent Kraus shapes");
  Matrix acc = Matrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) acc += k.adjoint() * k;
  trace_preserving_ = (acc - Matrix::Identity(dim_in_, dim_in_)).norm() <= 1e-10;
}

CpMap identity_map(int d) {
  return CpMap({Matrix::Identity(d, d)});
}

CpMap unitary_map(const Matrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitary_map: not square");
  return CpMap({u});
}

SquareOperator apply(const CpMap& n, const SquareOperator& rho) {
  if (rho.dim() != n.dim_in())
    throw std::invalid_argument("apply: input dimension mismatch");
  Matrix out = Matrix::Zero(n.dim_out(), n.dim_out());
  for (const auto& k : n.kraus()) out += k * rho.entries() * k.adjoint();
  return SquareOperator(std::move(out), {n.dim_out()});
}

SquareOperator apply_to_factor(const CpMap& n, const SquareOperator& rho, int factor) {
  const auto& dims = rho.factor_dims();
  if (factor < 0 || factor >= rho.num_factors())
    throw std::invalid_argument("apply_to_factor: factor index out of range");
  if (dims[factor] != n.dim_in())
    throw std::invalid_argument("apply_to_factor: factor dimension mismatch");

  int pre = 1, post = 1;
  for (int k = 0; k < factor; ++k) pre *= dims[k];
  for (int k = factor + 1; k < rho.num_factors(); ++k) post *= dims[k];

  const Matrix ipre = Matrix::Identity(pre, pre);
  const Matrix ipost = Matrix::Identity(post, post);
  const int dout = pre * n.dim_out() * post;
  Matrix out = Matrix::Zero(dout, dout);
  for (const auto& k : n.kraus()) {
    const Matrix lifted = kron(kron(ipre, k), ipost);
    out += lifted * rho.entries() * lifted.adjoint();
  }
  std::vector<int> out_dims = dims;
  out_dims[factor] = n.dim_out();
  return SquareOperator(std::move(out), std::move(out_dims));
}

CpMap hs_adjoint(const CpMap& n) {
  std::vector<Matrix> kraus;
  kraus.reserve(n.kraus_count());
  for (const auto& k : n.kraus()) kraus.push_back(k.adjoint());
  return CpMap(std::move(kraus));
}

CpMap compose(const CpMap& n2, const CpMap& n1) {
  if (n1.dim_out() != n2.dim_in())
    throw std::invalid_argument("compose: dimension mismatch");
  std::vector<Matrix> kraus;
  kraus.reserve(n1.kraus_count() * n2.kraus_count());
  for (const auto& k2 : n2.kraus())
    for (const auto& k1 : n1.kraus()) kraus.push_back(k2 * k1);
  return CpMap(std::move(kraus));
}

CpMap tensor_product(const CpMap& a, const CpMap& b) {
  std::vector<Matrix> kraus;
  kraus.reserve(a.kraus_count() * b.kraus_count());
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) kraus.push_back(kron(ka, kb));
  return CpMap(std::move(kraus));
}

CpMap tensor_power(const CpMap& n, int power) {
  if (power < 1) throw std::invalid_argument("tensor_power: power must be >= 1");
  double total = 1.0;
  for (int i = 0; i < power; ++i) total *= n.dim_in();
  if (total > 64.0)
    throw std::invalid_argument("tensor_power: dim_in^n exceeds the size guard (64)");
  CpMap out = n;
  for (int i = 1; i < power; ++i) out = tensor_product(out, n);
  return out;
}

Matrix stinespring_operator(const CpMap& n) {
  const int r = n.kraus_count();
  Matrix w = Matrix::Zero(n.dim_out() * r, n.dim_in());
  for (int i = 0; i < r; ++i)
    for (int a = 0; a < n.dim_out(); ++a)
      w.row(a * r + i) = n.kraus()[i].row(a);
  return w;
}

CpMap complementary(const CpMap& n) {
  const int r = n.kraus_count();
  std::vector<Matrix> kraus;
  kraus.reserve(n.dim_out());
  for (int a = 0; a < n.dim_out(); ++a) {
    Matrix l(r, n.dim_in());
    for (int e = 0; e < r; ++e) l.row(e) = n.kraus()[e].row(a);
    kraus.push_back(std::move(l));
  }
  return CpMap(std::move(kraus));
}

ChoiState choi_state(const CpMap& n) {
  SquareOperator sigma =
      apply_to_factor(n, maximally_entangled_state(n.dim_in()), 1);
  const bool normalized = std::abs(trace(sigma).real() - 1.0) <= 1e-10;
  return ChoiState{std::move(sigma), normalized};
}

std::vector<Matrix> kraus_from_choi(const Matrix& choi, int dim_in, int dim_out,
                                    double cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (choi + Matrix(choi.adjoint())));
  std::vector<Matrix> kraus;
  for (Eigen::Index a = 0; a < es.eigenvalues().size(); ++a) {
    const double lam = es.eigenvalues()(a);
    if (lam <= cutoff) continue;
    const double s = std::sqrt(lam);
    Matrix k(dim_out, dim_in);
    for (int i = 0; i < dim_in; ++i)
      for (int b = 0; b < dim_out; ++b)
        k(b, i) = s * es.eigenvectors()(i * dim_out + b, a);
    kraus.push_back(std::move(k));
  }
  if (kraus.empty())
    throw std::invalid_argument("kraus_from_choi: Choi matrix has no positive spectrum");
  return kraus;
}

Matrix superoperator_matrix(const CpMap& n) {
  const int din = n.dim_in();
  const int dout = n.dim_out();
  Matrix s(dout * dout, din * din);
  for (int j = 0; j < din; ++j) {
    for (int i = 0; i < din; ++i) {
      Matrix unit = Matrix::Zero(din, din);
      unit(i, j) = 1.0;
      Matrix out = Matrix::Zero(dout, dout);
      for (const auto& k : n.kraus()) out += k * unit * k.adjoint();
      for (int c = 0; c < dout; ++c)
        for (int r = 0; r < dout; ++r) s(r + c * dout, i + j * din) = out(r, c);
    }
  }
  return s;
}

CpMap choi_to_channel(const ChoiState& sigma) {
  if (sigma.op.num_factors() != 2)
    throw std::invalid_argument("choi_to_channel: expected factors (d_in, d_out)");
  const int din = sigma.op.factor_dims()[0];
  const int dout = sigma.op.factor_dims()[1];
  const SquareOperator marginal = partial_trace(sigma.op, {0});
  const Matrix target = Matrix::Identity(din, din) / din;
  if ((marginal.entries() - target).norm() > 1e-8)
    throw std::invalid_argument("choi_to_channel: A-marginal is not maximally mixed");
  return CpMap(kraus_from_choi(din * sigma.op.entries(), din, dout));
}

}  // namespace upsilon
