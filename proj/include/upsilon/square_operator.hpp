#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace upsilon {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Dense operator on a tensor-product space. factor_dims fixes the subsystem
// structure; joint indices are row-major with the first factor most
// significant, so tensor_product(A, B) places A on the high-order digits.
class SquareOperator {
 public:
  SquareOperator(Matrix entries, std::vector<int> factor_dims);
  explicit SquareOperator(Matrix entries);

  static SquareOperator identity(int dim);
  static SquareOperator zero(int dim);

  const Matrix& entries() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  const std::vector<int>& factor_dims() const { return factor_dims_; }
  int num_factors() const { return static_cast<int>(factor_dims_.size()); }

  // Relabels the factor structure; entries are untouched. The product of the
  // new dims must equal dim().
  SquareOperator with_factors(std::vector<int> factor_dims) const;

 private:
  Matrix entries_;
  std::vector<int> factor_dims_;
};

struct HermitianSpectrum {
  RealVector eigenvalues;  // sorted descending
  Matrix eigenvectors;     // matching columns, unitary
};

SquareOperator tensor_product(const SquareOperator& a, const SquareOperator& b);

// Traces out every factor not listed in `keep` (0-based, strictly increasing).
SquareOperator partial_trace(const SquareOperator& m, const std::vector<int>& keep);

// Transpose on a single factor; involution and Hilbert-Schmidt isometry.
SquareOperator partial_transpose(const SquareOperator& m, int subsystem);

// Reorders factors: position k of the result holds the factor that was at
// perm[k]. perm must be a permutation of 0..num_factors-1.
SquareOperator permute_factors(const SquareOperator& m, const std::vector<int>& perm);

// Flip operator on C^d x C^d: |k,l> -> |l,k>. Hermitian, unitary, squares to I.
SquareOperator swap_operator(int d);

// Projector onto (1/sqrt(d)) sum_i |ii>, with factors (d, d).
SquareOperator maximally_entangled_state(int d);

// (Tr |M|^p)^(1/p) from singular values; p = infinity gives the largest one.
double schatten_norm(const SquareOperator& m, double p);

// Requires ||M - M^dag||_2 <= 1e-8 * max(1, ||M||_2); symmetrizes before
// decomposing.
HermitianSpectrum hermitian_eig(const SquareOperator& m);

Complex trace(const SquareOperator& m);

// Re Tr(M^2); callers pass Hermitian operators.
double purity(const SquareOperator& m);

// Kronecker product of raw matrices (row-major subsystem order).
Matrix kron(const Matrix& a, const Matrix& b);

// Groups a descending eigenvalue list into (value, multiplicity) clusters;
// members of a cluster differ from its running mean by at most tol.
std::vector<std::pair<double, int>> cluster_eigenvalues(const RealVector& descending,
                                                        double tol = 1e-8);

}  // namespace upsilon
