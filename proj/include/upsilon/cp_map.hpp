#pragma once

#include <vector>

#include "upsilon/square_operator.hpp"

namespace upsilon {

// Completely positive map stored Kraus-first: X -> sum_i K_i X K_i^dag with
// every K_i of shape dim_out x dim_in. The trace_preserving flag is computed
// at construction (sum K_i^dag K_i == I within 1e-10), never asserted by the
// caller.
class CpMap {
 public:
  explicit CpMap(std::vector<Matrix> kraus);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  int kraus_count() const { return static_cast<int>(kraus_.size()); }
  bool trace_preserving() const { return trace_preserving_; }

 private:
  std::vector<Matrix> kraus_;
  int dim_in_;
  int dim_out_;
  bool trace_preserving_;
};

// Choi state sigma = (id (x) N)(Phi_{dim_in}) with factors (dim_in, dim_out).
struct ChoiState {
  SquareOperator op;
  bool normalized;
};

CpMap identity_map(int d);
CpMap unitary_map(const Matrix& u);

SquareOperator apply(const CpMap& n, const SquareOperator& rho);

// Applies N to one factor of rho (identity elsewhere). The factor is replaced
// by a single factor of size dim_out in the result.
SquareOperator apply_to_factor(const CpMap& n, const SquareOperator& rho, int factor);

CpMap hs_adjoint(const CpMap& n);
CpMap compose(const CpMap& n2, const CpMap& n1);
CpMap tensor_product(const CpMap& a, const CpMap& b);

// n-fold tensor power; guarded to dim_in^n <= 64.
CpMap tensor_power(const CpMap& n, int power);

// Stinespring operator W: dim_in -> dim_out (x) r built from the Kraus list,
// environment as the second factor: W|x> = sum_i K_i|x> (x) |i>.
Matrix stinespring_operator(const CpMap& n);

// Map to the environment of the Kraus dilation: X -> Tr_out(W X W^dag).
CpMap complementary(const CpMap& n);

ChoiState choi_state(const CpMap& n);

// Reconstruction Lambda(X) = d Tr_A[(X^T (x) I) sigma] for sigma with pinned
// A-marginal; Kraus come from the Choi eigendecomposition with eigenvalues
// below 1e-12 discarded.
CpMap choi_to_channel(const ChoiState& sigma);

// Kraus extraction from an unnormalized Choi matrix C = sum_ij |i><j| (x)
// N(|i><j|); rank truncation at `cutoff`.
std::vector<Matrix> kraus_from_choi(const Matrix& choi, int dim_in, int dim_out,
                                    double cutoff = 1e-12);

// Column-major-vec superoperator matrix: vec(N(X)) = S vec(X).
Matrix superoperator_matrix(const CpMap& n);

}  // namespace upsilon
