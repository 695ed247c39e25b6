#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "upsilon/cp_map.hpp"

namespace upsilon {

// Point of F_d(B): PSD, unit trace, A-marginal pinned to I/d_A. The operator
// keeps its original factor structure; dim_a records which leading block is
// the pinned marginal.
struct FeasibleState {
  SquareOperator op;
  int dim_a;
  double feasibility_error;
};

// Distance of x from F_{dim_a}: max of PSD violation, trace defect and
// marginal defect (Frobenius).
double feasibility_error(const SquareOperator& x, int dim_a);

// Dykstra alternating projections between the PSD cone (eigenvalue clipping)
// and the affine set {Tr = 1, marginal_A = I/d_A} (closed-form projection).
// Throws on non-convergence.
FeasibleState project_feasible(const SquareOperator& x, int dim_a,
                               int max_iter = 10000, double tol = 1e-10);

// Tr(sigma ((N^dag N) (x) id)(sigma)) == ||(N (x) id)(sigma)||_2^2. The state
// factors are regrouped so the leading block matches N's input dimension.
double quadratic_objective(const FeasibleState& sigma, const CpMap& n);

// sum over subsets S of [n] of a^|S| b^|S^c| Tr(sigma_{A_S B}^2), computed by
// explicit enumeration (2^n terms, n <= 4). sigma must have factors
// (d, ..., d, d_B) with n copies of d.
double subset_purity_objective(const FeasibleState& sigma, double a, double b, int n);

struct OptimizationReport {
  double best_value;
  FeasibleState best_state;
  int restarts;
  std::vector<int> iterations_per_restart;
  std::optional<double> analytic_upper;
  std::optional<double> gap;  // analytic_upper - best_value
  std::uint64_t seed;
};

// Projected gradient ascent over F_{dim_in}(C^{d_B}) for the objective
// ||(N (x) id)(sigma)||_2. Restart 0 seeds the maximally entangled state,
// restart 1 seeds I/d (x) |0><0|, later restarts draw projected Wishart
// states. When extract_ab certifies N, the analytic value is attached as an
// upper bound.
OptimizationReport optimize_upsilon2(const CpMap& n, int d_env, int restarts,
                                     std::uint64_t seed, double tol = 1e-10);

// Same search for N^{(x)n}; the analytic bound (upsilon_2(N))^n from the base
// map's criterion constants is attached when available.
OptimizationReport optimize_tensor_power(const CpMap& n, int copies, int d_env,
                                         int restarts, std::uint64_t seed,
                                         double tol = 1e-10);

// Best-found upsilon_2(N^{(x)n}) minus (analytic upsilon_2(N))^n. Requires the
// base map to satisfy the criterion.
double multiplicativity_gap(const CpMap& n, int copies, int d_env, int restarts,
                            std::uint64_t seed);

// Bound chain of the doubled-space swap polynomial: for sigma over factors
// (d,...,d,d_B), objective = Tr((sigma (x) sigma) V prod_k (u U_k + v I)),
// operator_bound = Tr((sigma (x) sigma) |G|) and product_bound =
// (alpha + beta/d)^n. Feasible sigma give objective <= operator_bound ==
// product_bound.
struct SwapPolynomialBound {
  double objective;
  double operator_bound;
  double product_bound;
  double alpha;
  double beta;
};

SwapPolynomialBound swap_polynomial_bound(const FeasibleState& sigma,
                                          double swap_coef, double id_coef,
                                          int d, int n);

}  // namespace upsilon
