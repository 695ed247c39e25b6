#pragma once

#include "upsilon/cp_map.hpp"

namespace upsilon {

// Two-point spectrum of the seed operator tau = (Gamma_t (x) id)(Phi_d):
// lambda_plus = (1 + t(d-1))/d^2 on the symmetric subspace (dim d(d+1)/2),
// lambda_minus = (1 - t(d+1))/d^2 on the antisymmetric one (dim d(d-1)/2).
struct TauSpectrum {
  double lambda_plus;
  double lambda_minus;
  int mult_plus;
  int mult_minus;
};

enum class Branch { marginal, entangled };

// One-copy optimum: upsilon2 = sqrt(m) with
// m = max{1/d, t^2 + (1-t^2)/d^2}. Ties report the marginal branch.
struct ClosedForm {
  double upsilon2;
  Branch branch;
  double m_value;
};

// Least-squares fit of the superoperator of N^dag o N onto
// span{id, Tr[.] I}; the fit solves the exact 2x2 Gram system since the two
// basis maps overlap. satisfied <=> residual <= 1e-8.
struct CriterionConstants {
  double a;
  double b;
  double residual;
  bool satisfied;
};

struct AbPair {
  double a;
  double b;
};

TauSpectrum tau_spectrum(int d, double t);
double tau_norm(int d, double t, double p);
ClosedForm upsilon2_gamma(int d, double t);
double m_value(int d, double t);

CriterionConstants extract_ab(const CpMap& n);
double upsilon2_general(double a, double b, int d);

// Renyi-p entropy of a state with Schatten p-norm nu: (p/(1-p)) log2(nu).
double eop_from_norm(double p, double nu);

// max{ ||tau||_p, d^(1/p - 1) }: valid for every p >= 1, with no matching
// upper bound away from p = 2.
double upsilon_lower_bound(int d, double t, double p);

// Exact criterion constants of the four closed-form channels.
AbPair gamma_ab(int d, double t);             // (t^2, (1-t^2)/d)
AbPair delta_ab(int d, double p);             // ((1-p)^2, p(2-p)/d)
AbPair gamma_complement_ab(int d, double t);  // swapped gamma_ab
AbPair delta_complement_ab(int d, double p);  // swapped delta_ab

const char* branch_name(Branch b);

}  // namespace upsilon
