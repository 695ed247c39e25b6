#pragma once

#include "upsilon/cp_map.hpp"

namespace upsilon {

// CP parameter range of the transpose-depolarizing family:
// -1/(d-1) <= t <= 1/(d+1).
double gamma_t_min(int d);
double gamma_t_max(int d);
bool gamma_in_range(int d, double t);

// Depolarizing family stays CP for 0 <= p <= d^2/(d^2-1).
double delta_p_max(int d);
bool delta_in_range(int d, double p);

// X -> t X^T + (1-t) Tr(X) I/d. Kraus from the Choi eigendecomposition.
CpMap make_transpose_depolarizing(int d, double t);

// X -> (1-p) X + (p/d) Tr(X) I.
CpMap make_depolarizing(int d, double p);

// Completely depolarizing map X -> Tr(X) I/d.
CpMap make_completely_depolarizing(int d);

// Complement of the transpose-depolarizing channel in the minimal dilation:
// X -> S_t (X (x) I) S_t with S_t = (a+ + a-) I + (a+ - a-) Pi.
CpMap make_gamma_complement(int d, double t);

// Complement of the depolarizing channel: X -> P_p (X (x) I) P_p.
CpMap make_delta_complement(int d, double p);

// The dilation operator S_t / P_p themselves (d^2 x d^2, Hermitian).
Matrix gamma_complement_dilation(int d, double t);
Matrix delta_complement_dilation(int d, double p);

// Adjoint of the transpose-depolarizing complement, Kraus {(I (x) <j|) S_t}.
// Maps L(C^{d^2}) -> L(C^d); not trace preserving.
CpMap werner_complement_map(int d, double t);

// W(t) = ((1-t)/d^2) I + (t/d) Pi, equal to (id (x) Gamma_t)(Phi_d).
SquareOperator werner_state(int d, double t);

// CP map Omega: L(B') -> L(A) with (Omega (x) id)(Phi_{d_B}) == rho, for any
// state rho with factors (d_A, d_B). Generally not trace preserving.
CpMap state_to_cp_map(const SquareOperator& rho);

}  // namespace upsilon
