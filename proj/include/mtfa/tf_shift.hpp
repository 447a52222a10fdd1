#pragma once

#include "mtfa/grid.hpp"
#include "mtfa/symplectic.hpp"

namespace mtfa {

// The symmetric time-frequency shift rho(x, w) = T_{x/2} M_w T_{x/2},
// i.e. rho(x,w) f(t) = e^{2 pi i w.(t - x/2)} f(t - x). Unitary; translations
// are FFT phase ramps, so arbitrary real shifts compose exactly.
Field rho(const PhasePoint& lambda, const Field& f);

// e^{pi i [l1, l2]}, the cocycle of rho(l1 + l2) = phase * rho(l1) rho(l2).
cplx weyl_phase(const PhasePoint& l1, const PhasePoint& l2);

// rho(lambda)^n (inverse applications for negative n); agrees with rho(n*lambda).
Field rho_power(const PhasePoint& lambda, int n, const Field& f);

// || rho(l1,l2,l3,l4)(f tensor g) - rho(l1,l3) f tensor rho(l2,l4) g ||_2
// for 1-variable f, g (d = 1 blocks).
double rho_tensor_residual(double l1, double l2, double l3, double l4, const Field& f,
                           const Field& g);

}  // namespace mtfa
