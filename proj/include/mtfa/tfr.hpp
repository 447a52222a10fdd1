#pragma once

#include "mtfa/grid.hpp"
#include "mtfa/metaplectic.hpp"
#include "mtfa/symplectic.hpp"

namespace mtfa {

// Cross-Wigner distribution W(f,g)(x,w) = \int f(x + t/2) conj(g(x - t/2))
// e^{-2pi i w t} dt, sesquilinear by definition. Both variants sample the
// half-grid points by band-limited 2x refinement; the direct version then
// does the Riemann sum per output bin (O(N^3) oracle, N <= 128), the fast
// one a length-N transform per row.
Field wigner_direct(const Field& f, const Field& g);
Field wigner_fast(const Field& f, const Field& g);

// The Sp(4,R) matrix with A_hat(f tensor conj(g)) = W(f, g): composition of
// the coordinate change (x,t) -> (x + t/2, x - t/2) with the axis-2 Fourier
// transform.
Mat wigner_sp_matrix();

// Generic metaplectic representation A_hat(f tensor g), with conj(g) in
// sesquilinear mode. A is 4x4 (2-variable operator).
Field a_wigner(const SymplecticMatrix& a, const Field& f, const Field& g, Mode mode);

// Cross-STFT V_g f(x, w) = \int f(t) conj(g(t - x)) e^{-2pi i w t} dt,
// computed by one transform per x-column (window lags are grid-aligned).
Field stft(const Field& f, const Field& g);

}  // namespace mtfa
