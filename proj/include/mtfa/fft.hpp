#pragma once

#include <vector>

#include "mtfa/grid.hpp"

namespace mtfa {

// Centered unitary Fourier transform, convention  fhat(w) = \int f(t) e^{-2pi i t w} dt,
// discretized on the self-dual grid (quadrature weight dt, frequency step dt).
// It is exactly unitary, and its square is the periodic parity operator.
Field fourier(const Field& f);
Field inverse_fourier(const Field& f);
Field fourier_axes(const Field& f, const std::vector<int>& axes, bool inverse);

// Translation by an arbitrary real vector via a frequency-domain phase ramp
// (exact in the periodic band-limited model). shift.size() == vars.
Field translate(const Field& f, const std::vector<double>& shift);

// Pointwise multiplication by e^{2pi i freq . t}.
Field modulate(const Field& f, const std::vector<double>& freq);

namespace detail {

// Band-limited 2x refinement: values of the trigonometric interpolant on the
// half-step grid y_j = (j - n) * dt/2, j = 0 .. 2n-1 per axis (same period).
struct FineField {
  int vars = 1;
  int n2 = 0;  // 2n points per axis
  std::vector<cplx> values;
  cplx at(int j) const { return values[size_t(j)]; }
  cplx at(int i, int j) const { return values[size_t(i) * n2 + j]; }
};
FineField upsample2(const Field& f);

// Evaluate the interpolant of a 1-var field at arbitrary points (exact sum
// over the n spectral coefficients).
std::vector<cplx> evaluate_at(const Field& f, const std::vector<double>& points);

// In-place twiddled FFT helper on a flat complex buffer:
// out_j = sum_m x_m e^{sign 2pi i (j - M/2)(m - M/2) / M} along the given axis
// of an array with `axes_n` points per axis (all axes share M = axes_n).
void centered_exp_sum(std::vector<cplx>& data, int vars, int axes_n, int axis, int sign);

}  // namespace detail
}  // namespace mtfa
