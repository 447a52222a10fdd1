#pragma once

#include <complex>
#include <vector>

#include "mtfa/errors.hpp"

namespace mtfa {

using cplx = std::complex<double>;

// Self-dual periodic sampling grid: N points per axis, spacing 1/sqrt(N),
// period sqrt(N). With this normalization the discrete Fourier frequency
// grid coincides with the time grid, so both domains share one Grid.
struct Grid {
  int vars = 1;  // 1 (signal side) or 2 (representation side)
  int n = 0;     // samples per axis, even, >= 16

  double dt() const { return 1.0 / std::sqrt(double(n)); }
  double period() const { return n * dt(); }
  // sample k lives at (k - n/2) * dt; grid contains 0 for even n
  double coord(int k) const { return (k - n / 2) * dt(); }

  int point_count() const { return vars == 1 ? n : n * n; }

  bool operator==(const Grid&) const = default;

  static Grid line(int n);
  static Grid plane(int n);
};

// Sampled complex-valued function on a Grid. 2-var fields are row-major:
// values[i*n + j] = f(coord(i), coord(j)).
struct Field {
  Grid grid;
  std::vector<cplx> values;

  Field() = default;
  explicit Field(const Grid& g) : grid(g), values(g.point_count(), cplx(0.0)) {}

  cplx& at(int i) { return values[size_t(i)]; }
  cplx at(int i) const { return values[size_t(i)]; }
  cplx& at(int i, int j) { return values[size_t(i) * grid.n + j]; }
  cplx at(int i, int j) const { return values[size_t(i) * grid.n + j]; }
};

// Test signals
Field hermite(int order, const Grid& grid);
Field gaussian(const Grid& grid);

// Algebra
Field tensor_product(const Field& f, const Field& g);
Field conjugate(const Field& f);
cplx inner_product(const Field& f, const Field& g);  // dt^vars * sum f * conj(g)
double l2_norm(const Field& f);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(cplx s, const Field& f);

double l2_distance(const Field& a, const Field& b);
double max_abs(const Field& f);
// min over |c|=1 of ||a - c*b|| (global-phase-invariant distance)
double phase_invariant_distance(const Field& a, const Field& b);

}  // namespace mtfa
