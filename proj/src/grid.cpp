#include "mtfa/grid.hpp"

#include <cmath>

namespace mtfa {

namespace {
void require_valid_n(int n) {
  if (n < 16 || n % 2 != 0)
    throw DimensionError("grid size must be even and >= 16, got " + std::to_string(n));
}
}  // namespace

Grid Grid::line(int n) {
  require_valid_n(n);
  return Grid{1, n};
}

Grid Grid::plane(int n) {
  require_valid_n(n);
  return Grid{2, n};
}

Field hermite(int order, const Grid& grid) {
  if (grid.vars != 1) throw DimensionError("hermite: 1-variable grid required");
  if (order < 0 || order > grid.n / 4)
    throw DimensionError("hermite: order " + std::to_string(order) +
                         " too large for grid n=" + std::to_string(grid.n));
  const int n = grid.n;
  const double rt2pi = 2.0 * std::sqrt(M_PI);  // ladder coefficient 2*sqrt(pi)
  std::vector<double> prev(n, 0.0), cur(n);
  for (int k = 0; k < n; ++k) {
    double t = grid.coord(k);
    cur[k] = std::pow(2.0, 0.25) * std::exp(-M_PI * t * t);
  }
  // h_{m+1} = (2 sqrt(pi) t h_m - sqrt(m) h_{m-1}) / sqrt(m+1)
  for (int m = 0; m < order; ++m) {
    std::vector<double> next(n);
    for (int k = 0; k < n; ++k) {
      double t = grid.coord(k);
      next[k] = (rt2pi * t * cur[k] - std::sqrt(double(m)) * prev[k]) / std::sqrt(double(m + 1));
    }
    prev.swap(cur);
    cur.swap(next);
  }
  Field out(grid);
  for (int k = 0; k < n; ++k) out.at(k) = cur[k];
  return out;
}

Field gaussian(const Grid& grid) {
  if (grid.vars == 1) return hermite(0, grid);
  Field h0 = hermite(0, Grid::line(grid.n));
  return tensor_product(h0, h0);
}

Field tensor_product(const Field& f, const Field& g) {
  if (f.grid.vars != 1 || g.grid.vars != 1 || f.grid.n != g.grid.n)
    throw DimensionError("tensor_product: matching 1-variable grids required");
  Field out(Grid::plane(f.grid.n));
  const int n = f.grid.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = f.at(i) * g.at(j);
  return out;
}

Field conjugate(const Field& f) {
  Field out = f;
  for (auto& v : out.values) v = std::conj(v);
  return out;
}

cplx inner_product(const Field& f, const Field& g) {
  if (!(f.grid == g.grid)) throw DimensionError("inner_product: grid mismatch");
  cplx acc(0.0);
  for (size_t k = 0; k < f.values.size(); ++k) acc += f.values[k] * std::conj(g.values[k]);
  return acc * std::pow(f.grid.dt(), f.grid.vars);
}

double l2_norm(const Field& f) {
  double acc = 0.0;
  for (const auto& v : f.values) acc += std::norm(v);
  return std::sqrt(acc * std::pow(f.grid.dt(), f.grid.vars));
}

Field operator+(const Field& a, const Field& b) {
  if (!(a.grid == b.grid)) throw DimensionError("field addition: grid mismatch");
  Field out = a;
  for (size_t k = 0; k < out.values.size(); ++k) out.values[k] += b.values[k];
  return out;
}

Field operator-(const Field& a, const Field& b) {
  if (!(a.grid == b.grid)) throw DimensionError("field subtraction: grid mismatch");
  Field out = a;
  for (size_t k = 0; k < out.values.size(); ++k) out.values[k] -= b.values[k];
  return out;
}

Field operator*(cplx s, const Field& f) {
  Field out = f;
  for (auto& v : out.values) v *= s;
  return out;
}

double l2_distance(const Field& a, const Field& b) { return l2_norm(a - b); }

double max_abs(const Field& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double phase_invariant_distance(const Field& a, const Field& b) {
  double na = l2_norm(a), nb = l2_norm(b);
  double ov = std::abs(inner_product(a, b));
  double d2 = na * na + nb * nb - 2.0 * ov;
  return std::sqrt(std::max(0.0, d2));
}

}  // namespace mtfa
