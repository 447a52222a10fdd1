#include "mtfa/tf_shift.hpp"

#include <cmath>

#include "mtfa/fft.hpp"

namespace mtfa {

Field rho(const PhasePoint& lambda, const Field& f) {
  if (lambda.dim() != f.grid.vars)
    throw DimensionError("rho: phase point dimension does not match field");
  const int d = lambda.dim();
  std::vector<double> half(d), freq(d);
  for (int i = 0; i < d; ++i) {
    half[i] = 0.5 * lambda.coords[i];
    freq[i] = lambda.coords[d + i];
  }
  Field out = translate(f, half);
  out = modulate(out, freq);
  return translate(out, half);
}

cplx weyl_phase(const PhasePoint& l1, const PhasePoint& l2) {
  double ang = M_PI * symplectic_form(l1, l2);
  return cplx(std::cos(ang), std::sin(ang));
}

Field rho_power(const PhasePoint& lambda, int n, const Field& f) {
  const PhasePoint step = n >= 0 ? lambda : -lambda;
  Field out = f;
  for (int k = 0; k < std::abs(n); ++k) out = rho(step, out);
  return out;
}

double rho_tensor_residual(double l1, double l2, double l3, double l4, const Field& f,
                           const Field& g) {
  if (f.grid.vars != 1 || g.grid.vars != 1)
    throw DimensionError("rho_tensor_residual: 1-variable fields required");
  Field lhs = rho(PhasePoint{l1, l2, l3, l4}, tensor_product(f, g));
  Field rhs = tensor_product(rho(PhasePoint{l1, l3}, f), rho(PhasePoint{l2, l4}, g));
  return l2_distance(lhs, rhs);
}

}  // namespace mtfa
