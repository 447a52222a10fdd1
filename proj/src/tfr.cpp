#include "mtfa/tfr.hpp"

#include <algorithm>
#include <cmath>

#include "mtfa/fft.hpp"

namespace mtfa {
namespace {

// Rows of the symmetrized product f(x_n + t_k/2) conj(g(x_n - t_k/2)),
// sampled exactly from the 2x-refined interpolants over one t-period.
// Fine index of x_n + t_k/2 is 2n + k - N/2, of x_n - t_k/2 it is
// 2n - k + N/2 (mod 2N). The single window keeps the Moyal identity exact
// and drops the periodic-image cross term that would otherwise appear at
// x = +-L/2; its price is that shift covariance holds only up to products
// of a tail with a half-period-distant center.
Field wigner_rows(const Field& f, const Field& g) {
  if (f.grid.vars != 1 || !(f.grid == g.grid))
    throw DimensionError("wigner: matching 1-variable grids required");
  const int n = f.grid.n;
  const auto ff = detail::upsample2(f);
  const auto gf = detail::upsample2(g);
  Field rows(Grid::plane(n));
  const int m = 2 * n;
  for (int x = 0; x < n; ++x)
    for (int k = 0; k < n; ++k) {
      int jf = ((2 * x + k - n / 2) % m + m) % m;
      int jg = ((2 * x - k + n / 2) % m + m) % m;
      rows.at(x, k) = ff.at(jf) * std::conj(gf.at(jg));
    }
  return rows;
}

}  // namespace

Field wigner_direct(const Field& f, const Field& g) {
  const int n = f.grid.n;
  if (n > 128) throw DimensionError("wigner_direct: N <= 128 required (O(N^3) quadrature)");
  Field rows = wigner_rows(f, g);
  const double dt = f.grid.dt();
  // Riemann sum over the t-grid against e^{-2pi i w_m t_k}
  std::vector<cplx> kernel(size_t(n) * n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) {
      double ang = -2.0 * M_PI * f.grid.coord(m) * f.grid.coord(k);
      kernel[size_t(m) * n + k] = cplx(std::cos(ang), std::sin(ang));
    }
  Field out(Grid::plane(n));
  for (int x = 0; x < n; ++x)
    for (int m = 0; m < n; ++m) {
      cplx acc(0.0);
      for (int k = 0; k < n; ++k) acc += rows.at(x, k) * kernel[size_t(m) * n + k];
      out.at(x, m) = dt * acc;
    }
  return out;
}

Field wigner_fast(const Field& f, const Field& g) {
  Field rows = wigner_rows(f, g);
  return fourier_axes(rows, {1}, false);
}

Mat wigner_sp_matrix() {
  // coordinate change S(x,t) = (x + t/2, x - t/2), then Fourier on axis 2
  Mat s(2, 2);
  s << 1.0, 0.5, 1.0, -0.5;
  Mat a_s = Mat::Zero(4, 4);
  a_s.topLeftCorner(2, 2) = s.inverse();
  a_s.bottomRightCorner(2, 2) = s.transpose();
  GeneratorFactor f2{GeneratorFactor::Kind::fourier, {1}, false, {}};
  return f2.sp_matrix(2) * a_s;
}

Field a_wigner(const SymplecticMatrix& a, const Field& f, const Field& g, Mode mode) {
  if (a.dim != 2) throw DimensionError("a_wigner: Sp(4, R) matrix required");
  Field ten = tensor_product(f, mode == Mode::sesquilinear ? conjugate(g) : g);
  return apply_metaplectic(MetaplecticOp::from_matrix(a), ten);
}

Field stft(const Field& f, const Field& g) {
  if (f.grid.vars != 1 || !(f.grid == g.grid))
    throw DimensionError("stft: matching 1-variable grids required");
  const int n = f.grid.n;
  Field rows(Grid::plane(n));
  for (int x = 0; x < n; ++x)
    for (int k = 0; k < n; ++k) {
      int lag = ((k - (x - n / 2)) % n + n) % n;  // g(t_k - x_n), circular
      rows.at(x, k) = f.at(k) * std::conj(g.at(lag));
    }
  return fourier_axes(rows, {1}, false);
}

}  // namespace mtfa
