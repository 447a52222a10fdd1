#include "mtfa/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace mtfa {
namespace {

// FFTW plan cache. Plans are created with FFTW_ESTIMATE (deterministic) and
// FFTW_UNALIGNED so they can execute on any buffer via the new-array API.
// Planning is not thread-safe, execution is; the mutex guards creation only.
struct PlanKey {
  int n, howmany, stride, dist, sign;
  bool operator==(const PlanKey&) const = default;
};
struct PlanKeyHash {
  size_t operator()(const PlanKey& k) const {
    size_t h = std::hash<int>()(k.n);
    auto mix = [&h](int v) { h ^= std::hash<int>()(v) + 0x9e3779b9 + (h << 6) + (h >> 2); };
    mix(k.howmany);
    mix(k.stride);
    mix(k.dist);
    mix(k.sign);
    return h;
  }
};

fftw_plan get_plan(const PlanKey& key, fftw_complex* buf) {
  static std::unordered_map<PlanKey, fftw_plan, PlanKeyHash> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  int n = key.n;
  fftw_plan p = fftw_plan_many_dft(1, &n, key.howmany, buf, nullptr, key.stride, key.dist,
                                   buf, nullptr, key.stride, key.dist, key.sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

// Unnormalized in-place FFT along one axis of a row-major array with
// axes_n points per axis.
void fft_axis(std::vector<cplx>& data, int vars, int axes_n, int axis, int sign) {
  const int n = axes_n;
  int howmany, stride, dist;
  if (vars == 1) {
    howmany = 1, stride = 1, dist = 0;
  } else if (axis == 0) {
    howmany = n, stride = n, dist = 1;
  } else {
    howmany = n, stride = 1, dist = n;
  }
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan p = get_plan({n, howmany, stride, dist, sign}, buf);
  fftw_execute_dft(p, buf, buf);
}

inline int fftw_sign(int sign) { return sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD; }

// Index helper: iterate the axis coordinate of every element.
template <typename F>
void for_each_axis_index(int vars, int n, int axis, F&& f) {
  if (vars == 1) {
    for (int k = 0; k < n; ++k) f(size_t(k), k);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) f(size_t(i) * n + j, axis == 0 ? i : j);
  }
}

}  // namespace

namespace detail {

void centered_exp_sum(std::vector<cplx>& data, int vars, int axes_n, int axis, int sign) {
  const int m = axes_n;
  // exp(sign 2pi i (j-M/2)(m'-M/2)/M) = g * (-1)^j * FFT_sign[(-1)^m' x]
  // with g = exp(sign i pi M/2).
  for_each_axis_index(vars, m, axis, [&](size_t idx, int k) {
    if (k & 1) data[idx] = -data[idx];
  });
  fft_axis(data, vars, m, axis, fftw_sign(sign));
  const double ang = sign * M_PI * double(m) / 2.0;
  const cplx g(std::cos(ang), std::sin(ang));
  for_each_axis_index(vars, m, axis, [&](size_t idx, int k) {
    data[idx] *= (k & 1) ? -g : g;
  });
}

FineField upsample2(const Field& f) {
  const int n = f.grid.n;
  const int vars = f.grid.vars;
  const double dt = f.grid.dt();
  // spectrum on the n-grid
  Field hat = fourier(f);
  // pad to 2n per axis (frequency step unchanged; band doubled with zeros)
  FineField out;
  out.vars = vars;
  out.n2 = 2 * n;
  out.values.assign(vars == 1 ? size_t(2 * n) : size_t(2 * n) * (2 * n), cplx(0.0));
  if (vars == 1) {
    for (int k = 0; k < n; ++k) out.values[size_t(k + n / 2)] = hat.at(k);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.values[size_t(i + n / 2) * (2 * n) + (j + n / 2)] = hat.at(i, j);
  }
  // F(y_j) = dt * sum_m hat_m e^{+2pi i (j-n)(m-n)/(2n)} per axis
  for (int axis = 0; axis < vars; ++axis) centered_exp_sum(out.values, vars, 2 * n, axis, +1);
  const double w = std::pow(dt, vars);
  for (auto& v : out.values) v *= w;
  return out;
}

std::vector<cplx> evaluate_at(const Field& f, const std::vector<double>& points) {
  if (f.grid.vars != 1) throw DimensionError("evaluate_at: 1-variable field required");
  Field hat = fourier(f);
  const int n = f.grid.n;
  const double dt = f.grid.dt();
  std::vector<cplx> out(points.size());
  for (size_t p = 0; p < points.size(); ++p) {
    cplx acc(0.0);
    for (int m = 0; m < n; ++m) {
      double ang = 2.0 * M_PI * points[p] * hat.grid.coord(m);
      acc += hat.at(m) * cplx(std::cos(ang), std::sin(ang));
    }
    out[p] = acc * dt;
  }
  return out;
}

}  // namespace detail

Field fourier_axes(const Field& f, const std::vector<int>& axes, bool inverse) {
  Field out = f;
  const int n = f.grid.n;
  const int vars = f.grid.vars;
  const double scale = f.grid.dt();  // dt * unnormalized FFT = unitary on the self-dual grid
  const int sign = inverse ? +1 : -1;
  for (int axis : axes) {
    if (axis < 0 || axis >= vars) throw DimensionError("fourier_axes: axis out of range");
    detail::centered_exp_sum(out.values, vars, n, axis, sign);
    for (auto& v : out.values) v *= scale;
  }
  return out;
}

Field fourier(const Field& f) {
  std::vector<int> axes(f.grid.vars);
  for (int a = 0; a < f.grid.vars; ++a) axes[a] = a;
  return fourier_axes(f, axes, false);
}

Field inverse_fourier(const Field& f) {
  std::vector<int> axes(f.grid.vars);
  for (int a = 0; a < f.grid.vars; ++a) axes[a] = a;
  return fourier_axes(f, axes, true);
}

Field translate(const Field& f, const std::vector<double>& shift) {
  if (int(shift.size()) != f.grid.vars) throw DimensionError("translate: shift size mismatch");
  bool zero = true;
  for (double s : shift) zero = zero && s == 0.0;
  if (zero) return f;
  Field hat = fourier(f);
  const int n = f.grid.n;
  if (f.grid.vars == 1) {
    for (int m = 0; m < n; ++m) {
      double ang = -2.0 * M_PI * shift[0] * f.grid.coord(m);
      hat.at(m) *= cplx(std::cos(ang), std::sin(ang));
    }
  } else {
    std::vector<cplx> r0(n), r1(n);
    for (int m = 0; m < n; ++m) {
      double a0 = -2.0 * M_PI * shift[0] * f.grid.coord(m);
      double a1 = -2.0 * M_PI * shift[1] * f.grid.coord(m);
      r0[m] = cplx(std::cos(a0), std::sin(a0));
      r1[m] = cplx(std::cos(a1), std::sin(a1));
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) hat.at(i, j) *= r0[i] * r1[j];
  }
  return inverse_fourier(hat);
}

Field modulate(const Field& f, const std::vector<double>& freq) {
  if (int(freq.size()) != f.grid.vars) throw DimensionError("modulate: freq size mismatch");
  Field out = f;
  const int n = f.grid.n;
  if (f.grid.vars == 1) {
    for (int k = 0; k < n; ++k) {
      double ang = 2.0 * M_PI * freq[0] * f.grid.coord(k);
      out.at(k) *= cplx(std::cos(ang), std::sin(ang));
    }
  } else {
    std::vector<cplx> r0(n), r1(n);
    for (int k = 0; k < n; ++k) {
      double a0 = 2.0 * M_PI * freq[0] * f.grid.coord(k);
      double a1 = 2.0 * M_PI * freq[1] * f.grid.coord(k);
      r0[k] = cplx(std::cos(a0), std::sin(a0));
      r1[k] = cplx(std::cos(a1), std::sin(a1));
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.at(i, j) *= r0[i] * r1[j];
  }
  return out;
}

}  // namespace mtfa
