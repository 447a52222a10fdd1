#include "mtfa/metaplectic.hpp"

#include <cmath>
#include <sstream>

#include "mtfa/fft.hpp"
#include "mtfa/tf_shift.hpp"

namespace mtfa {
namespace {

// Accumulated chirp rate that keeps instantaneous frequency of content
// concentrated within L/4 inside the Nyquist band: N / (4 (L/4)^2) = 4.
constexpr double kMaxChirpRate = 4.0;
constexpr double kMaxDilationCondition = 8.0;

Field apply_chirp(const Field& f, const Mat& p) {
  const int n = f.grid.n;
  Field out = f;
  if (f.grid.vars == 1) {
    const double rate = p(0, 0);
    for (int k = 0; k < n; ++k) {
      double t = f.grid.coord(k);
      double ang = M_PI * rate * t * t;
      out.at(k) *= cplx(std::cos(ang), std::sin(ang));
    }
  } else {
    for (int i = 0; i < n; ++i) {
      double x = f.grid.coord(i);
      for (int j = 0; j < n; ++j) {
        double y = f.grid.coord(j);
        double ang = M_PI * (p(0, 0) * x * x + 2.0 * p(0, 1) * x * y + p(1, 1) * y * y);
        out.at(i, j) *= cplx(std::cos(ang), std::sin(ang));
      }
    }
  }
  return out;
}

// out[k] = weight * sum_m u[m] exp(sign 2 pi i (scale t_k) t_m) along one axis.
// |scale| <= 1 keeps every evaluation point inside the period.
Field eval_scaled(const Field& u, int axis, double scale, int sign, double weight) {
  const int n = u.grid.n;
  std::vector<cplx> v(size_t(n) * n);
  for (int k = 0; k < n; ++k) {
    double point = scale * u.grid.coord(k);
    for (int m = 0; m < n; ++m) {
      double ang = sign * 2.0 * M_PI * point * u.grid.coord(m);
      v[size_t(k) * n + m] = weight * cplx(std::cos(ang), std::sin(ang));
    }
  }
  Field out(u.grid);
  if (u.grid.vars == 1) {
    for (int k = 0; k < n; ++k) {
      cplx acc(0.0);
      for (int m = 0; m < n; ++m) acc += v[size_t(k) * n + m] * u.at(m);
      out.at(k) = acc;
    }
  } else if (axis == 0) {
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        cplx acc(0.0);
        for (int m = 0; m < n; ++m) acc += v[size_t(k) * n + m] * u.at(m, j);
        out.at(k, j) = acc;
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        cplx acc(0.0);
        for (int m = 0; m < n; ++m) acc += v[size_t(k) * n + m] * u.at(i, m);
        out.at(i, k) = acc;
      }
  }
  return out;
}

// g(t) = f(alpha t) along one axis. Contractions of the evaluation points
// (|alpha| <= 1) read the band-limited interpolant directly; expansions
// would wrap around the torus, so they run in the Fourier domain instead,
// where g_hat(w) = f_hat(w / alpha) / |alpha| contracts again.
Field scale_axis(const Field& f, int axis, double alpha) {
  const double dt = f.grid.dt();
  if (std::abs(alpha) <= 1.0) {
    Field hat = fourier_axes(f, {axis}, false);
    return eval_scaled(hat, axis, alpha, +1, dt);
  }
  Field ghat = eval_scaled(f, axis, 1.0 / alpha, -1, dt / std::abs(alpha));
  return fourier_axes(ghat, {axis}, true);
}

// g(x) = f(x + s * other_coord(x)) along `axis`: a per-line translation,
// exact via FFT phase ramps.
Field shear_axis(const Field& f, int axis, double s) {
  const int n = f.grid.n;
  Field hat = fourier_axes(f, {axis}, false);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int k_axis = axis == 0 ? i : j;
      int k_other = axis == 0 ? j : i;
      double shift = -s * f.grid.coord(k_other);  // f(x - shift) with shift = -s*other
      double ang = -2.0 * M_PI * shift * f.grid.coord(k_axis);
      hat.at(i, j) *= cplx(std::cos(ang), std::sin(ang));
    }
  }
  return fourier_axes(hat, {axis}, true);
}

Field transpose_field(const Field& f) {
  Field out(f.grid);
  const int n = f.grid.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = f.at(j, i);
  return out;
}

// f(M x) for invertible 2x2 M, via LU-style shear/scale/shear split with a
// coordinate swap when the pivot is weak. Every step is an exact 1-D
// operation in the band-limited periodic model.
Field resample_linear2(const Field& f, Mat m) {
  Field cur = f;
  if (std::abs(m(0, 0)) < std::abs(m(1, 0))) {
    cur = transpose_field(cur);
    m.row(0).swap(m.row(1));
  }
  const double p = m(0, 0);
  const double r = m(1, 0) / p;
  const double q = m(0, 1) / p;
  const double s = m.determinant() / p;
  // f(Mx) = ((f o Low) o Diag) o Up
  if (r != 0.0) cur = shear_axis(cur, 1, r);
  if (p != 1.0) cur = scale_axis(cur, 0, p);
  if (s != 1.0) cur = scale_axis(cur, 1, s);
  if (q != 0.0) cur = shear_axis(cur, 0, q);
  return cur;
}

Field apply_dilate(const Field& f, const Mat& l) {
  Eigen::JacobiSVD<Mat> svd(l);
  const double cond = svd.singularValues().maxCoeff() / svd.singularValues().minCoeff();
  if (cond > kMaxDilationCondition) {
    std::ostringstream os;
    os << "apply_metaplectic: dilation condition number " << cond << " exceeds "
       << kMaxDilationCondition;
    throw AdmissibilityError(os.str());
  }
  const Mat minv = l.inverse();
  const double amp = 1.0 / std::sqrt(std::abs(l.determinant()));
  Field out(f.grid);
  if (f.grid.vars == 1) {
    out = scale_axis(f, 0, minv(0, 0));
  } else {
    out = resample_linear2(f, minv);
  }
  for (auto& v : out.values) v *= amp;
  return out;
}

void check_chirp_budget(const GeneratorWord& word) {
  double acc = 0.0;
  for (const auto& fac : word.factors)
    if (fac.kind == GeneratorFactor::Kind::chirp) {
      // spectral norm = max instantaneous-frequency slope of e^{pi i x.Px}
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (fac.payload + fac.payload.transpose()));
      acc += es.eigenvalues().cwiseAbs().maxCoeff();
    }
  if (acc > kMaxChirpRate) {
    std::ostringstream os;
    os << "apply_metaplectic: accumulated chirp rate " << acc << " exceeds " << kMaxChirpRate;
    throw AdmissibilityError(os.str());
  }
}

}  // namespace

MetaplecticOp MetaplecticOp::from_matrix(const SymplecticMatrix& a) {
  return MetaplecticOp{a, factor_generators(a)};
}

MetaplecticOp MetaplecticOp::inverse() const {
  SymplecticMatrix inv(Mat(matrix.entries.inverse()));
  return MetaplecticOp{inv, word.inverted()};
}

double boundary_tail_mass(const Field& f) {
  const int n = f.grid.n;
  const int band = n / 16;  // samples within L/16 of the boundary, per side
  auto band_mass = [&](const Field& g) {
    double tail = 0.0, total = 0.0;
    for (size_t idx = 0; idx < g.values.size(); ++idx) {
      double m = std::norm(g.values[idx]);
      total += m;
      bool in_band = false;
      if (g.grid.vars == 1) {
        int k = int(idx);
        in_band = k < band || k >= n - band;
      } else {
        int i = int(idx) / n, j = int(idx) % n;
        in_band = i < band || i >= n - band || j < band || j >= n - band;
      }
      if (in_band) tail += m;
    }
    return total > 0.0 ? tail / total : 0.0;
  };
  return std::max(band_mass(f), band_mass(fourier(f)));
}

bool is_admissible(const Field& f, double tol) { return boundary_tail_mass(f) <= tol; }

namespace {

Field apply_factors(const GeneratorWord& word, const Field& f) {
  Field out = f;
  for (const auto& fac : word.factors) {
    switch (fac.kind) {
      case GeneratorFactor::Kind::fourier:
        out = fourier_axes(out, fac.axes, fac.inverse);
        break;
      case GeneratorFactor::Kind::chirp:
        out = apply_chirp(out, fac.payload);
        break;
      case GeneratorFactor::Kind::dilate:
        out = apply_dilate(out, fac.payload);
        break;
    }
  }
  return out;
}

void check_admissible(const Field& f) {
  double tail = boundary_tail_mass(f);
  if (tail > 1e-10) {
    std::ostringstream os;
    os << "apply_metaplectic: field not admissible (boundary tail mass " << tail << ")";
    throw AdmissibilityError(os.str());
  }
}

}  // namespace

Field apply_metaplectic(const MetaplecticOp& op, const Field& f) {
  if (op.dim() != f.grid.vars)
    throw DimensionError("apply_metaplectic: operator/field dimension mismatch");
  check_admissible(f);
  check_chirp_budget(op.word);
  return apply_factors(op.word, f);
}

Field collins_oracle(const SymplecticMatrix& a, const Field& f) {
  const int d = a.dim;
  if (d != f.grid.vars) throw DimensionError("collins_oracle: dimension mismatch");
  const int n = f.grid.n;
  if ((d == 1 && n > 128) || (d == 2 && n > 64))
    throw DimensionError("collins_oracle: grid too large for direct quadrature");
  const Mat ab = a.entries.topLeftCorner(d, d);
  const Mat b = a.entries.topRightCorner(d, d);
  const Mat db = a.entries.bottomRightCorner(d, d);
  if (std::abs(b.determinant()) < 1e-10)
    throw DimensionError("collins_oracle: upper-right block is singular (matrix not free)");
  const Mat binv = b.inverse();
  const Mat q1 = 0.5 * (db * binv + (db * binv).transpose());
  const Mat q3 = 0.5 * (binv * ab + (binv * ab).transpose());
  const Mat cross = binv.transpose();
  // det(iB)^{-1/2}, principal branch
  const cplx det_ib = std::pow(cplx(0.0, 1.0), d) * b.determinant();
  const cplx amp = 1.0 / std::sqrt(det_ib);
  const double w = std::pow(f.grid.dt(), d);

  Field out(f.grid);
  if (d == 1) {
    const double c1 = q1(0, 0), c2 = cross(0, 0), c3 = q3(0, 0);
    for (int j = 0; j < n; ++j) {
      double x = f.grid.coord(j);
      cplx acc(0.0);
      for (int k = 0; k < n; ++k) {
        double t = f.grid.coord(k);
        double ang = M_PI * (c1 * x * x - 2.0 * c2 * x * t + c3 * t * t);
        acc += cplx(std::cos(ang), std::sin(ang)) * f.at(k);
      }
      out.at(j) = amp * w * acc;
    }
  } else {
    for (int j0 = 0; j0 < n; ++j0)
      for (int j1 = 0; j1 < n; ++j1) {
        Eigen::Vector2d x(f.grid.coord(j0), f.grid.coord(j1));
        const double xq1x = x.dot(q1 * x);
        const Eigen::Vector2d cx = cross.transpose() * x;  // x . (cross t) = (cross^T x) . t
        cplx acc(0.0);
        for (int k0 = 0; k0 < n; ++k0)
          for (int k1 = 0; k1 < n; ++k1) {
            Eigen::Vector2d t(f.grid.coord(k0), f.grid.coord(k1));
            double ang = M_PI * (xq1x - 2.0 * cx.dot(t) + t.dot(q3 * t));
            acc += cplx(std::cos(ang), std::sin(ang)) * f.at(k0, k1);
          }
        out.at(j0, j1) = amp * w * acc;
      }
  }
  return out;
}

double intertwining_residual(const MetaplecticOp& op, const PhasePoint& lambda, const Field& f) {
  if (op.dim() != lambda.dim() || op.dim() != f.grid.vars)
    throw DimensionError("intertwining_residual: dimension mismatch");
  // admissibility is a contract on the input field; the conjugation
  // intermediates are internal and skip the gate
  check_admissible(f);
  check_chirp_budget(op.word);
  Field lhs = rho(op.matrix.apply(lambda), f);
  Field rhs = apply_factors(op.word, rho(lambda, apply_factors(op.word.inverted(), f)));
  return l2_distance(lhs, rhs) / l2_norm(f);
}

}  // namespace mtfa
