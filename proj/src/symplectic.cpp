#include "mtfa/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace mtfa {

PhasePoint::PhasePoint(Vec c) : coords(std::move(c)) {
  if (coords.size() == 0 || coords.size() % 2 != 0)
    throw DimensionError("PhasePoint: coordinate count must be even and positive");
}

PhasePoint::PhasePoint(std::initializer_list<double> c) {
  coords.resize(Eigen::Index(c.size()));
  Eigen::Index i = 0;
  for (double v : c) coords[i++] = v;
  if (coords.size() == 0 || coords.size() % 2 != 0)
    throw DimensionError("PhasePoint: coordinate count must be even and positive");
}

Mat standard_J(int D) {
  if (D < 1) throw DimensionError("standard_J: D >= 1 required");
  Mat j = Mat::Zero(2 * D, 2 * D);
  j.topRightCorner(D, D) = Mat::Identity(D, D);
  j.bottomLeftCorner(D, D) = -Mat::Identity(D, D);
  return j;
}

double symplectic_form(const Vec& a, const Vec& b) {
  if (a.size() != b.size() || a.size() % 2 != 0)
    throw DimensionError("symplectic_form: equal even lengths required");
  const int D = int(a.size()) / 2;
  // a . J b = a_pos . b_freq - a_freq . b_pos
  return a.head(D).dot(b.tail(D)) - a.tail(D).dot(b.head(D));
}

double symplectic_form(const PhasePoint& a, const PhasePoint& b) {
  return symplectic_form(a.coords, b.coords);
}

double symplectic_defect(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0)
    throw DimensionError("symplectic_defect: square even-sized matrix required");
  const Mat j = standard_J(int(m.rows()) / 2);
  return (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
}

bool is_symplectic(const Mat& m, double tol) { return symplectic_defect(m) <= tol; }

SymplecticMatrix::SymplecticMatrix(Mat m, double tol) : entries(std::move(m)) {
  if (entries.rows() != entries.cols() || entries.rows() % 2 != 0)
    throw DimensionError("SymplecticMatrix: square even-sized matrix required");
  dim = int(entries.rows()) / 2;
  double defect = symplectic_defect(entries);
  if (defect > tol) {
    std::ostringstream os;
    os << "SymplecticMatrix: membership defect " << defect << " exceeds " << tol;
    throw DimensionError(os.str());
  }
  if (std::abs(entries.determinant() - 1.0) > 1e-8)
    throw DimensionError("SymplecticMatrix: determinant differs from 1");
}

Mat GeneratorFactor::sp_matrix(int D) const {
  switch (kind) {
    case Kind::fourier: {
      // J restricted to the selected axes
      Mat e = Mat::Zero(D, D);
      for (int a : axes) {
        if (a < 0 || a >= D) throw DimensionError("fourier factor: axis out of range");
        e(a, a) = 1.0;
      }
      Mat m = Mat::Zero(2 * D, 2 * D);
      m.topLeftCorner(D, D) = Mat::Identity(D, D) - e;
      m.bottomRightCorner(D, D) = Mat::Identity(D, D) - e;
      m.topRightCorner(D, D) = e;
      m.bottomLeftCorner(D, D) = -e;
      return inverse ? Mat(m.transpose()) : m;  // J_S^{-1} = J_S^T
    }
    case Kind::chirp: {
      Mat m = Mat::Identity(2 * D, 2 * D);
      m.bottomLeftCorner(D, D) = payload;
      return m;
    }
    case Kind::dilate:
      return dilation_sp_matrix(payload);
  }
  throw std::logic_error("unreachable");
}

GeneratorFactor GeneratorFactor::inverted() const {
  GeneratorFactor f = *this;
  switch (kind) {
    case Kind::fourier:
      f.inverse = !inverse;
      break;
    case Kind::chirp:
      f.payload = -payload;
      break;
    case Kind::dilate:
      f.payload = payload.inverse();
      break;
  }
  return f;
}

Mat GeneratorWord::matrix() const {
  Mat m = Mat::Identity(2 * dim, 2 * dim);
  for (const auto& f : factors) m = f.sp_matrix(dim) * m;  // first factor applied first
  return m;
}

GeneratorWord GeneratorWord::inverted() const {
  GeneratorWord w;
  w.dim = dim;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) w.factors.push_back(it->inverted());
  return w;
}

Mat dilation_sp_matrix(const Mat& L) {
  const int D = int(L.rows());
  Mat m = Mat::Zero(2 * D, 2 * D);
  m.topLeftCorner(D, D) = L;
  m.bottomRightCorner(D, D) = L.inverse().transpose();
  return m;
}

namespace {

std::vector<std::vector<int>> axis_subsets(int D) {
  // ordered by cardinality, then lexicographically; empty subset first
  std::vector<std::vector<int>> out{{}};
  for (int a = 0; a < D; ++a) out.push_back({a});
  if (D == 2) out.push_back({0, 1});
  return out;
}

double smallest_singular_value(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().minCoeff();
}

// Word for a free symplectic matrix (invertible upper-right block):
// Chirp(B^{-1}A), Fourier(all), Dilate(B), Chirp(DB^{-1}), applied in that order.
void append_free_word(GeneratorWord& w, const Mat& m) {
  const int D = w.dim;
  const Mat a = m.topLeftCorner(D, D);
  const Mat b = m.topRightCorner(D, D);
  const Mat d = m.bottomRightCorner(D, D);
  const Mat binv = b.inverse();
  Mat p2 = binv * a;
  Mat p1 = d * binv;
  p2 = 0.5 * (p2 + p2.transpose());  // symmetric for symplectic input
  p1 = 0.5 * (p1 + p1.transpose());
  std::vector<int> all_axes(D);
  for (int i = 0; i < D; ++i) all_axes[i] = i;
  if (p2.cwiseAbs().maxCoeff() > 1e-12)
    w.factors.push_back({GeneratorFactor::Kind::chirp, {}, false, p2});
  w.factors.push_back({GeneratorFactor::Kind::fourier, all_axes, false, {}});
  if ((b - Mat::Identity(D, D)).cwiseAbs().maxCoeff() > 1e-12)
    w.factors.push_back({GeneratorFactor::Kind::dilate, {}, false, b});
  if (p1.cwiseAbs().maxCoeff() > 1e-12)
    w.factors.push_back({GeneratorFactor::Kind::chirp, {}, false, p1});
}

}  // namespace

GeneratorWord factor_generators(const SymplecticMatrix& a) {
  const int D = a.dim;
  const Mat& m = a.entries;
  GeneratorWord w;
  w.dim = D;
  const Mat id = Mat::Identity(D, D);
  const Mat tl = m.topLeftCorner(D, D), tr = m.topRightCorner(D, D);
  const Mat bl = m.bottomLeftCorner(D, D), br = m.bottomRightCorner(D, D);
  const double eps = 1e-12;

  auto near_zero = [&](const Mat& x) { return x.cwiseAbs().maxCoeff() <= eps; };

  if (near_zero(Mat(m - Mat::Identity(2 * D, 2 * D)))) return w;  // empty word

  if (near_zero(tr) && near_zero(Mat(tl - id)) && near_zero(Mat(br - id))) {
    w.factors.push_back({GeneratorFactor::Kind::chirp, {}, false, Mat(0.5 * (bl + bl.transpose()))});
    return w;
  }
  if (near_zero(tr) && near_zero(bl)) {
    w.factors.push_back({GeneratorFactor::Kind::dilate, {}, false, tl});
    return w;
  }
  for (const auto& s : axis_subsets(D)) {
    if (s.empty()) continue;
    GeneratorFactor f{GeneratorFactor::Kind::fourier, s, false, {}};
    if (near_zero(Mat(m - f.sp_matrix(D)))) {
      w.factors.push_back(f);
      return w;
    }
  }

  // General case: ensure the upper-right block is well invertible,
  // pre-composing with a per-axis Fourier factor when it is not. Subsets are
  // tried in increasing cardinality; the first whose block clears the
  // conditioning threshold wins. A barely invertible block would explode the
  // chirp rates, so if none clears it the best-conditioned subset is used.
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  std::vector<double> minors;
  int chosen = -1, best = -1;
  double best_sv = -1.0;
  const auto subsets = axis_subsets(D);
  for (size_t k = 0; k < subsets.size(); ++k) {
    Mat cand = m;
    GeneratorFactor pre{GeneratorFactor::Kind::fourier, subsets[k], false, {}};
    if (!subsets[k].empty()) cand = m * pre.sp_matrix(D).transpose();  // A * J_S^{-1}
    const double sv = smallest_singular_value(cand.topRightCorner(D, D));
    minors.push_back(sv);
    if (sv > best_sv) {
      best_sv = sv;
      best = int(k);
    }
    if (chosen < 0 && sv >= 0.1 * scale) chosen = int(k);
  }
  if (chosen < 0 && best_sv >= 1e-6 * scale) chosen = best;
  if (chosen < 0) {
    std::ostringstream os;
    os << "factor_generators: no axis subset makes the upper-right block invertible;"
       << " smallest singular values per subset:";
    for (double v : minors) os << " " << v;
    throw std::runtime_error(os.str());
  }
  const auto& s = subsets[size_t(chosen)];
  GeneratorFactor pre{GeneratorFactor::Kind::fourier, s, false, {}};
  Mat cand = s.empty() ? m : Mat(m * pre.sp_matrix(D).transpose());
  if (!s.empty()) w.factors.push_back(pre);
  append_free_word(w, cand);
  const double err = (w.matrix() - m).cwiseAbs().maxCoeff();
  if (err > 1e-8) {
    std::ostringstream os;
    os << "factor_generators: reconstruction error " << err;
    throw std::runtime_error(os.str());
  }
  return w;
}

namespace {

SymplecticMatrix random_word_product(std::uint64_t seed, int D, int word_len, double chirp_max,
                                     double log_scale_max) {
  if (D < 1 || D > 2) throw DimensionError("random_symplectic: D in {1, 2} required");
  if (word_len < 0) throw DimensionError("random_symplectic: word_len >= 0 required");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  Mat m = Mat::Identity(2 * D, 2 * D);
  for (int w = 0; w < word_len; ++w) {
    int kind = int(rng() % 3);
    GeneratorFactor f;
    if (kind == 0) {
      f.kind = GeneratorFactor::Kind::chirp;
      Mat x(D, D);
      for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) x(i, j) = unit(rng);
      Mat p = 0.5 * (x + x.transpose());
      double nrm = p.norm();
      double target = chirp_max * (0.2 + 0.8 * pos(rng));
      if (nrm > 1e-12) p *= target / std::max(nrm, target);
      f.payload = p;
    } else if (kind == 1) {
      f.kind = GeneratorFactor::Kind::dilate;
      if (D == 1) {
        Mat l(1, 1);
        l(0, 0) = std::exp(unit(rng) * log_scale_max);
        f.payload = l;
      } else {
        double t1 = M_PI * unit(rng), t2 = M_PI * unit(rng);
        Mat r1(2, 2), r2(2, 2);
        r1 << std::cos(t1), -std::sin(t1), std::sin(t1), std::cos(t1);
        r2 << std::cos(t2), -std::sin(t2), std::sin(t2), std::cos(t2);
        Mat s = Mat::Zero(2, 2);
        s(0, 0) = std::exp(unit(rng) * log_scale_max);
        s(1, 1) = std::exp(unit(rng) * log_scale_max);
        f.payload = r1 * s * r2.transpose();
      }
    } else {
      f.kind = GeneratorFactor::Kind::fourier;
      if (D == 1) {
        f.axes = {0};
      } else {
        int pick = 1 + int(rng() % 3);
        if (pick == 1) f.axes = {0};
        if (pick == 2) f.axes = {1};
        if (pick == 3) f.axes = {0, 1};
      }
    }
    m = f.sp_matrix(D) * m;
  }
  return SymplecticMatrix(m);
}

}  // namespace

SymplecticMatrix random_symplectic(std::uint64_t seed, int D, int word_len) {
  // ||P|| <= 2 chirps, log scale ln(2) per axis => dilation condition <= 4
  return random_word_product(seed, D, word_len, 2.0, std::log(2.0));
}

SymplecticMatrix random_tame_symplectic(std::uint64_t seed, int D, int word_len) {
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    SymplecticMatrix a =
        random_word_product(seed * 0x9e3779b97f4a7c15ULL + attempt, D, word_len, 0.8,
                            0.5 * std::log(2.0));
    if (a.entries.cwiseAbs().maxCoeff() <= 3.0) return a;
  }
  throw std::runtime_error("random_tame_symplectic: rejection budget exhausted");
}

Mat tensor_reorder_permutation(int d) {
  if (d < 1) throw DimensionError("tensor_reorder_permutation: d >= 1 required");
  const int n = 4 * d;
  Mat p = Mat::Zero(n, n);
  // blocks (l1, l2, l3, l4) -> (l1, l3, l2, l4)
  for (int i = 0; i < d; ++i) {
    p(i, i) = 1.0;                  // block 1 -> 1
    p(d + i, 2 * d + i) = 1.0;      // output block 2 takes input block 3
    p(2 * d + i, d + i) = 1.0;      // output block 3 takes input block 2
    p(3 * d + i, 3 * d + i) = 1.0;  // block 4 -> 4
  }
  return p;
}

Mat expected_phi_wigner(Mode mode) {
  // Input (l1, l2, g1, g2), output the 2-variable shift (x1, x2, w1, w2):
  // ((l1+g1)/2, (l2+g2)/2, l2-g2, g1-l1) for the sesquilinear Wigner.
  Mat e(4, 4);
  e << 0.5, 0.0, 0.5, 0.0,  //
      0.0, 0.5, 0.0, 0.5,   //
      0.0, 1.0, 0.0, -1.0,  //
      -1.0, 0.0, 1.0, 0.0;
  if (mode == Mode::bilinear) e.col(3) *= -1.0;  // conjugation flips the g-frequency input
  return e;
}

Mat probe_to_field_matrix(const Mat& probe_matrix, Mode mode) {
  if (probe_matrix.rows() != 4 || probe_matrix.cols() != 4)
    throw DimensionError("probe_to_field_matrix: 4x4 matrix required");
  Mat m = probe_matrix * tensor_reorder_permutation(1);
  if (mode == Mode::sesquilinear) m.col(3) *= -1.0;
  return m;
}

}  // namespace mtfa
