#include "mtfa/verify.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "mtfa/covariance.hpp"
#include "mtfa/fft.hpp"
#include "mtfa/grid.hpp"
#include "mtfa/metaplectic.hpp"
#include "mtfa/tf_shift.hpp"
#include "mtfa/tfr.hpp"

namespace mtfa {
namespace {

PhasePoint random_point(std::mt19937_64& rng, int d, double amp) {
  std::uniform_real_distribution<double> u(-amp, amp);
  Vec v(2 * d);
  for (int i = 0; i < 2 * d; ++i) v[i] = u(rng);
  return PhasePoint(v);
}

std::vector<Field> hermite_bank(const Grid& g, int count) {
  std::vector<Field> out;
  for (int k = 0; k < count; ++k) out.push_back(hermite(k, g));
  return out;
}

// accept matrices whose factorization the grid operators can apply accurately
bool word_applicable(const Mat& m, double chirp_cap = 3.0) {
  if (m.cwiseAbs().maxCoeff() > 3.0) return false;
  GeneratorWord w = factor_generators(SymplecticMatrix(m));
  double chirp = 0.0;
  for (const auto& f : w.factors)
    if (f.kind == GeneratorFactor::Kind::chirp) {
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (f.payload + f.payload.transpose()));
      chirp += es.eigenvalues().cwiseAbs().maxCoeff();
    }
  return chirp <= chirp_cap;
}

// conservative envelope propagation: track a radius/band bound for content
// pushed through the word factors; reject words that drive either past the
// representable window
bool word_fits_envelope(const GeneratorWord& w, double r0, double half_period) {
  double r = r0, b = r0;
  const double limit = half_period - 0.3;
  if (r > limit) return false;
  for (const auto& f : w.factors) {
    switch (f.kind) {
      case GeneratorFactor::Kind::fourier: {
        double m = std::max(r, b);
        r = b = m;  // per-axis swap, bounded by the larger extent
        break;
      }
      case GeneratorFactor::Kind::chirp: {
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (f.payload + f.payload.transpose()));
        b += es.eigenvalues().cwiseAbs().maxCoeff() * r;
        break;
      }
      case GeneratorFactor::Kind::dilate: {
        Eigen::JacobiSVD<Mat> svd(f.payload);
        r *= svd.singularValues().maxCoeff();
        b /= svd.singularValues().minCoeff();
        break;
      }
    }
    if (r > limit || b > limit) return false;
  }
  return true;
}

// tame word fitting the envelope of the given input class
SymplecticMatrix envelope_tame(std::uint64_t seed, int d, int len, double r0,
                               double half_period) {
  for (std::uint64_t attempt = 0; attempt < 1024; ++attempt) {
    SymplecticMatrix a = random_tame_symplectic(seed + 7919 * attempt, d, len);
    if (word_fits_envelope(factor_generators(a), r0, half_period)) return a;
  }
  throw std::runtime_error("envelope_tame: rejection budget exhausted");
}

// tame word whose factorization also clears the application guards
SymplecticMatrix applicable_tame(std::uint64_t seed, int d, int len, double chirp_cap = 3.0) {
  for (std::uint64_t attempt = 0; attempt < 256; ++attempt) {
    SymplecticMatrix a = random_tame_symplectic(seed + 7919 * attempt, d, len);
    if (word_applicable(a.entries, chirp_cap)) return a;
  }
  throw std::runtime_error("applicable_tame: rejection budget exhausted");
}

// free 2x2 symplectic matrix from bounded quadratic-Fourier parameters, so
// both the word machinery and the direct quadrature stay accurate at N = 64
SymplecticMatrix random_free_symplectic(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> chirp(-0.6, 0.6);
  std::uniform_real_distribution<double> logb(-0.3, 0.3);
  std::uniform_int_distribution<int> coin(0, 1);
  double p1 = chirp(rng), p2 = chirp(rng);
  double b = std::exp(logb(rng)) * (coin(rng) ? 1.0 : -1.0);
  Mat c1(2, 2), c2(2, 2), dil(2, 2), j = standard_J(1);
  c1 << 1, 0, p1, 1;
  c2 << 1, 0, p2, 1;
  dil << b, 0, 0, 1.0 / b;
  return SymplecticMatrix(Mat(c1 * dil * j * c2));
}

}  // namespace

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

std::vector<Check> verify_shifts(int n, std::uint64_t seed, bool inject_phase_error) {
  const Grid g = Grid::line(n);
  const int bank = n >= 128 ? 5 : 3;
  const auto h = hermite_bank(g, bank);
  std::mt19937_64 rng(seed);
  std::vector<Check> out;

  {
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      PhasePoint l = random_point(rng, 1, 0.5);
      PhasePoint m = random_point(rng, 1, 0.5);
      const Field& f = h[trial % bank];
      cplx phase = weyl_phase(l, m);
      if (inject_phase_error) phase = std::conj(phase);  // test hook: wrong cocycle sign
      Field lhs = rho(l + m, f);
      Field rhs = phase * rho(l, rho(m, f));
      worst = std::max(worst, l2_distance(lhs, rhs) / l2_norm(f));
    }
    out.push_back({"weyl_composition_law", worst, 1e-10});
  }
  {
    double worst = 0.0;
    PhasePoint l0{0.3, -0.2};
    worst = std::max(worst, l2_distance(rho_power(l0, 3, h[2]), rho(l0 * 3.0, h[2])));
    for (int trial = 0; trial < 10; ++trial) {
      PhasePoint l = random_point(rng, 1, 0.3);
      worst = std::max(worst,
                       l2_distance(rho_power(l, 3, h[trial % bank]), rho(l * 3.0, h[trial % bank])));
    }
    out.push_back({"rho_power_rho_of_n_lambda", worst, 1e-10});
  }
  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      PhasePoint l = random_point(rng, 1, 0.5);
      const Field& f = h[trial % bank];
      worst = std::max(worst, l2_distance(rho(-l, rho(l, f)), f));
    }
    out.push_back({"rho_inverse_identity", worst, 1e-10});
  }
  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      PhasePoint l = random_point(rng, 1, 0.5);
      const Field& f = h[trial % bank];
      worst = std::max(worst, std::abs(l2_norm(rho(l, f)) - l2_norm(f)) / l2_norm(f));
    }
    out.push_back({"rho_unitarity", worst, 1e-12});
  }
  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      PhasePoint gpt = random_point(rng, 1, 0.5);
      const Field& f = h[trial % bank];
      Field lhs = conjugate(rho(gpt, f));
      Field rhs = rho(PhasePoint{gpt.coords[0], -gpt.coords[1]}, conjugate(f));
      worst = std::max(worst, l2_distance(lhs, rhs));
    }
    out.push_back({"conjugation_rule", worst, 1e-12});
  }
  {
    double worst = 0.0;
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int trial = 0; trial < 10; ++trial) {
      double scale = l2_norm(h[0]) * l2_norm(h[1]);
      worst = std::max(
          worst, rho_tensor_residual(u(rng), u(rng), u(rng), u(rng), h[0], h[1]) / scale);
    }
    out.push_back({"tensor_factorization", worst, 1e-10});
  }
  return out;
}

std::vector<Check> verify_metaplectic(int n, std::uint64_t seed) {
  const Grid g1 = Grid::line(n);
  const Field gau = gaussian(g1);
  // smaller grids get narrower test envelopes: higher Hermites and longer
  // words push content into the boundary band below N = 128
  const int bank = n >= 128 ? 5 : 3;
  const int len = n >= 128 ? 3 : 2;
  const double half = 0.5 * g1.period();
  const double r_bank = bank == 5 ? 3.5 : 3.0;  // 1e-7 radius of the top Hermite plus shifts
  const double r_gauss = 2.4;
  const auto h = hermite_bank(g1, std::max(bank, 4));
  std::vector<Check> out;

  {
    double worst = 0.0;
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 50; ++trial) {
      MetaplecticOp op =
          MetaplecticOp::from_matrix(envelope_tame(seed + trial, 1, len, r_bank, half));
      PhasePoint l = random_point(rng, 1, 0.5);
      worst = std::max(worst, intertwining_residual(op, l, h[trial % bank]));
    }
    out.push_back({"intertwining_d1", worst, 1e-7});
  }
  {
    double worst = 0.0;
    std::mt19937_64 rng(seed + 1);
    const Field gg = gaussian(Grid::plane(n));
    for (int trial = 0; trial < 20; ++trial) {
      MetaplecticOp op =
          MetaplecticOp::from_matrix(envelope_tame(seed + 100 + trial, 2, len, r_gauss, half));
      PhasePoint l = random_point(rng, 2, 0.5);
      worst = std::max(worst, intertwining_residual(op, l, gg));
    }
    out.push_back({"intertwining_d2", worst, 1e-7});
  }
  {
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      MetaplecticOp op =
          MetaplecticOp::from_matrix(envelope_tame(seed + 200 + trial, 1, len, r_bank, half));
      const Field& f = h[trial % bank];
      Field af = apply_metaplectic(op, f);
      worst = std::max(worst, std::abs(l2_norm(af) - l2_norm(f)) / l2_norm(f));
      worst = std::max(worst, l2_distance(apply_metaplectic(op.inverse(), af), f) / l2_norm(f));
    }
    out.push_back({"metaplectic_unitarity_inverse", worst, 1e-9});
  }
  {
    double worst = 0.0;
    int found = 0;
    for (int trial = 0; found < 10 && trial < 200; ++trial) {
      SymplecticMatrix u = random_tame_symplectic(seed + 300 + trial, 1, 2);
      SymplecticMatrix v = random_tame_symplectic(seed + 400 + trial, 1, 2);
      SymplecticMatrix uv{Mat(u.entries * v.entries)};
      if (!word_fits_envelope(factor_generators(u), r_gauss, half) ||
          !word_fits_envelope(factor_generators(v), r_gauss + 1.0, half) ||
          !word_fits_envelope(factor_generators(uv), r_gauss, half))
        continue;
      MetaplecticOp ou = MetaplecticOp::from_matrix(u);
      MetaplecticOp ov = MetaplecticOp::from_matrix(v);
      MetaplecticOp ouv = MetaplecticOp::from_matrix(uv);
      try {
        Field rhs = apply_metaplectic(ou, apply_metaplectic(ov, gau));
        Field lhs = apply_metaplectic(ouv, gau);
        worst = std::max(worst, phase_invariant_distance(lhs, rhs) / l2_norm(gau));
        ++found;
      } catch (const AdmissibilityError&) {
        // intermediate drifted into the boundary band on this grid; pick
        // another pair
      }
    }
    out.push_back({"homomorphism_modulo_phase", worst, 1e-7});
  }
  {
    const Grid g64 = Grid::line(std::min(n, 64));
    const Field f64 = hermite(2, g64);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      SymplecticMatrix a = random_free_symplectic(seed + 500 + trial);
      Field via_word = apply_metaplectic(MetaplecticOp::from_matrix(a), f64);
      Field via_collins = collins_oracle(a, f64);
      worst = std::max(worst, phase_invariant_distance(via_word, via_collins) / l2_norm(f64));
    }
    out.push_back({"collins_oracle_agreement", worst, 1e-6});
  }
  {
    MetaplecticOp op = MetaplecticOp::from_matrix(SymplecticMatrix(standard_J(1)));
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
      Field lhs = apply_metaplectic(op, h[k]);
      worst = std::max(worst, phase_invariant_distance(lhs, fourier(h[k])));
    }
    out.push_back({"fourier_word_matches_fft", worst, 1e-9});
  }
  return out;
}

std::vector<Check> verify_wigner_covariance(int n, std::uint64_t seed) {
  const Grid g1 = Grid::line(n);
  // covariance checks shift the inputs; below N = 128 the shifted higher
  // Hermites reach the boundary band, so the bank shrinks with the grid
  const int bank = n >= 128 ? 4 : 2;
  const auto h = hermite_bank(g1, 4);
  std::vector<Check> out;

  {
    // closed form W(h0, h0)(x, w) = 2 exp(-2 pi (x^2 + w^2))
    Field wf = wigner_fast(h[0], h[0]);
    double worst_fast = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double x = g1.coord(i), w = g1.coord(j);
        double exact = 2.0 * std::exp(-2.0 * M_PI * (x * x + w * w));
        worst_fast = std::max(worst_fast, std::abs(wf.at(i, j) - exact));
      }
    out.push_back({"gaussian_closed_form_fast", worst_fast, 1e-7});
    if (n <= 128) {
      Field wd = wigner_direct(h[0], h[0]);
      double worst_dir = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double x = g1.coord(i), w = g1.coord(j);
          double exact = 2.0 * std::exp(-2.0 * M_PI * (x * x + w * w));
          worst_dir = std::max(worst_dir, std::abs(wd.at(i, j) - exact));
        }
      out.push_back({"gaussian_closed_form_direct", worst_dir, 1e-7});
    }
  }
  if (n <= 128) {
    double worst = 0.0;
    const std::pair<int, int> pairs[] = {{0, 0}, {1, 0}, {2, 3}};
    for (auto [i, j] : pairs) {
      Field a = wigner_fast(h[i], h[j]);
      Field b = wigner_direct(h[i], h[j]);
      worst = std::max(worst, l2_distance(a, b) / l2_norm(b));
    }
    out.push_back({"wigner_fast_vs_direct", worst, 1e-6});
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double ratio = l2_norm(wigner_fast(h[i], h[j])) / (l2_norm(h[i]) * l2_norm(h[j]));
        worst = std::max(worst, std::abs(ratio - 1.0));
      }
    out.push_back({"moyal_isometry_wigner", worst, 1e-6});
  }
  {
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      SymplecticMatrix a = applicable_tame(seed + 700 + k, 2, 3);
      double ratio =
          l2_norm(a_wigner(a, h[k % 4], h[(k + 1) % 4], Mode::bilinear)) /
          (l2_norm(h[k % 4]) * l2_norm(h[(k + 1) % 4]));
      worst = std::max(worst, std::abs(ratio - 1.0));
    }
    out.push_back({"moyal_isometry_a_wigner", worst, 1e-6});
  }
  {
    // Eq. (n4): same shift on both arguments translates the distribution
    std::mt19937_64 rng(seed + 11);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      PhasePoint l = random_point(rng, 1, 0.5);
      const Field& f = h[trial % bank];
      const Field& gg = h[(trial + 1) % bank];
      Field lhs = wigner_fast(rho(l, f), rho(l, gg));
      Field rhs = translate(wigner_fast(f, gg), {l.coords[0], l.coords[1]});
      worst = std::max(worst, l2_distance(lhs, rhs) / (l2_norm(f) * l2_norm(gg)));
    }
    out.push_back({"covariance_n4", worst, 1e-6});
  }
  {
    // Eq. (n2): different shifts give a full 2-variable time-frequency shift,
    // scalar phase included (plain equality)
    std::mt19937_64 rng(seed + 12);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      PhasePoint l = random_point(rng, 1, 0.5);
      PhasePoint mu = random_point(rng, 1, 0.5);
      const Field& f = h[trial % bank];
      const Field& gg = h[(trial + 2) % bank];
      Field lhs = wigner_fast(rho(l, f), rho(mu, gg));
      Vec shift(4);
      shift << 0.5 * (l.coords[0] + mu.coords[0]), 0.5 * (l.coords[1] + mu.coords[1]),
          l.coords[1] - mu.coords[1], mu.coords[0] - l.coords[0];
      Field rhs = rho(PhasePoint(shift), wigner_fast(f, gg));
      worst = std::max(worst, l2_distance(lhs, rhs) / (l2_norm(f) * l2_norm(gg)));
    }
    out.push_back({"covariance_n2_exact_phase", worst, 1e-6});
  }
  {
    Field w00 = wigner_fast(h[0], h[0]);
    double worst = 0.0;
    for (const cplx& v : w00.values) worst = std::max(worst, std::abs(v.imag()));
    out.push_back({"wigner_auto_real", worst, 1e-10});
  }
  if (n >= 96) {
    // the factored route needs the larger grid's frequency headroom for the
    // cross-chirp in the Wigner word
    Field via_matrix = a_wigner(SymplecticMatrix(wigner_sp_matrix()), h[1], h[2], Mode::sesquilinear);
    Field via_fast = wigner_fast(h[1], h[2]);
    out.push_back({"a_wigner_matches_wigner",
                   phase_invariant_distance(via_matrix, via_fast) /
                       (l2_norm(h[1]) * l2_norm(h[2])),
                   1e-6});
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      double ratio = l2_norm(stft(h[i], h[(i + 1) % 4])) /
                     (l2_norm(h[i]) * l2_norm(h[(i + 1) % 4]));
      worst = std::max(worst, std::abs(ratio - 1.0));
    }
    out.push_back({"stft_orthogonality_relations", worst, 1e-8});
  }
  return out;
}

std::vector<Check> verify_theorem_roundtrip(int n, std::uint64_t seed, int num_seeds) {
  const Grid g1 = Grid::line(n);
  const Field h0 = hermite(0, g1), h1 = hermite(1, g1), h2 = hermite(2, g1);
  const std::vector<std::pair<Field, Field>> holdout = {{h0, h1}, {h1, h0}, {h2, h0}};
  const cplx scales[3] = {cplx(1.0, 0.0), 2.0 * std::polar(1.0, M_PI / 3.0), cplx(0.0, 0.5)};

  double worst_matrix = 0.0, worst_a = 0.0, worst_match = 0.0;
  double worst_homog = 0.0, worst_integer = 0.0, worst_snap = 0.0;
  for (int k = 0; k < num_seeds; ++k) {
    SymplecticMatrix a0 = applicable_tame(seed + 1000 * k, 2, 3);
    const cplx scale = scales[k % 3];
    auto op = std::make_shared<MetaplecticOp>(MetaplecticOp::from_matrix(a0));
    BlackBoxTFR box{[op, scale](const Field& f, const Field& g) {
                      return scale * apply_metaplectic(*op, tensor_product(f, g));
                    },
                    Mode::bilinear, false};
    PhiEstimate phi = recover_phi(box, 4.0 * g1.dt(), h0, h0);
    CovarianceReport rep = certify(box, phi, holdout);

    Mat recovered = probe_to_field_matrix(phi.matrix, Mode::bilinear);
    worst_matrix = std::max(worst_matrix, (recovered - a0.entries).cwiseAbs().maxCoeff());
    worst_a = std::max(worst_a, std::abs(std::abs(rep.a) - std::abs(scale)) / std::abs(scale));
    worst_match = std::max(worst_match, rep.match_residual);
    worst_homog = std::max(worst_homog, phi.homogeneity_defect);
    worst_integer = std::max(
        worst_integer, *std::max_element(phi.integer_defects.begin(), phi.integer_defects.end()));
    worst_snap = std::max(worst_snap, rep.snap_defect);
  }
  return {{"roundtrip_matrix_recovery", worst_matrix, 1e-3},
          {"roundtrip_scale_recovery", worst_a, 1e-3},
          {"roundtrip_match_residual", worst_match, 1e-4},
          {"roundtrip_homogeneity", worst_homog, 1e-3},
          {"roundtrip_integer_lemma", worst_integer, 1e-3},
          {"roundtrip_snap_defect", worst_snap, 1e-10}};
}

std::vector<Check> verify_wigner_phi_recovery(int n) {
  const Grid g1 = Grid::line(n);
  CovarianceReport rep = probe_representation(make_wigner_box(), g1);
  const Mat expected = expected_phi_wigner(Mode::sesquilinear);
  double matrix_err = (rep.phi.matrix - expected).cwiseAbs().maxCoeff();
  double defect = symplectic_defect(probe_to_field_matrix(rep.phi.matrix, Mode::sesquilinear));
  double pass = rep.verdict.pass ? 0.0 : 1.0;
  return {{"wigner_phi_matrix", matrix_err, 1e-3},
          {"wigner_phi_symplectic_after_reorder", defect, 1e-3},
          {"wigner_probe_verdict", pass, 0.5}};
}

std::vector<Check> verify_falsifiability(int n) {
  const Grid g1 = Grid::line(n);
  std::vector<Check> out;
  const std::pair<ControlKind, std::string> controls[] = {
      {ControlKind::broken_phase, "control_broken_phase_fails"},
      {ControlKind::nonlinear_phi, "control_nonlinear_phi_fails"},
      {ControlKind::degenerate, "control_degenerate_fails"},
  };
  for (const auto& [kind, name] : controls) {
    CovarianceReport rep = probe_representation(negative_control(kind, g1), g1);
    double max_probe = *std::max_element(rep.phi.probe_residuals.begin(),
                                         rep.phi.probe_residuals.end());
    bool detected = rep.match_residual > 0.05 || max_probe > 0.05 ||
                    rep.nondegeneracy_min < thresholds::kNondegeneracy;
    bool failed_cert = !rep.verdict.pass;
    out.push_back({name, (detected && failed_cert) ? 0.0 : 1.0, 0.5});
  }
  const std::pair<BlackBoxTFR, std::string> pures[] = {
      {make_wigner_box(), "pure_wigner_passes"},
      {make_stft_box(), "pure_stft_passes"},
      {make_tensor_box(), "pure_tensor_passes"},
      {make_awigner_box(applicable_tame(17, 2, 3), Mode::bilinear), "pure_a_wigner_passes"},
  };
  for (const auto& [box, name] : pures) {
    CovarianceReport rep = probe_representation(box, g1);
    out.push_back({name, rep.verdict.pass ? 0.0 : 1.0, 0.5});
  }
  return out;
}

}  // namespace mtfa
