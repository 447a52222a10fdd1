#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "mtfa/grid.hpp"
#include "mtfa/symplectic.hpp"

namespace mtfa {

// Fixed certification thresholds, surfaced verbatim in the JSON report.
namespace thresholds {
inline constexpr double kMatch = 1e-3;
inline constexpr double kSymplectic = 1e-3;
inline constexpr double kNondegeneracy = 1e-3;
inline constexpr double kHomogeneity = 1e-3;
inline constexpr double kAdditivity = 1e-3;
inline constexpr double kInteger = 1e-3;
inline constexpr double kProbeResidual = 1e-2;
inline constexpr double kCModulusDrift = 1e-3;
inline constexpr double kSnapTarget = 1e-10;
}  // namespace thresholds

// A representation under test: an evaluation capability plus its declared
// linearity mode. Must be deterministic; serial_only boxes are never
// evaluated concurrently (the lab is serial either way).
struct BlackBoxTFR {
  std::function<Field(const Field&, const Field&)> eval;
  Mode mode = Mode::bilinear;
  bool serial_only = false;
};

struct ShiftEstimate {
  Vec nu;          // recovered 4-vector shift (field ordering)
  cplx c;          // normalized to |c| = 1 when the residual is small
  double c_modulus = 0.0;  // |<target, rho(nu) ref>| / ||ref||^2 before normalization
  double residual = 1.0;   // min_{|c|=1} ||target - c rho(nu) ref|| / ||target||
  bool interior = false;   // peak strictly inside the search radius
};

// Peak of |<target, rho(nu) ref>| over the nu-grid of step dt/2 within the
// radius (searched via magnitude correlation and a zoomed transform), then
// per-coordinate 3-point quadratic refinement of the correlation magnitude.
ShiftEstimate estimate_shift(const Field& target, const Field& ref, double radius);

struct PhiEstimate {
  Mat matrix;  // probe ordering (x_f, w_f, x_g, w_g) -> output shift argument
  std::vector<cplx> c_samples;
  std::vector<double> column_residuals;  // one per probe direction at step h
  std::vector<double> probe_residuals;   // all probes (h, 2h, mixed)
  double homogeneity_defect = 0.0;       // max_i ||nu(2h)/2 - nu(h)||_inf / h
  double additivity_defect = 0.0;        // mixed probe vs column sum
  double c_modulus_drift = 0.0;          // spread of |c| across probes
  double symplectic_defect = 0.0;        // on the reordered field-side matrix
  std::vector<double> integer_defects;   // |[l,m] - [Al, Am]| on random pairs
  double probe_step = 0.0;
};

// Probe the black box along the four phase-space directions at steps h and
// 2h plus one mixed direction, and assemble the recovered intertwining map
// with its linearity/symplecticity diagnostics. Throws on a vanishing base
// field R(f,g) (try another probe pair).
PhiEstimate recover_phi(const BlackBoxTFR& box, double h, const Field& f, const Field& g);

struct CovarianceVerdict {
  bool probes_ok = false;
  bool homogeneity_ok = false;
  bool additivity_ok = false;
  bool c_modulus_ok = false;
  bool symplectic_ok = false;
  bool integer_ok = false;
  bool match_ok = false;
  bool nondegenerate_ok = false;
  bool pass = false;
};

struct CovarianceReport {
  PhiEstimate phi;
  Mat field_matrix;  // snapped Sp(4, R) matrix
  double snap_defect = 1.0;
  cplx a = 0.0;
  double match_residual = 1.0;
  double isometry_ratio_spread = 1.0;
  double nondegeneracy_min = 0.0;
  CovarianceVerdict verdict;
};

// Project to Sp(2D, R): Newton-type retraction A <- A + A J (A^T J A - J)/2,
// iterated to defect <= 1e-12 (quadratic from small defects).
Mat snap_symplectic(Mat m);

// Recover the scale a on the first holdout pair, then check R = a A_hat
// against every holdout pair; isometry and non-degeneracy come from the
// holdout norm ratios. All outcomes are report fields, never exceptions.
CovarianceReport certify(const BlackBoxTFR& box, const PhiEstimate& phi,
                         const std::vector<std::pair<Field, Field>>& holdout);

enum class ControlKind { broken_phase, nonlinear_phi, degenerate };

// Deliberately non-covariant or degenerate representations; certification
// must fail each of them.
BlackBoxTFR negative_control(ControlKind kind, const Grid& signal_grid);

// Built-in representations as probe targets. The stft box treats its second
// argument as the window slot of the cross-STFT.
BlackBoxTFR make_wigner_box();
BlackBoxTFR make_stft_box();
BlackBoxTFR make_awigner_box(const SymplecticMatrix& a, Mode mode);
BlackBoxTFR make_tensor_box();  // A = I

// Full pipeline: pick a probe pair (retrying on a degenerate base), recover
// phi at h = 4 dt, certify on a fixed Hermite holdout set.
CovarianceReport probe_representation(const BlackBoxTFR& box, const Grid& signal_grid);

}  // namespace mtfa
