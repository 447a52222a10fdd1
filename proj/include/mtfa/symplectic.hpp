#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "mtfa/errors.hpp"

namespace mtfa {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

enum class Mode { bilinear, sesquilinear };

// A point in phase space: first D coordinates position-like, last D
// frequency-like (grid-natural units).
struct PhasePoint {
  Vec coords;

  PhasePoint() = default;
  explicit PhasePoint(Vec c);
  PhasePoint(std::initializer_list<double> c);

  int dim() const { return int(coords.size()) / 2; }
  Vec pos() const { return coords.head(dim()); }
  Vec freq() const { return coords.tail(dim()); }

  PhasePoint operator+(const PhasePoint& o) const { return PhasePoint(Vec(coords + o.coords)); }
  PhasePoint operator-() const { return PhasePoint(Vec(-coords)); }
  PhasePoint operator*(double s) const { return PhasePoint(Vec(s * coords)); }
};

// J = [[0, I], [-I, 0]]
Mat standard_J(int D);

// [lambda, mu] = lambda . J mu
double symplectic_form(const PhasePoint& a, const PhasePoint& b);
double symplectic_form(const Vec& a, const Vec& b);

bool is_symplectic(const Mat& m, double tol);
double symplectic_defect(const Mat& m);  // ||M^T J M - J||_max

// Membership-checked element of Sp(2D, R).
struct SymplecticMatrix {
  Mat entries;
  int dim = 0;  // D

  SymplecticMatrix() = default;
  explicit SymplecticMatrix(Mat m, double tol = 1e-10);

  PhasePoint apply(const PhasePoint& p) const { return PhasePoint(Vec(entries * p.coords)); }
};

// Primitive metaplectic generators. Each has an exact grid implementation.
struct GeneratorFactor {
  enum class Kind { fourier, chirp, dilate };
  Kind kind = Kind::fourier;
  std::vector<int> axes;  // fourier: which axes to transform
  bool inverse = false;   // fourier: inverse transform
  Mat payload;            // chirp: symmetric P (DxD); dilate: invertible L (DxD)

  Mat sp_matrix(int D) const;
  GeneratorFactor inverted() const;
};

struct GeneratorWord {
  int dim = 0;                          // D
  std::vector<GeneratorFactor> factors;  // application order (first applied first)

  Mat matrix() const;          // product of factor matrices
  GeneratorWord inverted() const;
};

// Constructive Stone-von Neumann: factor A into at most 6 primitive
// generators. Free matrices (invertible upper-right block) get the standard
// Chirp-Dilate-Fourier-Chirp word; otherwise a per-axis Fourier factor is
// pre-composed to make the block invertible.
GeneratorWord factor_generators(const SymplecticMatrix& a);

// Deterministic random word product: chirps with ||P|| <= 2, dilations with
// condition number <= 4, Fourier factors. word_len = 0 gives the identity.
SymplecticMatrix random_symplectic(std::uint64_t seed, int D, int word_len = 4);

// Gentler sampler for tests that push words through grid operators: chirp
// rates <= 0.8, dilation condition <= 2, entries capped at 3 by rejection.
// Full-strength words can alias on desk-scale grids.
SymplecticMatrix random_tame_symplectic(std::uint64_t seed, int D, int word_len = 3);

// The involution (l1, l2, l3, l4) -> (l1, l3, l2, l4) in d-blocks, carrying
// the (f-point, g-point) probe ordering (x_f, w_f, x_g, w_g) to the 2d-variable
// field ordering (x_f, x_g, w_f, w_g).
Mat tensor_reorder_permutation(int d);

// The intertwining matrix of the cross-Wigner distribution in probe ordering
// (input (x_f, w_f, x_g, w_g), output the 4-vector handed to the 2-variable
// shift). d = 1.
Mat expected_phi_wigner(Mode mode);

// Convert a recovered probe-ordering matrix to the Sp(4, R) matrix acting on
// the tensor side: right-multiply by the reorder permutation, with the
// fourth probe coordinate sign-flipped in sesquilinear mode. The single
// place where probe and field conventions meet.
Mat probe_to_field_matrix(const Mat& probe_matrix, Mode mode);

// Symplectic matrix of the coordinate change F(x) -> |det L|^{-1/2} F(L^{-1} x):
// blkdiag(L, L^{-T}).
Mat dilation_sp_matrix(const Mat& L);

}  // namespace mtfa
