#pragma once

#include "mtfa/grid.hpp"
#include "mtfa/symplectic.hpp"

namespace mtfa {

// Executable metaplectic operator: a symplectic matrix together with its
// generator-word realization. Phase convention is fixed per primitive factor
// (unitary centered FFT, phase-free chirps, positive real dilation
// amplitude), so two factorizations of the same matrix may differ by one
// global unimodular constant.
struct MetaplecticOp {
  SymplecticMatrix matrix;
  GeneratorWord word;

  static MetaplecticOp from_matrix(const SymplecticMatrix& a);
  MetaplecticOp inverse() const;
  int dim() const { return matrix.dim; }
};

// Relative l2 mass within L/16 of the period boundary, in time and frequency.
double boundary_tail_mass(const Field& f);
bool is_admissible(const Field& f, double tol = 1e-10);

// Apply the generator word factor by factor. Requires an admissible field;
// rejects words whose accumulated chirp rate or dilation condition number
// would push content past the Nyquist band.
Field apply_metaplectic(const MetaplecticOp& op, const Field& f);

// Independent oracle for free matrices: direct quadrature of the quadratic
// Fourier (Collins) integral with principal-branch amplitude det(iB)^{-1/2}.
// O(N^{2D}); D=1 requires N <= 128, D=2 requires N <= 64.
Field collins_oracle(const SymplecticMatrix& a, const Field& f);

// || rho(A lambda) f - A_hat rho(lambda) A_hat^{-1} f ||_2 / ||f||_2.
// Conjugation cancels the global phase, so this is a plain equality check.
double intertwining_residual(const MetaplecticOp& op, const PhasePoint& lambda, const Field& f);

}  // namespace mtfa
