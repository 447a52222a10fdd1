#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mtfa/symplectic.hpp"
#include "mtfa/tfr.hpp"

using namespace mtfa;

TEST_CASE("standard_J") {
  Mat j1 = standard_J(1);
  Mat expect(2, 2);
  expect << 0, 1, -1, 0;
  CHECK((j1 - expect).cwiseAbs().maxCoeff() == 0.0);
  for (int d = 1; d <= 3; ++d) {
    Mat j = standard_J(d);
    CHECK((j * j + Mat::Identity(2 * d, 2 * d)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((j.transpose() + j).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK_THROWS_AS(standard_J(0), DimensionError);
}

TEST_CASE("symplectic_form") {
  CHECK(symplectic_form(PhasePoint{1.0, 0.0}, PhasePoint{0.0, 1.0}) == doctest::Approx(1.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 20; ++t) {
    PhasePoint a{u(rng), u(rng), u(rng), u(rng)};
    PhasePoint b{u(rng), u(rng), u(rng), u(rng)};
    CHECK(symplectic_form(a, a) == doctest::Approx(0.0));
    CHECK(symplectic_form(a, b) == doctest::Approx(-symplectic_form(b, a)));
  }
  CHECK_THROWS_AS(symplectic_form(PhasePoint{1.0, 0.0}, PhasePoint{1.0, 0.0, 0.0, 0.0}),
                  DimensionError);
}

TEST_CASE("is_symplectic membership") {
  CHECK(is_symplectic(Mat::Identity(4, 4), 1e-12));
  CHECK(is_symplectic(standard_J(2), 1e-12));
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  CHECK_FALSE(is_symplectic(d, 1e-6));
  CHECK_THROWS_AS(is_symplectic(Mat::Identity(3, 3), 1e-6), DimensionError);
  CHECK_THROWS_AS(SymplecticMatrix{d}, DimensionError);
}

TEST_CASE("form invariance under random symplectic maps") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int s = 0; s < 5; ++s) {
    SymplecticMatrix a = random_symplectic(40 + s, 2, 4);
    for (int t = 0; t < 20; ++t) {
      Vec l(4), m(4);
      for (int i = 0; i < 4; ++i) l[i] = u(rng);
      for (int i = 0; i < 4; ++i) m[i] = u(rng);
      double lhs = symplectic_form(Vec(a.entries * l), Vec(a.entries * m));
      CHECK(std::abs(lhs - symplectic_form(l, m)) < 1e-9);
    }
  }
}

TEST_CASE("factor_generators special forms") {
  // J factors as a single Fourier word
  GeneratorWord wj = factor_generators(SymplecticMatrix(standard_J(1)));
  REQUIRE(wj.factors.size() == 1);
  CHECK(wj.factors[0].kind == GeneratorFactor::Kind::fourier);

  // lower shear is a chirp
  Mat shear(2, 2);
  shear << 1, 0, 0.7, 1;
  GeneratorWord wc = factor_generators(SymplecticMatrix(shear));
  REQUIRE(wc.factors.size() == 1);
  CHECK(wc.factors[0].kind == GeneratorFactor::Kind::chirp);
  CHECK(wc.factors[0].payload(0, 0) == doctest::Approx(0.7));

  // block-diagonal form is a dilation
  Mat l(2, 2);
  l << 1.2, 0.3, -0.1, 0.9;
  GeneratorWord wd = factor_generators(SymplecticMatrix(dilation_sp_matrix(l)));
  REQUIRE(wd.factors.size() == 1);
  CHECK(wd.factors[0].kind == GeneratorFactor::Kind::dilate);

  CHECK(factor_generators(SymplecticMatrix(Mat::Identity(4, 4))).factors.empty());
}

TEST_CASE("factor_generators reconstructs random words") {
  for (int d : {1, 2}) {
    for (int s = 0; s < 8; ++s) {
      SymplecticMatrix a = random_symplectic(7 + s, d, 4);
      GeneratorWord w = factor_generators(a);
      CHECK(w.factors.size() <= 6);
      CHECK((w.matrix() - a.entries).cwiseAbs().maxCoeff() < 1e-8);
      // inverse word realizes the inverse matrix
      CHECK((w.inverted().matrix() - a.entries.inverse()).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
  // the Wigner matrix exercises the singular-block fallback
  SymplecticMatrix aw(wigner_sp_matrix());
  GeneratorWord w = factor_generators(aw);
  CHECK(w.factors.size() <= 6);
  CHECK((w.matrix() - aw.entries).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("random_symplectic determinism and membership") {
  for (int d : {1, 2}) {
    SymplecticMatrix a = random_symplectic(11, d, 5);
    SymplecticMatrix b = random_symplectic(11, d, 5);
    CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() == 0.0);
    CHECK(symplectic_defect(a.entries) < 1e-10);
  }
  CHECK((random_symplectic(3, 2, 0).entries - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(random_tame_symplectic(5, 2, 3).entries.cwiseAbs().maxCoeff() <= 3.0);
}

TEST_CASE("tensor reorder permutation") {
  Mat p = tensor_reorder_permutation(1);
  Vec v(4);
  v << 1, 2, 3, 4;
  Vec pv = p * v;
  CHECK(pv[0] == 1);
  CHECK(pv[1] == 3);
  CHECK(pv[2] == 2);
  CHECK(pv[3] == 4);
  for (int d : {1, 2}) {
    Mat pd = tensor_reorder_permutation(d);
    CHECK((pd * pd - Mat::Identity(4 * d, 4 * d)).cwiseAbs().maxCoeff() == 0.0);
  }
  // d=2 block version agrees with the per-coordinate pattern
  Mat p2 = tensor_reorder_permutation(2);
  Vec w(8);
  w << 1, 2, 3, 4, 5, 6, 7, 8;  // blocks (1,2),(3,4),(5,6),(7,8)
  Vec pw = p2 * w;
  Vec expect(8);
  expect << 1, 2, 5, 6, 3, 4, 7, 8;  // middle blocks swap
  CHECK((pw - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("expected_phi_wigner") {
  Mat e = expected_phi_wigner(Mode::sesquilinear);
  Vec row0 = e.row(0);
  CHECK(row0[0] == doctest::Approx(0.5));
  CHECK(row0[1] == doctest::Approx(0.0));
  CHECK(row0[2] == doctest::Approx(0.5));
  CHECK(row0[3] == doctest::Approx(0.0));

  // equal shifts on both slots collapse to a pure translation
  Vec diag(4);
  diag << 0.3, -0.7, 0.3, -0.7;
  Vec out = e * diag;
  CHECK(out[0] == doctest::Approx(0.3));
  CHECK(out[1] == doctest::Approx(-0.7));
  CHECK(out[2] == doctest::Approx(0.0));
  CHECK(out[3] == doctest::Approx(0.0));

  // reorder + sign flip lands in Sp(4, R)
  for (Mode m : {Mode::sesquilinear, Mode::bilinear}) {
    Mat a = probe_to_field_matrix(expected_phi_wigner(m), m);
    CHECK(symplectic_defect(a) < 1e-12);
    CHECK((a - wigner_sp_matrix()).cwiseAbs().maxCoeff() < 1e-12);
  }

  // bilinear variant flips the w_g input column
  Mat b = expected_phi_wigner(Mode::bilinear);
  CHECK((b.col(3) + e.col(3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((b.leftCols(3) - e.leftCols(3)).cwiseAbs().maxCoeff() == 0.0);
}
