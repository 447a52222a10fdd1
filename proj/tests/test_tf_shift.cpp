#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mtfa/fft.hpp"
#include "mtfa/grid.hpp"
#include "mtfa/tf_shift.hpp"

using namespace mtfa;

TEST_CASE("rho at zero is the identity") {
  Grid g = Grid::line(64);
  Field f = hermite(2, g);
  CHECK(l2_distance(rho(PhasePoint{0.0, 0.0}, f), f) == 0.0);
}

TEST_CASE("rho inverse and unitarity") {
  Grid g = Grid::line(128);
  Field f = hermite(3, g);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int t = 0; t < 10; ++t) {
    PhasePoint l{u(rng), u(rng)};
    CHECK(l2_distance(rho(-l, rho(l, f)), f) < 1e-12);
    CHECK(std::abs(l2_norm(rho(l, f)) - l2_norm(f)) < 1e-12);
  }
}

TEST_CASE("grid-aligned translation is a circular sample shift") {
  Grid g = Grid::line(64);
  Field f = hermite(1, g);
  Field shifted = rho(PhasePoint{2.0 * g.dt(), 0.0}, f);
  double worst = 0.0;
  for (int k = 0; k < g.n; ++k) {
    int src = ((k - 2) % g.n + g.n) % g.n;
    worst = std::max(worst, std::abs(shifted.at(k) - f.at(src)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("weyl phase values") {
  CHECK(std::abs(weyl_phase(PhasePoint{1.0, 0.0}, PhasePoint{2.0, 0.0}) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(weyl_phase(PhasePoint{1.0, 0.0}, PhasePoint{0.0, 1.0}) - cplx(-1.0)) < 1e-15);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    PhasePoint a{u(rng), u(rng)};
    PhasePoint b{u(rng), u(rng)};
    CHECK(std::abs(weyl_phase(a, b) * weyl_phase(b, a) - cplx(1.0)) < 1e-14);
  }
}

TEST_CASE("composition law with the exact cocycle") {
  Grid g = Grid::line(64);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<Field> h;
  for (int k = 0; k < 5; ++k) h.push_back(hermite(k, g));
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    PhasePoint a{u(rng), u(rng)};
    PhasePoint b{u(rng), u(rng)};
    const Field& f = h[t % 5];
    Field lhs = rho(a + b, f);
    Field rhs = weyl_phase(a, b) * rho(a, rho(b, f));
    worst = std::max(worst, l2_distance(lhs, rhs) / l2_norm(f));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("rho_power") {
  Grid g = Grid::line(128);
  Field h2 = hermite(2, g);
  PhasePoint l{0.3, -0.2};
  CHECK(l2_distance(rho_power(l, 1, h2), rho(l, h2)) == 0.0);
  CHECK(l2_distance(rho_power(l, 3, h2), rho(l * 3.0, h2)) < 1e-10 * l2_norm(h2));
  CHECK(l2_distance(rho_power(l, -1, h2), rho(-l, h2)) == 0.0);
}

TEST_CASE("conjugation flips the frequency") {
  Grid g = Grid::line(64);
  Field f = hermite(2, g);
  PhasePoint gamma{0.41, -0.13};
  Field lhs = conjugate(rho(gamma, f));
  Field rhs = rho(PhasePoint{0.41, 0.13}, conjugate(f));
  CHECK(l2_distance(lhs, rhs) < 1e-12);
}

TEST_CASE("tensor factorization of the 2-variable shift") {
  Grid g = Grid::line(128);
  Field f = gaussian(g), w = gaussian(g);
  CHECK(rho_tensor_residual(0, 0, 0, 0, f, w) == 0.0);
  // second-slot arguments zero: only the first tensor slot moves
  CHECK(rho_tensor_residual(0.4, 0.0, -0.3, 0.0, f, w) < 1e-10);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int t = 0; t < 5; ++t)
    CHECK(rho_tensor_residual(u(rng), u(rng), u(rng), u(rng), f, w) <
          1e-10 * l2_norm(f) * l2_norm(w));
}

TEST_CASE("dimension guards") {
  Grid g = Grid::line(64);
  Field f = hermite(0, g);
  CHECK_THROWS_AS(rho(PhasePoint{0.1, 0.2, 0.3, 0.4}, f), DimensionError);
  CHECK_THROWS_AS(rho_tensor_residual(0, 0, 0, 0, f, gaussian(Grid::plane(64))), DimensionError);
}
