#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "mtfa/fft.hpp"
#include "mtfa/grid.hpp"
#include "mtfa/io.hpp"

using namespace mtfa;

TEST_CASE("grid construction and self-duality") {
  Grid g = Grid::line(64);
  CHECK(g.dt() == doctest::Approx(1.0 / 8.0));
  CHECK(g.period() == doctest::Approx(8.0));
  CHECK(g.coord(32) == doctest::Approx(0.0));
  // dt * frequency step = 1/N and period * dt = 1
  CHECK(g.dt() * g.dt() == doctest::Approx(1.0 / 64.0));
  CHECK(g.period() * g.dt() == doctest::Approx(1.0));
  CHECK_THROWS_AS(Grid::line(15), DimensionError);
  CHECK_THROWS_AS(Grid::line(8), DimensionError);
}

TEST_CASE("hermite functions are orthonormal") {
  Grid g = Grid::line(128);
  std::vector<Field> h;
  for (int k = 0; k <= 8; ++k) h.push_back(hermite(k, g));
  for (int m = 0; m <= 8; ++m)
    for (int n = 0; n <= 8; ++n) {
      cplx ip = inner_product(h[m], h[n]);
      double expect = m == n ? 1.0 : 0.0;
      CHECK(std::abs(ip - cplx(expect)) < 1e-8);
    }
}

TEST_CASE("hermite values and guards") {
  Grid g = Grid::line(64);
  Field h0 = hermite(0, g);
  CHECK(std::abs(h0.at(32) - std::pow(2.0, 0.25)) < 1e-14);  // h0(0) = 2^{1/4}
  CHECK_THROWS_AS(hermite(17, g), DimensionError);           // n <= N/4
  CHECK_THROWS_AS(hermite(0, Grid::plane(64)), DimensionError);
}

TEST_CASE("fourier eigenfunctions: hermite_n -> (-i)^n hermite_n") {
  Grid g = Grid::line(128);
  for (int n = 0; n <= 6; ++n) {
    Field h = hermite(n, g);
    Field hat = fourier(h);
    cplx eig = std::pow(cplx(0.0, -1.0), n);
    CHECK(l2_distance(hat, eig * h) < 1e-8);
  }
}

TEST_CASE("gaussian is unit norm") {
  CHECK(std::abs(l2_norm(gaussian(Grid::line(128))) - 1.0) < 1e-10);
  CHECK(std::abs(l2_norm(gaussian(Grid::plane(64))) - 1.0) < 1e-10);
}

TEST_CASE("parseval for the centered transform") {
  Grid g = Grid::line(96);  // non power of two
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field f(g);
  for (auto& v : f.values) v = cplx(u(rng), u(rng));
  CHECK(std::abs(l2_norm(fourier(f)) - l2_norm(f)) < 1e-12 * l2_norm(f));
  CHECK(l2_distance(inverse_fourier(fourier(f)), f) < 1e-12 * l2_norm(f));
}

TEST_CASE("tensor product norms and bilinearity") {
  Grid g = Grid::line(32);
  Field f1 = hermite(0, g), f2 = hermite(1, g), w = hermite(2, g);
  CHECK(std::abs(l2_norm(tensor_product(f1, w)) - l2_norm(f1) * l2_norm(w)) < 1e-14);
  cplx alpha(0.7, -0.3);
  Field lhs = tensor_product(alpha * f1 + f2, w);
  Field rhs = alpha * tensor_product(f1, w) + tensor_product(f2, w);
  CHECK(l2_distance(lhs, rhs) < 1e-14);
  CHECK_THROWS_AS(tensor_product(f1, hermite(0, Grid::line(64))), DimensionError);
}

TEST_CASE("conjugate is an involution") {
  Grid g = Grid::line(32);
  Field f = hermite(3, g);
  for (auto& v : f.values) v *= cplx(0.3, 0.8);
  CHECK(l2_distance(conjugate(conjugate(f)), f) == 0.0);
}

TEST_CASE("field csv round trip") {
  Grid g = Grid::line(32);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field f(g);
  for (auto& v : f.values) v = cplx(u(rng), u(rng));
  std::string path = "test_field_roundtrip.csv";
  write_field_csv(path, f);
  Field back = read_field_csv(path);
  CHECK(back.grid == f.grid);
  CHECK(l2_distance(back, f) == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("malformed csv reports the line") {
  std::string path = "test_field_bad.csv";
  {
    std::ofstream os(path);
    os << "# field vars=1 N=16\n0,1.0,0.0\n1,nonsense,0.0\n";
  }
  try {
    read_field_csv(path);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  std::remove(path.c_str());
}
