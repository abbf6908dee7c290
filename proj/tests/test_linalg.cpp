#include <doctest.h>

#include <cmath>

#include "tfx/linalg.hpp"
#include "tfx/rng.hpp"

using namespace tfx;

TEST_CASE("LU solves random well-conditioned systems") {
  Rng rng(3);
  for (std::size_t n : {1u, 2u, 5u, 16u, 40u}) {
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0) + (i == j ? 4.0 : 0.0);
    std::vector<double> x(n);
    for (double& v : x) v = rng.uniform(-1.0, 1.0);
    const std::vector<double> b = a.apply(x);
    const std::vector<double> y = solve_linear(a, b);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(x[i] - y[i]) < 1e-12);
  }
}

TEST_CASE("LU flags singular matrices and reports determinant sign") {
  Matrix s(2, 2);
  s(0, 0) = 1;
  s(0, 1) = 2;
  s(1, 0) = 2;
  s(1, 1) = 4;
  LuDecomposition lu(s);
  CHECK(lu.singular());
  CHECK(lu.determinant_sign() == 0);
  Matrix p(2, 2);
  p(0, 1) = 1;
  p(1, 0) = 1;
  CHECK(LuDecomposition(p).determinant_sign() == -1);
  CHECK(LuDecomposition(Matrix::identity(3)).determinant_sign() == 1);
}

TEST_CASE("Jacobi eigenvalues match closed forms") {
  Matrix a(2, 2);
  a(0, 0) = 2;
  a(0, 1) = 1;
  a(1, 0) = 1;
  a(1, 1) = 1;
  const auto ev = symmetric_eigenvalues(a);
  CHECK(ev[0] == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-14));

  // trace and Frobenius norm are preserved on a random symmetric matrix
  Rng rng(5);
  const std::size_t n = 12;
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) r(i, j) = r(j, i) = rng.uniform(-1.0, 1.0);
  const auto e = symmetric_eigenvalues(r);
  double tr = 0, fro = 0, s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    tr += r(i, i);
    s1 += e[i];
    s2 += e[i] * e[i];
    for (std::size_t j = 0; j < n; ++j) fro += r(i, j) * r(i, j);
  }
  CHECK(std::fabs(tr - s1) < 1e-12);
  CHECK(std::fabs(fro - s2) < 1e-12);
  for (std::size_t i = 1; i < n; ++i) CHECK(e[i - 1] <= e[i]);
}

TEST_CASE("matrix-vector products in both orientations") {
  Matrix a(2, 3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = static_cast<double>(3 * i + j);
  const std::vector<double> x = {1, 1, 1};
  CHECK(a.apply(x) == std::vector<double>{3, 12});
  const std::vector<double> y = {1, -1};
  CHECK(a.apply_transposed(y) == std::vector<double>{-3, -3, -3});
  CHECK(a.transposed()(2, 1) == 5.0);
}
