#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "tfx/calculus.hpp"
#include "tfx/error.hpp"
#include "tfx/geometry2.hpp"
#include "tfx/gibbs.hpp"
#include "tfx/transfer.hpp"

using namespace tfx;
using tfx::testing::random_table;
using tfx::testing::rel_err;

namespace {

const std::vector<Symbol> kZero = {0};

FnTable coin_direction() { return FnTable::indicator(2, kZero) - 0.5; }

FnTable random_coboundary(Rng& rng, std::size_t m) {
  return add_coboundary(FnTable::zeros(m, 1), random_table(rng, m, 2), rng.uniform(-1.0, 1.0));
}

}  // namespace

TEST_CASE("dlog_lambda") {
  Rng rng(41);
  const FnTable a = random_table(rng, 3, 2);
  CHECK(std::fabs(dlog_lambda(a, FnTable::constant(3, 1, 1.0)) - 1.0) < 1e-14);
  const FnTable g = random_table(rng, 3, 2);
  CHECK(std::fabs(dlog_lambda(a, g - compose_shift(g))) < 1e-13);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 2 + trial % 2;
    const FnTable b = random_table(rng, m, 2 + trial % 2);
    const FnTable z = random_table(rng, m, 1 + trial % 3);
    CHECK(std::fabs(dlog_lambda(b, z) - integrate(gibbs_measure(b), z)) < 1e-14);
    CHECK(std::fabs(dlog_lambda_fd(b, z) - dlog_lambda(b, z)) < 1e-7);
  }
}

TEST_CASE("gibbs derivative") {
  const FnTable coin = FnTable::zeros(2, 1);
  const FnTable z = coin_direction();
  CHECK(std::fabs(gibbs_derivative(coin, z, FnTable::constant(2, 2, 3.0))) < 1e-15);
  Rng rng(42);
  CHECK(std::fabs(gibbs_derivative(coin, random_coboundary(rng, 2), z)) < 1e-14);
  CHECK(std::fabs(gibbs_derivative(coin, z, z) - 0.25) < 1e-15);
  CHECK(std::fabs(gibbs_derivative_fd(coin, z, z) - 0.25) < 1e-9);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 2 + trial % 2;
    const FnTable a = random_table(rng, m, 2 + trial % 2);
    const FnTable zeta = random_table(rng, m, 1 + trial % 3);
    const FnTable phi = random_table(rng, m, 1 + (trial + 1) % 3);
    const double exact = gibbs_derivative(a, zeta, phi);
    CHECK(std::fabs(exact - gibbs_derivative(a, phi, zeta)) < 1e-12);
    CHECK(std::fabs(exact - variance_metric(a, zeta, phi)) < 1e-10);
    CHECK(std::fabs(exact - gibbs_derivative_fd(a, zeta, phi)) < 1e-7);
  }
}

TEST_CASE("variance metric examples") {
  Rng rng(43);
  const FnTable c = random_coboundary(rng, 2);
  CHECK(std::fabs(variance_metric(random_table(rng, 2, 2), c, c)) < 1e-13);
  const FnTable z = coin_direction();
  CHECK(std::fabs(variance_metric(FnTable::zeros(2, 1), z, z) - 0.25) < 1e-15);

  // closed form on the two-symbol chart in terms of zeta_11 = psi1 / x, zeta_22 = psi2 / y
  for (auto [x, y] : {std::pair{0.5, 0.5}, std::pair{0.3, 0.7}, std::pair{0.8, 0.15}}) {
    for (auto [z11, z22] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}, std::pair{0.6, -1.3}}) {
      const FnTable a = geometry2::chart_potential(x, y);
      const FnTable v = geometry2::tangent_vector(x, y, x * z11, y * z22);
      const double expect = x * (1 - y) / ((1 - x) * (2 - x - y)) * z11 * z11 +
                            (1 - x) * y / ((1 - y) * (2 - x - y)) * z22 * z22;
      CHECK(std::fabs(variance_metric(a, v, v) - expect) < 1e-12 * std::max(1.0, expect));
    }
  }
  const FnTable a = geometry2::chart_potential(0.5, 0.5);
  const FnTable v = geometry2::tangent_vector(0.5, 0.5, 0.5, 0.0);
  CHECK(std::fabs(variance_metric(a, v, v) - 0.5) < 1e-14);
}

TEST_CASE("variance metric properties") {
  Rng rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 2 + trial % 2;
    const FnTable a = random_table(rng, m, 2 + trial % 2);
    const FnTable z = random_table(rng, m, 1 + trial % 3);
    const FnTable e = random_table(rng, m, 1 + (trial + 2) % 3);
    const double ze = variance_metric(a, z, e);
    CHECK(std::fabs(ze - variance_metric(a, e, z)) < 1e-12);
    CHECK(variance_metric(a, z, z) >= -1e-14);
    // bilinearity
    const FnTable f = random_table(rng, m, 2);
    CHECK(std::fabs(variance_metric(a, 2.0 * z + f, e) - (2.0 * ze + variance_metric(a, f, e))) < 1e-11);
    // a coboundary-plus-constant in either slot changes nothing
    CHECK(std::fabs(variance_metric(a, z + random_coboundary(rng, m), e) - ze) < 1e-11);
    // Hessian convexity
    CHECK(hessian_fd_log_lambda(a, z, z) >= -1e-9);
  }
}

TEST_CASE("kernel characterization") {
  Rng rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 2 + trial % 2;
    const FnTable na = normalize(random_table(rng, m, 2));
    const FnTable z = trial % 2 == 0 ? random_coboundary(rng, m) : random_table(rng, m, 2);
    const bool small_metric = variance_metric(na, z, z) < 1e-10;
    const bool small_projection = max_abs(dn_projection(na, z)) < 1e-8;
    CHECK(small_metric == small_projection);
  }
}

TEST_CASE("L2 restriction on ker L") {
  Rng rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 2 + trial % 2;
    const FnTable na = normalize(random_table(rng, m, 2 + trial % 2));
    const MarkovMeasure mu = gibbs_measure(na);
    const FnTable z = dn_projection(na, random_table(rng, m, 2));
    const FnTable e = dn_projection(na, random_table(rng, m, 3));
    CHECK(std::fabs(variance_metric(na, z, e) - integrate(mu, product(z, e))) < 1e-12);
  }
}

TEST_CASE("asymptotic variance") {
  const FnTable coin = FnTable::zeros(2, 1);
  for (std::size_t n : {1u, 7u, 100u}) {
    CHECK(std::fabs(asymptotic_variance(coin, FnTable::constant(2, 1, 2.0), n)) < 1e-15);
    CHECK(std::fabs(asymptotic_variance(coin, coin_direction(), n) - 0.25) < 1e-14);
  }
  Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 2 + trial % 2;
    const FnTable a = random_table(rng, m, 2 + trial % 2);
    const FnTable z = random_table(rng, m, 2);
    const double exact = variance_metric(a, z, z);
    const double e1 = std::fabs(asymptotic_variance(a, z, 1000) - exact);
    const double e2 = std::fabs(asymptotic_variance(a, z, 2000) - exact);
    // O(1/n): doubling n roughly halves the error
    CHECK(e1 * 1000 < 10.0);
    if (e1 > 1e-12) CHECK(e2 / e1 == doctest::Approx(0.5).epsilon(0.05));
  }
}

TEST_CASE("Hessian finite difference") {
  const FnTable coin = FnTable::zeros(2, 1);
  const FnTable one = FnTable::constant(2, 1, 1.0);
  CHECK(std::fabs(hessian_fd_log_lambda(coin, one, one)) < 1e-7);
  CHECK(std::fabs(hessian_fd_log_lambda(coin, coin_direction(), coin_direction()) - 0.25) < 1e-6);
  try {
    hessian_fd_log_lambda(coin, one, one, 1e-7);
    FAIL("expected StepTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepTooSmall);
  }
  Rng rng(48);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 2 + trial % 2;
    const FnTable a = random_table(rng, m, 2 + trial % 2);
    const FnTable z = random_table(rng, m, 2);
    const FnTable e = random_table(rng, m, 2);
    const double exact = variance_metric(a, z, e);
    CHECK(std::fabs(hessian_fd_log_lambda(a, z, e) - exact) < 1e-5 * std::max(1.0, std::fabs(exact)));
    CHECK(std::fabs(hessian_fd_log_lambda(a, z, e, 1e-3, true) - exact) < 1e-6 * std::max(1.0, std::fabs(exact)));
  }
}

TEST_CASE("Monte Carlo variance is seeded and consistent") {
  const FnTable coin = FnTable::zeros(2, 1);
  const McVariance a = mc_birkhoff_variance(coin, coin_direction(), 200000, 5, 200);
  const McVariance b = mc_birkhoff_variance(coin, coin_direction(), 200000, 5, 200);
  CHECK(a.estimate == b.estimate);
  CHECK(std::fabs(a.estimate - 0.25) < 3.0 * a.standard_error);
  Rng rng(49);
  const FnTable p = random_table(rng, 3, 2);
  const FnTable z = random_table(rng, 3, 2);
  const McVariance r = mc_birkhoff_variance(p, z, 400000, 17, 400);
  CHECK(std::fabs(r.estimate - variance_metric(p, z, z)) < 3.0 * r.standard_error);
}

TEST_CASE("Gram matrix") {
  const FnTable coin = FnTable::zeros(2, 1);
  const std::vector<FnTable> ones = {FnTable::constant(2, 1, 1.0)};
  CHECK(std::fabs(gram_matrix(coin, ones).values(0, 0)) < 1e-15);
  const std::vector<FnTable> ind = {FnTable::indicator(2, kZero)};
  CHECK(std::fabs(gram_matrix(coin, ind).values(0, 0) - 0.25) < 1e-15);

  Rng rng(50);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 2 + trial % 2;
    const FnTable a = random_table(rng, m, 2);
    std::vector<FnTable> phi = {random_table(rng, m, 2), random_table(rng, m, 1), random_table(rng, m, 3)};
    const GramMatrix g = gram_matrix(a, phi);
    CHECK(g.asymmetry() < 1e-12);
    CHECK(g.min_eigenvalue() > 1e-9);
    phi.push_back(random_coboundary(rng, m));
    CHECK(gram_matrix(a, phi).min_eigenvalue() < 1e-9);
    CHECK(gram_matrix(a, phi).min_eigenvalue() >= -1e-9);
  }
}
