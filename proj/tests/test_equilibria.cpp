#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "support.hpp"
#include "tfx/calculus.hpp"
#include "tfx/equilibria.hpp"
#include "tfx/error.hpp"
#include "tfx/geometry2.hpp"
#include "tfx/gibbs.hpp"
#include "tfx/transfer.hpp"

using namespace tfx;
using tfx::testing::random_table;

namespace {

const std::vector<Symbol> kZero = {0};

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

double bernoulli_entropy(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

}  // namespace

TEST_CASE("rotation vectors") {
  const MarkovMeasure fair = gibbs_measure(FnTable::zeros(2, 1));
  const std::vector<FnTable> one = {FnTable::constant(2, 1, 1.0)};
  CHECK(rotation_vector(fair, one)[0] == doctest::Approx(1.0).epsilon(1e-15));
  const std::vector<FnTable> ind = {FnTable::indicator(2, kZero)};
  CHECK(rotation_vector(fair, ind)[0] == doctest::Approx(0.5).epsilon(1e-15));
  const MarkovMeasure s = gibbs_measure(geometry2::chart_potential(0.25, 0.5));
  CHECK(std::fabs(rotation_vector(s, ind)[0] - 0.4) < 1e-14);
}

TEST_CASE("prescription examples") {
  const FnTable b = FnTable::zeros(2, 1);
  const std::vector<FnTable> ind = {FnTable::indicator(2, kZero)};
  const std::vector<double> half = {0.5};
  const Prescription p0 = prescribe(b, ind, half);
  CHECK(std::fabs(p0.coefficients[0]) < 1e-12);

  const std::vector<double> nine = {0.9};
  const Prescription p = prescribe(b, ind, nine);
  CHECK(p.residual < 1e-10);
  for (std::size_t u = 0; u < 2; ++u) {
    CHECK(std::fabs(p.measure.trans()(0, u) - 0.9) < 1e-8);
    CHECK(std::fabs(p.measure.trans()(1, u) - 0.1) < 1e-8);
  }
  CHECK(std::fabs(p.coefficients[0] - std::log(9.0)) < 1e-10);

  const std::vector<double> out = {1.5};
  CHECK(kind_of([&] { prescribe(b, ind, out); }) == ErrorKind::TargetOutsideRotationSet);
  const std::vector<double> edge = {1.0};
  CHECK(kind_of([&] { prescribe(b, ind, edge); }) == ErrorKind::TargetOutsideRotationSet);

  const std::vector<FnTable> dep = {FnTable::indicator(2, kZero), FnTable::indicator(2, kZero) + 0.3};
  const std::vector<double> t2 = {0.5, 0.8};
  CHECK(kind_of([&] { prescribe(b, dep, t2); }) == ErrorKind::DependentConstraints);
  const std::vector<FnTable> cob = {add_coboundary(FnTable::zeros(2, 1), FnTable::indicator(2, kZero), 0.0)};
  CHECK(kind_of([&] { prescribe(b, cob, half); }) == ErrorKind::DependentConstraints);
}

TEST_CASE("prescription on random problems: residual, Jacobian, uniqueness") {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 2 + trial % 2;
    const FnTable b = random_table(rng, m, 2);
    const std::vector<FnTable> phi = {random_table(rng, m, 2), random_table(rng, m, 1 + trial % 3)};
    // a reachable target: the rotation vector of another Gibbs measure
    const std::vector<double> target = rotation_vector(gibbs_measure(random_table(rng, m, 2)), phi);
    const Prescription p = prescribe(b, phi, target);
    const auto rv = rotation_vector(p.measure, phi);
    for (std::size_t k = 0; k < 2; ++k) CHECK(std::fabs(rv[k] - target[k]) < 1e-10);

    // finite-difference Jacobian of the rotation vector equals the Gram matrix
    const GramMatrix g = gram_matrix(p.potential, phi);
    const double h = 1e-5;
    for (std::size_t j = 0; j < 2; ++j) {
      std::vector<double> ap = p.coefficients, am = p.coefficients;
      ap[j] += h;
      am[j] -= h;
      const auto rp = rotation_vector(gibbs_measure(combine_potential(b, phi, ap)), phi);
      const auto rm = rotation_vector(gibbs_measure(combine_potential(b, phi, am)), phi);
      for (std::size_t k = 0; k < 2; ++k) CHECK(std::fabs((rp[k] - rm[k]) / (2 * h) - g.values(k, j)) < 1e-8);
    }

    for (int start = 0; start < 3; ++start) {
      const std::vector<double> init = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      const Prescription q = prescribe(b, phi, target, {}, init);
      for (std::size_t k = 0; k < 2; ++k) CHECK(std::fabs(q.coefficients[k] - p.coefficients[k]) < 1e-8);
    }
  }
}

TEST_CASE("constrained equilibria: worked examples") {
  const FnTable b = FnTable::zeros(2, 1);
  const ConstrainedEquilibrium none = constrained_equilibrium(b, {});
  CHECK(none.coefficients.empty());
  CHECK(std::fabs(none.value - std::log(2.0)) < 1e-15);

  const std::vector<FnTable> first = {FnTable::indicator(2, kZero) - 0.9};
  const ConstrainedEquilibrium e1 = constrained_equilibrium(b, first);
  CHECK(std::fabs(e1.measure.pi()[0] - 0.9) < 1e-10);
  CHECK(std::fabs(e1.value - bernoulli_entropy(0.9)) < 1e-10);
  CHECK(std::fabs(e1.value - 0.3250829733914482) < 1e-10);

  // phi = 1_{10*} - 2 * 1_{11*}; by shift invariance mu(10*) = mu(01*)
  const std::vector<FnTable> second = {FnTable(2, 2, {0.0, 0.0, 1.0, -2.0})};
  const ConstrainedEquilibrium e2 = constrained_equilibrium(b, second);
  const double a = e2.measure.trans()(1, 0);
  CHECK(std::fabs(std::pow(1 - a, 5) - 4.0 / 27.0 * a * a) < 1e-12);
  CHECK(std::fabs(a - 0.48780299852799963) < 1e-12);
  CHECK(std::fabs(e2.measure.trans()(0, 1) - 2.0 / 3.0) < 1e-12);
  CHECK(std::fabs(e2.coefficients[0] - 0.2147831646105862) < 1e-11);
  // the displayed form of the constraint holds as well
  const double m01 = cylinder_mass(e2.measure, Word{2, 1});
  const double m11 = cylinder_mass(e2.measure, Word{2, 3});
  CHECK(std::fabs(m01 - 2.0 * m11) < 1e-12);
}

TEST_CASE("constrained equilibrium maximizes the pressure functional on the constraint set") {
  Rng rng(62);
  const FnTable b = random_table(rng, 2, 2);
  const std::vector<FnTable> phi = {FnTable(2, 2, {0.3, -0.2, 0.5, -0.7})};
  const ConstrainedEquilibrium e = constrained_equilibrium(b, phi);
  CHECK(std::fabs(rotation_vector(e.measure, phi)[0]) < 1e-10);
  CHECK(std::fabs(p_functional(b, e.measure) - e.value) < 1e-10);
  const std::vector<double> zero = {0.0};
  for (int k = 0; k < 30; ++k) {
    // another measure in the constraint set: prescribe from a different base
    const Prescription other = prescribe(random_table(rng, 2, 2, 2.0), phi, zero);
    CHECK(p_functional(b, other.measure) <= e.value + 1e-10);
  }
}

TEST_CASE("memory bound: lifting inputs leaves the solution unchanged") {
  Rng rng(63);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t m = 2 + trial % 2;
    const FnTable b = random_table(rng, m, 2);
    const std::vector<FnTable> phi = {random_table(rng, m, 2), random_table(rng, m, 2)};
    const std::vector<double> target = rotation_vector(gibbs_measure(random_table(rng, m, 2)), phi);
    std::vector<FnTable> phi3;
    for (const auto& f : phi) phi3.push_back(lift_memory(f, 3));
    const std::vector<FnTable> phi_c = {phi[0] - target[0], phi[1] - target[1]};
    const std::vector<FnTable> phi3_c = {phi3[0] - target[0], phi3[1] - target[1]};
    const ConstrainedEquilibrium e2 = constrained_equilibrium(b, phi_c);
    const ConstrainedEquilibrium e3 = constrained_equilibrium(lift_memory(b, 3), phi3_c);
    CHECK(normalize(e2.potential).memory() <= 2);
    const auto c2 = cylinder_masses(e2.measure, 3);
    const auto c3 = cylinder_masses(e3.measure, 3);
    for (std::size_t i = 0; i < c2.size(); ++i) CHECK(std::fabs(c2[i] - c3[i]) < 1e-9);
  }
}

TEST_CASE("entropy surface on the Bernoulli sweep") {
  const FnTable b = FnTable::zeros(2, 1);
  const std::vector<FnTable> ind = {FnTable::indicator(2, kZero)};
  std::vector<std::vector<double>> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back({0.05 * i});
  grid.push_back({1.2});
  const auto rows = entropy_surface(b, ind, grid);
  REQUIRE(rows.size() == grid.size());
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    REQUIRE(rows[i].inside);
    CHECK(rows[i].value > 0.0);
    CHECK(std::fabs(rows[i].value - rows[i].entropy) < 1e-10);
    CHECK(std::fabs(rows[i].value - bernoulli_entropy(grid[i][0])) < 1e-10);
  }
  CHECK(std::fabs(rows[9].value - std::log(2.0)) < 1e-12);
  CHECK(std::fabs(rows[17].value - 0.3250829733914482) < 1e-10);
  for (std::size_t i = 1; i + 2 < rows.size(); ++i)
    CHECK(rows[i - 1].value - 2 * rows[i].value + rows[i + 1].value <= 1e-9);
  CHECK_FALSE(rows.back().inside);
}
