#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "tfx/calculus.hpp"
#include "tfx/flow.hpp"
#include "tfx/gibbs.hpp"
#include "tfx/transfer.hpp"

using namespace tfx;
using tfx::testing::random_table;

namespace {

double max_mass_diff(const FnTable& a, const FnTable& b, std::size_t len) {
  const auto ca = cylinder_masses(gibbs_measure(a), len);
  const auto cb = cylinder_masses(gibbs_measure(b), len);
  double d = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) d = std::max(d, std::fabs(ca[i] - cb[i]));
  return d;
}

}  // namespace

TEST_CASE("flow endpoints") {
  Rng rng(71);
  const FnTable a0 = random_table(rng, 2, 2);
  const FnTable b = random_table(rng, 2, 3);
  CHECK(max_abs_difference(flow_state(a0, b, 0.0).potential, normalize(a0)) < 1e-12);
  CHECK(max_abs_difference(flow_state(a0, b, 50.0).potential, normalize(b)) < 1e-12);
  CHECK(max_abs_difference(flow_state(b, b, 3.0).potential, normalize(b)) < 1e-12);
  CHECK(is_normalized(flow_state(a0, b, 0.7).potential, 1e-12));
}

TEST_CASE("temperature change stays on the ray") {
  Rng rng(72);
  const FnTable phi = random_table(rng, 3, 2);
  for (double t : {0.0, 0.3, 1.0, 4.0, 20.0}) {
    const FnTable rep = flow_representative(2.0 * phi, phi, t);
    CHECK(max_abs_difference(rep, (1.0 + std::exp(-t)) * phi) < 1e-14);
  }
}

TEST_CASE("semigroup law") {
  Rng rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 2 + trial % 2;
    const FnTable a0 = random_table(rng, m, 2);
    const FnTable b = random_table(rng, m, 2);
    const double s = rng.uniform(0.0, 2.0), t = rng.uniform(0.0, 2.0);
    const FnTable two_step = flow_state(flow_state(a0, b, s).potential, b, t).potential;
    CHECK(max_mass_diff(two_step, flow_state(a0, b, s + t).potential, 3) < 1e-10);
  }
}

TEST_CASE("flow traces") {
  Rng rng(74);
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(0.1 * i);
  const FnTable b = random_table(rng, 2, 2);
  const auto still = flow_trace(b, b, grid);
  for (const auto& r : still) {
    CHECK(std::fabs(r.pressure - still[0].pressure) < 1e-12);
    CHECK(std::fabs(r.metric_norm) < 1e-7);
  }

  for (int trial = 0; trial < 5; ++trial) {
    const FnTable a0 = random_table(rng, 2, 2, 2.0);
    const FnTable bb = random_table(rng, 2, 2);
    const auto rows = flow_trace(a0, bb, grid);
    const double top = pressure(bb);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const bool converged = top - rows[i - 1].pressure < 1e-10;
      if (!converged) CHECK(rows[i].pressure > rows[i - 1].pressure);
      CHECK(rows[i].pressure - rows[i - 1].pressure >= -1e-11);
      CHECK(rows[i].metric_norm <= rows[i - 1].metric_norm * 1.5 + 1e-12);
    }
    CHECK(rows.back().pressure <= top + 1e-12);
    // entropy is not stationary at B, so it only settles once e^{-t} is negligible
    const std::vector<double> late = {0.0, 40.0};
    CHECK(std::fabs(flow_trace(a0, bb, late).back().entropy - entropy(gibbs_measure(bb))) < 1e-8);
  }
  const std::vector<double> bad = {1.0, 0.5};
  CHECK_THROWS(flow_trace(b, b, bad));
}
