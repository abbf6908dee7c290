#pragma once
// Shared generators for randomized tests.

#include <cmath>
#include <cstddef>
#include <vector>

#include "tfx/gibbs.hpp"
#include "tfx/rng.hpp"
#include "tfx/sft.hpp"

namespace tfx::testing {

inline FnTable random_table(Rng& rng, std::size_t m, std::size_t memory, double scale = 1.0) {
  std::vector<double> v(checked_pow(m, memory));
  for (double& x : v) x = rng.uniform(-scale, scale);
  return FnTable(m, memory, std::move(v));
}

// Gibbs measures of random memory-(k+1) potentials cover the positive
// order-k Markov measures.
inline MarkovMeasure random_measure(Rng& rng, std::size_t m, std::size_t order, double scale = 2.0) {
  return gibbs_measure(random_table(rng, m, order + 1, scale));
}

inline double rel_err(double a, double b, double floor = 1e-300) {
  return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), floor});
}

}  // namespace tfx::testing
