#pragma once
// Exploratory optimal-transport experiments for two-symbol Gibbs measures.
//
// Binary expansion conjugates the 2-shift with the doubling map, so a measure
// on symbol sequences projects to the unit interval (or the circle). At level
// L the projection is a vector of 2^L masses placed at dyadic midpoints, and
// one-dimensional transport distances between such vectors are exact.
// Nothing here asserts anything about the continuum limit.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "tfx/gibbs.hpp"
#include "tfx/sft.hpp"

namespace tfx {

inline constexpr std::size_t kMaxDyadicLevel = 24;

struct DyadicMeasure {
  std::size_t level = 0;
  std::vector<double> weights;  // mass of [j 2^-L, (j+1) 2^-L)

  DyadicMeasure() = default;
  DyadicMeasure(std::size_t level, std::vector<double> weights);

  double atom(std::size_t j) const noexcept {
    return (static_cast<double>(j) + 0.5) / static_cast<double>(weights.size());
  }
};

enum class Topology { interval, circle };

Topology parse_topology(std::string_view name);
std::string_view topology_name(Topology t);

DyadicMeasure project_dyadic(const MarkovMeasure& mu, std::size_t level);

// order is 1 or 2.
double w_distance(const DyadicMeasure& p, const DyadicMeasure& q, int order, Topology topology);

// Circle distance as the minimum over shifts theta of the cost of the
// shifted quantile coupling; the shift cost is convex in theta.
double w_circle_by_shift(const DyadicMeasure& p, const DyadicMeasure& q, int order);

struct RoughnessRow {
  double t = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  double local_exponent = 0.0;  // slope of log w2 against log t; NaN on the first row
};

std::vector<RoughnessRow> roughness_scan(const FnTable& a, const FnTable& zeta, std::span<const double> t_grid,
                                         std::size_t level, Topology topology = Topology::circle);

}  // namespace tfx
