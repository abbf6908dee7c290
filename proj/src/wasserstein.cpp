#include "tfx/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tfx/error.hpp"
#include "tfx/kernels.hpp"

namespace tfx {

namespace {

void check_order(int order) {
  if (order != 1 && order != 2) throw Error(ErrorKind::InvalidArgument, "transport order must be 1 or 2");
}

void check_levels(const DyadicMeasure& p, const DyadicMeasure& q) {
  if (p.level != q.level || p.weights.size() != q.weights.size())
    throw Error(ErrorKind::LevelMismatch, "dyadic measures live on different levels");
}

double power(double d, int order) { return order == 1 ? d : d * d; }

double finish(double cost, int order) { return order == 1 ? cost : std::sqrt(std::max(cost, 0.0)); }

// Monotone coupling on the interval.
double interval_cost(const DyadicMeasure& p, const DyadicMeasure& q, int order) {
  const std::size_t n = p.weights.size();
  std::size_t i = 0;
  std::size_t j = 0;
  double ri = n > 0 ? p.weights[0] : 0.0;
  double rj = n > 0 ? q.weights[0] : 0.0;
  double cost = 0.0;
  while (i < n && j < n) {
    const double moved = std::min(ri, rj);
    if (moved > 0.0) cost += moved * power(std::fabs(p.atom(i) - q.atom(j)), order);
    ri -= moved;
    rj -= moved;
    if (ri <= 0.0) {
      if (++i < n) ri = p.weights[i];
    }
    if (rj <= 0.0) {
      if (++j < n) rj = q.weights[j];
    }
  }
  return cost;
}

// Generalized inverse of a cumulative vector: the first index with cum > u.
std::size_t quantile_index(const std::vector<double>& cum, double u) {
  auto it = std::upper_bound(cum.begin(), cum.end(), u);
  if (it == cum.end()) return cum.size() - 1;
  return static_cast<std::size_t>(it - cum.begin());
}

std::vector<double> cumulative(const std::vector<double>& w) {
  std::vector<double> c(w.size());
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    s += w[i];
    c[i] = s;
  }
  // the last entry is pinned to one so every u in [0,1) has a quantile
  if (!c.empty()) c.back() = 1.0;
  return c;
}

// cost(theta) = int_0^1 |Fp^{-1}(t + theta) - Fq^{-1}(t)|^order dt, Fp extended
// to the real line by Fp(x + 1) = Fp(x) + 1.
double shift_cost(const DyadicMeasure& p, const std::vector<double>& cp, const DyadicMeasure& q,
                  const std::vector<double>& cq, double theta, int order) {
  std::vector<double> cuts;
  cuts.reserve(cp.size() + cq.size() + 2);
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  for (double c : cq)
    if (c > 0.0 && c < 1.0) cuts.push_back(c);
  for (double c : cp) {
    double t = c - theta;
    t -= std::floor(t);
    if (t > 0.0 && t < 1.0) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  double cost = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double len = cuts[k + 1] - cuts[k];
    if (len <= 0.0) continue;
    double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    if (mid >= cuts[k + 1]) mid = cuts[k];  // a segment one ulp wide
    const double u = mid + theta;
    const double wraps = std::floor(u);
    const double xp = p.atom(quantile_index(cp, u - wraps)) + wraps;
    const double xq = q.atom(quantile_index(cq, mid));
    cost += len * power(std::fabs(xp - xq), order);
  }
  return cost;
}

}  // namespace

DyadicMeasure::DyadicMeasure(std::size_t lvl, std::vector<double> w) : level(lvl), weights(std::move(w)) {
  if (level > kMaxDyadicLevel) throw Error(ErrorKind::LevelTooLarge, "dyadic level above 24");
  if (weights.size() != (std::size_t{1} << level))
    throw Error(ErrorKind::InvalidArgument, "dyadic measure needs 2^level weights");
  double s = 0.0;
  for (double v : weights) {
    if (!(v >= 0.0)) throw Error(ErrorKind::InvalidArgument, "dyadic weights must be nonnegative");
    s += v;
  }
  if (std::fabs(s - 1.0) > 1e-9) throw Error(ErrorKind::InvalidArgument, "dyadic weights must sum to one");
}

Topology parse_topology(std::string_view name) {
  if (name == "interval") return Topology::interval;
  if (name == "circle") return Topology::circle;
  throw Error(ErrorKind::InvalidArgument, "topology must be 'interval' or 'circle'");
}

std::string_view topology_name(Topology t) { return t == Topology::interval ? "interval" : "circle"; }

DyadicMeasure project_dyadic(const MarkovMeasure& mu, std::size_t level) {
  if (mu.alphabet() != 2) throw Error(ErrorKind::AlphabetMismatch, "dyadic projection needs a two-symbol measure");
  if (level > kMaxDyadicLevel) throw Error(ErrorKind::LevelTooLarge, "dyadic level above 24");
  if (level < mu.order()) throw Error(ErrorKind::InvalidArgument, "dyadic level below the Markov order");
  // Big-endian codes make the word spelling j in binary the j-th interval.
  return DyadicMeasure(level, cylinder_masses(mu, level));
}

double w_circle_by_shift(const DyadicMeasure& p, const DyadicMeasure& q, int order) {
  check_order(order);
  check_levels(p, q);
  const std::vector<double> cp = cumulative(p.weights);
  const std::vector<double> cq = cumulative(q.weights);
  auto f = [&](double theta) { return shift_cost(p, cp, q, cq, theta, order); };
  // golden-section search on the convex shift cost
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = -1.0;
  double hi = 1.0;
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  double best = std::min({f(0.0), f1, f2});
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
    best = std::min({best, f1, f2});
  }
  // The cost is piecewise linear in theta with kinks where a level of p meets a
  // level of q, so the minimum sits on a kink. Snap to the kinks near the search result.
  const double centre = 0.5 * (lo + hi);
  std::vector<double> kinks;
  auto consider = [&](double theta) {
    if (theta >= -1.0 && theta <= 1.0 && std::fabs(theta - centre) < 1e-9) kinks.push_back(theta);
  };
  std::vector<double> levels_q = cq;
  levels_q.insert(levels_q.begin(), 0.0);
  std::vector<double> levels_p = cp;
  levels_p.insert(levels_p.begin(), 0.0);
  for (double a : levels_p) {
    for (double shift : {-1.0, 0.0, 1.0}) {
      const double want = a + shift - centre;
      auto it = std::lower_bound(levels_q.begin(), levels_q.end(), want);
      if (it != levels_q.end()) consider(a + shift - *it);
      if (it != levels_q.begin()) consider(a + shift - *(it - 1));
    }
  }
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
  for (double theta : kinks) best = std::min(best, f(theta));
  return finish(best, order);
}

double w_distance(const DyadicMeasure& p, const DyadicMeasure& q, int order, Topology topology) {
  check_order(order);
  check_levels(p, q);
  // evaluate in a canonical argument order so the result is exactly symmetric
  if (std::lexicographical_compare(q.weights.begin(), q.weights.end(), p.weights.begin(), p.weights.end()))
    return w_distance(q, p, order, topology);
  if (topology == Topology::interval) return finish(interval_cost(p, q, order), order);
  if (order == 2) return w_circle_by_shift(p, q, 2);

  // W1 on the circle: min over c of the L1 norm of (Fp - Fq - c); the CDF
  // difference is constant between consecutive atoms, and c is its median.
  const std::size_t n = p.weights.size();
  std::vector<double> diff(n);
  double run = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    run += p.weights[j] - q.weights[j];
    diff[j] = run;
  }
  diff[n - 1] = 0.0;
  std::vector<double> sorted = diff;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n / 2), sorted.end());
  const double c = sorted[n / 2];
  double cost = 0.0;
  for (double v : diff) cost += std::fabs(v - c);
  return cost / static_cast<double>(n);
}

std::vector<RoughnessRow> roughness_scan(const FnTable& a, const FnTable& zeta, std::span<const double> t_grid,
                                         std::size_t level, Topology topology) {
  require_same_alphabet(a, zeta);
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0)) throw Error(ErrorKind::InvalidArgument, "scan times must be positive");
    if (i > 0 && !(t_grid[i] < t_grid[i - 1]))
      throw Error(ErrorKind::InvalidArgument, "scan times must be decreasing");
  }
  const DyadicMeasure base = project_dyadic(gibbs_measure(a), level);
  std::vector<RoughnessRow> rows;
  rows.reserve(t_grid.size());
  for (double t : t_grid) {
    const DyadicMeasure moved = project_dyadic(gibbs_measure(a + t * zeta), level);
    RoughnessRow r;
    r.t = t;
    r.w1 = w_distance(base, moved, 1, topology);
    r.w2 = w_distance(base, moved, 2, topology);
    r.local_exponent = std::numeric_limits<double>::quiet_NaN();
    if (!rows.empty() && r.w2 > 0.0 && rows.back().w2 > 0.0)
      r.local_exponent = std::log(r.w2 / rows.back().w2) / std::log(t / rows.back().t);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace tfx
