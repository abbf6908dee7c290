#include "tfx/flow.hpp"

#include <algorithm>
#include <cmath>

#include "tfx/calculus.hpp"
#include "tfx/error.hpp"
#include "tfx/gibbs.hpp"
#include "tfx/transfer.hpp"

namespace tfx {

FnTable flow_representative(const FnTable& a0, const FnTable& b, double t) {
  require_same_alphabet(a0, b);
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "flow time must be nonnegative");
  double decay = std::exp(-t);
  if (decay < 1e-300) decay = 0.0;
  return b + decay * (a0 - b);
}

FlowState flow_state(const FnTable& a0, const FnTable& b, double t) {
  return {t, normalize(flow_representative(a0, b, t))};
}

std::vector<FlowRow> flow_trace(const FnTable& a0, const FnTable& b, std::span<const double> t_grid) {
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw Error(ErrorKind::InvalidArgument, "time grid must be increasing");
  std::vector<FlowRow> rows;
  rows.reserve(t_grid.size());
  for (double t : t_grid) {
    const FlowState s = flow_state(a0, b, t);
    const MarkovMeasure mu = gibbs_measure(s.potential);
    const FnTable gap = s.potential - b;
    FlowRow row;
    row.t = t;
    row.entropy = entropy(mu);
    row.pressure = row.entropy + integrate(mu, b);
    row.metric_norm = std::sqrt(std::max(0.0, variance_metric(s.potential, gap, gap)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tfx
