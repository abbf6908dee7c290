#pragma once
// Gradient flow of the pressure functional P_B on classes of potentials.
// In the quotient by constants and coboundaries the flow is linear,
//   [A_t] = e^{-t} [A_0 - B] + [B],
// and it is evaluated in closed form.

#include <span>
#include <vector>

#include "tfx/sft.hpp"

namespace tfx {

struct FlowState {
  double t = 0.0;
  FnTable potential;  // normalized representative of [A_t]
};

// B + e^{-t} (A_0 - B); e^{-t} is flushed to zero below 1e-300.
FnTable flow_representative(const FnTable& a0, const FnTable& b, double t);
FlowState flow_state(const FnTable& a0, const FnTable& b, double t);

struct FlowRow {
  double t = 0.0;
  double pressure = 0.0;     // P_B(mu_{A_t})
  double entropy = 0.0;      // entropy of mu_{A_t}
  double metric_norm = 0.0;  // |[A_t - B]| in the variance metric at A_t
};

std::vector<FlowRow> flow_trace(const FnTable& a0, const FnTable& b, std::span<const double> t_grid);

}  // namespace tfx
