#pragma once
// The two-symbol model with potentials of memory two.
//
// Normalized potentials are charted by the column-stochastic matrix
//   S(x, y) = [[x, 1-y], [1-x, y]],
// where x = P[0 -> 0] and y = P[1 -> 1]. (The symbols 0 and 1 here are the
// states usually labelled 1 and 2.) The variance metric is diagonal in this
// chart, with components E and G; its Gaussian curvature and the curvature
// after dividing the metric by the entropy are evaluated numerically.

#include <string_view>
#include <vector>

#include "tfx/sft.hpp"

namespace tfx::geometry2 {

inline constexpr double kDomainClamp = 1e-3;

struct ChartPoint {
  double x = 0.5;
  double y = 0.5;
};

struct MetricDiag {
  double E = 0.0;
  double G = 0.0;
};

// exp of the table is S(x, y); requires 0 < x, y < 1.
FnTable chart_potential(double x, double y);
// The tangent vector with chart components (psi1, psi2) at S(x, y).
FnTable tangent_vector(double x, double y, double psi1, double psi2);

MetricDiag metric2(double x, double y);

// Gaussian curvature from nested central differences of E and G.
double curvature2(double x, double y);
double curvature2_closed_form(double x, double y);

double entropy2(double x, double y);

struct RescaledSteps {
  double outer = 1e-4;
  double inner = 1e-5;
};
// Curvature of the metric diag(E/h, G/h), h the entropy.
double rescaled_curvature2(double x, double y, RescaledSteps steps = {});

struct IntermediateSteps {
  double E_y = 0.0;
  double G_x = 0.0;
  double sqrtEG = 0.0;
  double term_y = 0.0;  // d/dy (E_y / sqrt(EG))
  double term_x = 0.0;  // d/dx (G_x / sqrt(EG))
};

IntermediateSteps intermediate_steps2(double x, double y);
// Same quantities by central differences of metric2.
IntermediateSteps intermediate_steps2_numeric(double x, double y);

enum class Quantity { entropy, K, Ktilde, E, G };

Quantity parse_quantity(std::string_view name);
std::string_view quantity_name(Quantity q);
double evaluate(Quantity q, double x, double y);

struct GridRow {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

struct Region {
  double x_min = 0.1;
  double x_max = 0.9;
  double y_min = 0.1;
  double y_max = 0.9;
};

// x-major rows over {min, min+step, ...} <= max in each coordinate.
std::vector<GridRow> grid_scan(const Region& region, double step, Quantity quantity);
std::vector<GridRow> grid_scan(const std::vector<double>& xs, const std::vector<double>& ys, Quantity quantity);
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace tfx::geometry2
