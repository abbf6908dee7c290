#include "tfx/geometry2.hpp"

#include <cmath>
#include <string>

#include "tfx/error.hpp"

namespace tfx::geometry2 {

namespace {

void require_open(double x, double y) {
  if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0))
    throw Error(ErrorKind::BoundaryPoint, "chart point must lie in the open unit square");
}

void require_clamped(double x, double y) {
  constexpr double lo = kDomainClamp - 1e-12;
  constexpr double hi = 1.0 - kDomainClamp + 1e-12;
  if (!(x >= lo && x <= hi && y >= lo && y <= hi))
    throw Error(ErrorKind::BoundaryPoint, "chart point must lie in [1e-3, 1 - 1e-3]^2");
}

double E_of(double x, double y) { return (1.0 - y) / (x * (1.0 - x) * (2.0 - x - y)); }
double G_of(double x, double y) { return (1.0 - x) / (y * (1.0 - y) * (2.0 - x - y)); }
double sqrtEG_of(double x, double y) { return std::sqrt(E_of(x, y) * G_of(x, y)); }

double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

double entropy_raw(double x, double y) {
  const double s = 2.0 - x - y;
  return -(1.0 - y) / s * (xlogx(x) + xlogx(1.0 - x)) - (1.0 - x) / s * (xlogx(1.0 - y) + xlogx(y));
}

template <class F>
double d_dx(F f, double x, double y, double h) {
  return (f(x + h, y) - f(x - h, y)) / (2.0 * h);
}

template <class F>
double d_dy(F f, double x, double y, double h) {
  return (f(x, y + h) - f(x, y - h)) / (2.0 * h);
}

constexpr double kInner = 1e-5;
constexpr double kOuter = 1e-4;

}  // namespace

FnTable chart_potential(double x, double y) {
  require_open(x, y);
  return FnTable(2, 2, {std::log(x), std::log1p(-y), std::log1p(-x), std::log(y)});
}

FnTable tangent_vector(double x, double y, double psi1, double psi2) {
  require_open(x, y);
  return FnTable(2, 2, {psi1 / x, -psi2 / (1.0 - y), -psi1 / (1.0 - x), psi2 / y});
}

MetricDiag metric2(double x, double y) {
  require_open(x, y);
  return {E_of(x, y), G_of(x, y)};
}

double curvature2(double x, double y) {
  require_clamped(x, y);
  auto ey_over = [](double a, double b) { return d_dy(E_of, a, b, kInner) / sqrtEG_of(a, b); };
  auto gx_over = [](double a, double b) { return d_dx(G_of, a, b, kInner) / sqrtEG_of(a, b); };
  const double bracket = d_dy(ey_over, x, y, kOuter) + d_dx(gx_over, x, y, kOuter);
  return -bracket / (2.0 * sqrtEG_of(x, y));
}

double curvature2_closed_form(double x, double y) {
  require_open(x, y);
  return 1.0 / (2.0 - x - y);
}

double entropy2(double x, double y) {
  require_open(x, y);
  return entropy_raw(x, y);
}

double rescaled_curvature2(double x, double y, RescaledSteps steps) {
  require_clamped(x, y);
  const double inner = steps.inner;
  auto ey_over = [inner](double a, double b) { return d_dy(E_of, a, b, inner) / sqrtEG_of(a, b); };
  auto gx_over = [inner](double a, double b) { return d_dx(G_of, a, b, inner) / sqrtEG_of(a, b); };
  auto hy_term = [inner](double a, double b) {
    return std::sqrt(E_of(a, b) / G_of(a, b)) * d_dy(entropy_raw, a, b, inner) / entropy_raw(a, b);
  };
  auto hx_term = [inner](double a, double b) {
    return std::sqrt(G_of(a, b) / E_of(a, b)) * d_dx(entropy_raw, a, b, inner) / entropy_raw(a, b);
  };
  const double s = sqrtEG_of(x, y);
  const double k = -(d_dy(ey_over, x, y, steps.outer) + d_dx(gx_over, x, y, steps.outer)) / (2.0 * s);
  const double correction = (d_dy(hy_term, x, y, steps.outer) + d_dx(hx_term, x, y, steps.outer)) / (2.0 * s);
  return entropy_raw(x, y) * (k + correction);
}

IntermediateSteps intermediate_steps2(double x, double y) {
  require_open(x, y);
  const double s = 2.0 - x - y;
  const double rxy = std::sqrt(x * y);
  IntermediateSteps r;
  r.E_y = -1.0 / (x * s * s);
  r.G_x = -1.0 / (y * s * s);
  r.sqrtEG = 1.0 / (rxy * s);
  r.term_y = -(2.0 - x + y) / (2.0 * rxy * s * s);
  r.term_x = -(2.0 + x - y) / (2.0 * rxy * s * s);
  return r;
}

IntermediateSteps intermediate_steps2_numeric(double x, double y) {
  require_clamped(x, y);
  auto ey_over = [](double a, double b) { return d_dy(E_of, a, b, kInner) / sqrtEG_of(a, b); };
  auto gx_over = [](double a, double b) { return d_dx(G_of, a, b, kInner) / sqrtEG_of(a, b); };
  IntermediateSteps r;
  r.E_y = d_dy(E_of, x, y, kInner);
  r.G_x = d_dx(G_of, x, y, kInner);
  r.sqrtEG = sqrtEG_of(x, y);
  r.term_y = d_dy(ey_over, x, y, kOuter);
  r.term_x = d_dx(gx_over, x, y, kOuter);
  return r;
}

Quantity parse_quantity(std::string_view name) {
  if (name == "entropy") return Quantity::entropy;
  if (name == "K") return Quantity::K;
  if (name == "Ktilde" || name == "K~") return Quantity::Ktilde;
  if (name == "E") return Quantity::E;
  if (name == "G") return Quantity::G;
  throw Error(ErrorKind::InvalidArgument, "unknown quantity '" + std::string(name) + "'");
}

std::string_view quantity_name(Quantity q) {
  switch (q) {
    case Quantity::entropy: return "entropy";
    case Quantity::K: return "K";
    case Quantity::Ktilde: return "Ktilde";
    case Quantity::E: return "E";
    case Quantity::G: return "G";
  }
  return "?";
}

double evaluate(Quantity q, double x, double y) {
  switch (q) {
    case Quantity::entropy: return entropy2(x, y);
    case Quantity::K: return curvature2(x, y);
    case Quantity::Ktilde: return rescaled_curvature2(x, y);
    case Quantity::E: return metric2(x, y).E;
    case Quantity::G: return metric2(x, y).G;
  }
  return 0.0;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> v(count);
  if (count == 1) v[0] = lo;
  for (std::size_t i = 0; i < count && count > 1; ++i)
    v[i] = i + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return v;
}

std::vector<GridRow> grid_scan(const std::vector<double>& xs, const std::vector<double>& ys, Quantity quantity) {
  for (double x : xs) require_clamped(x, 0.5);
  for (double y : ys) require_clamped(0.5, y);
  std::vector<GridRow> rows;
  rows.reserve(xs.size() * ys.size());
  for (double x : xs)
    for (double y : ys) rows.push_back({x, y, evaluate(quantity, x, y)});
  return rows;
}

std::vector<GridRow> grid_scan(const Region& region, double step, Quantity quantity) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid step must be positive");
  auto axis = [step](double lo, double hi) {
    std::vector<double> v;
    if (hi < lo) return v;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) v.push_back(lo + static_cast<double>(i) * step);
    return v;
  };
  return grid_scan(axis(region.x_min, region.x_max), axis(region.y_min, region.y_max), quantity);
}

}  // namespace tfx::geometry2
