#include "tfx/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfx/calculus.hpp"
#include "tfx/error.hpp"
#include "tfx/linalg.hpp"
#include "tfx/transfer.hpp"

namespace tfx {

namespace {

double sup_norm(std::span<const double> v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::fabs(x));
  return r;
}

struct Evaluation {
  FnTable potential;
  MarkovMeasure measure;
  std::vector<double> residual;
  double norm = 0.0;
};

Evaluation evaluate(const FnTable& base, std::span<const FnTable> phi, std::span<const double> target,
                    std::span<const double> a) {
  Evaluation e{combine_potential(base, phi, a), {}, {}, 0.0};
  e.measure = gibbs_measure(e.potential);
  e.residual = rotation_vector(e.measure, phi);
  for (std::size_t k = 0; k < e.residual.size(); ++k) e.residual[k] -= target[k];
  e.norm = sup_norm(e.residual);
  if (!std::isfinite(e.norm)) throw Error(ErrorKind::NonConvergence, "non-finite rotation vector");
  return e;
}

[[noreturn]] void outside(const std::string& why) {
  throw Error(ErrorKind::TargetOutsideRotationSet, "target appears to lie outside the rotation set: " + why);
}

}  // namespace

void ConstraintProblem::validate() const {
  for (const FnTable& f : phi) require_same_alphabet(base, f);
  if (target.size() != phi.size())
    throw Error(ErrorKind::InvalidArgument, "target needs one entry per constraint function");
}

std::vector<double> rotation_vector(const MarkovMeasure& mu, std::span<const FnTable> phi) {
  std::vector<double> rv;
  rv.reserve(phi.size());
  for (const FnTable& f : phi) rv.push_back(integrate(mu, f));
  return rv;
}

FnTable combine_potential(const FnTable& base, std::span<const FnTable> phi, std::span<const double> a) {
  if (a.size() != phi.size()) throw Error(ErrorKind::InvalidArgument, "one coefficient per function expected");
  FnTable p = base;
  for (std::size_t k = 0; k < phi.size(); ++k) p = p + a[k] * phi[k];
  return p;
}

Prescription prescribe(const FnTable& base, std::span<const FnTable> phi, std::span<const double> target,
                       const NewtonOptions& options, std::span<const double> initial) {
  for (const FnTable& f : phi) require_same_alphabet(base, f);
  const std::size_t k = phi.size();
  if (target.size() != k) throw Error(ErrorKind::InvalidArgument, "target needs one entry per constraint function");
  if (!initial.empty() && initial.size() != k)
    throw Error(ErrorKind::InvalidArgument, "initial point needs one entry per constraint function");

  if (k > 0) {
    const double lowest = gram_matrix(base, phi).min_eigenvalue();
    if (!(lowest > options.dependence_threshold))
      throw Error(ErrorKind::DependentConstraints,
                  "constraint functions are linearly dependent modulo constants and coboundaries (min Gram "
                  "eigenvalue " + std::to_string(lowest) + ")");
  }

  std::vector<double> a(k, 0.0);
  if (!initial.empty()) a.assign(initial.begin(), initial.end());
  Evaluation cur = evaluate(base, phi, target, a);
  std::size_t it = 0;
  for (; it < options.max_iterations && cur.norm > options.tolerance; ++it) {
    const GramMatrix jac = gram_matrix(cur.potential, phi);
    if (!(jac.min_eigenvalue() > 1e-14)) outside("the Jacobian degenerated along the iteration");
    std::vector<double> rhs(k);
    for (std::size_t i = 0; i < k; ++i) rhs[i] = -cur.residual[i];
    std::vector<double> step = solve_linear(jac.values, rhs);
    const double len = sup_norm(step);
    if (len > options.max_step)
      for (double& s : step) s *= options.max_step / len;

    bool accepted = false;
    double scale = 1.0;
    for (int halving = 0; halving < 40 && !accepted; ++halving, scale *= 0.5) {
      std::vector<double> cand(k);
      for (std::size_t i = 0; i < k; ++i) cand[i] = a[i] + scale * step[i];
      if (sup_norm(cand) > options.max_coefficient) outside("coefficients exceeded " + std::to_string(options.max_coefficient));
      try {
        Evaluation next = evaluate(base, phi, target, cand);
        if (next.norm < cur.norm) {
          a = std::move(cand);
          cur = std::move(next);
          accepted = true;
        }
      } catch (const Error&) {
        // overflow or a degenerate kernel far from the solution; shorten the step
      }
    }
    if (!accepted) {
      if (cur.norm < 1e-10) break;  // rounding floor
      outside("line search made no progress");
    }
  }
  if (cur.norm > 1e-10) outside("no convergence in " + std::to_string(options.max_iterations) + " iterations");
  // A numerically singular Jacobian at the solution means the target sits on the boundary of the rotation set.
  if (k > 0 && !(gram_matrix(cur.potential, phi).min_eigenvalue() > options.dependence_threshold))
    outside("the target lies on the boundary of the rotation set to working precision");

  Prescription p;
  p.coefficients = std::move(a);
  p.potential = std::move(cur.potential);
  p.measure = std::move(cur.measure);
  p.residual = cur.norm;
  p.iterations = it;
  return p;
}

ConstrainedEquilibrium constrained_equilibrium(const FnTable& base, std::span<const FnTable> phi,
                                               const NewtonOptions& options) {
  ConstrainedEquilibrium eq;
  if (phi.empty()) {
    eq.potential = base;
    eq.measure = gibbs_measure(base);
    eq.value = pressure(base);
    return eq;
  }
  const std::vector<double> zero(phi.size(), 0.0);
  Prescription p = prescribe(base, phi, zero, options);
  eq.potential = std::move(p.potential);
  eq.coefficients = std::move(p.coefficients);
  eq.measure = std::move(p.measure);
  eq.value = pressure(eq.potential);
  eq.iterations = p.iterations;
  return eq;
}

std::vector<SurfaceRow> entropy_surface(const FnTable& base, std::span<const FnTable> phi,
                                        std::span<const std::vector<double>> grid, const NewtonOptions& options) {
  std::vector<SurfaceRow> rows;
  rows.reserve(grid.size());
  std::vector<double> warm;
  for (const std::vector<double>& w : grid) {
    SurfaceRow row;
    row.w = w;
    try {
      Prescription p = prescribe(base, phi, w, options, warm);
      row.inside = true;
      double dotw = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) dotw += p.coefficients[k] * w[k];
      row.value = pressure(p.potential) - dotw;
      row.entropy = entropy(p.measure);
      row.coefficients = p.coefficients;
      warm = p.coefficients;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TargetOutsideRotationSet) throw;
      warm.clear();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace tfx
