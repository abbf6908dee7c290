#pragma once
// Gibbs measures with prescribed integrals and equilibrium states under
// linear constraints.
//
// For test functions phi_1..phi_K and a base potential B, the map
//   a -> (integral of phi_k against mu_{B + sum_j a_j phi_j})_k
// has the Gram matrix of the variance metric as its Jacobian. It is inverted
// by damped Newton iteration. Maximizing entropy plus the integral of B among
// invariant measures with all integrals zero is the same problem with target 0.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tfx/gibbs.hpp"
#include "tfx/sft.hpp"

namespace tfx {

struct ConstraintProblem {
  FnTable base;
  std::vector<FnTable> phi;
  std::vector<double> target;

  // Alphabets agree and target has one entry per function.
  void validate() const;
};

std::vector<double> rotation_vector(const MarkovMeasure& mu, std::span<const FnTable> phi);

struct NewtonOptions {
  double tolerance = 1e-13;     // on the sup-norm of the residual
  std::size_t max_iterations = 200;
  double max_coefficient = 1e3;  // beyond this the target is declared outside
  double max_step = 10.0;        // sup-norm cap on one Newton step
  double dependence_threshold = 1e-9;
};

struct Prescription {
  std::vector<double> coefficients;
  FnTable potential;  // B + sum a_k phi_k
  MarkovMeasure measure;
  double residual = 0.0;
  std::size_t iterations = 0;
};

// B + sum_k a_k phi_k
FnTable combine_potential(const FnTable& base, std::span<const FnTable> phi, std::span<const double> a);

// Throws DependentConstraints when the Gram matrix at B is singular and
// TargetOutsideRotationSet when the iteration runs away.
Prescription prescribe(const FnTable& base, std::span<const FnTable> phi, std::span<const double> target,
                       const NewtonOptions& options = {}, std::span<const double> initial = {});

struct ConstrainedEquilibrium {
  FnTable potential;  // B_0 = B + sum a_k phi_k
  std::vector<double> coefficients;
  MarkovMeasure measure;
  double value = 0.0;  // log lambda of B_0, the maximum of the pressure functional
  std::size_t iterations = 0;
};

ConstrainedEquilibrium constrained_equilibrium(const FnTable& base, std::span<const FnTable> phi,
                                               const NewtonOptions& options = {});

struct SurfaceRow {
  std::vector<double> w;
  bool inside = false;
  double value = 0.0;    // log lambda(B + a.phi) - a.w, the constrained maximum of the pressure functional
  double entropy = 0.0;  // entropy of the maximizing measure
  std::vector<double> coefficients;
};

// One row per grid point; points outside the rotation set are flagged.
std::vector<SurfaceRow> entropy_surface(const FnTable& base, std::span<const FnTable> phi,
                                        std::span<const std::vector<double>> grid,
                                        const NewtonOptions& options = {});

}  // namespace tfx
