#pragma once
// First and second derivatives of the pressure and of the Gibbs map, and the
// variance metric they define. Each quantity has an exact route through the
// resolvent and at least one independent numerical route (finite differences,
// correlation sums, Monte Carlo) used for cross-validation.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tfx/linalg.hpp"
#include "tfx/sft.hpp"

namespace tfx {

// d/dt log lambda_{A + t zeta} at t = 0, i.e. the integral of zeta against mu_A.
double dlog_lambda(const FnTable& a, const FnTable& zeta);
// Central difference of log lambda_{A + t zeta}.
double dlog_lambda_fd(const FnTable& a, const FnTable& zeta, double step = 1e-5);

// d/dt of the integral of phi against mu_{A + t zeta} at t = 0, computed as
// the integral of (I - L)^{-1}(phi_A) * DN_A(zeta).
double gibbs_derivative(const FnTable& a, const FnTable& zeta, const FnTable& phi);
double gibbs_derivative_fd(const FnTable& a, const FnTable& zeta, const FnTable& phi, double step = 1e-5);

// <zeta, eta>_A with the correlation series summed in closed form.
double variance_metric(const FnTable& a, const FnTable& zeta, const FnTable& eta);

// (1/n) * integral of (sum_{i<n} zeta_A o T^i)^2, exact for the given horizon.
double asymptotic_variance(const FnTable& a, const FnTable& zeta, std::size_t horizon);

// Mixed second central difference of log lambda along zeta and eta.
// Throws StepTooSmall below 1e-6. With richardson, combines steps h and h/2.
double hessian_fd_log_lambda(const FnTable& a, const FnTable& zeta, const FnTable& eta, double step = 1e-4,
                             bool richardson = false);

struct McVariance {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t steps = 0;
  std::size_t batches = 0;
};

// Batch-means estimate of the asymptotic variance along one sampled orbit.
McVariance mc_birkhoff_variance(const FnTable& a, const FnTable& zeta, std::size_t steps, std::uint64_t seed,
                                std::size_t batches = 1000);

struct GramMatrix {
  Matrix values;
  FnTable base;

  std::size_t size() const noexcept { return values.rows(); }
  double min_eigenvalue() const;
  double asymmetry() const;
};

GramMatrix gram_matrix(const FnTable& a, std::span<const FnTable> phi);

}  // namespace tfx
