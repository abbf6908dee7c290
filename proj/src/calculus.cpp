#include "tfx/calculus.hpp"

#include <algorithm>
#include <cmath>

#include "tfx/error.hpp"
#include "tfx/gibbs.hpp"
#include "tfx/kernels.hpp"
#include "tfx/transfer.hpp"

namespace tfx {

namespace {

// Normalized potential, its measure, and one resolvent factorization shared by
// every pairing of functions with memory at most max_memory.
class MetricContext {
 public:
  MetricContext(const FnTable& a, std::size_t max_memory)
      : normalized_(normalize(a)),
        mu_(gibbs_measure(normalized_)),
        resolvent_(normalized_, std::max(normalized_.memory(), max_memory) - 1) {}

  const FnTable& normalized() const { return normalized_; }
  const MarkovMeasure& measure() const { return mu_; }

  struct Prepared {
    FnTable centered;
    FnTable tail;  // sum_{i >= 1} L^i of the centered function
  };

  Prepared prepare(const FnTable& f) const {
    FnTable c = center(f, mu_);
    FnTable t = resolvent_.solve(apply_transfer(normalized_, c));
    return {std::move(c), std::move(t)};
  }

  double pair(const Prepared& x, const Prepared& y) const {
    return integrate(mu_, product(x.centered, y.centered)) + integrate(mu_, product(x.tail, y.centered)) +
           integrate(mu_, product(y.tail, x.centered));
  }

 private:
  FnTable normalized_;
  MarkovMeasure mu_;
  Resolvent resolvent_;
};

}  // namespace

double dlog_lambda(const FnTable& a, const FnTable& zeta) { return integrate(gibbs_measure(a), zeta); }

double dlog_lambda_fd(const FnTable& a, const FnTable& zeta, double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  return (pressure(a + step * zeta) - pressure(a - step * zeta)) / (2.0 * step);
}

double gibbs_derivative(const FnTable& a, const FnTable& zeta, const FnTable& phi) {
  require_same_alphabet(a, zeta);
  require_same_alphabet(a, phi);
  const FnTable na = normalize(a);
  const MarkovMeasure mu = gibbs_measure(na);
  const FnTable x = resolvent_solve(na, center(phi, mu));
  const FnTable direction = dn_projection(na, zeta);
  return integrate(mu, product(x, direction));
}

double gibbs_derivative_fd(const FnTable& a, const FnTable& zeta, const FnTable& phi, double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  const double up = integrate(gibbs_measure(a + step * zeta), phi);
  const double down = integrate(gibbs_measure(a - step * zeta), phi);
  return (up - down) / (2.0 * step);
}

double variance_metric(const FnTable& a, const FnTable& zeta, const FnTable& eta) {
  require_same_alphabet(a, zeta);
  require_same_alphabet(a, eta);
  MetricContext ctx(a, std::max(zeta.memory(), eta.memory()));
  return ctx.pair(ctx.prepare(zeta), ctx.prepare(eta));
}

double asymptotic_variance(const FnTable& a, const FnTable& zeta, std::size_t horizon) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be at least 1");
  require_same_alphabet(a, zeta);
  const FnTable na = normalize(a);
  const MarkovMeasure mu = gibbs_measure(na);
  const std::size_t q = std::max(na.memory() - 1, zeta.memory());
  const Matrix op = transfer_block_operator(na, q);
  const std::vector<double> masses = cylinder_masses(mu, q);
  const FnTable z = lift_memory(center(zeta, mu), q);

  std::vector<double> weighted(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) weighted[i] = masses[i] * z[i];

  // correlation c_k = integral of zeta_A * zeta_A o T^k = integral of L^k(zeta_A) * zeta_A
  std::vector<double> f(z.values().begin(), z.values().end());
  std::vector<double> next(f.size());
  const double n = static_cast<double>(horizon);
  double total = n * kernels::dot(weighted, f);
  for (std::size_t k = 1; k < horizon; ++k) {
    kernels::gemv(op.data(), op.rows(), op.cols(), f, next);
    f.swap(next);
    total += 2.0 * (n - static_cast<double>(k)) * kernels::dot(weighted, f);
  }
  return total / n;
}

double hessian_fd_log_lambda(const FnTable& a, const FnTable& zeta, const FnTable& eta, double step,
                             bool richardson) {
  if (!(step >= 1e-6))
    throw Error(ErrorKind::StepTooSmall, "Hessian step below 1e-6 loses the result to cancellation");
  auto mixed = [&](double h) {
    const double pp = pressure(a + h * zeta + h * eta);
    const double pm = pressure(a + h * zeta - h * eta);
    const double mp = pressure(a - h * zeta + h * eta);
    const double mm = pressure(a - h * zeta - h * eta);
    return ((pp - pm) - (mp - mm)) / (4.0 * h * h);
  };
  const double coarse = mixed(step);
  if (!richardson) return coarse;
  return (4.0 * mixed(0.5 * step) - coarse) / 3.0;
}

McVariance mc_birkhoff_variance(const FnTable& a, const FnTable& zeta, std::size_t steps, std::uint64_t seed,
                                std::size_t batches) {
  if (batches < 2 || steps < batches)
    throw Error(ErrorKind::InvalidArgument, "need at least two batches and one step per batch");
  require_same_alphabet(a, zeta);
  const MarkovMeasure mu = gibbs_measure(a);
  const FnTable z = center(zeta, mu);
  const std::size_t m = z.alphabet();
  const std::size_t p = z.memory();
  const std::size_t batch = steps / batches;
  const std::size_t used = batch * batches;
  const std::vector<Symbol> path = sample_path(mu, used + p - 1, seed);

  const std::size_t window = z.size();
  std::size_t code = 0;
  for (std::size_t i = 0; i + 1 < p; ++i) code = code * m + path[i];
  std::vector<double> means(batches, 0.0);
  for (std::size_t i = 0; i < used; ++i) {
    code = (code * m + path[i + p - 1]) % window;
    means[i / batch] += z[code];
  }
  double grand = 0.0;
  for (double& b : means) {
    b /= static_cast<double>(batch);
    grand += b;
  }
  grand /= static_cast<double>(batches);
  double ss = 0.0;
  for (double b : means) ss += (b - grand) * (b - grand);
  McVariance r;
  r.steps = used;
  r.batches = batches;
  r.estimate = static_cast<double>(batch) * ss / static_cast<double>(batches - 1);
  r.standard_error = r.estimate * std::sqrt(2.0 / static_cast<double>(batches - 1));
  return r;
}

double GramMatrix::min_eigenvalue() const {
  if (values.rows() == 0) return 0.0;
  return symmetric_eigenvalues(values).front();
}

double GramMatrix::asymmetry() const {
  double r = 0.0;
  for (std::size_t i = 0; i < values.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) r = std::max(r, std::fabs(values(i, j) - values(j, i)));
  return r;
}

GramMatrix gram_matrix(const FnTable& a, std::span<const FnTable> phi) {
  if (phi.empty()) throw Error(ErrorKind::InvalidArgument, "gram matrix needs at least one function");
  std::size_t max_memory = 1;
  for (const FnTable& f : phi) {
    require_same_alphabet(a, f);
    max_memory = std::max(max_memory, f.memory());
  }
  MetricContext ctx(a, max_memory);
  std::vector<MetricContext::Prepared> prepared;
  prepared.reserve(phi.size());
  for (const FnTable& f : phi) prepared.push_back(ctx.prepare(f));
  const std::size_t k = phi.size();
  GramMatrix g{Matrix(k, k), a};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = ctx.pair(prepared[i], prepared[j]);
      g.values(i, j) = v;
      g.values(j, i) = v;
    }
  return g;
}

}  // namespace tfx
