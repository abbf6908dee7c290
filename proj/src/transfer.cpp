#include "tfx/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tfx/error.hpp"
#include "tfx/gibbs.hpp"
#include "tfx/kernels.hpp"

namespace tfx {

namespace {

FnTable lifted_potential(const FnTable& a) { return lift_memory(a, std::max<std::size_t>(a.memory(), 2)); }

TransferMatrix build_transfer(const FnTable& a, bool scaled) {
  const FnTable a2 = lifted_potential(a);
  TransferMatrix t;
  t.m = a2.alphabet();
  t.n = a2.memory();
  t.d = checked_pow(t.m, t.n - 1);
  t.weights = Matrix(t.d, t.d);
  if (scaled) t.log_scale = *std::max_element(a2.values().begin(), a2.values().end());
  for (std::size_t w = 0; w < a2.size(); ++w) {
    const std::size_t u = w % t.d;
    const std::size_t v = w / t.m;
    t.weights(v, u) = std::exp(a2[w] - t.log_scale);
  }
  return t;
}

void scale_to_unit_sum(std::vector<double>& x) {
  const double s = kernels::sum(x);
  for (double& v : x) v /= s;
}

// Spectral radius of L restricted to the complement of the Perron direction,
// estimated from the growth rate of the deflated iteration.
double second_modulus(const Matrix& w, const std::vector<double>& h, const std::vector<double>& nu) {
  const std::size_t d = nu.size();
  std::vector<double> x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.3);
  auto deflate = [&](std::vector<double>& y) { kernels::axpy(-kernels::dot(h, y), nu, y); };
  deflate(x);
  double nrm = 0.0;
  for (double v : x) nrm = std::max(nrm, std::fabs(v));
  if (nrm == 0.0) return 0.0;
  for (double& v : x) v /= nrm;

  constexpr int kWarmup = 100;
  constexpr int kSteps = 200;
  double log_sum = 0.0;
  int counted = 0;
  for (int k = 0; k < kSteps; ++k) {
    std::vector<double> y = w.apply(x);
    deflate(y);
    nrm = 0.0;
    for (double v : y) nrm = std::max(nrm, std::fabs(v));
    if (nrm == 0.0 || !std::isfinite(nrm)) return 0.0;
    if (k >= kWarmup) {
      log_sum += std::log(nrm);
      ++counted;
    }
    for (std::size_t i = 0; i < d; ++i) x[i] = y[i] / nrm;
  }
  return std::exp(log_sum / counted);
}

int det_sign_shifted(const Matrix& w, double x) {
  Matrix a = w;
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) -= x;
  return LuDecomposition(std::move(a)).determinant_sign();
}

std::optional<double> charpoly_root(const Matrix& w, double lambda, double gap) {
  const double delta = std::min(1e-6, 0.25 * (1.0 - gap)) * lambda;
  double lo = lambda - delta;
  double hi = lambda + delta;
  int slo = det_sign_shifted(w, lo);
  const int shi = det_sign_shifted(w, hi);
  if (slo == 0) return lo;
  if (shi == 0) return hi;
  if (slo == shi) return std::nullopt;
  for (int it = 0; it < 80 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * lambda; ++it) {
    const double mid = 0.5 * (lo + hi);
    const int s = det_sign_shifted(w, mid);
    if (s == 0) return mid;
    if (s == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TransferMatrix transfer_matrix(const FnTable& a) { return build_transfer(a, false); }

TransferMatrix scaled_transfer_matrix(const FnTable& a) { return build_transfer(a, true); }

namespace {

double max_relative_change(std::span<const double> next, std::span<const double> prev) {
  double worst = 0.0;
  for (std::size_t i = 0; i < next.size(); ++i) {
    const double r = std::fabs(next[i] - prev[i]) / std::max(std::fabs(prev[i]), std::numeric_limits<double>::min());
    if (std::isnan(r)) return r;
    worst = std::max(worst, r);
  }
  return worst;
}

constexpr double kRoundingFloor = 1e-11;

}  // namespace

RpfData rpf(const TransferMatrix& l, const RpfOptions& options) {
  const std::size_t d = l.d;
  const Matrix& w = l.weights;
  std::vector<double> nu(d, 1.0 / static_cast<double>(d));
  std::vector<double> h(d, 1.0 / static_cast<double>(d));
  std::vector<double> nu_next(d);
  std::vector<double> h_next(d);

  bool converged = false;
  bool polishing = false;
  double last = std::numeric_limits<double>::infinity();
  double best = last;
  std::size_t best_at = 0;
  std::size_t it = 0;
  while (it < options.max_iterations) {
    ++it;
    kernels::gemv(w.data(), d, d, nu, nu_next);
    kernels::gemv_t(w.data(), d, d, h, h_next);
    scale_to_unit_sum(nu_next);
    scale_to_unit_sum(h_next);
    // Relative change, so that small entries of h and nu converge as well.
    const double dist = std::max(max_relative_change(nu_next, nu), max_relative_change(h_next, h));
    if (!std::isfinite(dist)) throw Error(ErrorKind::NonConvergence, "power iteration produced non-finite values");
    if (polishing && dist >= last) {
      converged = true;
      break;
    }
    nu.swap(nu_next);
    h.swap(h_next);
    if (dist == 0.0) {
      converged = true;
      break;
    }
    // Past the tolerance, keep iterating while the iterates still move less
    // each step; this drives the eigenvectors to rounding level.
    if (dist < options.tolerance) polishing = true;
    last = dist;
    // Some iterations settle into a rounding cycle just above the tolerance.
    if (dist < best) {
      best = dist;
      best_at = it;
    } else if (best < kRoundingFloor && it - best_at > 1000) {
      converged = true;
      break;
    }
  }
  if (!converged && !polishing)
    throw Error(ErrorKind::NonConvergence,
                "power iteration did not converge in " + std::to_string(options.max_iterations) + " iterations");

  const std::vector<double> lnu = w.apply(nu);
  const double hn = kernels::dot(h, nu);
  const double lambda_w = kernels::dot(h, lnu) / hn;
  for (double& v : h) v /= hn;

  RpfData r;
  r.iterations = it;
  r.log_lambda = std::log(lambda_w) + l.log_scale;
  r.lambda = std::exp(r.log_lambda);
  r.gap = std::min(second_modulus(w, h, nu) / lambda_w, 1.0 - std::numeric_limits<double>::epsilon());
  if (d <= 64) {
    auto root = charpoly_root(w, lambda_w, r.gap);
    if (!root)
      throw Error(ErrorKind::NonConvergence, "leading eigenvalue not confirmed by the characteristic polynomial");
    r.lambda_charpoly = *root * std::exp(l.log_scale);
  }
  r.h = std::move(h);
  r.nu = std::move(nu);
  return r;
}

Normalization normalize_with_data(const FnTable& a) {
  const FnTable a2 = lifted_potential(a);
  RpfData data = rpf(scaled_transfer_matrix(a2));
  const std::size_t m = a2.alphabet();
  const std::size_t d = data.h.size();
  std::vector<double> log_h(d);
  for (std::size_t i = 0; i < d; ++i) log_h[i] = std::log(data.h[i]);
  std::vector<double> out(a2.size());
  for (std::size_t w = 0; w < a2.size(); ++w) {
    const std::size_t u = w % d;
    const std::size_t v = w / m;
    out[w] = a2[w] + log_h[v] - log_h[u] - data.log_lambda;
  }
  return {FnTable(m, a2.memory(), std::move(out)), std::move(data)};
}

FnTable normalize(const FnTable& a) { return normalize_with_data(a).potential; }

double normalization_defect(const FnTable& a) {
  const FnTable a2 = lifted_potential(a);
  const std::size_t d = a2.size() / a2.alphabet();
  std::vector<double> col(d, 0.0);
  for (std::size_t w = 0; w < a2.size(); ++w) col[w % d] += std::exp(a2[w]);
  double worst = 0.0;
  for (double c : col) worst = std::max(worst, std::fabs(c - 1.0));
  return worst;
}

bool is_normalized(const FnTable& a, double tol) { return normalization_defect(a) <= tol; }

FnTable apply_transfer(const FnTable& a, const FnTable& f) {
  require_same_alphabet(a, f);
  const std::size_t m = a.alphabet();
  const std::size_t r = std::max({a.memory(), f.memory(), std::size_t{2}}) - 1;
  const FnTable la = lift_memory(a, r + 1);
  const FnTable lf = lift_memory(f, r + 1);
  const std::size_t d = checked_pow(m, r);
  std::vector<double> out(d, 0.0);
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t u = 0; u < d; ++u) {
      const std::size_t w = s * d + u;
      out[u] += std::exp(la[w]) * lf[w];
    }
  return FnTable(m, r, std::move(out));
}

Matrix transfer_block_operator(const FnTable& a, std::size_t block_length) {
  const FnTable a2 = lifted_potential(a);
  const std::size_t n = a2.memory();
  if (block_length + 1 < n)
    throw Error(ErrorKind::InvalidArgument, "block length shorter than the potential's memory - 1");
  const std::size_t m = a2.alphabet();
  const std::size_t d = checked_pow(m, block_length);
  const std::size_t drop = checked_pow(m, block_length + 1 - n);
  Matrix op(d, d);
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t s = 0; s < m; ++s) {
      const std::size_t w = s * d + u;
      op(u, w / m) += std::exp(a2[w / drop]);
    }
  return op;
}

Resolvent::Resolvent(const FnTable& normalized, std::size_t block_length)
    : a_(lifted_potential(normalized)), q_(block_length) {
  if (normalization_defect(a_) > 1e-9)
    throw Error(ErrorKind::NotNormalized, "resolvent requires a normalized potential");
  op_ = transfer_block_operator(a_, q_);
  const std::size_t d = op_.rows();
  masses_ = cylinder_masses(gibbs_measure(a_), q_);

  Matrix sys(d, d);
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v) sys(u, v) = (u == v ? 1.0 : 0.0) - op_(u, v) + masses_[v];
  lu_.emplace(std::move(sys));
  if (lu_->singular()) throw Error(ErrorKind::NonConvergence, "resolvent system is singular");
}

FnTable Resolvent::solve(const FnTable& b) const {
  require_same_alphabet(a_, b);
  if (b.memory() > q_) throw Error(ErrorKind::InvalidArgument, "right-hand side has memory beyond the block length");
  const FnTable lb = lift_memory(b, q_);
  const double mean = kernels::dot(masses_, lb.values());
  const double scale = std::max(1.0, max_abs(lb));
  if (std::fabs(mean) > 1e-10 * scale)
    throw Error(ErrorKind::NotMeanZero, "resolvent right-hand side integrates to " + std::to_string(mean));
  return FnTable(a_.alphabet(), q_, lu_->solve(lb.values()));
}

FnTable resolvent_solve(const FnTable& normalized, const FnTable& b) {
  const std::size_t q = std::max({lifted_potential(normalized).memory() - 1, b.memory()});
  return Resolvent(normalized, q).solve(b);
}

FnTable m_operator(const FnTable& normalized, const FnTable& f) {
  const MarkovMeasure mu = gibbs_measure(normalized);
  const FnTable lf = apply_transfer(normalized, center(f, mu));
  return -1.0 * resolvent_solve(normalized, lf);
}

QuotientParts quotient_decompose(const FnTable& normalized, const FnTable& f) {
  const MarkovMeasure mu = gibbs_measure(normalized);
  QuotientParts parts;
  parts.c = integrate(mu, f);
  parts.g = m_operator(normalized, f);
  parts.ell = (f - parts.g + compose_shift(parts.g)) - parts.c;
  return parts;
}

FnTable dn_projection(const FnTable& normalized, const FnTable& zeta) {
  const MarkovMeasure mu = gibbs_measure(normalized);
  const FnTable centered = center(zeta, mu);
  const FnTable g = resolvent_solve(normalized, apply_transfer(normalized, centered));
  return centered + (g - compose_shift(g));
}

}  // namespace tfx
