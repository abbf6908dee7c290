#include "tfx/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfx/error.hpp"
#include "tfx/kernels.hpp"
#include "tfx/rng.hpp"
#include "tfx/transfer.hpp"

namespace tfx {

namespace {

constexpr double kValidationTol = 1e-9;

}  // namespace

MarkovMeasure::MarkovMeasure(std::size_t m, std::size_t order, std::vector<double> pi, Matrix trans)
    : m_(ShiftSpec(m).m), k_(order), pi_(std::move(pi)), trans_(std::move(trans)) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "Markov order must be at least 1");
  const std::size_t d = checked_pow(m, order);
  if (pi_.size() != d || trans_.rows() != d || trans_.cols() != d)
    throw Error(ErrorKind::InvalidArgument, "Markov measure arrays do not match m^order");
  double total = 0.0;
  for (double p : pi_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidArgument, "pi must be nonnegative");
    total += p;
  }
  if (std::fabs(total - 1.0) > kValidationTol) throw Error(ErrorKind::InvalidArgument, "pi must sum to one");
  const std::size_t inner = d / m;
  for (std::size_t u = 0; u < d; ++u) {
    double col = 0.0;
    for (std::size_t v = 0; v < d; ++v) {
      const double t = trans_(v, u);
      if (!(t >= 0.0) || !std::isfinite(t))
        throw Error(ErrorKind::InvalidArgument, "transition weights must be nonnegative");
      if (v % inner != u / m && t != 0.0)
        throw Error(ErrorKind::InvalidArgument, "transition weight outside the structural support");
      col += t;
    }
    if (std::fabs(col - 1.0) > kValidationTol)
      throw Error(ErrorKind::InvalidArgument, "every column of trans must sum to one");
  }
  const std::vector<double> tp = trans_.apply(pi_);
  if (kernels::max_abs_diff(tp, pi_) > kValidationTol)
    throw Error(ErrorKind::InvalidArgument, "pi is not stationary for trans");
}

MarkovMeasure gibbs_measure(const FnTable& a) {
  Normalization norm = normalize_with_data(a);
  const FnTable& na = norm.potential;
  const std::size_t m = na.alphabet();
  const std::size_t k = na.memory() - 1;
  const std::size_t d = norm.eigendata.h.size();
  Matrix trans(d, d);
  for (std::size_t w = 0; w < na.size(); ++w) trans(w / m, w % d) = std::exp(na[w]);
  std::vector<double> pi(d);
  for (std::size_t i = 0; i < d; ++i) pi[i] = norm.eigendata.h[i] * norm.eigendata.nu[i];
  const double s = kernels::sum(pi);
  for (double& p : pi) p /= s;
  return MarkovMeasure(m, k, std::move(pi), std::move(trans));
}

std::vector<double> cylinder_masses(const MarkovMeasure& mu, std::size_t length) {
  const std::size_t m = mu.alphabet();
  const std::size_t k = mu.order();
  const auto& pi = mu.pi();
  if (length <= k) {
    const std::size_t tail = checked_pow(m, k - length);
    std::vector<double> out(checked_pow(m, length), 0.0);
    for (std::size_t c = 0; c < pi.size(); ++c) out[c / tail] += pi[c];
    return out;
  }
  // Cylinder vectors are not potential tables; they may exceed the table
  // limit up to 2^24 entries so dyadic projections stay reachable.
  checked_pow(m, length, kMaxCylinderEntries);
  std::vector<double> cur = pi;
  for (std::size_t len = k + 1; len <= length; ++len) {
    const std::size_t prev_size = cur.size();
    const std::size_t shift_u = checked_pow(m, len - 1 - k, kMaxCylinderEntries);
    const std::size_t shift_v = shift_u * m;
    std::vector<double> next(prev_size * m);
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t c2 = 0; c2 < prev_size; ++c2) {
        const std::size_t c = s * prev_size + c2;
        next[c] = mu.trans()(c / shift_v, c2 / shift_u) * cur[c2];
      }
    cur.swap(next);
  }
  return cur;
}

double cylinder_mass(const MarkovMeasure& mu, Word w) {
  const std::size_t m = mu.alphabet();
  const std::size_t k = mu.order();
  if (w.length <= k) {
    const std::size_t tail = checked_pow(m, k - w.length);
    const std::size_t begin = w.code * tail;
    if (begin >= mu.pi().size()) throw Error(ErrorKind::SymbolOutOfRange, "word code exceeds m^length");
    double s = 0.0;
    for (std::size_t j = 0; j < tail; ++j) s += mu.pi()[begin + j];
    return s;
  }
  const std::vector<Symbol> sym = word_symbols(m, w);
  const std::size_t d = mu.blocks();
  std::size_t u = word_index(m, std::span<const Symbol>(sym).subspan(w.length - k)).code;
  double mass = mu.pi()[u];
  for (std::size_t i = w.length - k; i-- > 0;) {
    const std::size_t v = sym[i] * (d / m) + u / m;
    mass *= mu.trans()(v, u);
    u = v;
  }
  return mass;
}

double integrate(const MarkovMeasure& mu, const FnTable& phi) {
  if (phi.alphabet() != mu.alphabet()) throw Error(ErrorKind::AlphabetMismatch, "measure and function alphabets differ");
  const std::vector<double> masses = cylinder_masses(mu, phi.memory());
  return kernels::dot(masses, phi.values());
}

FnTable center(const FnTable& zeta, const MarkovMeasure& mu) { return zeta - integrate(mu, zeta); }

double entropy(const MarkovMeasure& mu) {
  const std::size_t d = mu.blocks();
  double h = 0.0;
  for (std::size_t v = 0; v < d; ++v)
    for (std::size_t u = 0; u < d; ++u) {
      const double t = mu.trans()(v, u);
      if (t > 0.0) h -= t * std::log(t) * mu.pi()[u];
    }
  return std::max(h, 0.0);
}

double pressure(const FnTable& b) { return rpf(scaled_transfer_matrix(b)).log_lambda; }

double p_functional(const FnTable& b, const MarkovMeasure& mu) { return entropy(mu) + integrate(mu, b); }

double legendre_gap(const MarkovMeasure& nu, const FnTable& a) {
  return (pressure(a) - integrate(nu, a)) - entropy(nu);
}

std::vector<Symbol> sample_path(const MarkovMeasure& mu, std::size_t length, std::uint64_t seed) {
  if (length < 1) throw Error(ErrorKind::InvalidArgument, "path length must be at least 1");
  const std::size_t m = mu.alphabet();
  const std::size_t k = mu.order();
  const std::size_t d = mu.blocks();
  Rng rng(seed);

  auto draw = [&](auto&& weight, std::size_t count) {
    const double r = rng.uniform();
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const double p = weight(i);
      if (p <= 0.0) continue;
      last = i;
      acc += p;
      if (r < acc) return i;
    }
    return last;
  };

  std::size_t u = draw([&](std::size_t i) { return mu.pi()[i]; }, d);
  const std::vector<Symbol> block = word_symbols(m, Word{k, u});
  std::vector<Symbol> path(std::max(length, k));
  const std::size_t total = path.size();
  std::copy(block.begin(), block.end(), path.begin() + static_cast<std::ptrdiff_t>(total - k));
  for (std::size_t i = total - k; i-- > 0;) {
    const std::size_t base = u / m;
    const std::size_t s = draw([&](std::size_t sym) { return mu.trans()(sym * (d / m) + base, u); }, m);
    path[i] = static_cast<Symbol>(s);
    u = s * (d / m) + base;
  }
  path.resize(length);
  return path;
}

FnTable kernel_potential(const MarkovMeasure& mu) {
  const std::size_t m = mu.alphabet();
  const std::size_t d = mu.blocks();
  std::vector<double> values(d * m);
  for (std::size_t w = 0; w < values.size(); ++w) {
    const double t = mu.trans()(w / m, w % d);
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "kernel has a zero on its structural support");
    values[w] = std::log(t);
  }
  return FnTable(m, mu.order() + 1, std::move(values));
}

}  // namespace tfx
