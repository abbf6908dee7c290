#include "tfx/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tfx/error.hpp"
#include "tfx/kernels.hpp"

namespace tfx {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
  std::vector<double> y(rows_);
  kernels::gemv(data_, rows_, cols_, x, y);
  return y;
}

std::vector<double> Matrix::apply_transposed(std::span<const double> x) const {
  std::vector<double> y(cols_);
  kernels::gemv_t(data_, rows_, cols_, x, y);
  return y;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

LuDecomposition::LuDecomposition(Matrix a) : lu_(std::move(a)) {
  const std::size_t n = lu_.rows();
  if (lu_.cols() != n) throw Error(ErrorKind::InvalidArgument, "LU needs a square matrix");
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  double max_pivot = 0.0;
  double min_pivot = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::fabs(lu_(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      double v = std::fabs(lu_(r, k));
      if (v > best) {
        best = v;
        p = r;
      }
    }
    max_pivot = std::max(max_pivot, best);
    min_pivot = std::min(min_pivot, best);
    if (best == 0.0) {
      singular_ = true;
      continue;
    }
    if (p != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
      std::swap(perm_[k], perm_[p]);
      perm_sign_ = -perm_sign_;
    }
    const double pivot = lu_(k, k);
    auto pivot_tail = lu_.row(k).subspan(k + 1);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = lu_(r, k) / pivot;
      lu_(r, k) = f;
      if (f != 0.0) kernels::axpy(-f, pivot_tail, lu_.row(r).subspan(k + 1));
    }
  }
  pivot_ratio_ = (n == 0 || max_pivot == 0.0) ? 0.0 : min_pivot / max_pivot;
}

int LuDecomposition::determinant_sign() const noexcept {
  if (singular_) return 0;
  int s = perm_sign_;
  for (std::size_t k = 0; k < lu_.rows(); ++k)
    if (lu_(k, k) < 0.0) s = -s;
  return s;
}

std::vector<double> LuDecomposition::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw Error(ErrorKind::InvalidArgument, "right-hand side has wrong length");
  if (singular_) throw Error(ErrorKind::InvalidArgument, "matrix is singular");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
    x[i] = s / lu_(i, i);
  }
  return x;
}

std::vector<double> solve_linear(const Matrix& a, std::span<const double> b) {
  return LuDecomposition(a).solve(b);
}

std::vector<double> symmetric_eigenvalues(const Matrix& input) {
  const std::size_t n = input.rows();
  if (input.cols() != n) throw Error(ErrorKind::InvalidArgument, "eigenvalues need a square matrix");
  Matrix a = input;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-300) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace tfx
