#pragma once
// Small dense linear algebra: a row-major matrix, LU with partial pivoting and
// a cyclic Jacobi eigensolver for symmetric matrices.

#include <cstddef>
#include <span>
#include <vector>

namespace tfx {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  // y = M x and y = M^T x
  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> apply_transposed(std::span<const double> x) const;

  Matrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// LU factorization PA = LU with partial pivoting.
class LuDecomposition {
 public:
  explicit LuDecomposition(Matrix a);

  bool singular() const noexcept { return singular_; }
  // Smallest |pivot| divided by the largest; a cheap conditioning signal.
  double pivot_ratio() const noexcept { return pivot_ratio_; }
  // +1, -1 or 0.
  int determinant_sign() const noexcept;

  std::vector<double> solve(std::span<const double> b) const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  int perm_sign_ = 1;
  bool singular_ = false;
  double pivot_ratio_ = 0.0;
};

std::vector<double> solve_linear(const Matrix& a, std::span<const double> b);

// Eigenvalues of a symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

}  // namespace tfx
