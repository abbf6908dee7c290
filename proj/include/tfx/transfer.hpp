#pragma once
// Transfer (Ruelle) operators of locally constant potentials.
//
// For a potential A of memory n >= 2 the operator
//   (L_A f)(x) = sum_s e^{A(s x)} f(s x)
// maps functions of the first n-1 coordinates to themselves. As a matrix it
// acts by left multiplication on row vectors: with blocks u, v of length n-1,
//   weights(v, u) = e^{A(s u)}   where v = (s, u_0, ..., u_{n-3}),
// so (L f)(u) = sum_v f(v) weights(v, u). A is normalized exactly when every
// column of this matrix sums to one.

#include <cstddef>
#include <optional>
#include <vector>

#include "tfx/linalg.hpp"
#include "tfx/sft.hpp"

namespace tfx {

struct TransferMatrix {
  std::size_t m = 2;
  std::size_t n = 2;  // memory of the potential
  std::size_t d = 2;  // m^(n-1)
  // weights(v, u) = exp(A(s u) - log_scale)
  Matrix weights;
  double log_scale = 0.0;
};

struct RpfData {
  double lambda = 0.0;
  double log_lambda = 0.0;
  std::vector<double> h;   // left eigenvector, h L = lambda h, scaled so that <h, nu> = 1
  std::vector<double> nu;  // right eigenvector, L nu = lambda nu, a probability vector
  double gap = 0.0;        // |second eigenvalue| / lambda
  std::size_t iterations = 0;
  // Dominant root of det(L - x I) by bisection, available when d <= 64.
  std::optional<double> lambda_charpoly;
};

struct RpfOptions {
  double tolerance = 1e-13;
  std::size_t max_iterations = 100000;
};

// Memory-1 potentials are lifted to memory 2 first.
TransferMatrix transfer_matrix(const FnTable& a);
// Same structure with entries divided by exp(max A); safe for large potentials.
TransferMatrix scaled_transfer_matrix(const FnTable& a);

RpfData rpf(const TransferMatrix& l, const RpfOptions& options = {});

struct Normalization {
  FnTable potential;
  RpfData eigendata;
};

// N(A) = A + log h - log h o T - log lambda
FnTable normalize(const FnTable& a);
Normalization normalize_with_data(const FnTable& a);

// Largest deviation of a column sum of exp(A) from one.
double normalization_defect(const FnTable& a);
bool is_normalized(const FnTable& a, double tol = 1e-9);

// L_A f, of memory max(n_A, n_f, 2) - 1.
FnTable apply_transfer(const FnTable& a, const FnTable& f);

// L_A acting on functions of q-blocks (q >= n_A - 1) as op(u, v), so that
// (L f)(u) = sum_v op(u, v) f(v).
Matrix transfer_block_operator(const FnTable& a, std::size_t block_length);

// (I - L_A)^{-1} restricted to mean-zero functions of q-blocks, for a
// normalized A. Factorizes once; solve() may be called repeatedly.
class Resolvent {
 public:
  Resolvent(const FnTable& normalized, std::size_t block_length);

  std::size_t block_length() const noexcept { return q_; }
  const std::vector<double>& block_masses() const noexcept { return masses_; }
  const FnTable& potential() const noexcept { return a_; }

  // Returns x with (I - L) x = b and integral of x equal to zero.
  FnTable solve(const FnTable& b) const;
  // L restricted to q-blocks, as a dense matrix op(u, v).
  const Matrix& operator_matrix() const noexcept { return op_; }

 private:
  FnTable a_;
  std::size_t q_;
  Matrix op_;
  std::vector<double> masses_;
  std::optional<LuDecomposition> lu_;
};

FnTable resolvent_solve(const FnTable& normalized, const FnTable& b);

// M_A(f) = -(I - L_A)^{-1} L_A(f - integral of f)
FnTable m_operator(const FnTable& normalized, const FnTable& f);

struct QuotientParts {
  FnTable ell;  // in ker L_A
  FnTable g;    // mean zero
  double c = 0.0;
};

// f = ell + g - g o T + c
QuotientParts quotient_decompose(const FnTable& normalized, const FnTable& f);

// Projection onto ker L_A along constants plus coboundaries.
FnTable dn_projection(const FnTable& normalized, const FnTable& zeta);

}  // namespace tfx
