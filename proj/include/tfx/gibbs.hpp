#pragma once
// Gibbs measures of locally constant potentials, represented as stationary
// finite-order Markov measures, together with entropy and pressure.
//
// A measure of order k stores the stationary mass pi(u) of each k-block and a
// backward kernel trans(v, u): the probability of prepending the symbol s to a
// point starting with u, where v is the k-block that then starts the point.
// Cylinder masses follow mu([s w]) = trans(prefix_k(s w), prefix_k(w)) mu([w]).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tfx/linalg.hpp"
#include "tfx/sft.hpp"

namespace tfx {

class MarkovMeasure {
 public:
  MarkovMeasure() = default;
  // Validates shapes, stochasticity, structural support and stationarity.
  MarkovMeasure(std::size_t m, std::size_t order, std::vector<double> pi, Matrix trans);

  std::size_t alphabet() const noexcept { return m_; }
  std::size_t order() const noexcept { return k_; }
  std::size_t blocks() const noexcept { return pi_.size(); }
  const std::vector<double>& pi() const noexcept { return pi_; }
  const Matrix& trans() const noexcept { return trans_; }

 private:
  std::size_t m_ = 2;
  std::size_t k_ = 1;
  std::vector<double> pi_;
  Matrix trans_;
};

MarkovMeasure gibbs_measure(const FnTable& a);

double cylinder_mass(const MarkovMeasure& mu, Word w);
inline constexpr std::size_t kMaxCylinderEntries = std::size_t{1} << 24;
// Masses of all cylinders of the given length, indexed by word code.
std::vector<double> cylinder_masses(const MarkovMeasure& mu, std::size_t length);

double integrate(const MarkovMeasure& mu, const FnTable& phi);

// zeta minus its integral.
FnTable center(const FnTable& zeta, const MarkovMeasure& mu);

double entropy(const MarkovMeasure& mu);
// log of the leading eigenvalue of the transfer operator.
double pressure(const FnTable& b);
// entropy(mu) + integral of B
double p_functional(const FnTable& b, const MarkovMeasure& mu);
// (log lambda_A - integral of A against nu) - entropy(nu); never negative.
double legendre_gap(const MarkovMeasure& nu, const FnTable& a);

// A stationary realization x_0 ... x_{length-1}, drawn as a reverse orbit.
std::vector<Symbol> sample_path(const MarkovMeasure& mu, std::size_t length, std::uint64_t seed);

// log of the kernel as a potential of memory order+1; its Gibbs measure is mu
// when the kernel is strictly positive on its support.
FnTable kernel_potential(const MarkovMeasure& mu);

}  // namespace tfx
