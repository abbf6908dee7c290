#pragma once
// Full shifts on a finite alphabet and locally constant functions on them.
//
// Symbols are 0..m-1. A word w_0 w_1 ... w_{k-1} is encoded big-endian,
// code = sum_i w_i m^(k-1-i), so every prefix cylinder is a contiguous range
// of codes. A function with memory n depends on the first n coordinates of a
// point and is stored as a table over the m^n words of length n.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tfx {

using Symbol = std::uint32_t;

// Largest table (m^n entries) a FnTable may hold. Defaults to 4096, i.e.
// memory 12 on two symbols.
std::size_t max_table_size() noexcept;
void set_max_table_size(std::size_t entries) noexcept;

// m^k with overflow and table-size checks.
std::size_t checked_pow(std::size_t m, std::size_t k);
// Same as checked_pow against an explicit entry limit.
std::size_t checked_pow(std::size_t m, std::size_t k, std::size_t limit);

struct ShiftSpec {
  std::size_t m = 2;

  explicit ShiftSpec(std::size_t alphabet);
};

struct Word {
  std::size_t length = 0;
  std::size_t code = 0;

  friend bool operator==(const Word&, const Word&) = default;
};

Word word_index(std::size_t m, std::span<const Symbol> symbols);
std::vector<Symbol> word_symbols(std::size_t m, Word w);

// Locally constant function of the first `memory` coordinates.
class FnTable {
 public:
  FnTable() = default;
  FnTable(std::size_t m, std::size_t memory, std::vector<double> values);

  static FnTable constant(std::size_t m, std::size_t memory, double c);
  static FnTable zeros(std::size_t m, std::size_t memory) { return constant(m, memory, 0.0); }
  // Indicator of the cylinder spelled by `prefix`; memory = prefix length.
  static FnTable indicator(std::size_t m, std::span<const Symbol> prefix);

  std::size_t alphabet() const noexcept { return m_; }
  std::size_t memory() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](std::size_t code) const noexcept { return values_[code]; }
  double& operator[](std::size_t code) noexcept { return values_[code]; }
  double at(std::span<const Symbol> word) const;

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

 private:
  std::size_t m_ = 2;
  std::size_t n_ = 1;
  std::vector<double> values_;
};

void require_same_alphabet(const FnTable& a, const FnTable& b);

// Same function viewed as depending on the first `memory` coordinates.
FnTable lift_memory(const FnTable& f, std::size_t memory);

// f o T, of memory n+1.
FnTable compose_shift(const FnTable& f);

// A + g - g o T + c at memory max(n, k+1).
FnTable add_coboundary(const FnTable& a, const FnTable& g, double c);

// Pointwise arithmetic at the common memory.
FnTable operator+(const FnTable& a, const FnTable& b);
FnTable operator-(const FnTable& a, const FnTable& b);
FnTable operator*(double s, const FnTable& a);
FnTable operator+(const FnTable& a, double c);
FnTable operator-(const FnTable& a, double c);
FnTable product(const FnTable& a, const FnTable& b);

double max_abs_difference(const FnTable& a, const FnTable& b);
double max_abs(const FnTable& a);

}  // namespace tfx
