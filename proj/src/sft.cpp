#include "tfx/sft.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "tfx/error.hpp"

namespace tfx {

namespace {

std::atomic<std::size_t> g_max_table_size{4096};

}  // namespace

std::size_t max_table_size() noexcept { return g_max_table_size.load(std::memory_order_relaxed); }

void set_max_table_size(std::size_t entries) noexcept {
  g_max_table_size.store(entries, std::memory_order_relaxed);
}

std::size_t checked_pow(std::size_t m, std::size_t k, std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (r > limit / m)
      throw Error(ErrorKind::MemoryOverflow, "table of " + std::to_string(m) + "^" + std::to_string(k) +
                                                 " entries exceeds the limit of " + std::to_string(limit));
    r *= m;
  }
  return r;
}

std::size_t checked_pow(std::size_t m, std::size_t k) { return checked_pow(m, k, max_table_size()); }

ShiftSpec::ShiftSpec(std::size_t alphabet) : m(alphabet) {
  if (alphabet < 2) throw Error(ErrorKind::InvalidArgument, "alphabet size must be at least 2");
}

Word word_index(std::size_t m, std::span<const Symbol> symbols) {
  ShiftSpec spec(m);
  std::size_t code = 0;
  for (Symbol s : symbols) {
    if (s >= spec.m)
      throw Error(ErrorKind::SymbolOutOfRange,
                  "symbol " + std::to_string(s) + " outside alphabet of size " + std::to_string(m));
    if (code > (std::numeric_limits<std::size_t>::max() - s) / m)
      throw Error(ErrorKind::MemoryOverflow, "word too long to encode");
    code = code * m + s;
  }
  return Word{symbols.size(), code};
}

std::vector<Symbol> word_symbols(std::size_t m, Word w) {
  ShiftSpec spec(m);
  std::vector<Symbol> out(w.length);
  std::size_t code = w.code;
  for (std::size_t i = w.length; i-- > 0;) {
    out[i] = static_cast<Symbol>(code % spec.m);
    code /= spec.m;
  }
  if (code != 0) throw Error(ErrorKind::SymbolOutOfRange, "word code exceeds m^length");
  return out;
}

FnTable::FnTable(std::size_t m, std::size_t memory, std::vector<double> values)
    : m_(ShiftSpec(m).m), n_(memory), values_(std::move(values)) {
  if (memory < 1) throw Error(ErrorKind::InvalidArgument, "memory must be at least 1");
  if (values_.size() != checked_pow(m, memory))
    throw Error(ErrorKind::InvalidArgument, "table length " + std::to_string(values_.size()) +
                                                " does not match m^memory");
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "table values must be finite");
}

FnTable FnTable::constant(std::size_t m, std::size_t memory, double c) {
  return FnTable(m, memory, std::vector<double>(checked_pow(m, memory), c));
}

FnTable FnTable::indicator(std::size_t m, std::span<const Symbol> prefix) {
  if (prefix.empty()) return constant(m, 1, 1.0);
  Word w = word_index(m, prefix);
  FnTable f = zeros(m, prefix.size());
  f[w.code] = 1.0;
  return f;
}

double FnTable::at(std::span<const Symbol> word) const {
  if (word.size() != n_) throw Error(ErrorKind::InvalidArgument, "word length differs from memory");
  return values_[word_index(m_, word).code];
}

void require_same_alphabet(const FnTable& a, const FnTable& b) {
  if (a.alphabet() != b.alphabet())
    throw Error(ErrorKind::AlphabetMismatch, "alphabet sizes " + std::to_string(a.alphabet()) + " and " +
                                                 std::to_string(b.alphabet()) + " differ");
}

FnTable lift_memory(const FnTable& f, std::size_t memory) {
  if (memory < f.memory())
    throw Error(ErrorKind::InvalidArgument, "cannot lift memory " + std::to_string(f.memory()) + " down to " +
                                                std::to_string(memory));
  if (memory == f.memory()) return f;
  const std::size_t m = f.alphabet();
  const std::size_t tail = checked_pow(m, memory - f.memory());
  std::vector<double> out(checked_pow(m, memory));
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = f[c / tail];
  return FnTable(m, memory, std::move(out));
}

FnTable compose_shift(const FnTable& f) {
  const std::size_t m = f.alphabet();
  const std::size_t inner = f.size();
  std::vector<double> out(checked_pow(m, f.memory() + 1));
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = f[c % inner];
  return FnTable(m, f.memory() + 1, std::move(out));
}

FnTable add_coboundary(const FnTable& a, const FnTable& g, double c) {
  require_same_alphabet(a, g);
  return (a + (g - compose_shift(g))) + c;
}

namespace {

template <class Op>
FnTable combine(const FnTable& a, const FnTable& b, Op op) {
  require_same_alphabet(a, b);
  const std::size_t n = std::max(a.memory(), b.memory());
  FnTable la = lift_memory(a, n);
  const FnTable lb = lift_memory(b, n);
  for (std::size_t c = 0; c < la.size(); ++c) la[c] = op(la[c], lb[c]);
  return la;
}

}  // namespace

FnTable operator+(const FnTable& a, const FnTable& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

FnTable operator-(const FnTable& a, const FnTable& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

FnTable product(const FnTable& a, const FnTable& b) {
  return combine(a, b, [](double x, double y) { return x * y; });
}

FnTable operator*(double s, const FnTable& a) {
  FnTable r = a;
  for (double& v : r.values()) v *= s;
  return r;
}

FnTable operator+(const FnTable& a, double c) {
  FnTable r = a;
  for (double& v : r.values()) v += c;
  return r;
}

FnTable operator-(const FnTable& a, double c) { return a + (-c); }

double max_abs_difference(const FnTable& a, const FnTable& b) {
  const FnTable d = a - b;
  return max_abs(d);
}

double max_abs(const FnTable& a) {
  double r = 0.0;
  for (double v : a.values()) r = std::max(r, std::fabs(v));
  return r;
}

}  // namespace tfx
