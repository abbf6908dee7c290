#include "tfx/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_impl.hpp"

namespace tfx::kernels {

namespace {

constexpr KernelTable kScalar{Backend::scalar,
                              detail::dot_scalar,
                              detail::sum_scalar,
                              detail::axpy_scalar,
                              detail::gemv_scalar,
                              detail::gemv_t_scalar,
                              detail::max_abs_diff_scalar};

#if defined(TFX_HAVE_AVX2)
constexpr KernelTable kAvx2{Backend::avx2,
                            detail::dot_avx2,
                            detail::sum_avx2,
                            detail::axpy_avx2,
                            detail::gemv_avx2,
                            detail::gemv_t_avx2,
                            detail::max_abs_diff_avx2};
#endif

const KernelTable& select() noexcept {
  const char* env = std::getenv("TFX_KERNELS");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return kScalar;
  if (const KernelTable* t = avx2_table()) return *t;
  return kScalar;
}

void check_same(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel operands differ in length");
}

}  // namespace

bool cpu_has_avx2_fma() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(TFX_HAVE_AVX2)
  static const bool ok = cpu_has_avx2_fma();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

std::string_view backend_name(Backend b) noexcept {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_same(a.size(), b.size());
  return active().dot(a.data(), b.data(), a.size());
}

double sum(std::span<const double> a) { return active().sum(a.data(), a.size()); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  check_same(x.size(), y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

void gemv(std::span<const double> m, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y) {
  check_same(m.size(), rows * cols);
  check_same(x.size(), cols);
  check_same(y.size(), rows);
  active().gemv(m.data(), rows, cols, x.data(), y.data());
}

void gemv_t(std::span<const double> m, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
  check_same(m.size(), rows * cols);
  check_same(x.size(), rows);
  check_same(y.size(), cols);
  active().gemv_t(m.data(), rows, cols, x.data(), y.data());
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  check_same(a.size(), b.size());
  return active().max_abs_diff(a.data(), b.data(), a.size());
}

}  // namespace tfx::kernels
