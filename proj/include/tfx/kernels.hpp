#pragma once
// Dense double-precision kernels behind the linear algebra of the library.
//
// Every kernel has a scalar reference implementation. When the build enables
// it and the CPU reports AVX2+FMA at runtime, a vectorized variant is used
// instead. Setting TFX_KERNELS=scalar in the environment forces the reference
// path. The two paths differ only in summation order.

#include <cstddef>
#include <span>
#include <string_view>

namespace tfx::kernels {

enum class Backend { scalar, avx2 };

struct KernelTable {
  Backend backend;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = M x, M row-major rows x cols
  void (*gemv)(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y);
  // y = M^T x, M row-major rows x cols
  void (*gemv_t)(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y);
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
// nullptr when the variant was not compiled in or the CPU lacks the features.
const KernelTable* avx2_table() noexcept;

bool cpu_has_avx2_fma() noexcept;

// The table chosen once at first use.
const KernelTable& active() noexcept;
std::string_view backend_name(Backend b) noexcept;

double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void gemv(std::span<const double> m, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y);
void gemv_t(std::span<const double> m, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace tfx::kernels
