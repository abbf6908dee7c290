#pragma once

#include <cstddef>

namespace tfx::kernels::detail {

double dot_scalar(const double* a, const double* b, std::size_t n);
double sum_scalar(const double* a, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
void gemv_scalar(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y);
void gemv_t_scalar(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y);
double max_abs_diff_scalar(const double* a, const double* b, std::size_t n);

#if defined(TFX_HAVE_AVX2)
double dot_avx2(const double* a, const double* b, std::size_t n);
double sum_avx2(const double* a, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void gemv_avx2(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y);
void gemv_t_avx2(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y);
double max_abs_diff_avx2(const double* a, const double* b, std::size_t n);
#endif

}  // namespace tfx::kernels::detail
