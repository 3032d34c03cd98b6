#pragma once

#include <cstddef>
#include <string_view>

namespace frgeo::kernels {

// Data-parallel inner loops behind the dense linear algebra and the Monte
// Carlo reductions. A scalar reference implementation always exists; wider
// variants (AVX2 on x86-64) are selected once at startup. All variants are
// equivalence-tested against the scalar reference.
//
// sum() uses pairwise recursion so that reduction results are independent of
// how callers batch their data (same tree for the same length).
struct Ops {
  // sum_i a[i]*b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // dst[i] += c * x[i] * y[i]
  void (*fmma)(double c, const double* x, const double* y, double* dst,
               std::size_t n);
  // pairwise sum of x
  double (*sum)(const double* x, std::size_t n);
  // x^T M x for row-major n-by-n M
  double (*quad_form)(const double* m, const double* x, std::size_t n);
};

const Ops& scalar_ops();
// nullptr when the build or the CPU lacks AVX2.
const Ops* avx2_ops();
// AVX2 when available unless FRGEO_KERNELS=scalar|avx2 overrides.
const Ops& active();
std::string_view active_name();

inline double dot(const double* a, const double* b, std::size_t n) {
  return active().dot(a, b, n);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  active().axpy(alpha, x, y, n);
}
inline void fmma(double c, const double* x, const double* y, double* dst,
                 std::size_t n) {
  active().fmma(c, x, y, dst, n);
}
inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline double quad_form(const double* m, const double* x, std::size_t n) {
  return active().quad_form(m, x, n);
}

// Row-major matrix products built on the vector kernels.
// c (n-by-k) = a (n-by-m) * b (m-by-k); c must not alias a or b.
void mat_mul(const double* a, const double* b, double* c, std::size_t n,
             std::size_t m, std::size_t k);
// c (n-by-k) = a (n-by-m) * b^T with b stored k-by-m.
void mat_mul_nt(const double* a, const double* b, double* c, std::size_t n,
                std::size_t m, std::size_t k);
// y (n) = m (rows-by-cols, row-major) * x (cols)
void mat_vec(const double* m, std::size_t rows, std::size_t cols,
             const double* x, double* y);

}  // namespace frgeo::kernels
