#include "frgeo/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace frgeo::kernels {

namespace {

double scalar_dot(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  double s = (s0 + s1) + (s2 + s3);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void scalar_axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scalar_fmma(double c, const double* x, const double* y, double* dst,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += c * x[i] * y[i];
}

constexpr std::size_t kSumBlock = 128;

double scalar_sum_block(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double pairwise_sum(const double* x, std::size_t n,
                    double (*block)(const double*, std::size_t)) {
  if (n <= kSumBlock) return block(x, n);
  const std::size_t half = n / 2;
  return pairwise_sum(x, half, block) + pairwise_sum(x + half, n - half, block);
}

double scalar_sum(const double* x, std::size_t n) {
  return pairwise_sum(x, n, scalar_sum_block);
}

double scalar_quad_form(const double* m, const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * scalar_dot(m + i * n, x, n);
  return s;
}

const Ops kScalarOps = {scalar_dot, scalar_axpy, scalar_fmma, scalar_sum,
                        scalar_quad_form};

const Ops* resolve_active(std::string_view* name) {
  const char* env = std::getenv("FRGEO_KERNELS");
  const Ops* wide = avx2_ops();
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) {
      *name = "scalar";
      return &kScalarOps;
    }
    if (std::strcmp(env, "avx2") == 0 && wide != nullptr) {
      *name = "avx2";
      return wide;
    }
  }
  if (wide != nullptr) {
    *name = "avx2";
    return wide;
  }
  *name = "scalar";
  return &kScalarOps;
}

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

const Ops& active() {
  static std::string_view name;
  static const Ops* ops = resolve_active(&name);
  return *ops;
}

std::string_view active_name() {
  static std::string_view name;
  static const Ops* ops = resolve_active(&name);
  (void)ops;
  return name;
}

void mat_mul(const double* a, const double* b, double* c, std::size_t n,
             std::size_t m, std::size_t k) {
  const Ops& o = active();
  std::memset(c, 0, n * k * sizeof(double));
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = a + i * m;
    double* crow = c + i * k;
    for (std::size_t j = 0; j < m; ++j) o.axpy(arow[j], b + j * k, crow, k);
  }
}

void mat_mul_nt(const double* a, const double* b, double* c, std::size_t n,
                std::size_t m, std::size_t k) {
  const Ops& o = active();
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = a + i * m;
    double* crow = c + i * k;
    for (std::size_t j = 0; j < k; ++j) crow[j] = o.dot(arow, b + j * m, m);
  }
}

void mat_vec(const double* m, std::size_t rows, std::size_t cols,
             const double* x, double* y) {
  const Ops& o = active();
  for (std::size_t i = 0; i < rows; ++i) y[i] = o.dot(m + i * cols, x, cols);
}

}  // namespace frgeo::kernels
