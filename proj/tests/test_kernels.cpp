#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "frgeo/kernels.hpp"

using namespace frgeo;

namespace {

// Lengths straddling the vector widths and the pairwise-sum block size.
const std::size_t kLengths[] = {1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17,
                                31, 32, 63, 100, 127, 128, 129, 1000, 4096};

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("every available backend matches the scalar reference") {
  std::mt19937_64 rng(2024);
  std::vector<const kernels::Ops*> backends = {&kernels::scalar_ops()};
  if (kernels::avx2_ops() != nullptr) backends.push_back(kernels::avx2_ops());

  for (std::size_t n : kLengths) {
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);
    const double ref_dot = kernels::scalar_ops().dot(a.data(), b.data(), n);
    const double ref_sum = kernels::scalar_ops().sum(a.data(), n);

    for (const kernels::Ops* ops : backends) {
      const double d = ops->dot(a.data(), b.data(), n);
      CHECK(std::abs(d - ref_dot) <= 1e-12 * (1.0 + std::abs(ref_dot)) + 1e-13 * n);

      const double s = ops->sum(a.data(), n);
      CHECK(std::abs(s - ref_sum) <= 1e-12 * (1.0 + std::abs(ref_sum)) + 1e-13 * n);

      std::vector<double> y_ref = b, y = b;
      kernels::scalar_ops().axpy(0.75, a.data(), y_ref.data(), n);
      ops->axpy(0.75, a.data(), y.data(), n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(y[i] - y_ref[i]) <= 1e-14 * (1.0 + std::abs(y_ref[i])));

      std::vector<double> f_ref(n, 0.5), f(n, 0.5);
      kernels::scalar_ops().fmma(-1.25, a.data(), b.data(), f_ref.data(), n);
      ops->fmma(-1.25, a.data(), b.data(), f.data(), n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(f[i] - f_ref[i]) <= 1e-14 * (1.0 + std::abs(f_ref[i])));
    }
  }
}

TEST_CASE("quad_form matches the naive double loop") {
  std::mt19937_64 rng(7);
  std::vector<const kernels::Ops*> backends = {&kernels::scalar_ops()};
  if (kernels::avx2_ops() != nullptr) backends.push_back(kernels::avx2_ops());

  for (std::size_t n : {1u, 2u, 5u, 10u, 33u}) {
    const auto m = random_vec(rng, n * n);
    const auto x = random_vec(rng, n);
    double naive = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) naive += x[i] * m[i * n + j] * x[j];
    for (const kernels::Ops* ops : backends) {
      CHECK(std::abs(ops->quad_form(m.data(), x.data(), n) - naive) <=
            1e-11 * (1.0 + std::abs(naive)));
    }
  }
}

TEST_CASE("pairwise sum is exact on integers and blocking-insensitive") {
  // 1..N sums are exactly representable, so every backend must nail them.
  std::vector<double> v(1 << 12);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i + 1);
  const double expect = 0.5 * static_cast<double>(v.size()) * (v.size() + 1);
  CHECK(kernels::scalar_ops().sum(v.data(), v.size()) == expect);
  if (kernels::avx2_ops() != nullptr)
    CHECK(kernels::avx2_ops()->sum(v.data(), v.size()) == expect);
}

TEST_CASE("dot is bilinear") {
  std::mt19937_64 rng(99);
  const std::size_t n = 257;
  const auto a = random_vec(rng, n);
  const auto b = random_vec(rng, n);
  const auto c = random_vec(rng, n);
  std::vector<double> bc(n);
  for (std::size_t i = 0; i < n; ++i) bc[i] = 2.0 * b[i] + 3.0 * c[i];
  const double lhs = kernels::dot(a.data(), bc.data(), n);
  const double rhs = 2.0 * kernels::dot(a.data(), b.data(), n) +
                     3.0 * kernels::dot(a.data(), c.data(), n);
  CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(rhs)));
}

TEST_CASE("mat_mul agrees with the naive triple loop") {
  std::mt19937_64 rng(4);
  const std::size_t n = 7, m = 5, k = 9;
  const auto a = random_vec(rng, n * m);
  const auto b = random_vec(rng, m * k);
  std::vector<double> c(n * k);
  kernels::mat_mul(a.data(), b.data(), c.data(), n, m, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double want = 0.0;
      for (std::size_t t = 0; t < m; ++t) want += a[i * m + t] * b[t * k + j];
      CHECK(std::abs(c[i * k + j] - want) <= 1e-12 * (1.0 + std::abs(want)));
    }

  // mat_mul_nt(a, b) == a * b^T
  std::vector<double> bt(k * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) bt[j * m + i] = b[i * k + j];
  std::vector<double> c2(n * k);
  kernels::mat_mul_nt(a.data(), bt.data(), c2.data(), n, m, k);
  for (std::size_t i = 0; i < n * k; ++i)
    CHECK(std::abs(c2[i] - c[i]) <= 1e-12 * (1.0 + std::abs(c[i])));
}

TEST_CASE("active backend reports a known name") {
  const auto name = kernels::active_name();
  CHECK((name == "scalar" || name == "avx2"));
}
