#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "frgeo/determinants.hpp"
#include "frgeo/errors.hpp"
#include "frgeo/fisher_rao.hpp"
#include "test_util.hpp"

using namespace frgeo;
using frgeo::testutil::random_spd;
using frgeo::testutil::random_sym;

namespace {

// Classical finite-dimensional Gaussian KL, used only as a test oracle:
// (1/2)[trace(Q^{-1}R) - n - log det(Q^{-1}R) + (m2-m1)^T Q^{-1} (m2-m1)].
double classical_kl(const GaussianMeasure& nu, const GaussianMeasure& mu) {
  const std::size_t n = mu.dim();
  const SymMatrix qinv = matfun(mu.cov.matrix(), MatFun::inv);
  const Matrix qr = qinv.matrix() * nu.cov.dense().matrix();
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += qr(i, i);
  double logdet = 0.0;
  for (double lam : mu.cov.eigenvalues()) logdet -= std::log(lam);
  for (double lam : nu.cov.eigenvalues()) logdet += std::log(lam);
  std::vector<double> dm(n);
  for (std::size_t i = 0; i < n; ++i) dm[i] = nu.mean[i] - mu.mean[i];
  const std::vector<double> qdm = qinv.matrix() * dm;
  double quad = 0.0;
  for (std::size_t i = 0; i < n; ++i) quad += dm[i] * qdm[i];
  return 0.5 * (trace - double(n) - logdet + quad);
}

PerturbationS random_perturbation(std::mt19937_64& rng, std::size_t n,
                                  double radius = 0.6) {
  const auto dec = eigh(random_sym(rng, n));
  std::uniform_real_distribution<double> dist(-radius, radius);
  std::vector<double> eig(n);
  for (double& v : eig) v = dist(rng);
  return PerturbationS(dec.compose(eig));
}

}  // namespace

TEST_CASE("metric_s: worked examples") {
  const PerturbationS zero(SymMatrix::zero(4));
  CHECK(metric_s(zero, SymMatrix::identity(4), SymMatrix::identity(4)) ==
        doctest::Approx(2.0).epsilon(1e-14));

  const PerturbationS zero2(SymMatrix::zero(2));
  CHECK(metric_s(zero2, SymMatrix::diag({1.0, 0.0}), SymMatrix::diag({0.0, 1.0})) ==
        doctest::Approx(0.0).epsilon(1e-15));

  const PerturbationS half(SymMatrix::diag({0.5, 0.0}));
  CHECK(metric_s(half, SymMatrix::identity(2), SymMatrix::identity(2)) ==
        doctest::Approx(2.5).epsilon(1e-13));
}

TEST_CASE("metric_sigma: worked examples and half the affine-invariant metric") {
  const SpdMatrix eye(SymMatrix::identity(4));
  CHECK(metric_sigma(eye, SymMatrix::identity(4), SymMatrix::identity(4)) ==
        doctest::Approx(2.0).epsilon(1e-14));

  const SpdMatrix sig(SymMatrix::diag({4.0, 1.0}));
  CHECK(metric_sigma(sig, SymMatrix::diag({4.0, 0.0}), SymMatrix::diag({4.0, 0.0})) ==
        doctest::Approx(0.5).epsilon(1e-13));

  std::mt19937_64 rng(2);
  const SpdMatrix p = random_spd(rng, 5);
  const SymMatrix a = random_sym(rng, 5);
  const SymMatrix b = random_sym(rng, 5);
  // affine-invariant value trace(S^{-1} A S^{-1} B), computed independently
  const SymMatrix pinv = matfun(p, MatFun::inv);
  const Matrix prod = pinv.matrix() * a.matrix() * pinv.matrix() * b.matrix();
  double trace = 0.0;
  for (std::size_t i = 0; i < 5; ++i) trace += prod(i, i);
  CHECK(metric_sigma(p, a, b) == doctest::Approx(0.5 * trace).epsilon(1e-11));
}

TEST_CASE("metric symmetry and positivity") {
  std::mt19937_64 rng(14);
  const PerturbationS s = random_perturbation(rng, 6);
  const SymMatrix v = random_sym(rng, 6);
  const SymMatrix w = random_sym(rng, 6);
  CHECK(metric_s(s, v, w) == doctest::Approx(metric_s(s, w, v)).epsilon(1e-12));
  CHECK(metric_s(s, v, v) > 0.0);
  const SpdMatrix p = random_spd(rng, 6);
  CHECK(metric_sigma(p, v, w) == doctest::Approx(metric_sigma(p, w, v)).epsilon(1e-12));
  CHECK(metric_sigma(p, v, v) > 0.0);
}

TEST_CASE("coordinate consistency between metric_s and metric_sigma") {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 10; ++rep) {
    const CovarianceModel c0 =
        CovarianceModel::from_dense(random_spd(rng, 5, 0.4, 2.0).sym(), Provenance::explicit_);
    const PerturbationS s = random_perturbation(rng, 5);
    const SymMatrix v = random_sym(rng, 5);

    const SymMatrix root = c0.sqrt_dense();
    Matrix inner = Matrix::identity(5);
    inner -= s.s().matrix();
    const SpdMatrix sigma(symmetrize(root.matrix() * inner * root.matrix()));
    const SymMatrix a = symmetrize(-1.0 * (root.matrix() * v.matrix() * root.matrix()));

    const double lhs = metric_sigma(sigma, a, a);
    const double rhs = metric_s(s, v, v);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("fisher_information: scalar family and Gram structure") {
  // Sigma(theta) = theta I_1 at theta = 0.7: g = 1/(2 theta^2)
  const double theta = 0.7;
  const SpdMatrix sig(SymMatrix::diag({theta}));
  const SymMatrix g = fisher_information(sig, {SymMatrix::diag({1.0})});
  CHECK(g(0, 0) == doctest::Approx(1.0 / (2.0 * theta * theta)).epsilon(1e-13));

  std::mt19937_64 rng(12);
  const SpdMatrix p = random_spd(rng, 4);
  const std::vector<SymMatrix> dirs = {random_sym(rng, 4), random_sym(rng, 4),
                                       random_sym(rng, 4)};
  const SymMatrix gram = fisher_information(p, dirs);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(gram(i, j) ==
            doctest::Approx(metric_sigma(p, dirs[i], dirs[j])).epsilon(1e-12));

  // PSD: eigenvalues nonnegative
  for (double lam : eigh(gram).eigenvalues) CHECK(lam >= -1e-12);

  // metric-orthogonal directions give a zero off-diagonal
  const SymMatrix d1 = SymMatrix::diag({1.0, 0.0});
  const SymMatrix d2 = SymMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  const SymMatrix g2 = fisher_information(SpdMatrix(SymMatrix::identity(2)), {d1, d2});
  CHECK(std::abs(g2(0, 1)) <= 1e-15);
}

TEST_CASE("kl_divergence: worked examples") {
  std::mt19937_64 rng(1);
  const GaussianMeasure mu = GaussianMeasure::centered(
      CovarianceModel::from_dense(random_spd(rng, 4).sym(), Provenance::explicit_));
  CHECK(kl_divergence(mu, mu) <= 1e-15);

  // 1-d: KL(N(0, 1/2) || N(0, 1)) = (1/2)(r - 1 - log r), r = 1/2
  const GaussianMeasure one = GaussianMeasure::centered(
      CovarianceModel::from_eigenvalues({1.0}, Provenance::explicit_));
  const GaussianMeasure half = GaussianMeasure::centered(
      CovarianceModel::from_eigenvalues({0.5}, Provenance::explicit_));
  const double want = 0.5 * (0.5 - 1.0 - std::log(0.5));
  CHECK(kl_divergence(half, one) == doctest::Approx(want).epsilon(1e-13));
  CHECK(want == doctest::Approx(0.096574).epsilon(1e-4));

  // mean-only term: (1/2) * 2^2 = 2
  const GaussianMeasure shifted(
      {2.0}, CovarianceModel::from_eigenvalues({1.0}, Provenance::explicit_));
  CHECK(kl_divergence(shifted, one) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("kl_divergence matches the classical finite-dimensional oracle") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 10; ++rep) {
    const GaussianMeasure mu(
        frgeo::testutil::random_vector(rng, 6, 0.5),
        CovarianceModel::from_dense(random_spd(rng, 6, 0.4, 2.5).sym(),
                                    Provenance::explicit_));
    const GaussianMeasure nu(
        frgeo::testutil::random_vector(rng, 6, 0.5),
        CovarianceModel::from_dense(random_spd(rng, 6, 0.4, 2.5).sym(),
                                    Provenance::explicit_));
    const double got = kl_divergence(nu, mu);
    const double want = classical_kl(nu, mu);
    CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, want));
    CHECK(got >= 0.0);
  }
}

TEST_CASE("kl_hessian_check: orthogonal, identity and random directions") {
  {
    const SpdMatrix eye(SymMatrix::identity(2));
    const SymMatrix w1 = SymMatrix::diag({1.0, 0.0});
    const SymMatrix w2 = SymMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const auto r = kl_hessian_check(eye, w1, w2, 1e-3);
    CHECK(r.exact == 0.0);
    CHECK(std::abs(r.fd) <= 1e-5);
  }
  {
    const SpdMatrix eye(SymMatrix::identity(2));
    const auto r = kl_hessian_check(eye, SymMatrix::identity(2), SymMatrix::identity(2), 1e-3);
    CHECK(r.exact == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(r.fd - 1.0) <= 1e-4);
  }
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 5; ++rep) {
    const SpdMatrix sigma = random_spd(rng, 10, 0.5, 2.0);
    const SymMatrix w1 = random_sym(rng, 10);
    const SymMatrix w2 = random_sym(rng, 10);
    const auto r = kl_hessian_check(sigma, w1, w2, 1e-3);
    CHECK(std::abs(r.fd - r.exact) <= 1e-4 * std::max(1.0, std::abs(r.exact)));
  }
}

TEST_CASE("kl_hessian_check rejects stencils leaving the cone") {
  const SpdMatrix tiny(SymMatrix::diag({1e-4, 1e-4}));
  // h W pushes an eigenvalue of I + sW1 + tW2 past zero
  const SymMatrix big = SymMatrix::diag({-2000.0, 0.0});
  CHECK_THROWS_WITH_AS(kl_hessian_check(tiny, big, big, 1e-3),
                       doctest::Contains("stencil"), domain_error);
}
