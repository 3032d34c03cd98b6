#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "frgeo/errors.hpp"
#include "frgeo/gaussian.hpp"
#include "frgeo/io.hpp"
#include "test_util.hpp"

using namespace frgeo;
using frgeo::testutil::random_spd;
using frgeo::testutil::random_sym;

namespace {

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "frgeo_gauss_test";
  std::filesystem::create_directories(dir);
  return dir;
}

CovarianceModel power_model(std::size_t n, double expo = 2.0) {
  std::vector<double> eig(n);
  for (std::size_t k = 0; k < n; ++k) eig[k] = std::pow(double(k + 1), -expo);
  return CovarianceModel::from_eigenvalues(std::move(eig), Provenance::explicit_);
}

// Orthogonal matrix from the eigenvectors of a random symmetric matrix.
Matrix random_orthogonal(std::mt19937_64& rng, std::size_t n) {
  return eigh(random_sym(rng, n)).eigenvectors;
}

}  // namespace

TEST_CASE("build_from_kernel: single point, constant limit, descending spectrum") {
  const CovarianceModel one = build_from_kernel(CovKernel::rbf, 1.0, 2.0, {0.5});
  CHECK(one.dim() == 1);
  CHECK(one.eigenvalues()[0] == doctest::Approx(2.0).epsilon(1e-15));

  // lengthscale >> grid extent: rank-1 dominated spectrum
  const CovarianceModel flat =
      build_from_kernel(CovKernel::rbf, 1e9, 1.0, {0.0, 0.5, 1.0});
  CHECK(flat.eigenvalues()[1] / flat.eigenvalues()[0] <= 1e-6);

  std::vector<double> grid(20);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 0.1 * double(i);
  const CovarianceModel m = build_from_kernel(CovKernel::rbf, 0.4, 1.5, grid);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    CHECK(m.eigenvalues()[i] > 0.0);
    if (i > 0) CHECK(m.eigenvalues()[i] <= m.eigenvalues()[i - 1]);
  }

  const CovarianceModel mat = build_from_kernel(CovKernel::matern32, 0.7, 1.0, grid);
  CHECK(mat.dim() == 20);
  CHECK(mat.eigenvalues().front() > mat.eigenvalues().back());
}

TEST_CASE("build_from_kernel: error paths") {
  CHECK_THROWS_WITH_AS(build_from_kernel(CovKernel::rbf, 1.0, 1.0, {0.1, 0.1}),
                       doctest::Contains("duplicate"), domain_error);
  CHECK_THROWS_AS(build_from_kernel(CovKernel::rbf, -1.0, 1.0, {0.1}), domain_error);
}

TEST_CASE("build_from_samples: hand covariance, degenerate, permutation invariance") {
  const CovarianceModel m = build_from_samples({{1.0, 0.0}, {-1.0, 0.0}}, false);
  CHECK(m.eigenvalues()[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.eigenvalues()[1] <= 1e-12);  // floored
  CHECK(m.eigenvalues()[1] > 0.0);

  CHECK_THROWS_WITH_AS(build_from_samples({{2.0, 3.0}, {2.0, 3.0}, {2.0, 3.0}}, false),
                       doctest::Contains("rank 0"), domain_error);
  CHECK_THROWS_AS(build_from_samples({{1.0}}, false), domain_error);
  CHECK_THROWS_AS(build_from_samples({{1.0, 2.0}, {1.0}}, false), domain_error);

  std::mt19937_64 rng(8);
  std::vector<std::vector<double>> xs;
  for (int i = 0; i < 12; ++i) xs.push_back(frgeo::testutil::random_vector(rng, 3));
  const CovarianceModel a = build_from_samples(xs, false);
  std::shuffle(xs.begin(), xs.end(), rng);
  const CovarianceModel b = build_from_samples(xs, false);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(a.eigenvalues()[i] == doctest::Approx(b.eigenvalues()[i]).epsilon(1e-12));
}

TEST_CASE("feldman_hajek_s: identity, scaling, constructed perturbation") {
  const CovarianceModel c0 = power_model(6);
  {
    const PerturbationS s = feldman_hajek_s(c0, c0);
    CHECK(hs_norm(s.s()) <= 1e-12);
    CHECK(s.gap() == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    std::vector<double> doubled = c0.eigenvalues();
    for (double& v : doubled) v *= 2.0;
    const CovarianceModel c1 =
        CovarianceModel::from_eigenvalues(std::move(doubled), Provenance::explicit_);
    const PerturbationS s = feldman_hajek_s(c0, c1);
    // S = -I
    for (std::size_t i = 0; i < 6; ++i)
      CHECK(s.s()(i, i) == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(s.hs_norm_s() == doctest::Approx(std::sqrt(6.0)).epsilon(1e-13));
  }
  {
    // c1 = c0^{1/2} (I - diag(1/2, 0, ...)) c0^{1/2}
    std::vector<double> target(6, 0.0);
    target[0] = 0.5;
    const SymMatrix root = c0.sqrt_dense();
    Matrix inner = Matrix::identity(6);
    inner -= SymMatrix::diag(target).matrix();
    const CovarianceModel c1 = CovarianceModel::from_dense(
        symmetrize(root.matrix() * inner * root.matrix()), Provenance::explicit_);
    const PerturbationS s = feldman_hajek_s(c0, c1);
    CHECK(s.s()(0, 0) == doctest::Approx(0.5).epsilon(1e-10));
    for (std::size_t i = 1; i < 6; ++i)
      CHECK(std::abs(s.s()(i, i)) <= 1e-10);
  }
}

TEST_CASE("feldman_hajek_s reconstructs c1 (invariant)") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 10; ++rep) {
    const CovarianceModel c0 =
        CovarianceModel::from_dense(random_spd(rng, 7, 0.3, 2.5).sym(), Provenance::explicit_);
    const CovarianceModel c1 =
        CovarianceModel::from_dense(random_spd(rng, 7, 0.3, 2.5).sym(), Provenance::explicit_);
    const PerturbationS s = feldman_hajek_s(c0, c1);
    const SymMatrix root = c0.sqrt_dense();
    Matrix inner = Matrix::identity(7);
    inner -= s.s().matrix();
    Matrix recon = root.matrix() * inner * root.matrix();
    recon -= c1.dense().matrix();
    CHECK(recon.frobenius_norm() <= 1e-9 * c1.dense().matrix().frobenius_norm());
  }
}

TEST_CASE("to_reverse_factor: trivial case and eigenvalue identities") {
  const CovarianceModel c0 = power_model(6);
  {
    const PerturbationS t = to_reverse_factor(c0, PerturbationS(SymMatrix::zero(6)));
    CHECK(hs_norm(t.s()) <= 1e-10);
  }
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    // random S with comfortable gap
    const auto dec = eigh(random_sym(rng, 6));
    std::uniform_real_distribution<double> dist(-0.6, 0.6);
    std::vector<double> eig(6);
    for (double& v : eig) v = dist(rng);
    const PerturbationS s(dec.compose(eig));
    const PerturbationS t = to_reverse_factor(c0, s);

    // eigenvalues of I - T equal eigenvalues of (I - S)^{-1}
    std::vector<double> lhs, rhs;
    for (double a : t.eig().eigenvalues) lhs.push_back(1.0 - a);
    for (double a : s.eig().eigenvalues) rhs.push_back(1.0 / (1.0 - a));
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < 6; ++i)
      CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-9 * std::max(1.0, std::abs(rhs[i])));

    // ||S||_HS = ||T (I-T)^{-1}||_HS
    double norm_t_ratio_sq = 0.0;
    for (double a : t.eig().eigenvalues) {
      const double beta = a / (1.0 - a);
      norm_t_ratio_sq += beta * beta;
    }
    CHECK(std::abs(s.hs_norm_s() - std::sqrt(norm_t_ratio_sq)) <=
          1e-9 * std::max(1.0, s.hs_norm_s()));

    // applying the reverse factor twice returns S
    const SymMatrix root = c0.sqrt_dense();
    Matrix inner = Matrix::identity(6);
    inner -= s.s().matrix();
    const CovarianceModel sigma = CovarianceModel::from_dense(
        symmetrize(root.matrix() * inner * root.matrix()), Provenance::explicit_);
    const PerturbationS s_again = to_reverse_factor(sigma, t);
    Matrix diff = s_again.s().matrix();
    diff -= s.s().matrix();
    CHECK(diff.frobenius_norm() <= 1e-8 * std::max(1.0, hs_norm(s.s())));
  }
}

TEST_CASE("equivalence_report: identical measures") {
  const CovarianceModel c0 = power_model(8);
  const auto rep = equivalence_report(GaussianMeasure::centered(c0),
                                      GaussianMeasure::centered(c0));
  CHECK(rep.verdict == Verdict::equivalent_at_truncation);
  CHECK(rep.hs_norm_s <= 1e-12);
  CHECK(rep.mean_coeff_tail == 0.0);
}

TEST_CASE("equivalence_report: 2x scaling shows the sqrt(n) law and is flagged") {
  const std::size_t dim = 64;
  const CovarianceModel c0 = power_model(dim);
  std::vector<double> doubled = c0.eigenvalues();
  for (double& v : doubled) v *= 2.0;
  const CovarianceModel c1 =
      CovarianceModel::from_eigenvalues(std::move(doubled), Provenance::explicit_);
  const auto rep = equivalence_report(GaussianMeasure::centered(c0),
                                      GaussianMeasure::centered(c1), {8, 16, 32, 64});
  REQUIRE(rep.dim_sweep.size() == 4);
  for (const auto& [n, norm] : rep.dim_sweep)
    CHECK(std::abs(norm - std::sqrt(double(n))) <= 1e-13 * std::sqrt(double(n)));
  CHECK(rep.sweep_slope == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(rep.verdict == Verdict::divergence_suspected);
}

TEST_CASE("equivalence_report: in-range rank-1 perturbation plateaus") {
  const std::size_t dim = 64;
  const CovarianceModel c0 = power_model(dim);
  // v decays like k^{-2}, comfortably inside range(C0^{1/2}).
  std::vector<double> v(dim);
  double nrm = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    v[k] = std::pow(double(k + 1), -2.0);
    nrm += v[k] * v[k];
  }
  nrm = std::sqrt(nrm);
  for (double& x : v) x /= nrm;
  Matrix s(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) s(i, j) = 0.5 * v[i] * v[j];
  const SymMatrix root = c0.sqrt_dense();
  Matrix inner = Matrix::identity(dim);
  inner -= s;
  const CovarianceModel c1 = CovarianceModel::from_dense(
      symmetrize(root.matrix() * inner * root.matrix()), Provenance::explicit_);

  const auto rep = equivalence_report(GaussianMeasure::centered(c0),
                                      GaussianMeasure::centered(c1), {8, 16, 32, 64});
  // brute-force oracle: ||S_n|| = 0.5 ||v_n||^2
  for (const auto& [n, norm] : rep.dim_sweep) {
    double partial = 0.0;
    for (std::size_t k = 0; k < n; ++k) partial += v[k] * v[k];
    CHECK(norm == doctest::Approx(0.5 * partial).epsilon(1e-8));
  }
  CHECK(rep.sweep_slope < 0.05);
  CHECK(rep.verdict == Verdict::equivalent_at_truncation);
}

TEST_CASE("equivalence_report verdict is invariant under joint rotation") {
  std::mt19937_64 rng(33);
  const std::size_t dim = 16;
  const CovarianceModel c0 = power_model(dim);
  std::vector<double> doubled = c0.eigenvalues();
  for (double& v : doubled) v *= 2.0;
  const CovarianceModel c1 =
      CovarianceModel::from_eigenvalues(std::move(doubled), Provenance::explicit_);

  const Matrix q = random_orthogonal(rng, dim);
  auto rotate = [&](const CovarianceModel& c) {
    const Matrix rotated = q * c.dense().matrix() * q.transposed();
    return CovarianceModel::from_dense(symmetrize(rotated), Provenance::explicit_);
  };
  const std::vector<std::size_t> sweep = {4, 8, 16};
  const auto rep_plain = equivalence_report(GaussianMeasure::centered(c0),
                                            GaussianMeasure::centered(c1), sweep);
  const auto rep_rot = equivalence_report(GaussianMeasure::centered(rotate(c0)),
                                          GaussianMeasure::centered(rotate(c1)), sweep);
  CHECK(rep_plain.verdict == rep_rot.verdict);
  CHECK(rep_plain.hs_norm_s == doctest::Approx(rep_rot.hs_norm_s).epsilon(1e-9));
}

TEST_CASE("equivalence_report: mean tail accumulates <dm,e_k>^2/lambda_k") {
  const CovarianceModel c0 = power_model(4);
  std::vector<double> mean1 = {0.1, 0.0, 0.0, 0.2};
  const auto rep = equivalence_report(GaussianMeasure::centered(c0),
                                      GaussianMeasure(mean1, c0));
  const double want = 0.1 * 0.1 / 1.0 + 0.2 * 0.2 / (1.0 / 16.0);
  CHECK(rep.mean_coeff_tail == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("csv roundtrip: identity, random SPD at 17 digits, malformed rows") {
  const auto dir = temp_dir();
  const auto path = (dir / "m.csv").string();

  save_matrix_csv(Matrix::identity(3), path);
  const Matrix eye = load_matrix_csv(path);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(eye(i, j) == (i == j ? 1.0 : 0.0));

  std::mt19937_64 rng(3);
  const SpdMatrix p = random_spd(rng, 5);
  save_matrix_csv(p.matrix(), path);
  const Matrix back = load_matrix_csv(path);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(back(i, j) == p.matrix()(i, j));

  {
    std::ofstream bad(path, std::ios::binary);
    bad << "1.0,2.0\n3.0\n";
  }
  CHECK_THROWS_WITH_AS(load_matrix_csv(path), doctest::Contains("line 2"), parse_error);

  {
    std::ofstream bad(path, std::ios::binary);
    bad << "1.0,zzz\n";
  }
  CHECK_THROWS_WITH_AS(load_matrix_csv(path), doctest::Contains("line 1"), parse_error);
}

TEST_CASE("model persistence roundtrip") {
  const auto dir = temp_dir();
  std::mt19937_64 rng(15);
  const CovarianceModel m =
      CovarianceModel::from_dense(random_spd(rng, 6).sym(), Provenance::samples);
  const std::string prefix = (dir / "model").string();
  save_model(m, prefix);
  const CovarianceModel back = load_model(prefix);
  CHECK(back.dim() == m.dim());
  CHECK(back.provenance() == Provenance::samples);
  for (std::size_t i = 0; i < m.dim(); ++i)
    CHECK(back.eigenvalues()[i] == m.eigenvalues()[i]);
  Matrix diff = back.basis();
  diff -= m.basis();
  CHECK(diff.max_abs() == 0.0);
}
