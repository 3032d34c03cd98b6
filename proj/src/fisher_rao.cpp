#include "frgeo/fisher_rao.hpp"

#include <cmath>

#include "frgeo/determinants.hpp"
#include "frgeo/errors.hpp"

namespace frgeo {

double metric_s(const PerturbationS& s, const SymMatrix& v1, const SymMatrix& v2) {
  if (s.dim() != v1.dim() || s.dim() != v2.dim())
    throw domain_error("metric_s: dimension mismatch");
  std::vector<double> inv(s.dim());
  for (std::size_t i = 0; i < inv.size(); ++i)
    inv[i] = 1.0 / (1.0 - s.eig().eigenvalues[i]);
  const SymMatrix k = s.eig().compose(inv);  // (I - S)^{-1}
  const SymMatrix kv1k = symmetrize(k.matrix() * v1.matrix() * k.matrix());
  return 0.5 * hs_inner(kv1k, v2);
}

double metric_sigma(const SpdMatrix& sigma, const SymMatrix& a1, const SymMatrix& a2) {
  if (sigma.dim() != a1.dim() || sigma.dim() != a2.dim())
    throw domain_error("metric_sigma: dimension mismatch");
  return 0.5 * hs_inner(whiten(sigma, a1), whiten(sigma, a2));
}

SymMatrix fisher_information(const SpdMatrix& sigma,
                             const std::vector<SymMatrix>& directions) {
  const std::size_t k = directions.size();
  std::vector<SymMatrix> whitened;
  whitened.reserve(k);
  for (const auto& d : directions) whitened.push_back(whiten(sigma, d));
  Matrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      const double v = 0.5 * hs_inner(whitened[i], whitened[j]);
      g(i, j) = v;
      g(j, i) = v;
    }
  return sym_exact(std::move(g));
}

double kl_divergence(const GaussianMeasure& nu, const GaussianMeasure& mu) {
  if (nu.dim() != mu.dim()) throw domain_error("kl_divergence: dimension mismatch");
  const std::size_t n = mu.dim();
  std::vector<double> dm(n);
  for (std::size_t i = 0; i < n; ++i) dm[i] = nu.mean[i] - mu.mean[i];
  const std::vector<double> w = mu.cov.apply_inv_sqrt(dm);
  double mean_term = 0.0;
  for (double v : w) mean_term += v * v;

  const PerturbationS s = feldman_hajek_s(mu.cov, nu.cov);
  double logdet2 = 0.0;  // log det2(I - S)
  for (double al : s.eig().eigenvalues) logdet2 += std::log1p(-al) + al;

  return std::max(0.5 * mean_term - 0.5 * logdet2, 0.0);
}

KlHessianResult kl_hessian_check(const SpdMatrix& sigma, const SymMatrix& w1,
                                 const SymMatrix& w2, double h) {
  if (sigma.dim() != w1.dim() || sigma.dim() != w2.dim())
    throw domain_error("kl_hessian_check: dimension mismatch");
  const SymMatrix root = matfun(sigma, MatFun::sqrt);
  const GaussianMeasure base =
      GaussianMeasure::centered(CovarianceModel::from_dense(sigma.sym(), Provenance::explicit_));

  auto kl_at = [&](double s, double t) {
    Matrix inner = Matrix::identity(sigma.dim());
    inner += s * w1.matrix();
    inner += t * w2.matrix();
    const SymMatrix cov = symmetrize(root.matrix() * inner * root.matrix());
    CovarianceModel model = [&] {
      try {
        return CovarianceModel::from_dense(cov, Provenance::explicit_);
      } catch (const domain_error&) {
        throw domain_error("kl_hessian_check: stencil leaves the SPD cone");
      }
    }();
    return kl_divergence(GaussianMeasure::centered(std::move(model)), base);
  };

  const double fd = (kl_at(h, h) - kl_at(h, -h) - kl_at(-h, h) + kl_at(-h, -h)) /
                    (4.0 * h * h);
  return {fd, 0.5 * hs_inner(w1, w2)};
}

}  // namespace frgeo
