#pragma once

#include <vector>

#include "frgeo/gaussian.hpp"
#include "frgeo/linalg.hpp"
#include "frgeo/perturbation.hpp"

namespace frgeo {

// Fisher-Rao metric in the perturbation coordinate:
// (1/2) trace[(I-S)^{-1} V1 (I-S)^{-1} V2].
double metric_s(const PerturbationS& s, const SymMatrix& v1, const SymMatrix& v2);

// Same metric in the covariance coordinate:
// (1/2) trace(Sigma^{-1/2} A1 Sigma^{-1} A2 Sigma^{-1/2}), half the
// affine-invariant metric.
double metric_sigma(const SpdMatrix& sigma, const SymMatrix& a1, const SymMatrix& a2);

// Fisher information matrix of a parametrized covariance family evaluated at
// sigma with path derivatives `directions`:
// G_ij = (1/2) trace[Sigma^{-1} dSigma_i Sigma^{-1} dSigma_j].
SymMatrix fisher_information(const SpdMatrix& sigma,
                             const std::vector<SymMatrix>& directions);

// KL(nu || mu) = (1/2) ||Q^{-1/2}(m2 - m1)||^2 - (1/2) log det2(I - S)
// with S = feldman_hajek_s(mu.cov, nu.cov). Nonnegative.
double kl_divergence(const GaussianMeasure& nu, const GaussianMeasure& mu);

struct KlHessianResult {
  double fd;     // 4-point second mixed difference of the KL divergence
  double exact;  // (1/2) trace(w1 w2)
};

// Second mixed derivative of (s, t) -> KL(N(0, Sigma^{1/2}(I+sW1+tW2)Sigma^{1/2})
// || N(0, Sigma)) at the origin against its closed form. Throws when the
// stencil leaves the SPD cone.
KlHessianResult kl_hessian_check(const SpdMatrix& sigma, const SymMatrix& w1,
                                 const SymMatrix& w2, double h);

}  // namespace frgeo
