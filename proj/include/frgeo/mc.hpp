#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "frgeo/gaussian.hpp"
#include "frgeo/linalg.hpp"
#include "frgeo/perturbation.hpp"

namespace frgeo {

struct McConfig {
  std::size_t n_samples;
  std::uint64_t seed;
  double confidence_sigmas = 3.0;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
  std::optional<double> exact;
  std::optional<double> z_score;

  bool within_confidence(double sigmas) const;
};

// n_samples-by-dim matrix of draws x_i = m + B z_i with B = basis diag(sqrt
// lambda) and z_i i.i.d. standard normal from Philox(seed, 0). Identical
// (measure, cfg) gives identical bits.
Matrix sample_gaussian(const GaussianMeasure& measure, const McConfig& cfg);

// White noise functional W_z(x) = <x - m, C0^{-1/2} z>, evaluated in the
// eigenbasis. The mean defaults to zero when omitted.
double white_noise(const CovarianceModel& c0, std::span<const double> z,
                   std::span<const double> x, std::span<const double> mean = {});

// log(d mu / d mu0)(x) for mu with covariance C0^{1/2}(I-S)C0^{1/2}:
// -(1/2) log det(I-S) - (1/2) <C0^{-1/2} x, S(I-S)^{-1} C0^{-1/2} x>.
double log_rn_density(const CovarianceModel& c0, const PerturbationS& s,
                      std::span<const double> x);

// Directional derivative of the log density in S:
// (1/2) trace[(I-S)^{-1} V] - (1/2) <C0^{-1/2}x, (I-S)^{-1} V (I-S)^{-1} C0^{-1/2}x>.
double dlog_rn(const CovarianceModel& c0, const PerturbationS& s,
               const SymMatrix& v, std::span<const double> x);

// E_mu[dlog(V1) dlog(V2)] against (1/2) trace[(I-S)^{-1}V1(I-S)^{-1}V2];
// samples are drawn from N(0, C0^{1/2}(I-S)C0^{1/2}). Requires
// n_samples >= 1000.
McEstimate mc_fisher_metric(const CovarianceModel& c0, const PerturbationS& s,
                            const SymMatrix& v1, const SymMatrix& v2,
                            const McConfig& cfg);

// E_mu[(log d mu/d mu0)^2] against (1/2)||S||_HS^2 + (1/4)[log det2(I-S)]^2.
McEstimate mc_lognorm_identity(const CovarianceModel& c0, const PerturbationS& s,
                               const McConfig& cfg);

// E_mu0[(log d mu/d mu0)^2] against
// (1/2)||S(I-S)^{-1}||_HS^2 + (1/4)(log det2[(I-S)^{-1}])^2.
McEstimate mc_lognorm_identity_mu0(const CovarianceModel& c0, const PerturbationS& s,
                                   const McConfig& cfg);

// E[<x,Ax><x,Bx>] under N(0,C) against trace(CA)trace(CB) + 2 trace(CACB).
McEstimate mc_quadratic_identity(const CovarianceModel& c, const SymMatrix& a,
                                 const SymMatrix& b, const McConfig& cfg);

// E_mu0[W_{z1} W_{z2}] against <z1, z2>.
McEstimate mc_white_noise_isometry(const CovarianceModel& c0,
                                   std::span<const double> z1,
                                   std::span<const double> z2, const McConfig& cfg);

// E_mu[dlog(V)] against 0 (the score has mean zero under mu).
McEstimate mc_score_mean(const CovarianceModel& c0, const PerturbationS& s,
                         const SymMatrix& v, const McConfig& cfg);

// One JSON object {name, n, mean, std_error, exact, z_score, seed} with
// 17-significant-digit numbers.
std::string mc_report_json(const std::string& name, const McEstimate& est,
                           std::uint64_t seed);

}  // namespace frgeo
