#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frgeo/linalg.hpp"
#include "frgeo/perturbation.hpp"

namespace frgeo {

enum class Provenance { kernel, samples, file, explicit_ };

std::string provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& name);

// Spectral covariance representation: strictly positive eigenvalues in
// descending order against an orthonormal basis. Finite-rank truncation of a
// trace-class covariance operator.
class CovarianceModel {
 public:
  static CovarianceModel from_spectral(std::vector<double> eigenvalues,
                                       Matrix basis, Provenance provenance);
  // Eigendecomposes a dense SPD matrix; rejects spectra below the SpdMatrix
  // conditioning floor.
  static CovarianceModel from_dense(const SymMatrix& c, Provenance provenance);
  // Identity-basis model from a positive descending spectrum.
  static CovarianceModel from_eigenvalues(std::vector<double> eigenvalues,
                                          Provenance provenance);

  std::size_t dim() const { return dim_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const Matrix& basis() const { return basis_; }
  Provenance provenance() const { return provenance_; }
  double trace() const;

  SpdMatrix matrix() const;
  SymMatrix dense() const;
  // U^T x: coordinates of x in the eigenbasis.
  std::vector<double> to_basis(std::span<const double> x) const;
  // C^{p} x for p in {-1/2, 1/2} via the spectral representation.
  std::vector<double> apply_sqrt(std::span<const double> x) const;
  std::vector<double> apply_inv_sqrt(std::span<const double> x) const;
  // Dense C^{-1/2}, used by the Monte Carlo pipelines.
  SymMatrix inv_sqrt_dense() const;
  SymMatrix sqrt_dense() const;

 private:
  CovarianceModel(std::vector<double> eigenvalues, Matrix basis, Provenance p);

  std::size_t dim_;
  std::vector<double> eigenvalues_;  // descending, strictly positive
  Matrix basis_;                     // orthonormal columns
  Provenance provenance_;
};

struct GaussianMeasure {
  std::vector<double> mean;
  CovarianceModel cov;

  GaussianMeasure(std::vector<double> m, CovarianceModel c);
  static GaussianMeasure centered(CovarianceModel c);
  std::size_t dim() const { return cov.dim(); }
};

enum class CovKernel { rbf, matern32 };

// Gram matrix of an RBF or Matern-3/2 kernel on a 1-d grid, spectrally
// truncated with eigenvalues clipped at the positivity floor.
CovarianceModel build_from_kernel(CovKernel kernel, double lengthscale,
                                  double amplitude,
                                  const std::vector<double>& grid);

// Empirical covariance (1/N) sum x x^T, centered first unless
// assume_centered; eigen-floored to a positive spectrum. Rank zero after
// flooring is an error.
CovarianceModel build_from_samples(const std::vector<std::vector<double>>& samples,
                                   bool assume_centered);

// S with c1 = c0^{1/2} (I - S) c0^{1/2}, i.e. S = I - c0^{-1/2} c1 c0^{-1/2}.
PerturbationS feldman_hajek_s(const CovarianceModel& c0, const CovarianceModel& c1);

// T with c0 = Sigma^{1/2} (I - T) Sigma^{1/2} for Sigma = c0^{1/2}(I-S)c0^{1/2}.
PerturbationS to_reverse_factor(const CovarianceModel& c0, const PerturbationS& s);

enum class Verdict { equivalent_at_truncation, divergence_suspected };

std::string verdict_name(Verdict v);

struct EquivalenceOptions {
  // Least-squares slope of log ||S_n|| against log n above which the pair is
  // flagged as divergence suspected. The exact sqrt(n) family has slope 1/2;
  // finite-rank perturbations flatten towards 0.
  double slope_threshold = 0.25;
  // Gap at or below this floor is flagged regardless of the sweep.
  double gap_floor = 1e-10;
};

struct EquivalenceReport {
  std::optional<PerturbationS> s;
  double hs_norm_s = 0.0;
  double gap = 0.0;
  // sum_k <m1 - m0, e_k>^2 / lambda_k over the truncation.
  double mean_coeff_tail = 0.0;
  Verdict verdict = Verdict::equivalent_at_truncation;
  std::vector<std::pair<std::size_t, double>> dim_sweep;       // (n, ||S_n||)
  std::vector<std::pair<std::size_t, double>> mean_tail_sweep; // (n, partial sum)
  double sweep_slope = 0.0;  // meaningful only when dim_sweep is nonempty
};

// Feldman-Hajek style equivalence diagnostics at the truncation, with an
// optional truncation-dimension sweep of ||S_n|| computed in the eigenbasis
// of mu0's covariance.
EquivalenceReport equivalence_report(const GaussianMeasure& mu0,
                                     const GaussianMeasure& mu1,
                                     const std::vector<std::size_t>& sweep_dims = {},
                                     const EquivalenceOptions& opts = {});

}  // namespace frgeo
