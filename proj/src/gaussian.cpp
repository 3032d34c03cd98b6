#include "frgeo/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "frgeo/errors.hpp"
#include "frgeo/kernels.hpp"

namespace frgeo {

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kernel: return "kernel";
    case Provenance::samples: return "samples";
    case Provenance::file: return "file";
    case Provenance::explicit_: return "explicit";
  }
  return "explicit";
}

Provenance provenance_from_name(const std::string& name) {
  if (name == "kernel") return Provenance::kernel;
  if (name == "samples") return Provenance::samples;
  if (name == "file") return Provenance::file;
  if (name == "explicit") return Provenance::explicit_;
  throw parse_error("unknown provenance: " + name);
}

CovarianceModel::CovarianceModel(std::vector<double> eigenvalues, Matrix basis,
                                 Provenance p)
    : dim_(eigenvalues.size()),
      eigenvalues_(std::move(eigenvalues)),
      basis_(std::move(basis)),
      provenance_(p) {}

CovarianceModel CovarianceModel::from_spectral(std::vector<double> eigenvalues,
                                               Matrix basis, Provenance provenance) {
  const std::size_t n = eigenvalues.size();
  if (n == 0) throw domain_error("CovarianceModel: empty spectrum");
  if (basis.rows() != n || basis.cols() != n)
    throw domain_error("CovarianceModel: basis shape does not match spectrum");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(eigenvalues[i] > 0.0) || !std::isfinite(eigenvalues[i]))
      throw domain_error("CovarianceModel: eigenvalues must be strictly positive");
    if (i > 0 && eigenvalues[i] > eigenvalues[i - 1])
      throw domain_error("CovarianceModel: eigenvalues must be descending");
    total += eigenvalues[i];
  }
  if (!std::isfinite(total)) throw domain_error("CovarianceModel: trace not finite");
  // Orthonormality within 1e-10.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double d = 0.0;
      for (std::size_t k = 0; k < n; ++k) d += basis(k, i) * basis(k, j);
      const double target = (i == j) ? 1.0 : 0.0;
      if (std::fabs(d - target) > 1e-10)
        throw domain_error("CovarianceModel: basis not orthonormal within 1e-10");
    }
  }
  return CovarianceModel(std::move(eigenvalues), std::move(basis), provenance);
}

CovarianceModel CovarianceModel::from_dense(const SymMatrix& c, Provenance provenance) {
  SpdMatrix spd(c);  // enforces the conditioning floor
  const auto& dec = spd.eig();
  const std::size_t n = c.dim();
  std::vector<double> eig(n);
  Matrix basis(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    eig[j] = dec.eigenvalues[n - 1 - j];  // descending
    for (std::size_t i = 0; i < n; ++i) basis(i, j) = dec.eigenvectors(i, n - 1 - j);
  }
  return CovarianceModel(std::move(eig), std::move(basis), provenance);
}

CovarianceModel CovarianceModel::from_eigenvalues(std::vector<double> eigenvalues,
                                                  Provenance provenance) {
  const std::size_t n = eigenvalues.size();
  return from_spectral(std::move(eigenvalues), Matrix::identity(n), provenance);
}

double CovarianceModel::trace() const {
  double t = 0.0;
  for (double v : eigenvalues_) t += v;
  return t;
}

SymMatrix CovarianceModel::dense() const {
  Matrix w(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) w(i, j) = basis_(i, j) * eigenvalues_[j];
  Matrix r(dim_, dim_);
  kernels::mat_mul_nt(w.data(), basis_.data(), r.data(), dim_, dim_, dim_);
  return symmetrize(r);
}

SpdMatrix CovarianceModel::matrix() const { return SpdMatrix(dense()); }

std::vector<double> CovarianceModel::to_basis(std::span<const double> x) const {
  if (x.size() != dim_) throw domain_error("CovarianceModel: vector length mismatch");
  std::vector<double> y(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s += basis_(i, j) * x[i];
    y[j] = s;
  }
  return y;
}

namespace {

std::vector<double> apply_spectral_power(const CovarianceModel& c,
                                         std::span<const double> x, double expo) {
  std::vector<double> y = c.to_basis(x);
  for (std::size_t j = 0; j < c.dim(); ++j) y[j] *= std::pow(c.eigenvalues()[j], expo);
  std::vector<double> out(c.dim(), 0.0);
  for (std::size_t j = 0; j < c.dim(); ++j) {
    for (std::size_t i = 0; i < c.dim(); ++i) out[i] += c.basis()(i, j) * y[j];
  }
  return out;
}

}  // namespace

std::vector<double> CovarianceModel::apply_sqrt(std::span<const double> x) const {
  return apply_spectral_power(*this, x, 0.5);
}

std::vector<double> CovarianceModel::apply_inv_sqrt(std::span<const double> x) const {
  return apply_spectral_power(*this, x, -0.5);
}

SymMatrix CovarianceModel::inv_sqrt_dense() const {
  Matrix w(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      w(i, j) = basis_(i, j) / std::sqrt(eigenvalues_[j]);
  Matrix r(dim_, dim_);
  kernels::mat_mul_nt(w.data(), basis_.data(), r.data(), dim_, dim_, dim_);
  return symmetrize(r);
}

SymMatrix CovarianceModel::sqrt_dense() const {
  Matrix w(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      w(i, j) = basis_(i, j) * std::sqrt(eigenvalues_[j]);
  Matrix r(dim_, dim_);
  kernels::mat_mul_nt(w.data(), basis_.data(), r.data(), dim_, dim_, dim_);
  return symmetrize(r);
}

GaussianMeasure::GaussianMeasure(std::vector<double> m, CovarianceModel c)
    : mean(std::move(m)), cov(std::move(c)) {
  if (mean.size() != cov.dim())
    throw domain_error("GaussianMeasure: mean length does not match covariance");
}

GaussianMeasure GaussianMeasure::centered(CovarianceModel c) {
  std::vector<double> zero(c.dim(), 0.0);
  return GaussianMeasure(std::move(zero), std::move(c));
}

namespace {

double kernel_value(CovKernel kernel, double lengthscale, double amplitude,
                    double d) {
  switch (kernel) {
    case CovKernel::rbf:
      return amplitude * std::exp(-0.5 * d * d / (lengthscale * lengthscale));
    case CovKernel::matern32: {
      const double u = std::sqrt(3.0) * std::fabs(d) / lengthscale;
      return amplitude * (1.0 + u) * std::exp(-u);
    }
  }
  return 0.0;
}

// Descending clip at the positivity floor; throws when the spectrum is
// indefinite beyond rounding.
CovarianceModel model_from_gram(const SymMatrix& gram, Provenance prov,
                                const char* op) {
  const EigenDecomposition dec = eigh(gram);
  const std::size_t n = gram.dim();
  const double lam_max = dec.eigenvalues.back();
  if (!(lam_max > 0.0)) {
    std::ostringstream os;
    os << op << ": matrix has no positive spectrum (max eigenvalue " << lam_max << ")";
    throw domain_error(os.str());
  }
  const double floor = SpdMatrix::kConditionFloor * lam_max;
  const double indefinite_tol = -1e-10 * lam_max;
  std::vector<double> eig(n);
  Matrix basis(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double lam = dec.eigenvalues[n - 1 - j];
    if (lam < indefinite_tol) {
      std::ostringstream os;
      os << op << ": matrix numerically indefinite beyond the floor (eigenvalue "
         << lam << " against max " << lam_max << ")";
      throw domain_error(os.str());
    }
    eig[j] = std::max(lam, floor);
    for (std::size_t i = 0; i < n; ++i) basis(i, j) = dec.eigenvectors(i, n - 1 - j);
  }
  return CovarianceModel::from_spectral(std::move(eig), std::move(basis), prov);
}

}  // namespace

CovarianceModel build_from_kernel(CovKernel kernel, double lengthscale,
                                  double amplitude, const std::vector<double>& grid) {
  if (grid.empty()) throw domain_error("build_from_kernel: empty grid");
  if (!(lengthscale > 0.0) || !(amplitude > 0.0))
    throw domain_error("build_from_kernel: lengthscale and amplitude must be positive");
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (grid[i] == grid[j]) {
        std::ostringstream os;
        os << "build_from_kernel: duplicate grid points at indices " << i << " and " << j;
        throw domain_error(os.str());
      }
  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      gram(i, j) = kernel_value(kernel, lengthscale, amplitude, grid[i] - grid[j]);
  return model_from_gram(symmetrize(gram), Provenance::kernel, "build_from_kernel");
}

CovarianceModel build_from_samples(const std::vector<std::vector<double>>& samples,
                                   bool assume_centered) {
  if (samples.size() < 2)
    throw domain_error("build_from_samples: need at least 2 samples");
  const std::size_t n = samples.front().size();
  for (const auto& s : samples)
    if (s.size() != n) throw domain_error("build_from_samples: unequal sample lengths");

  std::vector<double> mean(n, 0.0);
  if (!assume_centered) {
    for (const auto& s : samples)
      for (std::size_t i = 0; i < n; ++i) mean[i] += s[i];
    for (double& v : mean) v /= static_cast<double>(samples.size());
  }

  Matrix cov(n, n);
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = s[i] - mean[i];
      for (std::size_t j = i; j < n; ++j) cov(i, j) += xi * (s[j] - mean[j]);
    }
  }
  const double inv_count = 1.0 / static_cast<double>(samples.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      cov(i, j) *= inv_count;
      cov(j, i) = cov(i, j);
    }

  const SymMatrix c = sym_exact(std::move(cov));
  const EigenDecomposition dec = eigh(c);
  const double lam_max = dec.eigenvalues.back();
  const double rank_tol = 1e-12 * std::max(lam_max, 0.0);
  std::size_t rank = 0;
  for (double lam : dec.eigenvalues)
    if (lam > rank_tol && lam > 0.0) ++rank;
  if (rank == 0) {
    std::ostringstream os;
    os << "build_from_samples: effective rank 0 after "
       << (assume_centered ? "flooring" : "centering") << " (floor " << rank_tol << ")";
    throw domain_error(os.str());
  }
  return model_from_gram(c, Provenance::samples, "build_from_samples");
}

PerturbationS feldman_hajek_s(const CovarianceModel& c0, const CovarianceModel& c1) {
  if (c0.dim() != c1.dim()) throw domain_error("feldman_hajek_s: dimension mismatch");
  const SymMatrix w0 = c0.inv_sqrt_dense();
  const Matrix m = w0.matrix() * c1.dense().matrix() * w0.matrix();
  Matrix s = Matrix::identity(c0.dim());
  s -= m;
  return PerturbationS(symmetrize(s));
}

PerturbationS to_reverse_factor(const CovarianceModel& c0, const PerturbationS& s) {
  if (c0.dim() != s.dim()) throw domain_error("to_reverse_factor: dimension mismatch");
  const SymMatrix r0 = c0.sqrt_dense();
  // Sigma = C0^{1/2} (I - S) C0^{1/2}
  Matrix i_minus_s = Matrix::identity(c0.dim());
  i_minus_s -= s.s().matrix();
  const SymMatrix sigma = symmetrize(r0.matrix() * i_minus_s * r0.matrix());
  const SymMatrix sigma_inv_sqrt = matfun(SpdMatrix(sigma), MatFun::inv_sqrt);
  Matrix t = Matrix::identity(c0.dim());
  t -= sigma_inv_sqrt.matrix() * c0.dense().matrix() * sigma_inv_sqrt.matrix();
  return PerturbationS(symmetrize(t));
}

std::string verdict_name(Verdict v) {
  return v == Verdict::equivalent_at_truncation ? "equivalent_at_truncation"
                                                : "divergence_suspected";
}

namespace {

// ||S_n|| and the mean tail at truncation n, working in the eigenbasis of c0.
struct TruncatedStats {
  double hs_norm_s;
  double mean_tail;
};

TruncatedStats truncated_stats(const std::vector<double>& lambda,
                               const Matrix& c1_in_basis,
                               const std::vector<double>& dmean_in_basis,
                               std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double di = std::sqrt(lambda[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const double w = c1_in_basis(i, j) / di / std::sqrt(lambda[j]);
      const double sij = (i == j ? 1.0 : 0.0) - w;
      acc += sij * sij;
    }
  }
  double tail = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    tail += dmean_in_basis[k] * dmean_in_basis[k] / lambda[k];
  return {std::sqrt(acc), tail};
}

}  // namespace

EquivalenceReport equivalence_report(const GaussianMeasure& mu0,
                                     const GaussianMeasure& mu1,
                                     const std::vector<std::size_t>& sweep_dims,
                                     const EquivalenceOptions& opts) {
  if (mu0.dim() != mu1.dim()) throw domain_error("equivalence_report: dimension mismatch");
  const std::size_t n = mu0.dim();
  for (std::size_t i = 0; i < sweep_dims.size(); ++i) {
    if (sweep_dims[i] == 0 || sweep_dims[i] > n)
      throw domain_error("equivalence_report: sweep dimension out of range");
    if (i > 0 && sweep_dims[i] <= sweep_dims[i - 1])
      throw domain_error("equivalence_report: sweep dimensions must be ascending");
  }

  const CovarianceModel& c0 = mu0.cov;
  // C1 and the mean shift expressed in c0's eigenbasis.
  const Matrix& u0 = c0.basis();
  const Matrix c1_dense = mu1.cov.dense().matrix();
  const Matrix c1_in_basis = u0.transposed() * c1_dense * u0;
  std::vector<double> dmean(n);
  for (std::size_t i = 0; i < n; ++i) dmean[i] = mu1.mean[i] - mu0.mean[i];
  const std::vector<double> dmean_in_basis = c0.to_basis(dmean);

  EquivalenceReport report;
  bool construction_failed = false;
  try {
    report.s = feldman_hajek_s(c0, mu1.cov);
    report.hs_norm_s = report.s->hs_norm_s();
    report.gap = report.s->gap();
  } catch (const domain_error&) {
    construction_failed = true;
    report.s.reset();
    report.hs_norm_s = std::numeric_limits<double>::quiet_NaN();
    report.gap = 0.0;
  }

  const TruncatedStats full = truncated_stats(c0.eigenvalues(), c1_in_basis,
                                              dmean_in_basis, n);
  report.mean_coeff_tail = full.mean_tail;

  bool slope_fired = false;
  if (!sweep_dims.empty()) {
    std::vector<double> log_n, log_s;
    for (std::size_t d : sweep_dims) {
      const TruncatedStats st = truncated_stats(c0.eigenvalues(), c1_in_basis,
                                                dmean_in_basis, d);
      report.dim_sweep.emplace_back(d, st.hs_norm_s);
      report.mean_tail_sweep.emplace_back(d, st.mean_tail);
      if (st.hs_norm_s > 0.0) {
        log_n.push_back(std::log(static_cast<double>(d)));
        log_s.push_back(std::log(st.hs_norm_s));
      }
    }
    if (log_n.size() >= 2) {
      double mx = 0.0, my = 0.0;
      for (std::size_t i = 0; i < log_n.size(); ++i) {
        mx += log_n[i];
        my += log_s[i];
      }
      mx /= static_cast<double>(log_n.size());
      my /= static_cast<double>(log_n.size());
      double sxx = 0.0, sxy = 0.0;
      for (std::size_t i = 0; i < log_n.size(); ++i) {
        sxx += (log_n[i] - mx) * (log_n[i] - mx);
        sxy += (log_n[i] - mx) * (log_s[i] - my);
      }
      report.sweep_slope = sxy / sxx;
      slope_fired = report.sweep_slope > opts.slope_threshold;
    }
  }

  const bool gap_fired = construction_failed || report.gap <= opts.gap_floor;
  report.verdict = (slope_fired || gap_fired) ? Verdict::divergence_suspected
                                              : Verdict::equivalent_at_truncation;
  return report;
}

}  // namespace frgeo
