#include "frgeo/mc.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

#include "frgeo/errors.hpp"
#include "frgeo/fisher_rao.hpp"
#include "frgeo/kernels.hpp"
#include "frgeo/rng.hpp"

namespace frgeo {

bool McEstimate::within_confidence(double sigmas) const {
  if (!z_score.has_value()) return false;
  return std::fabs(*z_score) <= sigmas;
}

namespace {

void validate_cfg(const McConfig& cfg) {
  if (cfg.n_samples < 1) throw domain_error("McConfig: n_samples must be at least 1");
}

// Mean and standard error with pairwise reductions, so batching cannot move
// the result by more than the 1-ulp accumulation policy.
McEstimate summarize(const std::vector<double>& values) {
  McEstimate est;
  est.n = values.size();
  est.mean = kernels::sum(values.data(), values.size()) / static_cast<double>(values.size());
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < sq.size(); ++i) {
      const double d = values[i] - est.mean;
      sq[i] = d * d;
    }
    const double var = kernels::sum(sq.data(), sq.size()) /
                       static_cast<double>(values.size() - 1);
    est.std_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return est;
}

void attach_exact(McEstimate& est, double exact) {
  est.exact = exact;
  if (est.std_error > 0.0) {
    est.z_score = (est.mean - exact) / est.std_error;
  } else {
    est.z_score = (est.mean == exact)
                      ? 0.0
                      : std::copysign(std::numeric_limits<double>::infinity(),
                                      est.mean - exact);
  }
}

// Column-major sample block: coordinate k of every draw lives in row k, so
// the per-sample functionals below turn into long fused vector passes.
struct SampleBlock {
  std::size_t dim;
  std::size_t n;
  std::vector<double> data;  // dim rows of length n

  double* coord(std::size_t k) { return data.data() + k * n; }
  const double* coord(std::size_t k) const { return data.data() + k * n; }
};

// Draws N(mean, cov) into coordinate-major layout. Draw order matches
// sample_gaussian: sample i consumes its dim normals consecutively.
SampleBlock sample_block(const GaussianMeasure& measure, const McConfig& cfg) {
  const std::size_t dim = measure.dim();
  const std::size_t n = cfg.n_samples;
  const Matrix& u = measure.cov.basis();
  const auto& lam = measure.cov.eigenvalues();
  std::vector<double> scale(dim);
  for (std::size_t k = 0; k < dim; ++k) scale[k] = std::sqrt(lam[k]);

  SampleBlock block{dim, n, std::vector<double>(dim * n, 0.0)};
  Philox rng(cfg.seed, 0);
  std::vector<double> z(dim);
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < dim; ++k) z[k] = rng.normal();
    for (std::size_t r = 0; r < dim; ++r) {
      double acc = measure.mean[r];
      for (std::size_t k = 0; k < dim; ++k) acc += u(r, k) * scale[k] * z[k];
      x[r] = acc;
    }
    for (std::size_t r = 0; r < dim; ++r) block.coord(r)[i] = x[r];
  }
  return block;
}

// In-place left multiply of a coordinate-major block by a dense matrix.
SampleBlock transform_block(const SymMatrix& m, const SampleBlock& in) {
  const std::size_t dim = in.dim;
  SampleBlock out{dim, in.n, std::vector<double>(dim * in.n, 0.0)};
  for (std::size_t r = 0; r < dim; ++r) {
    double* dst = out.coord(r);
    for (std::size_t k = 0; k < dim; ++k)
      kernels::axpy(m(r, k), in.coord(k), dst, in.n);
  }
  return out;
}

// values[i] += x_i^T M x_i across the block, exploiting symmetry of M.
void accumulate_quad_form(const SymMatrix& m, const SampleBlock& block,
                          std::vector<double>& values) {
  const std::size_t dim = block.dim;
  for (std::size_t a = 0; a < dim; ++a) {
    kernels::fmma(m(a, a), block.coord(a), block.coord(a), values.data(), block.n);
    for (std::size_t b = a + 1; b < dim; ++b)
      kernels::fmma(2.0 * m(a, b), block.coord(a), block.coord(b), values.data(),
                    block.n);
  }
}

// (I-S)^{-1} V (I-S)^{-1} and (1/2) trace[(I-S)^{-1} V].
struct DlogData {
  SymMatrix quad;
  double trace_half;
};

DlogData dlog_data(const PerturbationS& s, const SymMatrix& v) {
  std::vector<double> inv(s.dim());
  for (std::size_t i = 0; i < inv.size(); ++i)
    inv[i] = 1.0 / (1.0 - s.eig().eigenvalues[i]);
  const SymMatrix k = s.eig().compose(inv);
  const SymMatrix kvk = symmetrize(k.matrix() * v.matrix() * k.matrix());
  return {kvk, 0.5 * hs_inner(k, v)};
}

GaussianMeasure perturbed_measure(const CovarianceModel& c0, const PerturbationS& s) {
  const SymMatrix root = c0.sqrt_dense();
  Matrix inner = Matrix::identity(c0.dim());
  inner -= s.s().matrix();
  const SymMatrix sigma = symmetrize(root.matrix() * inner * root.matrix());
  return GaussianMeasure::centered(
      CovarianceModel::from_dense(sigma, Provenance::explicit_));
}

double logdet_fredholm_i_minus_s(const PerturbationS& s) {
  double v = 0.0;
  for (double al : s.eig().eigenvalues) v += std::log1p(-al);
  return v;
}

double logdet2_i_minus_s(const PerturbationS& s) {
  double v = 0.0;
  for (double al : s.eig().eigenvalues) v += std::log1p(-al) + al;
  return v;
}

// log-density values over a block: c - (1/2) y^T S(I-S)^{-1} y with
// y = C0^{-1/2} x.
std::vector<double> log_rn_values(const CovarianceModel& c0, const PerturbationS& s,
                                  const SampleBlock& samples) {
  const SampleBlock y = transform_block(c0.inv_sqrt_dense(), samples);
  std::vector<double> beta(s.dim());
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const double al = s.eig().eigenvalues[i];
    beta[i] = al / (1.0 - al);
  }
  const SymMatrix m = s.eig().compose(beta);  // S (I-S)^{-1}
  std::vector<double> quad(samples.n, 0.0);
  accumulate_quad_form(m, y, quad);
  const double c = -0.5 * logdet_fredholm_i_minus_s(s);
  std::vector<double> out(samples.n);
  for (std::size_t i = 0; i < samples.n; ++i) out[i] = c - 0.5 * quad[i];
  return out;
}

}  // namespace

Matrix sample_gaussian(const GaussianMeasure& measure, const McConfig& cfg) {
  validate_cfg(cfg);
  const SampleBlock block = sample_block(measure, cfg);
  Matrix out(cfg.n_samples, measure.dim());
  for (std::size_t i = 0; i < cfg.n_samples; ++i)
    for (std::size_t k = 0; k < measure.dim(); ++k) out(i, k) = block.coord(k)[i];
  return out;
}

double white_noise(const CovarianceModel& c0, std::span<const double> z,
                   std::span<const double> x, std::span<const double> mean) {
  if (z.size() != c0.dim() || x.size() != c0.dim())
    throw domain_error("white_noise: vector length mismatch");
  if (!mean.empty() && mean.size() != c0.dim())
    throw domain_error("white_noise: mean length mismatch");
  std::vector<double> centered(x.begin(), x.end());
  if (!mean.empty())
    for (std::size_t i = 0; i < centered.size(); ++i) centered[i] -= mean[i];
  const std::vector<double> xc = c0.to_basis(centered);
  const std::vector<double> zc = c0.to_basis(z);
  double acc = 0.0;
  for (std::size_t k = 0; k < c0.dim(); ++k)
    acc += xc[k] * zc[k] / std::sqrt(c0.eigenvalues()[k]);
  return acc;
}

double log_rn_density(const CovarianceModel& c0, const PerturbationS& s,
                      std::span<const double> x) {
  if (x.size() != c0.dim() || s.dim() != c0.dim())
    throw domain_error("log_rn_density: dimension mismatch");
  const std::vector<double> y = c0.apply_inv_sqrt(x);
  std::vector<double> beta(s.dim());
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const double al = s.eig().eigenvalues[i];
    beta[i] = al / (1.0 - al);
  }
  const SymMatrix m = s.eig().compose(beta);
  const double quad = kernels::quad_form(m.data(), y.data(), y.size());
  return -0.5 * logdet_fredholm_i_minus_s(s) - 0.5 * quad;
}

double dlog_rn(const CovarianceModel& c0, const PerturbationS& s, const SymMatrix& v,
               std::span<const double> x) {
  if (x.size() != c0.dim() || s.dim() != c0.dim() || v.dim() != c0.dim())
    throw domain_error("dlog_rn: dimension mismatch");
  const DlogData data = dlog_data(s, v);
  const std::vector<double> y = c0.apply_inv_sqrt(x);
  return data.trace_half - 0.5 * kernels::quad_form(data.quad.data(), y.data(), y.size());
}

McEstimate mc_fisher_metric(const CovarianceModel& c0, const PerturbationS& s,
                            const SymMatrix& v1, const SymMatrix& v2,
                            const McConfig& cfg) {
  validate_cfg(cfg);
  if (cfg.n_samples < 1000)
    throw domain_error("mc_fisher_metric: n_samples must be at least 1000");
  const GaussianMeasure mu = perturbed_measure(c0, s);
  const SampleBlock samples = sample_block(mu, cfg);
  const SampleBlock y = transform_block(c0.inv_sqrt_dense(), samples);

  const DlogData d1 = dlog_data(s, v1);
  const DlogData d2 = dlog_data(s, v2);

  std::vector<double> q1(samples.n, 0.0), q2(samples.n, 0.0);
  accumulate_quad_form(d1.quad, y, q1);
  accumulate_quad_form(d2.quad, y, q2);
  std::vector<double> prod(samples.n);
  for (std::size_t i = 0; i < samples.n; ++i)
    prod[i] = (d1.trace_half - 0.5 * q1[i]) * (d2.trace_half - 0.5 * q2[i]);

  McEstimate est = summarize(prod);
  attach_exact(est, metric_s(s, v1, v2));
  return est;
}

McEstimate mc_lognorm_identity(const CovarianceModel& c0, const PerturbationS& s,
                               const McConfig& cfg) {
  validate_cfg(cfg);
  const GaussianMeasure mu = perturbed_measure(c0, s);
  const SampleBlock samples = sample_block(mu, cfg);
  std::vector<double> v = log_rn_values(c0, s, samples);
  for (double& x : v) x *= x;
  McEstimate est = summarize(v);
  const double ld2 = logdet2_i_minus_s(s);
  const double hs = s.hs_norm_s();
  attach_exact(est, 0.5 * hs * hs + 0.25 * ld2 * ld2);
  return est;
}

McEstimate mc_lognorm_identity_mu0(const CovarianceModel& c0, const PerturbationS& s,
                                   const McConfig& cfg) {
  validate_cfg(cfg);
  const SampleBlock samples = sample_block(GaussianMeasure::centered(c0), cfg);
  std::vector<double> v = log_rn_values(c0, s, samples);
  for (double& x : v) x *= x;
  McEstimate est = summarize(v);
  double hs_ratio_sq = 0.0;  // ||S(I-S)^{-1}||_HS^2
  double ld2_inv = 0.0;      // log det2[(I-S)^{-1}]
  for (double al : s.eig().eigenvalues) {
    const double beta = al / (1.0 - al);
    hs_ratio_sq += beta * beta;
    ld2_inv += std::log1p(beta) - beta;
  }
  attach_exact(est, 0.5 * hs_ratio_sq + 0.25 * ld2_inv * ld2_inv);
  return est;
}

McEstimate mc_quadratic_identity(const CovarianceModel& c, const SymMatrix& a,
                                 const SymMatrix& b, const McConfig& cfg) {
  validate_cfg(cfg);
  if (a.dim() != c.dim() || b.dim() != c.dim())
    throw domain_error("mc_quadratic_identity: dimension mismatch");
  const SampleBlock samples = sample_block(GaussianMeasure::centered(c), cfg);
  std::vector<double> qa(samples.n, 0.0), qb(samples.n, 0.0);
  accumulate_quad_form(a, samples, qa);
  accumulate_quad_form(b, samples, qb);
  std::vector<double> prod(samples.n);
  for (std::size_t i = 0; i < samples.n; ++i) prod[i] = qa[i] * qb[i];
  McEstimate est = summarize(prod);

  const Matrix cd = c.dense().matrix();
  const Matrix ca = cd * a.matrix();
  const Matrix cb = cd * b.matrix();
  double tr_ca = 0.0, tr_cb = 0.0, tr_cacb = 0.0;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    tr_ca += ca(i, i);
    tr_cb += cb(i, i);
    for (std::size_t j = 0; j < c.dim(); ++j) tr_cacb += ca(i, j) * cb(j, i);
  }
  attach_exact(est, tr_ca * tr_cb + 2.0 * tr_cacb);
  return est;
}

McEstimate mc_white_noise_isometry(const CovarianceModel& c0,
                                   std::span<const double> z1,
                                   std::span<const double> z2, const McConfig& cfg) {
  validate_cfg(cfg);
  if (z1.size() != c0.dim() || z2.size() != c0.dim())
    throw domain_error("mc_white_noise_isometry: vector length mismatch");
  const SampleBlock samples = sample_block(GaussianMeasure::centered(c0), cfg);
  // W_z over the block: dot of the whitened z against sample coordinates.
  const SymMatrix w0 = c0.inv_sqrt_dense();
  std::vector<double> u1(c0.dim()), u2(c0.dim());
  kernels::mat_vec(w0.data(), c0.dim(), c0.dim(), z1.data(), u1.data());
  kernels::mat_vec(w0.data(), c0.dim(), c0.dim(), z2.data(), u2.data());
  std::vector<double> w1(samples.n, 0.0), w2(samples.n, 0.0);
  for (std::size_t k = 0; k < c0.dim(); ++k) {
    kernels::axpy(u1[k], samples.coord(k), w1.data(), samples.n);
    kernels::axpy(u2[k], samples.coord(k), w2.data(), samples.n);
  }
  std::vector<double> prod(samples.n);
  for (std::size_t i = 0; i < samples.n; ++i) prod[i] = w1[i] * w2[i];
  McEstimate est = summarize(prod);
  double exact = 0.0;
  for (std::size_t i = 0; i < c0.dim(); ++i) exact += z1[i] * z2[i];
  attach_exact(est, exact);
  return est;
}

McEstimate mc_score_mean(const CovarianceModel& c0, const PerturbationS& s,
                         const SymMatrix& v, const McConfig& cfg) {
  validate_cfg(cfg);
  const GaussianMeasure mu = perturbed_measure(c0, s);
  const SampleBlock samples = sample_block(mu, cfg);
  const SampleBlock y = transform_block(c0.inv_sqrt_dense(), samples);
  const DlogData d = dlog_data(s, v);
  std::vector<double> q(samples.n, 0.0);
  accumulate_quad_form(d.quad, y, q);
  std::vector<double> vals(samples.n);
  for (std::size_t i = 0; i < samples.n; ++i) vals[i] = d.trace_half - 0.5 * q[i];
  McEstimate est = summarize(vals);
  attach_exact(est, 0.0);
  return est;
}

std::string mc_report_json(const std::string& name, const McEstimate& est,
                           std::uint64_t seed) {
  auto number = [](std::optional<double> v) -> std::string {
    if (!v.has_value() || !std::isfinite(*v)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", *v);
    return buf;
  };
  std::ostringstream os;
  os << "{\"name\": \"" << name << "\", \"n\": " << est.n
     << ", \"mean\": " << number(est.mean) << ", \"std_error\": " << number(est.std_error)
     << ", \"exact\": " << number(est.exact) << ", \"z_score\": " << number(est.z_score)
     << ", \"seed\": " << seed << "}";
  return os.str();
}

}  // namespace frgeo
