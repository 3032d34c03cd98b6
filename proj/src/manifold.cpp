#include "frgeo/manifold.hpp"

#include <cmath>
#include <sstream>

#include "frgeo/errors.hpp"
#include "frgeo/fisher_rao.hpp"
#include "frgeo/kernels.hpp"

namespace frgeo {

GeodesicPath::GeodesicPath(const SpdMatrix& a, const SpdMatrix& b) : dim_(a.dim()), sqrt_a_(matfun(a, MatFun::sqrt)) {
  if (a.dim() != b.dim()) throw domain_error("GeodesicPath: dimension mismatch");
  const SymMatrix m = whiten(a, b.sym());
  m_eig_ = eigh(m);
  log_eig_.resize(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    const double lam = m_eig_.eigenvalues[i];
    if (!(lam > 0.0)) {
      std::ostringstream os;
      os << "GeodesicPath: whitened endpoint has nonpositive eigenvalue " << lam;
      throw domain_error(os.str());
    }
    log_eig_[i] = std::log(lam);
  }
}

SymMatrix GeodesicPath::compose_scaled(const std::vector<double>& mapped) const {
  const SymMatrix inner = m_eig_.compose(mapped);
  return symmetrize(sqrt_a_.matrix() * inner.matrix() * sqrt_a_.matrix());
}

SymMatrix GeodesicPath::point(double t) const {
  std::vector<double> mapped(dim_);
  for (std::size_t i = 0; i < dim_; ++i) mapped[i] = std::exp(t * log_eig_[i]);
  return compose_scaled(mapped);
}

SymMatrix GeodesicPath::velocity(double t) const {
  std::vector<double> mapped(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    mapped[i] = std::exp(t * log_eig_[i]) * log_eig_[i];
  return compose_scaled(mapped);
}

double GeodesicPath::distance() const {
  double s = 0.0;
  for (double l : log_eig_) s += l * l;
  return std::sqrt(0.5 * s);
}

SpdMatrix geodesic(const SpdMatrix& a, const SpdMatrix& b, double t) {
  return SpdMatrix(GeodesicPath(a, b).point(t));
}

SpdMatrix exp_map(const SpdMatrix& a, const SymMatrix& direction) {
  if (a.dim() != direction.dim()) throw domain_error("exp_map: dimension mismatch");
  const SymMatrix root = matfun(a, MatFun::sqrt);
  const SymMatrix e = matfun(whiten(a, direction), MatFun::exp);
  return SpdMatrix(symmetrize(root.matrix() * e.matrix() * root.matrix()));
}

SpdMatrix exp_map(const TangentVector& v) { return exp_map(v.base_point, v.direction); }

TangentVector log_map(const SpdMatrix& a, const SpdMatrix& b) {
  if (a.dim() != b.dim()) throw domain_error("log_map: dimension mismatch");
  const SymMatrix root = matfun(a, MatFun::sqrt);
  const SymMatrix l = matfun(whiten(a, b.sym()), MatFun::log);
  return {a, symmetrize(root.matrix() * l.matrix() * root.matrix())};
}

double fisher_rao_distance(const SpdMatrix& a, const SpdMatrix& b) {
  if (a.dim() != b.dim()) throw domain_error("fisher_rao_distance: dimension mismatch");
  return GeodesicPath(a, b).distance();
}

SymMatrix connection_gamma(const SpdMatrix& p, const SymMatrix& x, const SymMatrix& y) {
  if (p.dim() != x.dim() || p.dim() != y.dim())
    throw domain_error("connection_gamma: dimension mismatch");
  const SymMatrix pinv = matfun(p, MatFun::inv);
  Matrix term = x.matrix() * pinv.matrix() * y.matrix();
  term += y.matrix() * pinv.matrix() * x.matrix();
  term *= -0.5;
  return symmetrize(term);
}

SymMatrix covariant_derivative(const SpdMatrix& p, const VectorField& field,
                               const SymMatrix& x, double fd_step) {
  if (p.dim() != x.dim()) throw domain_error("covariant_derivative: dimension mismatch");
  auto shifted = [&](double sign) {
    Matrix m = p.matrix();
    m += (sign * fd_step) * x.matrix();
    try {
      return SpdMatrix(symmetrize(m));
    } catch (const domain_error&) {
      throw domain_error("covariant_derivative: stencil leaves the SPD cone");
    }
  };
  const SymMatrix fp = field(shifted(+1.0));
  const SymMatrix fm = field(shifted(-1.0));
  Matrix deriv = fp.matrix();
  deriv -= fm.matrix();
  deriv *= 1.0 / (2.0 * fd_step);
  SymMatrix result = symmetrize(deriv);
  result += connection_gamma(p, x, field(p));
  return result;
}

namespace {

Matrix commutator(const Matrix& a, const Matrix& b) {
  Matrix ab = a * b;
  ab -= b * a;
  return ab;
}

}  // namespace

SymMatrix curvature_tensor(const SpdMatrix& p, const SymMatrix& x,
                           const SymMatrix& y, const SymMatrix& z) {
  if (p.dim() != x.dim() || p.dim() != y.dim() || p.dim() != z.dim())
    throw domain_error("curvature_tensor: dimension mismatch");
  const SymMatrix xt = whiten(p, x);
  const SymMatrix yt = whiten(p, y);
  const SymMatrix zt = whiten(p, z);
  Matrix inner = commutator(commutator(xt.matrix(), yt.matrix()), zt.matrix());
  inner *= -0.25;
  const SymMatrix root = matfun(p, MatFun::sqrt);
  // symmetrize() averages sign-symmetrically, so R(x,y)z == -R(y,x)z holds
  // bit-exactly.
  return symmetrize(root.matrix() * inner * root.matrix());
}

double sectional_curvature(const SpdMatrix& p, const SymMatrix& x, const SymMatrix& y) {
  if (p.dim() != x.dim() || p.dim() != y.dim())
    throw domain_error("sectional_curvature: dimension mismatch");
  const SymMatrix xt = whiten(p, x);
  const SymMatrix yt = whiten(p, y);
  const double txx = hs_inner(xt, xt);
  const double tyy = hs_inner(yt, yt);
  const double txy = hs_inner(xt, yt);
  const double denom = txx * tyy - txy * txy;
  const double scale = txx * tyy;
  if (denom <= 1e-12 * scale) {
    std::ostringstream os;
    os << "sectional_curvature: degenerate plane, Gram determinant " << denom
       << " below 1e-12 of scale " << scale;
    throw domain_error(os.str());
  }
  const Matrix xy = xt.matrix() * yt.matrix();
  // trace(X~^2 Y~^2) via row dots of the symmetric squares.
  const SymMatrix x2 = symmetrize(xt.matrix() * xt.matrix());
  const SymMatrix y2 = symmetrize(yt.matrix() * yt.matrix());
  const double t_x2y2 = hs_inner(x2, y2);
  // trace((X~ Y~)^2) = sum_ij (XY)_ij (XY)_ji
  double t_xy2 = 0.0;
  const std::size_t n = p.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t_xy2 += xy(i, j) * xy(j, i);
  return -(t_x2y2 - t_xy2) / denom;
}

double geodesic_ode_residual(const SpdMatrix& a, const SpdMatrix& b,
                             const std::vector<double>& t_samples, double fd_step) {
  const GeodesicPath path(a, b);
  double worst = 0.0;
  for (double t : t_samples) {
    if (!(t > 0.0 && t < 1.0))
      throw domain_error("geodesic_ode_residual: samples must lie inside (0, 1)");
    const SymMatrix gp = path.point(t + fd_step);
    const SymMatrix g0 = path.point(t);
    const SymMatrix gm = path.point(t - fd_step);

    Matrix vel = gp.matrix();
    vel -= gm.matrix();
    vel *= 1.0 / (2.0 * fd_step);

    Matrix acc = gp.matrix();
    acc += gm.matrix();
    acc -= 2.0 * g0.matrix();
    acc *= 1.0 / (fd_step * fd_step);

    const SymMatrix ginv = matfun(SpdMatrix(g0), MatFun::inv);
    Matrix residual = acc;
    residual -= vel * ginv.matrix() * vel;
    worst = std::max(worst, residual.frobenius_norm() / g0.matrix().frobenius_norm());
  }
  return worst;
}

namespace {

// Gauss-Legendre nodes/weights on [0, 1] by Newton iteration on P_n.
std::vector<std::pair<double, double>> gauss_legendre_01(int order) {
  if (order < 1) throw domain_error("curve_length: quadrature order must be positive");
  const int n = order;
  std::vector<std::pair<double, double>> out(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out[i] = {0.5 * (1.0 - x), 0.5 * w};
    out[n - 1 - i] = {0.5 * (1.0 + x), 0.5 * w};
  }
  return out;
}

}  // namespace

double curve_length(const SpdMatrix& a, const SpdMatrix& b, int quadrature_order) {
  const GeodesicPath path(a, b);
  const auto nodes = gauss_legendre_01(quadrature_order);
  double length = 0.0;
  for (const auto& [t, w] : nodes) {
    const SpdMatrix gt(path.point(t));
    const SymMatrix vt = path.velocity(t);
    length += w * std::sqrt(metric_sigma(gt, vt, vt));
  }
  return length;
}

}  // namespace frgeo
