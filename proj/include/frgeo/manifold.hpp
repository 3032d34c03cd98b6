#pragma once

#include <functional>
#include <vector>

#include "frgeo/linalg.hpp"

namespace frgeo {

struct TangentVector {
  SpdMatrix base_point;
  SymMatrix direction;
};

// Geodesic between two SPD points with shared spectral data, so evaluations
// at many parameters reuse one factorization and finite differences along
// the curve see a smooth function.
class GeodesicPath {
 public:
  GeodesicPath(const SpdMatrix& a, const SpdMatrix& b);

  std::size_t dim() const { return dim_; }
  // gamma(t) = A^{1/2} exp(t log(A^{-1/2} B A^{-1/2})) A^{1/2}
  SymMatrix point(double t) const;
  // Analytic velocity A^{1/2} exp(tL) L A^{1/2}.
  SymMatrix velocity(double t) const;
  // (1/sqrt(2)) ||L||_HS
  double distance() const;

 private:
  SymMatrix compose_scaled(const std::vector<double>& mapped) const;

  std::size_t dim_;
  SymMatrix sqrt_a_;
  // Spectral data of M = A^{-1/2} B A^{-1/2}.
  EigenDecomposition m_eig_;
  std::vector<double> log_eig_;
};

SpdMatrix geodesic(const SpdMatrix& a, const SpdMatrix& b, double t);
SpdMatrix exp_map(const SpdMatrix& a, const SymMatrix& direction);
SpdMatrix exp_map(const TangentVector& v);
TangentVector log_map(const SpdMatrix& a, const SpdMatrix& b);

// d(A, B) = (1/sqrt(2)) ||log(A^{-1/2} B A^{-1/2})||_HS
double fisher_rao_distance(const SpdMatrix& a, const SpdMatrix& b);

// Non-derivative term of the Levi-Civita connection:
// -(1/2)(X P^{-1} Y + Y P^{-1} X).
SymMatrix connection_gamma(const SpdMatrix& p, const SymMatrix& x, const SymMatrix& y);

using VectorField = std::function<SymMatrix(const SpdMatrix&)>;

// (nabla_X Y)(P): central finite difference of the field along x plus the
// connection term. Throws when the stencil p +/- h x leaves the SPD cone.
SymMatrix covariant_derivative(const SpdMatrix& p, const VectorField& field,
                               const SymMatrix& x, double fd_step);

// [R(X, Y) Z](P) = -(1/4) P^{1/2} [[X~, Y~], Z~] P^{1/2} in whitened
// coordinates X~ = P^{-1/2} X P^{-1/2}.
SymMatrix curvature_tensor(const SpdMatrix& p, const SymMatrix& x,
                           const SymMatrix& y, const SymMatrix& z);

// Nonpositive; throws a degenerate-plane error when the whitened directions
// are linearly dependent.
double sectional_curvature(const SpdMatrix& p, const SymMatrix& x, const SymMatrix& y);

// max_t || gamma''(t) - gamma'(t) gamma(t)^{-1} gamma'(t) ||_F / ||gamma(t)||_F
// with derivatives by central differences at fd_step.
double geodesic_ode_residual(const SpdMatrix& a, const SpdMatrix& b,
                             const std::vector<double>& t_samples, double fd_step);

// Gauss-Legendre arc length of the geodesic under the Fisher-Rao metric,
// with the analytic velocity.
double curve_length(const SpdMatrix& a, const SpdMatrix& b, int quadrature_order);

}  // namespace frgeo
