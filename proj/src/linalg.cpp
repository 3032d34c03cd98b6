#include "frgeo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "frgeo/errors.hpp"
#include "frgeo/kernels.hpp"

namespace frgeo {

Matrix EigenDecomposition::reconstruct() const {
  return compose(eigenvalues).matrix();
}

SymMatrix EigenDecomposition::compose(const std::vector<double>& mapped) const {
  const std::size_t n = eigenvalues.size();
  // W = Q diag(mapped), then W Q^T via row dots.
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = eigenvectors(i, j) * mapped[j];
  Matrix r(n, n);
  kernels::mat_mul_nt(w.data(), eigenvectors.data(), r.data(), n, n, n);
  return symmetrize(r);
}

namespace {

// One cyclic Jacobi sweep over the upper triangle, rotating away every
// off-diagonal entry above the stage threshold.
void jacobi_sweep(Matrix& a, Matrix& q, double threshold) {
  const std::size_t n = a.rows();
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t r = p + 1; r < n; ++r) {
      const double apr = a(p, r);
      if (std::fabs(apr) <= threshold) continue;
      const double app = a(p, p);
      const double arr = a(r, r);
      const double theta = 0.5 * (arr - app) / apr;
      const double t = (theta >= 0.0)
                           ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                           : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;
      const double tau = s / (1.0 + c);

      a(p, p) = app - t * apr;
      a(r, r) = arr + t * apr;
      a(p, r) = 0.0;
      a(r, p) = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == r) continue;
        const double akp = a(k, p);
        const double akr = a(k, r);
        a(k, p) = akp - s * (akr + tau * akp);
        a(p, k) = a(k, p);
        a(k, r) = akr + s * (akp - tau * akr);
        a(r, k) = a(k, r);
      }
      for (std::size_t k = 0; k < n; ++k) {
        const double qkp = q(k, p);
        const double qkr = q(k, r);
        q(k, p) = qkp - s * (qkr + tau * qkp);
        q(k, r) = qkr + s * (qkp - tau * qkr);
      }
    }
  }
}

double off_diag_max(const Matrix& a) {
  double m = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m = std::max(m, std::fabs(a(i, j)));
  return m;
}

}  // namespace

EigenDecomposition eigh(const SymMatrix& m) {
  const std::size_t n = m.dim();
  Matrix a = m.matrix();
  Matrix q = Matrix::identity(n);

  const double scale = std::max(a.max_abs(), 1e-300);
  const double tol = 1e-15 * scale;
  constexpr int kMaxSweeps = 60;

  int sweeps = 0;
  if (n > 1) {
    while (off_diag_max(a) > tol) {
      if (sweeps >= kMaxSweeps) {
        std::ostringstream os;
        os << "eigh: Jacobi iteration did not converge after " << sweeps
           << " sweeps (off-diagonal " << off_diag_max(a) << ", tol " << tol << ")";
        throw domain_error(os.str());
      }
      // Taper the rotation threshold so early sweeps skip negligible
      // entries instead of churning on them.
      const double stage = (sweeps < 3) ? 0.01 * scale / static_cast<double>(sweeps + 1) : 0.0;
      jacobi_sweep(a, q, std::max(stage, 0.0));
      ++sweeps;
    }
  }

  EigenDecomposition dec;
  dec.sweeps = sweeps;
  dec.eigenvalues.resize(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });
  dec.eigenvectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    dec.eigenvalues[j] = diag[order[j]];
    for (std::size_t i = 0; i < n; ++i) dec.eigenvectors(i, j) = q(i, order[j]);
  }
  return dec;
}

SpdMatrix::SpdMatrix(SymMatrix base) : base_(std::move(base)), eig_(eigh(base_)) {
  min_eig_ = eig_.eigenvalues.front();
  max_eig_ = eig_.eigenvalues.back();
  if (!(min_eig_ > kConditionFloor * max_eig_) || !(min_eig_ > 0.0)) {
    std::ostringstream os;
    os << "SpdMatrix: spectrum not positive definite: min eigenvalue " << min_eig_
       << " < 1e-12 * max eigenvalue " << max_eig_;
    throw domain_error(os.str());
  }
}

namespace {

std::vector<double> apply_scalar_fun(const std::vector<double>& eig, MatFun f,
                                     const char* op_name) {
  std::vector<double> out(eig.size());
  for (std::size_t i = 0; i < eig.size(); ++i) {
    const double x = eig[i];
    switch (f) {
      case MatFun::exp:
        out[i] = std::exp(x);
        break;
      case MatFun::sqrt:
      case MatFun::inv_sqrt:
      case MatFun::log:
      case MatFun::inv: {
        if (!(x > 0.0)) {
          std::ostringstream os;
          os << op_name << ": eigenvalue " << x << " outside the positive domain";
          throw domain_error(os.str());
        }
        if (f == MatFun::sqrt) out[i] = std::sqrt(x);
        else if (f == MatFun::inv_sqrt) out[i] = 1.0 / std::sqrt(x);
        else if (f == MatFun::log) out[i] = std::log(x);
        else out[i] = 1.0 / x;
        break;
      }
    }
  }
  return out;
}

const char* matfun_name(MatFun f) {
  switch (f) {
    case MatFun::sqrt: return "matfun(sqrt)";
    case MatFun::inv_sqrt: return "matfun(inv_sqrt)";
    case MatFun::log: return "matfun(log)";
    case MatFun::exp: return "matfun(exp)";
    case MatFun::inv: return "matfun(inv)";
  }
  return "matfun";
}

}  // namespace

SymMatrix matfun(const SymMatrix& m, MatFun f) {
  const EigenDecomposition dec = eigh(m);
  return dec.compose(apply_scalar_fun(dec.eigenvalues, f, matfun_name(f)));
}

SymMatrix matfun(const SpdMatrix& m, MatFun f) {
  return m.eig().compose(apply_scalar_fun(m.eig().eigenvalues, f, matfun_name(f)));
}

SymMatrix whiten(const SpdMatrix& p, const SymMatrix& x) {
  if (p.dim() != x.dim()) throw domain_error("whiten: dimension mismatch");
  const SymMatrix w = matfun(p, MatFun::inv_sqrt);
  return symmetrize(w.matrix() * x.matrix() * w.matrix());
}

double hs_inner(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw domain_error("hs_inner: dimension mismatch");
  // trace(ab) = sum_ij a_ij b_ij for symmetric operands.
  return kernels::dot(a.data(), b.data(), a.dim() * a.dim());
}

double hs_norm(const SymMatrix& a) { return std::sqrt(hs_inner(a, a)); }

}  // namespace frgeo
