#pragma once

#include <vector>

#include "frgeo/matrix.hpp"

namespace frgeo {

// Spectral factorization M = Q diag(eigenvalues) Q^T with eigenvalues
// ascending and Q's columns orthonormal.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
  int sweeps = 0;

  Matrix reconstruct() const;
  // Q f(lambda) Q^T for a per-eigenvalue map already applied by the caller.
  SymMatrix compose(const std::vector<double>& mapped) const;
};

// Cyclic Jacobi. Throws domain_error carrying the sweep count when the
// off-diagonal norm fails to reach the convergence threshold.
EigenDecomposition eigh(const SymMatrix& m);

// Symmetric positive definite matrix. Construction eigendecomposes the base
// and rejects spectra with min eigenvalue < 1e-12 * max eigenvalue; the
// decomposition is kept for the spectral calculus.
class SpdMatrix {
 public:
  explicit SpdMatrix(SymMatrix base);

  std::size_t dim() const { return base_.dim(); }
  const SymMatrix& sym() const { return base_; }
  const Matrix& matrix() const { return base_.matrix(); }
  const EigenDecomposition& eig() const { return eig_; }
  double min_eig() const { return min_eig_; }
  double max_eig() const { return max_eig_; }

  static constexpr double kConditionFloor = 1e-12;

 private:
  SymMatrix base_;
  EigenDecomposition eig_;
  double min_eig_;
  double max_eig_;
};

enum class MatFun { sqrt, inv_sqrt, log, exp, inv };

// Spectral matrix function Q f(Lambda) Q^T. All functions except exp require
// a strictly positive spectrum; violations raise domain_error naming the
// offending eigenvalue.
SymMatrix matfun(const SymMatrix& m, MatFun f);
// Same, reusing the decomposition cached in the SpdMatrix.
SymMatrix matfun(const SpdMatrix& m, MatFun f);

// P^{-1/2} X P^{-1/2}
SymMatrix whiten(const SpdMatrix& p, const SymMatrix& x);

// trace(a b) and the induced Frobenius/Hilbert-Schmidt norm.
double hs_inner(const SymMatrix& a, const SymMatrix& b);
double hs_norm(const SymMatrix& a);

}  // namespace frgeo
