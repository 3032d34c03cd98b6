#pragma once

#include "frgeo/linalg.hpp"

namespace frgeo {

// Symmetric perturbation S with I - S strictly positive definite; the
// coordinate in which one covariance is written against another as
// C1 = C0^{1/2} (I - S) C0^{1/2}. Construction eigendecomposes S and rejects
// spectra whose gap (smallest eigenvalue of I - S) falls below the SpdMatrix
// conditioning floor.
class PerturbationS {
 public:
  explicit PerturbationS(SymMatrix s);

  std::size_t dim() const { return s_.dim(); }
  const SymMatrix& s() const { return s_; }
  // Eigendecomposition of S itself (ascending eigenvalues).
  const EigenDecomposition& eig() const { return eig_; }
  // min eigenvalue of I - S.
  double gap() const { return gap_; }

  double hs_norm_s() const;

 private:
  SymMatrix s_;
  EigenDecomposition eig_;
  double gap_;
};

}  // namespace frgeo
