#pragma once

#include <utility>
#include <vector>

#include "frgeo/linalg.hpp"
#include "frgeo/perturbation.hpp"

namespace frgeo {

// A log-determinant together with the spectrum it was evaluated on, so the
// value can be re-derived from spectrum_used alone.
struct LogDetResult {
  double value;
  std::vector<double> spectrum_used;
};

// log det(I + A) = sum log(1 + lambda_k). Eigenvalues must stay strictly
// above -1.
LogDetResult fredholm_logdet(const SymMatrix& a);

// log det2(I + A) = sum [log(1 + lambda_k) - lambda_k], the Hilbert-Carleman
// regularization; nonpositive for symmetric arguments.
LogDetResult carleman_logdet2(const SymMatrix& a);

// Directional derivative of X -> log det2(I + X) at x0:
// -trace[(I + x0)^{-1} x0 x]. Requires I + x0 positive definite.
double dlogdet2(const SymMatrix& x0, const SymMatrix& x);

// Exact second mixed partial of (s, t) -> log det2(I + sA + tB) at the
// origin: -trace(ab).
double mixed_partial_logdet2(const SymMatrix& a, const SymMatrix& b);

// Both sides of log det2[(I-A)^{-1}] = -[log det2(I-A) + trace(A^2 (I-A)^{-1})];
// first = the left side evaluated as a Carleman determinant of
// (I-A)^{-1} - I, second = the right side.
std::pair<double, double> logdet2_inverse_identity_check(const PerturbationS& a);

}  // namespace frgeo
