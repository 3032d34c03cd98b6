#include "frgeo/determinants.hpp"

#include <cmath>
#include <sstream>

#include "frgeo/errors.hpp"

namespace frgeo {

namespace {

void require_above_minus_one(const std::vector<double>& eig, const char* op) {
  for (double x : eig) {
    if (!(x > -1.0)) {
      std::ostringstream os;
      os << op << ": eigenvalue " << x << " is not strictly greater than -1";
      throw domain_error(os.str());
    }
  }
}

}  // namespace

LogDetResult fredholm_logdet(const SymMatrix& a) {
  const EigenDecomposition dec = eigh(a);
  require_above_minus_one(dec.eigenvalues, "fredholm_logdet");
  double v = 0.0;
  for (double x : dec.eigenvalues) v += std::log1p(x);
  return {v, dec.eigenvalues};
}

LogDetResult carleman_logdet2(const SymMatrix& a) {
  const EigenDecomposition dec = eigh(a);
  require_above_minus_one(dec.eigenvalues, "carleman_logdet2");
  double v = 0.0;
  for (double x : dec.eigenvalues) v += std::log1p(x) - x;
  return {v, dec.eigenvalues};
}

double dlogdet2(const SymMatrix& x0, const SymMatrix& x) {
  if (x0.dim() != x.dim()) throw domain_error("dlogdet2: dimension mismatch");
  const EigenDecomposition dec = eigh(x0);
  std::vector<double> mapped(dec.eigenvalues.size());
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    const double lam = dec.eigenvalues[i];
    if (!(1.0 + lam > 0.0)) {
      std::ostringstream os;
      os << "dlogdet2: I + X0 not positive definite (eigenvalue " << lam << ")";
      throw domain_error(os.str());
    }
    mapped[i] = lam / (1.0 + lam);
  }
  // (I + x0)^{-1} x0 shares x0's eigenvectors.
  return -hs_inner(dec.compose(mapped), x);
}

double mixed_partial_logdet2(const SymMatrix& a, const SymMatrix& b) {
  return -hs_inner(a, b);
}

std::pair<double, double> logdet2_inverse_identity_check(const PerturbationS& a) {
  const auto& alphas = a.eig().eigenvalues;
  // (I-A)^{-1} - I has eigenvalues alpha/(1-alpha).
  double lhs = 0.0;
  double logdet2_minus = 0.0;
  double trace_term = 0.0;
  for (double al : alphas) {
    const double beta = al / (1.0 - al);
    lhs += std::log1p(beta) - beta;
    logdet2_minus += std::log1p(-al) + al;
    trace_term += al * al / (1.0 - al);
  }
  return {lhs, -(logdet2_minus + trace_term)};
}

}  // namespace frgeo
