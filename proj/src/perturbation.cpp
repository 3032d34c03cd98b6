#include "frgeo/perturbation.hpp"

#include <cmath>
#include <sstream>

#include "frgeo/errors.hpp"

namespace frgeo {

PerturbationS::PerturbationS(SymMatrix s) : s_(std::move(s)), eig_(eigh(s_)) {
  // Eigenvalues of I - S are 1 - alpha, reversed order.
  const double alpha_max = eig_.eigenvalues.back();
  const double alpha_min = eig_.eigenvalues.front();
  gap_ = 1.0 - alpha_max;
  const double top = 1.0 - alpha_min;
  if (!(gap_ > 0.0) || !(gap_ > SpdMatrix::kConditionFloor * top)) {
    std::ostringstream os;
    os << "PerturbationS: I - S not positive definite beyond the conditioning "
          "floor: gap "
       << gap_ << " against largest eigenvalue " << top << " of I - S";
    throw domain_error(os.str());
  }
}

double PerturbationS::hs_norm_s() const { return hs_norm(s_); }

}  // namespace frgeo
