#pragma once

#include <iosfwd>
#include <vector>

#include "frgeo/linalg.hpp"

namespace frgeo {

// Extended (unitized) Hilbert-Schmidt operator A + gamma*I: a dense block on
// the truncation plus a scalar tail acting as gamma*I beyond it. The tail is
// carried symbolically so the extended norm is independent of the truncation
// padding.
struct UnitizedOperator {
  SymMatrix block;  // A
  double tail;      // gamma
};

struct ExtendedNorm {
  double hs_part;      // ||A||_HS
  double scalar_part;  // gamma
  double total;        // sqrt(hs_part^2 + scalar_part^2)
};

ExtendedNorm hsx_norm(const UnitizedOperator& u);

// Geodesic distance of positive definite unitized operators:
// || log[(A+gamma)^{-1/2} (B+mu) (A+gamma)^{-1/2}] ||_{HS_X}, where the
// dense block carries the Hilbert-Schmidt part and the tail contributes
// log(mu/gamma) through the scalar slot. Requires positive definite
// operands with positive tails.
double daihs_distance(const UnitizedOperator& u, const UnitizedOperator& w);

// Geodesic between positive definite unitized operators; the tail
// interpolates geometrically as gamma^{1-t} mu^t.
UnitizedOperator unitized_geodesic(const UnitizedOperator& u,
                                   const UnitizedOperator& w, double t);

struct GammaSweepRow {
  double gamma;
  double d_aihs;   // d_aiHS(A + gamma I, B + gamma I)
  double target;   // ||log(I-S)||_HS for B = A^{1/2}(I-S)A^{1/2}
  double abs_err;  // |d_aihs - target|
  double ratio;    // d_aihs / (sqrt(2) * fisher_rao_distance(A, B))
};

// Equal-tail regularization sweep: d_aiHS(A + gamma I, B + gamma I) against
// the exact limit ||log(I-S)||_HS, one row per gamma.
std::vector<GammaSweepRow> gamma_sweep(const SpdMatrix& a, const SpdMatrix& b,
                                       const std::vector<double>& gammas);

// Header `gamma,d_aihs,target,abs_err,ratio`, 17-significant-digit decimals.
void write_gamma_sweep_csv(const std::vector<GammaSweepRow>& rows, std::ostream& os);

}  // namespace frgeo
