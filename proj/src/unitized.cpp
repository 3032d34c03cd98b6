#include "frgeo/unitized.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "frgeo/errors.hpp"
#include "frgeo/manifold.hpp"

namespace frgeo {

namespace {

void require_positive(const UnitizedOperator& u, const char* who) {
  if (!(u.tail > 0.0)) {
    std::ostringstream os;
    os << who << ": tail " << u.tail << " must be positive";
    throw domain_error(os.str());
  }
  const EigenDecomposition dec = eigh(u.block);
  const double bottom = dec.eigenvalues.front() + u.tail;
  if (!(bottom > 0.0)) {
    std::ostringstream os;
    os << who << ": operator not positive definite (min eigenvalue of A + gamma I is "
       << bottom << ")";
    throw domain_error(os.str());
  }
}

SymMatrix shifted_block(const UnitizedOperator& u) {
  Matrix m = u.block.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += u.tail;
  return sym_exact(std::move(m));
}

}  // namespace

ExtendedNorm hsx_norm(const UnitizedOperator& u) {
  const double hs = hs_norm(u.block);
  return {hs, u.tail, std::hypot(hs, u.tail)};
}

double daihs_distance(const UnitizedOperator& u, const UnitizedOperator& w) {
  if (u.block.dim() != w.block.dim())
    throw domain_error("daihs_distance: dimension mismatch");
  require_positive(u, "daihs_distance");
  require_positive(w, "daihs_distance");
  const SpdMatrix p(shifted_block(u));
  const SpdMatrix q(shifted_block(w));
  // Dense block of log[(A+gamma)^{-1/2}(B+mu)(A+gamma)^{-1/2}]; beyond the
  // truncation the operator acts as (mu/gamma) I, so the scalar slot carries
  // log(mu/gamma) and the HS slot the deviation from it.
  const SymMatrix l = matfun(whiten(p, q.sym()), MatFun::log);
  const double s = std::log(w.tail / u.tail);
  Matrix dev = l.matrix();
  for (std::size_t i = 0; i < dev.rows(); ++i) dev(i, i) -= s;
  const double hs_part = dev.frobenius_norm();
  return std::hypot(hs_part, s);
}

UnitizedOperator unitized_geodesic(const UnitizedOperator& u,
                                   const UnitizedOperator& w, double t) {
  if (u.block.dim() != w.block.dim())
    throw domain_error("unitized_geodesic: dimension mismatch");
  require_positive(u, "unitized_geodesic");
  require_positive(w, "unitized_geodesic");
  const SpdMatrix p(shifted_block(u));
  const SpdMatrix q(shifted_block(w));
  const SymMatrix dense = GeodesicPath(p, q).point(t);
  const double tail = std::pow(u.tail, 1.0 - t) * std::pow(w.tail, t);
  Matrix block = dense.matrix();
  for (std::size_t i = 0; i < block.rows(); ++i) block(i, i) -= tail;
  return {sym_exact(std::move(block)), tail};
}

std::vector<GammaSweepRow> gamma_sweep(const SpdMatrix& a, const SpdMatrix& b,
                                       const std::vector<double>& gammas) {
  const double d_fr = fisher_rao_distance(a, b);
  // ||log(I-S)||_HS = ||log(A^{-1/2} B A^{-1/2})||_HS = sqrt(2) d_FR
  const double target = hs_norm(matfun(whiten(a, b.sym()), MatFun::log));
  std::vector<GammaSweepRow> rows;
  rows.reserve(gammas.size());
  const double denom = std::sqrt(2.0) * d_fr;
  for (double gamma : gammas) {
    if (!(gamma > 0.0)) throw domain_error("gamma_sweep: gamma values must be positive");
    const double d = daihs_distance({a.sym(), gamma}, {b.sym(), gamma});
    // Identical endpoints make the ratio 0/0; both distances agree there.
    const double ratio = denom > 0.0 ? d / denom : 1.0;
    rows.push_back({gamma, d, target, std::fabs(d - target), ratio});
  }
  return rows;
}

void write_gamma_sweep_csv(const std::vector<GammaSweepRow>& rows, std::ostream& os) {
  os << "gamma,d_aihs,target,abs_err,ratio\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.gamma,
                  r.d_aihs, r.target, r.abs_err, r.ratio);
    os << buf;
  }
}

}  // namespace frgeo
