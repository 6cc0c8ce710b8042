#ifndef CSTAR_CALCULUS_HPP
#define CSTAR_CALCULUS_HPP

#include "cstar/matrix_ops.hpp"

namespace cstar {

// N(delta) = ceil(log2(1/delta)) + 1. For x in [1/2, 3/2] the binomial
// coefficients of x^{-1/2} around 1 are bounded by 1, so the tail after N
// terms is at most 2^-N < delta.
long taylor_order(const Rational& delta);

// coefficient of (x-1)^j in the expansion of x^{-1/2}
Rational inverse_sqrt_coefficient(long j);
// s_N(x) = sum_{j <= N} c_j (x-1)^j, exact
RationalMatrix taylor_inverse_sqrt(const RationalMatrix& x, long N);
Rational taylor_inverse_sqrt(const Rational& x, long N);

// a with ||a*a - 1||, ||aa* - 1|| < eps and ||a|| <= 1, all certified.
struct AlmostUnitary {
  RationalMatrix a;
  Rational eps;
};
// Certifies the defining inequalities (throws precondition_error otherwise).
// eps must be <= 1/2 so that the spectrum of a*a stays in [1/2, 3/2].
AlmostUnitary make_almost_unitary(const RationalMatrix& a, const Rational& eps);

struct OmegaResult {
  RationalMatrix w;   // a s_N(a*a)
  long N = 0;
  Rational error;     // certified bound on ||omega(a) - w||, below 2^-n
};
OmegaResult omega_n(const AlmostUnitary& a, long n);

// (u ~> v)(t) = exp(i(1-t)h_u) exp(i t h_v) with h_u, h_v from schur_log.
// The path is built from the computed logarithms; its endpoints are within
// endpoint_error of u and v.
class UnitaryPath {
 public:
  UnitaryPath(const RationalMatrix& u, const RationalMatrix& v, long k);

  IntervalMatrix eval(const Rational& t, long k) const;
  const SchurLogResult& log_u() const { return hu_; }
  const SchurLogResult& log_v() const { return hv_; }
  // ||w(0) - u|| and ||w(1) - v|| upper bounds (below 2^-k)
  Dyadic endpoint_error() const { return max(hu_.exp_error, hv_.exp_error); }
  // ||w(s) - w(t)|| <= lipschitz() |s - t|
  Dyadic lipschitz() const { return add(hu_.norm_bound, hv_.norm_bound, MPFR_RNDU); }
  std::size_t dim() const { return n_; }

 private:
  std::size_t n_;
  SchurLogResult hu_, hv_;
};

}  // namespace cstar

#endif
