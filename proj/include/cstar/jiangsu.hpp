#ifndef CSTAR_JIANGSU_HPP
#define CSTAR_JIANGSU_HPP

#include "cstar/ball.hpp"
#include "cstar/presentation.hpp"

#include <array>
#include <memory>
#include <vector>

namespace cstar {

// Parameters of the connecting map Z_{p,q} -> Z_{p_next,q_next}.
struct JiangSuStage {
  long m = 0;
  Integer p, q;
  Integer k, l;  // first two primes > 2pq
  Integer p_next, q_next;
  Integer r, s;  // kl mod q_next, kl mod p_next
  Integer alpha, beta;      // r q = alpha q_next, kl - r = beta q_next
  Integer alpha_v, beta_v;  // s p = alpha_v p_next, kl - s = beta_v p_next
};

// Exact; throws std::logic_error if an invariant fails. Primes below 2^64
// are verified by trial division, larger ones by a strong probable-prime test.
JiangSuStage stage_params(long m);
// names of violated invariants (empty when all hold)
std::vector<std::string> stage_invariant_failures(const JiangSuStage& st);

// slot i of diag(f o xi_1, ..., f o xi_kl): t/2, 1/2 or (t+1)/2
Reparam slot_reparam(const JiangSuStage& st, std::size_t i);

// Permutation unitary with u e_{sigma(x)} = e_x, i.e. (u* d u)[sigma x, sigma y] = d[x, y].
struct PermutationUnitary {
  std::vector<std::uint32_t> sigma;

  std::size_t dim() const { return sigma.size(); }
  bool is_permutation() const;
  // each cycle as x, sigma(x), sigma^2(x), ...
  std::vector<std::vector<std::uint32_t>> cycles() const;
};

// Index matching into the block layouts of u* diag(f(xi_i(0))) u in
// M_{p_next} (x) 1 and v* diag(f(xi_i(1))) v in 1 (x) M_{q_next}.
// Dimensions above 2^24 throw infeasible_error.
PermutationUnitary build_u(long m);
PermutationUnitary build_v(long m);

// exp(i s h) for the logarithm h of a single L-cycle: circulant with entry
// (a, b) = c[(a - b) mod L]. The branch puts the eigenvalue -1 at angle -pi.
std::vector<ComplexInterval> cycle_exp_coefficients(std::size_t L, const Rational& s);
// h itself (coefficients of the circulant), ||h|| <= pi
std::vector<ComplexInterval> cycle_log_coefficients(std::size_t L);

// Everything needed to evaluate Phi_m at stage m (only m = 0 is numeric).
class JiangSuMap {
 public:
  explicit JiangSuMap(long m);
  const JiangSuStage& stage() const { return st_; }
  std::size_t dim() const { return n_; }
  std::size_t block() const { return blk_; }
  std::size_t slots() const { return kl_; }
  const PermutationUnitary& u() const { return u_; }
  const PermutationUnitary& v() const { return v_; }
  const std::vector<std::vector<std::uint32_t>>& u_cycles() const { return ucyc_; }
  const std::vector<std::vector<std::uint32_t>>& v_cycles() const { return vcyc_; }
  // stage-local realization of a point of Z_{p,q} as a dense half-power function
  HalfPowerMatrixFunction realize(const StarPoly& f) const;
  const DimensionDropPresentation& source() const { return src_; }

 private:
  JiangSuStage st_;
  std::size_t n_, blk_, kl_;
  PermutationUnitary u_, v_;
  std::vector<std::vector<std::uint32_t>> ucyc_, vcyc_;
  DimensionDropPresentation src_;
};

// cached per stage; m >= 1 throws infeasible_error
std::shared_ptr<const JiangSuMap> jiangsu_map(long m);

// Bounds on the path w(t) = exp(i(1-t)h_u) exp(i t h_v) as computed from
// the circulant enclosures (valid for every member of the enclosure).
struct PathFrame {
  Rational t;
  Dyadic delta;   // ||w w* - 1||, ||w* w - 1||
  Dyadic rho;     // ||w - w_mid||
  Dyadic norm_sq; // ||w||^2
};
PathFrame path_frame(const JiangSuMap& J, const Rational& t);

// The three distinct diagonal blocks f(t/2), f(1/2), f((t+1)/2).
std::array<IntervalMatrix, 3> slot_blocks(const HalfPowerMatrixFunction& f, const Rational& t, long k);

// Phi_m(f) kept in structured form w* D_f w.
class PhiImage {
 public:
  PhiImage(std::shared_ptr<const JiangSuMap> J, StarPoly f);
  std::size_t dim() const { return J_->dim(); }
  const StarPoly& point() const { return f_; }
  const HalfPowerMatrixFunction& local() const { return fl_; }
  // ||Phi(f)(t)|| in [(1 - delta)||D||, (1 + delta)||D||]
  DyadicInterval norm_at(const Rational& t, long k) const;
  // sup_t ||Phi(f)(t)||: the exact path is pointwise unitary, so this is the
  // sup over the xi-composed blocks
  DyadicInterval sup_norm(long k) const;
  // distance of Phi(f)(endpoint) to M_P (x) 1 (endpoint 0) or 1 (x) M_Q (endpoint 1)
  Dyadic boundary_distance(int endpoint, long k) const;
  // dense evaluation at t through ball matrices
  BallMatrix eval_dense(const Rational& t) const;
  // dense blocks D_f(t) as balls (slot order)
  std::shared_ptr<const JiangSuMap> map() const { return J_; }

 private:
  std::shared_ptr<const JiangSuMap> J_;
  StarPoly f_;
  HalfPowerMatrixFunction fl_;
};

PhiImage phi(long m, const StarPoly& f);

struct HomomorphismDefects {
  Rational t;
  Dyadic multiplicative;  // ||Phi(xy) - Phi(x)Phi(y)||
  Dyadic adjoint;         // ||Phi(x*) - Phi(x)*||
  Dyadic unital;          // ||Phi(1) - 1||
};
HomomorphismDefects phi_defects(const JiangSuMap& J, const StarPoly& x, const StarPoly& y, const Rational& t,
                                long k);

// Distance of u* D u (endpoint 0) or v* D v (endpoint 1) to the boundary
// subalgebra for an exact diagonal of slot blocks.
Dyadic permutation_boundary_distance(const JiangSuMap& J, const HalfPowerMatrixFunction& f, int endpoint, long k);

// sup_norm of the half-power realization of a point of Z_{p,q}
DyadicInterval dd_norm(std::size_t p, std::size_t q, const StarPoly& point, long k);

// Coefficients of f in powers of t when every exponent (r, s) is even.
// Throws precondition_error otherwise.
std::vector<RationalMatrix> polynomial_coefficients(const HalfPowerMatrixFunction& f);

// Rational point of Z_{p,q} equal to F(t) = sum_j t^j coeffs[j]; requires
// F(0) in M_p (x) 1 and F(1) in 1 (x) M_q (precondition_error otherwise).
StarPoly polynomial_point(std::size_t p, std::size_t q, const std::vector<RationalMatrix>& coeffs);

// Stage-1 candidate for Phi_0(a) with a polynomial a:
//   F(t) = W(t)* Delta(t) W(t),  W(1/2 + tau) = sum_m tau^m W_m + (1 - t) c0 + t c1,
// W_m fixed point with frac_bits fractional bits, c0 and c1 chosen so that
// W(0) = u and W(1) = v exactly. F is a polynomial with Gaussian-dyadic
// coefficients and endpoint values in the boundary subalgebras, so it is a
// rational point of Z_{p_1,q_1}; it is kept in this factored form.
struct JiangSuCandidate {
  StarPoly a;
  long degree = 0;
  long frac_bits = 0;
  std::vector<std::vector<std::int64_t>> coeff_re, coeff_im;  // row-major, degree + 1 matrices
  std::vector<std::int64_t> c0_re, c0_im, c1_re, c1_im;       // scale 2^-(frac_bits + degree)
  Dyadic path_error;  // sup_t ||W_exact(t) - W(t)||
  Dyadic delta_norm;  // upper bound on sup ||Delta||
  std::uint64_t fingerprint = 0;
};
JiangSuCandidate jiangsu_candidate(const StarPoly& a, long k);

// certified ||Phi_0(a) - F|| <= bound; throws certification_error unless < 2^-k
struct JiangSuVerifyResult {
  DyadicInterval distance;
  long degree = 0;
  std::uint64_t fingerprint = 0;
};
JiangSuVerifyResult jiangsu_verify_candidate(const JiangSuCandidate& c, long k);
// the stage-1 point sum_j b_j* b_j (= iota 1) as a candidate for Phi_0(iota 1):
// certified lower bound on its distance (1/2 at t = 1)
Dyadic scalar_candidate_distance_lower(long k);

// "jiangsu": the limit of Z_{p_m,q_m}; stage-m generators pair(m, j).
std::shared_ptr<LimitPresentation> jiangsu_presentation();

}  // namespace cstar

#endif
