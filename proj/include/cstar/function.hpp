#ifndef CSTAR_FUNCTION_HPP
#define CSTAR_FUNCTION_HPP

#include "cstar/matrix_ops.hpp"

#include <functional>
#include <map>
#include <utility>

namespace cstar {

// sum over (r, s) of t^{r/2} (1-t)^{s/2} C_{r,s}, t in [0, 1]; stored with s <= 1
class HalfPowerMatrixFunction {
 public:
  using Exponents = std::pair<unsigned, unsigned>;
  using Terms = std::map<Exponents, RationalMatrix>;

  HalfPowerMatrixFunction() = default;
  explicit HalfPowerMatrixFunction(std::size_t n) : n_(n) {}

  static HalfPowerMatrixFunction constant(const RationalMatrix& c);
  static HalfPowerMatrixFunction monomial(unsigned r, unsigned s, const RationalMatrix& c);
  static HalfPowerMatrixFunction iota(std::size_t n) { return monomial(2, 0, RationalMatrix::identity(n)); }
  static HalfPowerMatrixFunction iota_sqrt(std::size_t n) { return monomial(1, 0, RationalMatrix::identity(n)); }
  static HalfPowerMatrixFunction one_minus_iota_sqrt(std::size_t n) {
    return monomial(0, 1, RationalMatrix::identity(n));
  }

  std::size_t dim() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(unsigned r, unsigned s, const RationalMatrix& c);

  HalfPowerMatrixFunction adjoint() const;
  HalfPowerMatrixFunction& operator+=(const HalfPowerMatrixFunction& o);
  HalfPowerMatrixFunction& operator-=(const HalfPowerMatrixFunction& o);

  // L with ||f(x) - f(y)|| <= L |x - y|^{1/2}
  Rational holder_constant() const;

  friend bool operator==(const HalfPowerMatrixFunction& a, const HalfPowerMatrixFunction& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t n_ = 0;
  Terms terms_;
};

HalfPowerMatrixFunction operator+(HalfPowerMatrixFunction a, const HalfPowerMatrixFunction& b);
HalfPowerMatrixFunction operator-(HalfPowerMatrixFunction a, const HalfPowerMatrixFunction& b);
HalfPowerMatrixFunction operator*(const HalfPowerMatrixFunction& a, const HalfPowerMatrixFunction& b);
HalfPowerMatrixFunction operator*(const GaussianRational& c, const HalfPowerMatrixFunction& a);
HalfPowerMatrixFunction kron(const HalfPowerMatrixFunction& f, const RationalMatrix& b);
HalfPowerMatrixFunction kron(const RationalMatrix& a, const HalfPowerMatrixFunction& f);

// enclosure of f(t), width <= 2^-k
IntervalMatrix hp_eval(const HalfPowerMatrixFunction& f, const Rational& t, long k);
// enclosure of f over a t-box
IntervalMatrix hp_eval_box(const HalfPowerMatrixFunction& f, const DyadicInterval& t);
// f(0) or f(1), exact
RationalMatrix hp_endpoint(const HalfPowerMatrixFunction& f, int endpoint);

// Interval-valued function on [0, 1] with ||f(x) - f(y)|| <= L |x - y|^alpha.
struct CertifiedFunction {
  std::size_t n = 0;
  // encloses f(t) for every t in the box; k sets the rounding precision
  std::function<IntervalMatrix(const DyadicInterval&, long)> eval;
  Dyadic modulus;
  bool lipschitz = false;  // alpha = 1 if set, otherwise alpha = 1/2
};

CertifiedFunction certified(const HalfPowerMatrixFunction& f);

enum class Reparam { lower_half, midpoint, upper_half };  // t/2, 1/2, (t+1)/2
CertifiedFunction compose_reparam(const CertifiedFunction& f, Reparam xi);
DyadicInterval apply_reparam(const DyadicInterval& t, Reparam xi);

struct SupNormOptions {
  long budget = 0;  // boxes; 0 reads CSTAR_BUDGET_BOXES or uses 100000
};

// Enclosure of sup_t ||f(t)|| of width <= 2^-k by best-first branch and bound.
// Throws infeasible_error when the box budget runs out.
DyadicInterval sup_norm(const CertifiedFunction& f, long k, SupNormOptions opt = {});
DyadicInterval sup_norm(const HalfPowerMatrixFunction& f, long k, SupNormOptions opt = {});

// Upper bound on the distance of f(endpoint) to M_p (x) 1 (endpoint 0) or
// 1 (x) M_q (endpoint 1) in M_p (x) M_q.
Dyadic boundary_distance(const HalfPowerMatrixFunction& f, int endpoint, std::size_t p, std::size_t q, long k);
Dyadic boundary_distance(const CertifiedFunction& f, int endpoint, std::size_t p, std::size_t q, long k);

long box_budget_from_env(long fallback = 100000);

}  // namespace cstar

#endif
