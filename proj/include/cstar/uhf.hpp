#ifndef CSTAR_UHF_HPP
#define CSTAR_UHF_HPP

#include "cstar/presentation.hpp"

#include <functional>
#include <optional>

namespace cstar {

// Supernatural number through an enumeration of primes with repetition:
// stage n of the UHF algebra is M_{d_n}, d_n = prime(1) * ... * prime(n).
class SupernaturalNumber {
 public:
  // i >= 1; nullopt means the enumeration has not produced the i-th prime (yet)
  using Enumerator = std::function<std::optional<std::uint64_t>(std::size_t)>;

  SupernaturalNumber(Enumerator primes, bool infinite_type, std::string name);
  // "2^inf", "2^inf*3^inf", "2^3*5^inf" (finite exponents are used up first)
  static SupernaturalNumber parse(const std::string& s);
  static SupernaturalNumber two_infinity() { return parse("2^inf"); }

  const std::string& name() const { return name_; }
  bool infinite_type() const { return infinite_; }
  // throws std::logic_error if the enumerator produces a non-prime
  std::optional<std::uint64_t> prime(std::size_t i) const;
  // d_n; infeasible_error if the enumeration stalls before stage n
  std::uint64_t truncation(std::size_t n) const;
  // primes appearing among the first n enumerated ones
  std::vector<std::uint64_t> support(std::size_t n) const;

 private:
  Enumerator primes_;
  bool infinite_;
  std::string name_;
};

// The standard presentation of M_n: stages M_{d_n}, connecting maps x -> x (x) 1,
// special point pair(n, i d_n + j) = e_ij at stage n. Norms are stage norms of
// sparse realizations (the embeddings are isometric).
class UhfPresentation : public LimitPresentation {
 public:
  explicit UhfPresentation(SupernaturalNumber n, std::size_t max_stage = 20);
  DyadicInterval norm(const StarPoly& p, long k) const override;
  const SupernaturalNumber& supernatural() const { return n_; }
  std::uint64_t dim(std::size_t stage) const { return n_.truncation(stage); }
  static std::uint64_t unit_generator(std::uint64_t stage, std::uint64_t d, std::uint64_t i, std::uint64_t j) {
    return generator(stage, i * d + j);
  }
  // p at stage >= top_stage(p)
  SparseMatrix realize_sparse(const StarPoly& p, std::size_t stage) const;

 private:
  SupernaturalNumber n_;
};

std::shared_ptr<UhfPresentation> uhf_presentation(const SupernaturalNumber& n, std::size_t max_stage = 20);

// A (x) B for two UHF presentations; special point pair(m, p) = a_m (x) b_p.
class UhfTensorPresentation : public Presentation {
 public:
  UhfTensorPresentation(std::shared_ptr<const UhfPresentation> a, std::shared_ptr<const UhfPresentation> b);
  std::string descriptor() const override { return "tensor(" + a_->descriptor() + "," + b_->descriptor() + ")"; }
  DyadicInterval norm(const StarPoly& p, long k) const override;
  Rational generator_bound(std::uint64_t g) const override;
  bool valid_generator(std::uint64_t g) const override;
  std::optional<StarPoly> unit_resolution() const override;
  std::string special_point_name(std::uint64_t g) const override;
  const UhfPresentation& left() const { return *a_; }
  const UhfPresentation& right() const { return *b_; }
  // stages (left, right) reached by p
  std::pair<std::size_t, std::size_t> top_stages(const StarPoly& p) const;
  SparseMatrix realize_sparse(const StarPoly& p, std::size_t left_stage, std::size_t right_stage) const;

 private:
  std::shared_ptr<const UhfPresentation> a_, b_;
};

// ---- M_{2^inf} leg bookkeeping

// Element of M_{2^left} (x) M_{2^right}, legs ordered first copy then second,
// most significant first. With right = 0 it is a point of M_{2^inf} at stage
// left, and the same data is its image under x -> x (x) 1.
struct LegPoint {
  std::size_t left = 0, right = 0;
  SparseMatrix m;

  LegPoint() : m(1) {}
  LegPoint(std::size_t l, std::size_t r, SparseMatrix x);
  static LegPoint identity(std::size_t l = 0, std::size_t r = 0);
  static LegPoint unit(std::size_t l, std::size_t r, std::size_t i, std::size_t j);
  std::size_t dim() const { return m.dim(); }
  LegPoint adjoint() const { return {left, right, m.adjoint()}; }
  bool is_zero() const { return m.is_zero(); }
};

// the same element with extra trailing identity legs on either copy
LegPoint lift(const LegPoint& x, std::size_t left, std::size_t right);
LegPoint operator*(const LegPoint& a, const LegPoint& b);
LegPoint operator+(const LegPoint& a, const LegPoint& b);
LegPoint operator-(const LegPoint& a, const LegPoint& b);
LegPoint operator*(const GaussianRational& c, const LegPoint& a);
bool operator==(const LegPoint& a, const LegPoint& b);
// smallest layout (l, r) with x = lift(x', l, r); trailing identity legs are dropped
LegPoint trim(const LegPoint& x);
DyadicInterval norm(const LegPoint& x, long k);

// Rational points: x as a linear combination of special points of
// uhf:2^inf (right = 0) or of tensor(uhf:2^inf, uhf:2^inf).
StarPoly uhf_point(const LegPoint& x);
StarPoly uhf_tensor_point(const LegPoint& x);
LegPoint leg_point_from_uhf(const UhfPresentation& a, const StarPoly& p);
LegPoint leg_point_from_tensor(const UhfTensorPresentation& b, const StarPoly& p);

// Arrangement of qubit legs: input leg i becomes output leg perm[i].
struct LegPermutation {
  std::vector<std::size_t> perm;

  bool valid() const;
  std::size_t legs() const { return perm.size(); }
  LegPermutation inverse() const;
  // U e_x = e_y where bit perm[i] of y is bit i of x; an exact permutation unitary
  SparseMatrix matrix() const;
};

// Unitary at layout (depth + width, width) exchanging leg i of the second
// copy with leg depth + i of the first (i < width). It commutes with
// everything on the first depth legs of the first copy and moves the first
// width legs of the second copy into first-copy legs depth+1 .. depth+width.
struct HalfFlip {
  std::size_t depth = 0, width = 0;
  LegPermutation legs;
  LegPoint w;
};
HalfFlip half_flip(std::size_t depth, std::size_t width);
// the n-th supplier unitary for stage-<=n targets
inline HalfFlip half_flip_supplier(std::size_t n) { return half_flip(n, n); }

struct HalfFlipReport {
  Dyadic commutator;  // max ||w phi(a) - phi(a) w||
  Dyadic absorption;  // max ||w* y w - E(w* y w) (x) 1||, an upper bound for d(w* y w, phi(A))
  Dyadic unitarity;   // ||w* w - 1||
};
// a: points of the first copy (right = 0), y: points of the second copy (left = 0)
HalfFlipReport certify_half_flip(const HalfFlip& h, const std::vector<LegPoint>& a, const std::vector<LegPoint>& y,
                                 long k);
// distance bound of x to the first-copy subalgebra through the partial trace
DyadicInterval distance_to_first_copy(const LegPoint& x, long k);
// E(x) as a point of the first copy
LegPoint first_copy_expectation(const LegPoint& x);

}  // namespace cstar

#endif
