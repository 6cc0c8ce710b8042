#ifndef CSTAR_PRESENTATION_HPP
#define CSTAR_PRESENTATION_HPP

#include "cstar/coding.hpp"
#include "cstar/sparse.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace cstar {

// A concrete value of a special point: a matrix, a half-power function, or
// a sparse half-power function (large dimension-drop stages).
using Realized = std::variant<RationalMatrix, HalfPowerMatrixFunction, SparseHalfPower>;

class Presentation {
 public:
  virtual ~Presentation() = default;

  virtual std::string descriptor() const = 0;
  // enclosure of ||p|| with width <= 2^-k
  virtual DyadicInterval norm(const StarPoly& p, long k) const = 0;
  // upper bound on ||a_g||; throws for indices that are not special points
  virtual Rational generator_bound(std::uint64_t g) const = 0;
  virtual bool valid_generator(std::uint64_t g) const = 0;
  // 1 as a linear combination of special points, when there is one
  virtual std::optional<StarPoly> unit_resolution() const { return std::nullopt; }
  // linear combination u of special points with ||u - 1|| < 2^-k
  virtual StarPoly unit_approximation(long k) const;
  virtual std::string special_point_name(std::uint64_t g) const { return "a" + std::to_string(g); }
  virtual std::optional<std::uint64_t> literal(const std::string&) const { return std::nullopt; }

  virtual bool realizable() const { return false; }
  virtual Realized realize_generator(std::uint64_t g) const;

  Code unit_code() const { return encode_poly(StarPoly::unit()); }
  // throws precondition_error naming the first unknown generator
  void check_point(const StarPoly& p) const;
  // parse an AST against this presentation's literals
  StarPoly parse_point(const std::string& ast) const;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

DyadicInterval certified_norm(const Presentation& P, const Code& c, long k);

// Realizes p through the presentation's special points.
Realized realize(const Presentation& P, const StarPoly& p);
DyadicInterval realized_norm(const Realized& r, long k);

// Base for presentations whose norm is the norm of the realization.
class RealizedPresentation : public Presentation {
 public:
  DyadicInterval norm(const StarPoly& p, long k) const override;
  bool realizable() const override { return true; }
};

// M_n with matrix units e_ij at index i*n + j (0-based, row-major).
class MatrixPresentation : public RealizedPresentation {
 public:
  explicit MatrixPresentation(std::size_t n);
  std::size_t n() const { return n_; }
  std::string descriptor() const override { return "matrix:" + std::to_string(n_); }
  Rational generator_bound(std::uint64_t g) const override;
  bool valid_generator(std::uint64_t g) const override { return g < n_ * n_; }
  std::optional<StarPoly> unit_resolution() const override;
  std::string special_point_name(std::uint64_t g) const override;
  Realized realize_generator(std::uint64_t g) const override;

 private:
  std::size_t n_;
};

// C([0,1], M_n): 0 = iota, 1 = iota^{1/2}, 2 = (1 - iota)^{1/2}, 3 + i*n + j = 1 (x) e_ij.
class FunctionPresentation : public RealizedPresentation {
 public:
  explicit FunctionPresentation(std::size_t n);
  std::size_t n() const { return n_; }
  std::string descriptor() const override { return "fn:" + std::to_string(n_); }
  Rational generator_bound(std::uint64_t g) const override;
  bool valid_generator(std::uint64_t g) const override { return g < 3 + n_ * n_; }
  std::optional<StarPoly> unit_resolution() const override;
  std::string special_point_name(std::uint64_t g) const override;
  std::optional<std::uint64_t> literal(const std::string& name) const override;
  Realized realize_generator(std::uint64_t g) const override;

 private:
  std::size_t n_;
};

// Z_{p,q} inside C([0,1], M_p (x) M_q): a_i at index i (0 <= i < p) and b_j
// at index p + j (0 <= j < q), with a_i = (1-iota)^{1/2} (x) e_{0i} (x) 1 and
// b_j = iota^{1/2} (x) 1 (x) e_{0j}.
class DimensionDropPresentation : public RealizedPresentation {
 public:
  DimensionDropPresentation(std::size_t p, std::size_t q);
  std::size_t p() const { return p_; }
  std::size_t q() const { return q_; }
  std::string descriptor() const override { return "dimdrop:" + std::to_string(p_) + "," + std::to_string(q_); }
  Rational generator_bound(std::uint64_t g) const override;
  bool valid_generator(std::uint64_t g) const override { return g < p_ + q_; }
  std::string special_point_name(std::uint64_t g) const override;
  Realized realize_generator(std::uint64_t g) const override;
  // sum_i a_i* a_i + sum_j b_j* b_j
  StarPoly unit_polynomial() const;
  std::uint64_t a(std::size_t i) const { return i; }
  std::uint64_t b(std::size_t j) const { return p_ + j; }

 private:
  std::size_t p_, q_;
};

// Special point pair(m, p) = a_m (x) b_p.
class TensorPresentation : public RealizedPresentation {
 public:
  TensorPresentation(PresentationPtr a, PresentationPtr b);
  std::string descriptor() const override { return "tensor(" + a_->descriptor() + "," + b_->descriptor() + ")"; }
  Rational generator_bound(std::uint64_t g) const override;
  bool valid_generator(std::uint64_t g) const override;
  std::optional<StarPoly> unit_resolution() const override;
  std::string special_point_name(std::uint64_t g) const override;
  Realized realize_generator(std::uint64_t g) const override;
  const PresentationPtr& left() const { return a_; }
  const PresentationPtr& right() const { return b_; }

 private:
  PresentationPtr a_, b_;
};

// Generators pair(0, m) = a_m (x) 1 and pair(1, p) = 1 (x) b_p.
class UniversalTensorPresentation : public RealizedPresentation {
 public:
  UniversalTensorPresentation(PresentationPtr a, PresentationPtr b);
  std::string descriptor() const override {
    return "utensor(" + a_->descriptor() + "," + b_->descriptor() + ")";
  }
  Rational generator_bound(std::uint64_t g) const override;
  bool valid_generator(std::uint64_t g) const override;
  std::optional<StarPoly> unit_resolution() const override;
  std::string special_point_name(std::uint64_t g) const override;
  Realized realize_generator(std::uint64_t g) const override;
  static std::uint64_t left_generator(std::uint64_t m) { return pair64(0, m); }
  static std::uint64_t right_generator(std::uint64_t p) { return pair64(1, p); }

 private:
  PresentationPtr a_, b_;
};

enum class TensorDirection { to_universal, from_universal };
// Exact translation between the tensor and the universal tensor presentation.
StarPoly tensor_translate(const Presentation& a, const Presentation& b, TensorDirection dir, const StarPoly& p);
Code tensor_code_translate(const Presentation& a, const Presentation& b, TensorDirection dir, const Code& c);

// Rational point of tensor(P, Q) within 2^-k of p (x) 1.
struct EmbedResult {
  StarPoly point;
  Rational error;  // certified bound, < 2^-k
};
EmbedResult embed_unit(const Presentation& P, const Presentation& Q, const StarPoly& p, long k);

// Bound on ||p(x) - p(y)|| when each letter moves by at most e and every
// generator g satisfies ||x_g|| <= bound(g).
Rational substitution_error(const StarPoly& p, const std::function<Rational(std::uint64_t)>& bound, const Rational& e);

// Map between presentations given on rational points: image(p, k) is a
// rational point of the target within 2^-k of the image of p.
struct ComputableMap {
  std::function<StarPoly(const StarPoly&, long)> image;
  bool exact = false;  // image(p, k) is exact for every k
};

// Inductive limit: special point pair(m, j) is the j-th special point of
// stage m. The connecting maps must be isometric for the norm oracle to be
// valid; only injective systems are accepted.
class LimitPresentation : public Presentation {
 public:
  using StageFn = std::function<PresentationPtr(std::size_t)>;
  using MapFn = std::function<ComputableMap(std::size_t)>;

  // stage_count bounds the valid stage indices; max_stage is the numeric
  // budget: points reaching a later stage get infeasible_error
  LimitPresentation(StageFn stages, MapFn maps, bool injective, std::size_t stage_count, std::size_t max_stage,
                    std::string name);
  std::string descriptor() const override { return name_; }
  DyadicInterval norm(const StarPoly& p, long k) const override;
  Rational generator_bound(std::uint64_t g) const override;
  bool valid_generator(std::uint64_t g) const override;
  std::optional<StarPoly> unit_resolution() const override;
  std::string special_point_name(std::uint64_t g) const override;

  static std::uint64_t generator(std::uint64_t stage, std::uint64_t j) { return pair64(stage, j); }
  std::size_t max_stage() const { return max_stage_; }
  PresentationPtr stage(std::size_t m) const;
  ComputableMap map(std::size_t m) const;
  // stage-local point at stage `to` within 2^-k of p (supported in stages <= to)
  StarPoly push(const StarPoly& p, std::size_t to, long k, Rational& error) const;
  std::size_t top_stage(const StarPoly& p) const;
  // embed a stage-local point as a limit point
  static StarPoly lift(const StarPoly& local, std::size_t stage);

 private:
  StageFn stages_;
  MapFn maps_;
  bool injective_;
  std::size_t stage_count_, max_stage_;
  std::string name_;
};

// Matrix limit M_n -> M_2n -> M_4n ... along x -> diag(x, x).
std::shared_ptr<LimitPresentation> doubling_limit(std::size_t n, std::size_t max_stage = 12);
// diag(x, x) as a stage-local substitution M_n -> M_2n
StarPoly doubling_image(const StarPoly& p, std::size_t n);

// b(m, n, k): a rational point of stage m+1 within 2^-k of Phi_m(a).
struct BSearchResult {
  StarPoly point;  // stage-local at stage m+1
  Code code;
  DyadicInterval distance;  // enclosure of ||Phi_m(a) - point|| (widened by the image error)
  std::uint64_t steps = 0;
};
// verify mode: certifies the candidate or throws certification_error
BSearchResult b_search_verify(const LimitPresentation& L, std::size_t m, const StarPoly& a, const StarPoly& candidate,
                              long k);
// enumerate mode: least code with certified distance < 2^-k; budget from
// CSTAR_ENUM_BUDGET (default 10^6), infeasible_error when exhausted
BSearchResult b_search_enumerate(const LimitPresentation& L, std::size_t m, const StarPoly& a, long k,
                                 std::uint64_t budget = 0);

// "matrix:n", "fn:n", "dimdrop:p,q", "tensor(D1,D2)", "utensor(D1,D2)",
// "limit(matrix:n)" (doubling x -> diag(x, x)), "jiangsu", "uhf:2^inf";
// parse_error on anything else
PresentationPtr parse_presentation(const std::string& descriptor);

std::uint64_t enum_budget_from_env(std::uint64_t fallback = 1000000);

}  // namespace cstar

#endif
