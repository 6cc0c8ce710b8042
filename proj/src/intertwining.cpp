#include "cstar/intertwining.hpp"

#include "cstar/errors.hpp"

namespace cstar {

Rational truncation_slack(long p, std::size_t m) {
  Rational D = 1;
  for (std::size_t i = 0; i < m; ++i) D *= 1 + pow2(-p);
  D -= 1;
  return D * (2 + D);
}

ScheduleEntry make_schedule(std::size_t n, const Rational& bound) {
  if (n == 0) throw precondition_error("make_schedule: stages start at 1");
  if (bound < 0) throw precondition_error("make_schedule: negative bound");
  ScheduleEntry s;
  s.n = n;
  s.bound = bound;
  Rational B = std::max(Rational(1), bound);
  const long ln = static_cast<long>(n);
  s.eta = pow2(-(ln + 2));
  s.eps = pow2(-(ln + 3)) / B;
  s.k = ln + 3 + ceil_log2(B) + ceil_log2(Rational(ln + 1));
  s.conj_slack = truncation_slack(s.k, n - 1);
  const Rational target = pow2(-ln);
  if (!((2 * s.eps + pow2(-s.k + 1)) * bound + s.eta <= target) ||
      !((2 * s.eps + s.conj_slack) * bound + s.eta <= target) || !(2 * s.eps * bound + s.eta <= target) ||
      !(s.eps <= make_rational(1, 2)))
    throw certification_error("make_schedule: stage " + std::to_string(n) + " constants fail their inequalities");
  return s;
}

// ---- M_{2^inf} legs

namespace {

// units of stage s occupy positions offset(s) + 1 .. offset(s) + 4^s
std::size_t stage_offset(std::size_t s) {
  std::size_t off = 0;
  for (std::size_t r = 1; r < s; ++r) off += std::size_t(1) << (2 * r);
  return off;
}

std::optional<LegPoint> decoded_leg(const Presentation& P, std::uint64_t code,
                                    const std::function<LegPoint(const StarPoly&)>& convert) {
  StarPoly p = decode_poly(Code(static_cast<unsigned long>(code)));
  if (p.is_zero()) return std::nullopt;
  for (auto g : p.generators())
    if (!P.valid_generator(g)) return std::nullopt;
  try {
    LegPoint x = convert(p);
    if (x.is_zero()) return std::nullopt;
    return x;
  } catch (const precondition_error&) {
    return std::nullopt;
  } catch (const infeasible_error&) {
    return std::nullopt;
  }
}

}  // namespace

UhfLegBackend::UhfLegBackend()
    : a_(uhf_presentation(SupernaturalNumber::two_infinity())), b_(std::make_shared<UhfTensorPresentation>(a_, a_)) {}

LegPoint UhfLegBackend::a_point(std::size_t j) const {
  if (j == 0) throw precondition_error("a_point: indices start at 1");
  std::size_t s = 1, i = j - 1;
  while (i >= (std::size_t(1) << (2 * s))) {
    i -= std::size_t(1) << (2 * s);
    ++s;
    if (s > 20) throw infeasible_error("a_point: index beyond stage 20");
  }
  std::size_t d = std::size_t(1) << s;
  return LegPoint::unit(s, 0, i / d, i % d);
}

LegPoint UhfLegBackend::b_point(std::size_t j) const {
  if (j == 0) throw precondition_error("b_point: indices start at 1");
  LegPoint a = a_point((j + 1) / 2);
  if (j % 2 == 1) return a;
  return LegPoint(0, a.left, a.m);
}

std::optional<std::size_t> UhfLegBackend::index_of(const LegPoint& a) const {
  LegPoint t = trim(a);
  if (t.right != 0 || t.left == 0) return std::nullopt;
  const auto& e = t.m.entries();
  if (e.size() != 1 || e.begin()->second != GaussianRational(1)) return std::nullopt;
  auto [i, j] = e.begin()->first;
  return stage_offset(t.left) + i * t.m.dim() + j + 1;
}

bool UhfLegBackend::is_unit(const LegPoint& a) const { return a == LegPoint::identity(); }

std::vector<LegPoint> UhfLegBackend::supplier(std::size_t n, const std::vector<LegPoint>& commute,
                                              const std::vector<LegPoint>& absorb) const {
  std::size_t depth = n, width = n;
  for (const auto& x : commute) depth = std::max(depth, trim(x).left);
  for (const auto& x : absorb) {
    LegPoint t = trim(x);
    depth = std::max(depth, t.left);
    width = std::max(width, t.right);
  }
  return {half_flip(depth, width).w};
}

std::optional<LegPoint> UhfLegBackend::pullback(const LegPoint& x) const {
  LegPoint t = trim(x);
  if (t.right == 0) return t;
  return trim(first_copy_expectation(t));
}

std::optional<LegPoint> UhfLegBackend::enumerate_b(std::uint64_t code) const {
  return decoded_leg(*b_, code, [this](const StarPoly& p) { return leg_point_from_tensor(*b_, p); });
}

std::optional<LegPoint> UhfLegBackend::enumerate_a(std::uint64_t code) const {
  return decoded_leg(*a_, code, [this](const StarPoly& p) { return leg_point_from_uhf(*a_, p); });
}

// ---- M_n (x) M_m

MatrixTensorBackend::MatrixTensorBackend(std::size_t n, std::size_t m, std::vector<RationalMatrix> a_prefix,
                                         std::vector<RationalMatrix> b_prefix, Supplier supplier)
    : n_(n), m_(m), a_prefix_(std::move(a_prefix)), b_prefix_(std::move(b_prefix)), supplier_(supplier) {
  if (n == 0 || m == 0) throw precondition_error("MatrixTensorBackend: dimensions must be positive");
  auto A = std::make_shared<MatrixPresentation>(n);
  a_ = A;
  b_ = std::make_shared<TensorPresentation>(A, std::make_shared<MatrixPresentation>(m));
  for (const auto& a : a_prefix_)
    if (a.dim() != n) throw precondition_error("MatrixTensorBackend: a-prefix dimension");
  for (const auto& b : b_prefix_)
    if (b.dim() != n * m) throw precondition_error("MatrixTensorBackend: b-prefix dimension");
}

std::string MatrixTensorBackend::describe() const {
  return a_->descriptor() + " -> " + b_->descriptor();
}

namespace {

std::optional<RationalMatrix> decoded_matrix(const Presentation& P, std::uint64_t code) {
  StarPoly p = decode_poly(Code(static_cast<unsigned long>(code)));
  if (p.is_zero()) return std::nullopt;
  for (auto g : p.generators())
    if (!P.valid_generator(g)) return std::nullopt;
  RationalMatrix x = std::get<RationalMatrix>(realize(P, p));
  if (x.is_zero()) return std::nullopt;
  return x;
}

// j-th point (0-based) past the prefix, extending the cache through the codes
const RationalMatrix& nth_point(const Presentation& P, std::vector<RationalMatrix>& seen, std::uint64_t& next,
                                std::size_t j) {
  while (seen.size() <= j) {
    if (next == 0) throw infeasible_error("point enumeration overflow");
    if (auto x = decoded_matrix(P, next)) seen.push_back(std::move(*x));
    ++next;
  }
  return seen[j];
}

}  // namespace

RationalMatrix MatrixTensorBackend::a_point(std::size_t j) const {
  if (j == 0) throw precondition_error("a_point: indices start at 1");
  if (j <= a_prefix_.size()) return a_prefix_[j - 1];
  return nth_point(*a_, a_seen_, a_next_, j - 1 - a_prefix_.size());
}

RationalMatrix MatrixTensorBackend::b_point(std::size_t j) const {
  if (j == 0) throw precondition_error("b_point: indices start at 1");
  if (j <= b_prefix_.size()) return b_prefix_[j - 1];
  return nth_point(*b_, b_seen_, b_next_, j - 1 - b_prefix_.size());
}

std::optional<std::size_t> MatrixTensorBackend::index_of(const RationalMatrix& a) const {
  // searched among the first few thousand points only
  constexpr std::size_t limit = 4096;
  for (std::size_t j = 1; j <= limit; ++j)
    if (a_point(j) == a) return j;
  return std::nullopt;
}

std::vector<RationalMatrix> MatrixTensorBackend::supplier(std::size_t, const std::vector<RationalMatrix>&,
                                                          const std::vector<RationalMatrix>&) const {
  if (supplier_ == Supplier::identity) return {one()};
  return {};
}

std::optional<RationalMatrix> MatrixTensorBackend::enumerate_b(std::uint64_t code) const {
  return decoded_matrix(*b_, code);
}

std::optional<RationalMatrix> MatrixTensorBackend::enumerate_a(std::uint64_t code) const {
  return decoded_matrix(*a_, code);
}

Code MatrixTensorBackend::code_a(const RationalMatrix& a) const {
  StarPoly p;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (!a(i, j).is_zero()) p += a(i, j) * StarPoly::gen(i * n_ + j);
  return encode_poly(p);
}

Code MatrixTensorBackend::code_b(const RationalMatrix& b) const {
  // kron(e_ij, e_kl) sits at row i m + k, column j m + l
  StarPoly p;
  for (std::size_t r = 0; r < n_ * m_; ++r)
    for (std::size_t c = 0; c < n_ * m_; ++c) {
      if (b(r, c).is_zero()) continue;
      std::size_t i = r / m_, k = r % m_, j = c / m_, l = c % m_;
      p += b(r, c) * StarPoly::gen(pair64(i * n_ + j, k * m_ + l));
    }
  return encode_poly(p);
}

}  // namespace cstar
