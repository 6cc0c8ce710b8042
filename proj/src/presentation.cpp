#include "cstar/presentation.hpp"

#include "cstar/ast.hpp"

#include <cstdlib>

namespace cstar {

// ---- realized elements

namespace {

int level(const Realized& r) { return static_cast<int>(r.index()); }

std::size_t realized_dim(const Realized& r) {
  return std::visit([](const auto& x) { return x.dim(); }, r);
}

SparseHalfPower to_sparse(const HalfPowerMatrixFunction& f) {
  SparseHalfPower s(f.dim());
  for (const auto& [rs, c] : f.terms()) s.add_term(rs.first, rs.second, SparseMatrix::from_dense(c));
  return s;
}

Realized promote(const Realized& r, int to) {
  if (level(r) >= to) return r;
  if (level(r) == 0) {
    const auto& m = std::get<RationalMatrix>(r);
    if (to == 1) return HalfPowerMatrixFunction::constant(m);
    return SparseHalfPower::monomial(0, 0, SparseMatrix::from_dense(m));
  }
  return to_sparse(std::get<HalfPowerMatrixFunction>(r));
}

Realized identity_like(const Realized& r) {
  std::size_t n = realized_dim(r);
  switch (level(r)) {
    case 0: return RationalMatrix::identity(n);
    case 1: return HalfPowerMatrixFunction::constant(RationalMatrix::identity(n));
    default: return SparseHalfPower::monomial(0, 0, SparseMatrix::identity(n));
  }
}

Realized zero_like(const Realized& r) {
  std::size_t n = realized_dim(r);
  switch (level(r)) {
    case 0: return RationalMatrix(n);
    case 1: return HalfPowerMatrixFunction(n);
    default: return SparseHalfPower(n);
  }
}

template <class F>
Realized binary(const Realized& a, const Realized& b, F f) {
  if (realized_dim(a) != realized_dim(b)) throw precondition_error("realized dimensions differ");
  int l = std::max(level(a), level(b));
  Realized x = promote(a, l), y = promote(b, l);
  switch (l) {
    case 0: return f(std::get<RationalMatrix>(x), std::get<RationalMatrix>(y));
    case 1: return f(std::get<HalfPowerMatrixFunction>(x), std::get<HalfPowerMatrixFunction>(y));
    default: return f(std::get<SparseHalfPower>(x), std::get<SparseHalfPower>(y));
  }
}

SparseHalfPower sparse_kron(const SparseHalfPower& f, const SparseMatrix& b, bool left) {
  SparseHalfPower r(f.dim() * b.dim());
  for (const auto& [rs, c] : f.terms()) r.add_term(rs.first, rs.second, left ? kron(c, b) : kron(b, c));
  return r;
}

Realized realized_kron(const Realized& a, const Realized& b) {
  if (level(a) == 0 && level(b) == 0) return kron(std::get<RationalMatrix>(a), std::get<RationalMatrix>(b));
  if (level(a) == 1 && level(b) == 0) return kron(std::get<HalfPowerMatrixFunction>(a), std::get<RationalMatrix>(b));
  if (level(a) == 0 && level(b) == 1) return kron(std::get<RationalMatrix>(a), std::get<HalfPowerMatrixFunction>(b));
  if (level(a) == 2 && level(b) == 0)
    return sparse_kron(std::get<SparseHalfPower>(a), SparseMatrix::from_dense(std::get<RationalMatrix>(b)), true);
  if (level(a) == 0 && level(b) == 2)
    return sparse_kron(std::get<SparseHalfPower>(b), SparseMatrix::from_dense(std::get<RationalMatrix>(a)), false);
  throw precondition_error("tensor product of two function algebras is not supported");
}

struct RealizedBackend {
  const Presentation& P;
  Realized unit;
  Realized identity() const { return identity_like(unit); }
  Realized zero() const { return zero_like(unit); }
  Realized generator(std::uint64_t g) const { return P.realize_generator(g); }
  Realized adjoint(const Realized& x) const {
    return std::visit([](const auto& v) -> Realized { return v.adjoint(); }, x);
  }
  Realized mul(const Realized& x, const Realized& y) const {
    return binary(x, y, [](const auto& a, const auto& b) -> Realized { return a * b; });
  }
  Realized add(const Realized& x, const Realized& y) const {
    return binary(x, y, [](const auto& a, const auto& b) -> Realized { return a + b; });
  }
  Realized scale(const GaussianRational& c, const Realized& x) const {
    return std::visit(
        [&](const auto& v) -> Realized {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, RationalMatrix>) {
            RationalMatrix m = v;
            m *= c;
            return m;
          } else {
            return c * v;
          }
        },
        x);
  }
};

// some valid generator, to fix the type and dimension of the realization
std::uint64_t first_generator(const Presentation& P) {
  for (std::uint64_t g = 0; g < 64; ++g)
    if (P.valid_generator(g)) return g;
  throw precondition_error(P.descriptor() + ": no generator among the first indices");
}

Rational abs_bound(const GaussianRational& c) { return abs(c.re) + abs(c.im); }

}  // namespace

Realized realize(const Presentation& P, const StarPoly& p) {
  if (!P.realizable()) throw precondition_error(P.descriptor() + " has no concrete realization");
  P.check_point(p);
  Realized g = P.realize_generator(first_generator(P));
  RealizedBackend b{P, g};
  if (p.is_zero()) return b.zero();
  return poly_apply(p, b);
}

DyadicInterval realized_norm(const Realized& r, long k) {
  switch (level(r)) {
    case 0: return matrix_norm(std::get<RationalMatrix>(r), k);
    case 1: return sup_norm(std::get<HalfPowerMatrixFunction>(r), k);
    default: return sup_norm(std::get<SparseHalfPower>(r), k);
  }
}

// ---- base

StarPoly Presentation::unit_approximation(long) const {
  if (auto u = unit_resolution()) return *u;
  throw precondition_error(descriptor() + ": the unit is not a linear combination of special points");
}

Realized Presentation::realize_generator(std::uint64_t) const {
  throw precondition_error(descriptor() + " has no concrete realization");
}

void Presentation::check_point(const StarPoly& p) const {
  for (auto g : p.generators())
    if (!valid_generator(g))
      throw precondition_error(descriptor() + ": generator index " + std::to_string(g) + " is not a special point");
}

StarPoly Presentation::parse_point(const std::string& ast) const {
  StarPoly p = to_starpoly(parse_expr(ast), [this](const std::string& n) { return literal(n); });
  check_point(p);
  return p;
}

DyadicInterval certified_norm(const Presentation& P, const Code& c, long k) { return P.norm(decode_poly(c), k); }

DyadicInterval RealizedPresentation::norm(const StarPoly& p, long k) const {
  check_point(p);
  if (p.is_zero()) return DyadicInterval(0);
  return realized_norm(realize(*this, p), k);
}

// ---- matrices

MatrixPresentation::MatrixPresentation(std::size_t n) : n_(n) {
  if (n == 0) throw precondition_error("matrix presentation needs n >= 1");
}

Rational MatrixPresentation::generator_bound(std::uint64_t g) const {
  if (!valid_generator(g)) throw precondition_error(descriptor() + ": no special point " + std::to_string(g));
  return 1;
}

std::optional<StarPoly> MatrixPresentation::unit_resolution() const {
  StarPoly u;
  for (std::size_t j = 0; j < n_; ++j) u += StarPoly::gen(j * n_ + j);
  return u;
}

std::string MatrixPresentation::special_point_name(std::uint64_t g) const {
  return "e" + std::to_string(g / n_ + 1) + "," + std::to_string(g % n_ + 1);
}

Realized MatrixPresentation::realize_generator(std::uint64_t g) const {
  if (!valid_generator(g)) throw precondition_error(descriptor() + ": no special point " + std::to_string(g));
  return RationalMatrix::unit(n_, g / n_, g % n_);
}

// ---- C([0,1], M_n)

FunctionPresentation::FunctionPresentation(std::size_t n) : n_(n) {
  if (n == 0) throw precondition_error("function presentation needs n >= 1");
}

Rational FunctionPresentation::generator_bound(std::uint64_t g) const {
  if (!valid_generator(g)) throw precondition_error(descriptor() + ": no special point " + std::to_string(g));
  return 1;
}

std::optional<StarPoly> FunctionPresentation::unit_resolution() const {
  StarPoly u;
  for (std::size_t j = 0; j < n_; ++j) u += StarPoly::gen(3 + j * n_ + j);
  return u;
}

std::string FunctionPresentation::special_point_name(std::uint64_t g) const {
  switch (g) {
    case 0: return "iota";
    case 1: return "iota_sqrt";
    case 2: return "one_minus_iota_sqrt";
    default: return "e" + std::to_string((g - 3) / n_ + 1) + "," + std::to_string((g - 3) % n_ + 1);
  }
}

std::optional<std::uint64_t> FunctionPresentation::literal(const std::string& name) const {
  if (name == "iota") return 0;
  if (name == "iota_sqrt") return 1;
  if (name == "one_minus_iota_sqrt") return 2;
  return std::nullopt;
}

Realized FunctionPresentation::realize_generator(std::uint64_t g) const {
  if (!valid_generator(g)) throw precondition_error(descriptor() + ": no special point " + std::to_string(g));
  switch (g) {
    case 0: return HalfPowerMatrixFunction::iota(n_);
    case 1: return HalfPowerMatrixFunction::iota_sqrt(n_);
    case 2: return HalfPowerMatrixFunction::one_minus_iota_sqrt(n_);
    default: return HalfPowerMatrixFunction::constant(RationalMatrix::unit(n_, (g - 3) / n_, (g - 3) % n_));
  }
}

// ---- dimension drop

DimensionDropPresentation::DimensionDropPresentation(std::size_t p, std::size_t q) : p_(p), q_(q) {
  if (p < 1 || q < 1) throw precondition_error("dimension drop presentation needs p, q >= 1");
}

Rational DimensionDropPresentation::generator_bound(std::uint64_t g) const {
  if (!valid_generator(g)) throw precondition_error(descriptor() + ": no special point " + std::to_string(g));
  return 1;
}

std::string DimensionDropPresentation::special_point_name(std::uint64_t g) const {
  return g < p_ ? "a" + std::to_string(g + 1) : "b" + std::to_string(g - p_ + 1);
}

Realized DimensionDropPresentation::realize_generator(std::uint64_t g) const {
  if (!valid_generator(g)) throw precondition_error(descriptor() + ": no special point " + std::to_string(g));
  if (p_ > (1u << 16) / q_) throw infeasible_error(descriptor() + ": realization dimension beyond numeric budget");
  if (g < p_) return SparseHalfPower::monomial(0, 1, kron(SparseMatrix::unit(p_, 0, g), SparseMatrix::identity(q_)));
  return SparseHalfPower::monomial(1, 0, kron(SparseMatrix::identity(p_), SparseMatrix::unit(q_, 0, g - p_)));
}

StarPoly DimensionDropPresentation::unit_polynomial() const {
  StarPoly u;
  for (std::size_t g = 0; g < p_ + q_; ++g) u += StarPoly::gen(g, true) * StarPoly::gen(g);
  return u;
}

// ---- tensor products

TensorPresentation::TensorPresentation(PresentationPtr a, PresentationPtr b) : a_(std::move(a)), b_(std::move(b)) {}

bool TensorPresentation::valid_generator(std::uint64_t g) const {
  auto [m, p] = unpair64(g);
  return a_->valid_generator(m) && b_->valid_generator(p);
}

Rational TensorPresentation::generator_bound(std::uint64_t g) const {
  auto [m, p] = unpair64(g);
  return a_->generator_bound(m) * b_->generator_bound(p);
}

std::optional<StarPoly> TensorPresentation::unit_resolution() const {
  auto ua = a_->unit_resolution(), ub = b_->unit_resolution();
  if (!ua || !ub) return std::nullopt;
  StarPoly u;
  for (const auto& [wa, ca] : ua->terms())
    for (const auto& [wb, cb] : ub->terms())
      u.add_term({Letter{pair64(wa.at(0).gen, wb.at(0).gen), false}}, ca * cb);
  return u;
}

std::string TensorPresentation::special_point_name(std::uint64_t g) const {
  auto [m, p] = unpair64(g);
  return a_->special_point_name(m) + "(x)" + b_->special_point_name(p);
}

Realized TensorPresentation::realize_generator(std::uint64_t g) const {
  if (!a_->realizable() || !b_->realizable())
    throw precondition_error("no concrete tensor backend for " + descriptor());
  auto [m, p] = unpair64(g);
  return realized_kron(a_->realize_generator(m), b_->realize_generator(p));
}

UniversalTensorPresentation::UniversalTensorPresentation(PresentationPtr a, PresentationPtr b)
    : a_(std::move(a)), b_(std::move(b)) {}

bool UniversalTensorPresentation::valid_generator(std::uint64_t g) const {
  auto [side, j] = unpair64(g);
  if (side == 0) return a_->valid_generator(j);
  if (side == 1) return b_->valid_generator(j);
  return false;
}

Rational UniversalTensorPresentation::generator_bound(std::uint64_t g) const {
  auto [side, j] = unpair64(g);
  if (side == 0) return a_->generator_bound(j);
  if (side == 1) return b_->generator_bound(j);
  throw precondition_error(descriptor() + ": no special point " + std::to_string(g));
}

std::optional<StarPoly> UniversalTensorPresentation::unit_resolution() const {
  auto ua = a_->unit_resolution();
  if (!ua) return std::nullopt;
  return ua->relabel([](std::uint64_t m) { return left_generator(m); });
}

std::string UniversalTensorPresentation::special_point_name(std::uint64_t g) const {
  auto [side, j] = unpair64(g);
  return side == 0 ? a_->special_point_name(j) + "(x)1" : "1(x)" + b_->special_point_name(j);
}

Realized UniversalTensorPresentation::realize_generator(std::uint64_t g) const {
  if (!valid_generator(g)) throw precondition_error(descriptor() + ": no special point " + std::to_string(g));
  if (!a_->realizable() || !b_->realizable())
    throw precondition_error("no concrete tensor backend for " + descriptor());
  auto [side, j] = unpair64(g);
  if (side == 0) {
    std::size_t nb = realized_dim(b_->realize_generator(first_generator(*b_)));
    return realized_kron(a_->realize_generator(j), RationalMatrix::identity(nb));
  }
  std::size_t na = realized_dim(a_->realize_generator(first_generator(*a_)));
  return realized_kron(RationalMatrix::identity(na), b_->realize_generator(j));
}

StarPoly tensor_translate(const Presentation& a, const Presentation& b, TensorDirection dir, const StarPoly& p) {
  if (dir == TensorDirection::to_universal) {
    return p.substitute([](std::uint64_t g) {
      auto [m, q] = unpair64(g);
      return StarPoly::gen(UniversalTensorPresentation::left_generator(m)) *
             StarPoly::gen(UniversalTensorPresentation::right_generator(q));
    });
  }
  auto ua = a.unit_resolution(), ub = b.unit_resolution();
  if (!ua || !ub) throw precondition_error("tensor translation needs the unit as a combination of special points");
  return p.substitute([&](std::uint64_t g) {
    auto [side, j] = unpair64(g);
    const StarPoly& u = side == 0 ? *ub : *ua;
    if (side > 1) throw precondition_error("not a universal tensor generator: " + std::to_string(g));
    StarPoly r;
    for (const auto& [w, c] : u.terms())
      r.add_term({Letter{side == 0 ? pair64(j, w.at(0).gen) : pair64(w.at(0).gen, j), false}}, c);
    return r;
  });
}

Code tensor_code_translate(const Presentation& a, const Presentation& b, TensorDirection dir, const Code& c) {
  return encode_poly(tensor_translate(a, b, dir, decode_poly(c)));
}

Rational substitution_error(const StarPoly& p, const std::function<Rational(std::uint64_t)>& bound,
                            const Rational& e) {
  if (e > 1) throw precondition_error("substitution_error expects a letter error <= 1");
  Rational total = 0;
  for (const auto& [w, c] : p.terms()) {
    if (w.empty()) continue;
    Rational B = 0;
    for (const auto& l : w) B = std::max(B, bound(l.gen));
    Rational f = 1;
    for (std::size_t i = 1; i < w.size(); ++i) f *= B + 1;
    total += abs_bound(c) * static_cast<long>(w.size()) * e * f;
  }
  return total;
}

EmbedResult embed_unit(const Presentation& P, const Presentation& Q, const StarPoly& p, long k) {
  P.check_point(p);
  auto image = [&](const StarPoly& u) {
    return p.substitute([&](std::uint64_t m) {
      StarPoly r;
      for (const auto& [w, c] : u.terms()) {
        if (w.size() != 1 || w[0].star) throw precondition_error("unit approximation must be linear in special points");
        r.add_term({Letter{pair64(m, w[0].gen), false}}, c);
      }
      return r;
    });
  };
  if (auto u = Q.unit_resolution()) return {image(*u), 0};
  // ||a_m (x) u - a_m (x) 1|| <= B_m 2^-j when ||u - 1|| < 2^-j
  auto bound = [&](std::uint64_t g) { return P.generator_bound(g); };
  Rational B = 1;
  for (auto g : p.generators()) B = std::max(B, bound(g));
  Rational c1 = substitution_error(p, bound, 1);
  long j = k + 1 + (c1 > 0 ? std::max(0L, ceil_log2(c1 * B)) : 0);
  Rational err = substitution_error(p, bound, std::min(Rational(1), Rational(B * pow2(-j))));
  if (!(err < pow2(-k))) throw certification_error("embed_unit: error budget not met");
  return {image(Q.unit_approximation(j)), err};
}

// ---- inductive limits

LimitPresentation::LimitPresentation(StageFn stages, MapFn maps, bool injective, std::size_t stage_count,
                                     std::size_t max_stage, std::string name)
    : stages_(std::move(stages)),
      maps_(std::move(maps)),
      injective_(injective),
      stage_count_(stage_count),
      max_stage_(max_stage),
      name_(std::move(name)) {
  if (!injective_) throw precondition_error("inductive limits with non-injective maps are not supported");
}

PresentationPtr LimitPresentation::stage(std::size_t m) const {
  if (m >= stage_count_) throw precondition_error(name_ + ": no stage " + std::to_string(m));
  return stages_(m);
}

ComputableMap LimitPresentation::map(std::size_t m) const {
  if (m + 1 >= stage_count_) throw precondition_error(name_ + ": no map out of stage " + std::to_string(m));
  return maps_(m);
}

bool LimitPresentation::valid_generator(std::uint64_t g) const {
  auto [m, j] = unpair64(g);
  return m < stage_count_ && stage(m)->valid_generator(j);
}

Rational LimitPresentation::generator_bound(std::uint64_t g) const {
  auto [m, j] = unpair64(g);
  return stage(m)->generator_bound(j);
}

std::optional<StarPoly> LimitPresentation::unit_resolution() const {
  auto u = stage(0)->unit_resolution();
  if (!u) return std::nullopt;
  return lift(*u, 0);
}

std::string LimitPresentation::special_point_name(std::uint64_t g) const {
  auto [m, j] = unpair64(g);
  return stage(m)->special_point_name(j) + "@" + std::to_string(m);
}

StarPoly LimitPresentation::lift(const StarPoly& local, std::size_t stage) {
  return local.relabel([stage](std::uint64_t j) { return pair64(stage, j); });
}

std::size_t LimitPresentation::top_stage(const StarPoly& p) const {
  std::size_t top = 0;
  for (auto g : p.generators()) top = std::max<std::size_t>(top, unpair64(g).first);
  return top;
}

StarPoly LimitPresentation::push(const StarPoly& p, std::size_t to, long k, Rational& error) const {
  check_point(p);
  if (to > max_stage_)
    throw infeasible_error(name_ + ": stage " + std::to_string(to) + " is beyond the numeric stage budget " +
                           std::to_string(max_stage_));
  bool exact = true;
  std::size_t lowest = to;
  for (auto g : p.generators()) lowest = std::min<std::size_t>(lowest, unpair64(g).first);
  for (std::size_t s = lowest; s < to; ++s) exact = exact && map(s).exact;

  // letter precision: every letter moves by at most e, so the total error is
  // substitution_error(p, bounds, e) = e * C
  auto bound = [&](std::uint64_t g) { return generator_bound(g); };
  long kk = k;
  if (!exact) {
    Rational C = substitution_error(p, bound, 1);
    kk = k + 1 + (C > 0 ? std::max(0L, ceil_log2(C)) : 0);
  }
  std::map<std::uint64_t, StarPoly> images;
  for (auto g : p.generators()) {
    auto [m, j] = unpair64(g);
    StarPoly x = StarPoly::gen(j);
    // maps are contractive, so per-step errors add up
    for (std::size_t s = m; s < to; ++s) x = map(s).image(x, kk + static_cast<long>(to - m));
    images.emplace(g, std::move(x));
  }
  error = exact ? Rational(0) : substitution_error(p, bound, pow2(-kk));
  return p.substitute([&](std::uint64_t g) { return images.at(g); });
}

DyadicInterval LimitPresentation::norm(const StarPoly& p, long k) const {
  check_point(p);
  std::size_t top = top_stage(p);
  Rational err;
  StarPoly local = push(p, top, k + 2, err);
  DyadicInterval r = stage(top)->norm(local, k + 1);
  if (err == 0) return r;
  precision_scope ps(std::max<long>(working_precision(), k + 64));
  Dyadic e = Dyadic::round(err, MPFR_RNDU);
  Dyadic lo = sub(r.lo(), e, MPFR_RNDD);
  if (lo.sign() < 0) lo = Dyadic(0);
  return DyadicInterval(lo, add(r.hi(), e, MPFR_RNDU));
}

StarPoly doubling_image(const StarPoly& p, std::size_t n) {
  // e_ij -> e_ij + e_{i+n, j+n} in M_2n
  std::size_t m = 2 * n;
  return p.substitute([&](std::uint64_t g) {
    std::uint64_t i = g / n, j = g % n;
    return StarPoly::gen(i * m + j) + StarPoly::gen((i + n) * m + (j + n));
  });
}

std::shared_ptr<LimitPresentation> doubling_limit(std::size_t n, std::size_t max_stage) {
  const std::size_t count = 40;
  auto stages = [n](std::size_t m) -> PresentationPtr { return std::make_shared<MatrixPresentation>(n << m); };
  auto maps = [n](std::size_t m) {
    std::size_t d = n << m;
    return ComputableMap{[d](const StarPoly& p, long) { return doubling_image(p, d); }, true};
  };
  return std::make_shared<LimitPresentation>(stages, maps, true, count, max_stage,
                                             "limit(matrix:" + std::to_string(n) + ")");
}

// ---- b(m, n, k)

namespace {

BSearchResult distance_to(const LimitPresentation& L, std::size_t m, const StarPoly& image, const Rational& image_err,
                          const StarPoly& candidate, long k) {
  PresentationPtr Sp = L.stage(m + 1);
  const Presentation& S = *Sp;
  S.check_point(candidate);
  BSearchResult r;
  r.point = candidate;
  r.code = encode_poly(candidate);
  DyadicInterval d = S.norm(image - candidate, k + 2);
  if (image_err != 0) {
    precision_scope ps(std::max<long>(working_precision(), k + 64));
    Dyadic e = Dyadic::round(image_err, MPFR_RNDU);
    Dyadic lo = sub(d.lo(), e, MPFR_RNDD);
    if (lo.sign() < 0) lo = Dyadic(0);
    d = DyadicInterval(lo, add(d.hi(), e, MPFR_RNDU));
  }
  r.distance = d;
  return r;
}

}  // namespace

BSearchResult b_search_verify(const LimitPresentation& L, std::size_t m, const StarPoly& a, const StarPoly& candidate,
                              long k) {
  L.stage(m)->check_point(a);
  if (m + 1 > L.max_stage()) throw infeasible_error(L.descriptor() + ": stage " + std::to_string(m + 1) +
                                                    " is beyond the numeric stage budget");
  ComputableMap phi = L.map(m);
  StarPoly image = phi.image(a, k + 3);
  Rational err = phi.exact ? Rational(0) : pow2(-(k + 3));
  BSearchResult r = distance_to(L, m, image, err, candidate, k);
  r.steps = 1;
  if (!(r.distance.hi() < Dyadic::pow2(-k)))
    throw certification_error("b_search: candidate distance " + r.distance.str() + " not certified below 2^-" +
                              std::to_string(k));
  return r;
}

std::uint64_t enum_budget_from_env(std::uint64_t fallback) {
  const char* v = std::getenv("CSTAR_ENUM_BUDGET");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  unsigned long long b = std::strtoull(v, &end, 10);
  if (*end || b == 0) return fallback;
  return b;
}

BSearchResult b_search_enumerate(const LimitPresentation& L, std::size_t m, const StarPoly& a, long k,
                                 std::uint64_t budget) {
  L.stage(m)->check_point(a);
  if (m + 1 > L.max_stage()) throw infeasible_error(L.descriptor() + ": stage " + std::to_string(m + 1) +
                                                    " is beyond the numeric stage budget");
  if (budget == 0) budget = enum_budget_from_env();
  ComputableMap phi = L.map(m);
  StarPoly image = phi.image(a, k + 3);
  Rational err = phi.exact ? Rational(0) : pow2(-(k + 3));
  PresentationPtr Sp = L.stage(m + 1);
  const Presentation& S = *Sp;
  for (std::uint64_t c = 0; c < budget; ++c) {
    Code code(static_cast<unsigned long>(c));
    StarPoly cand = decode_poly(code);
    // non-canonical codes decode to 0, which code 0 already covers
    if (c != 0 && cand.is_zero()) continue;
    bool ok = true;
    for (auto g : cand.generators()) ok = ok && S.valid_generator(g);
    if (!ok) continue;
    BSearchResult r = distance_to(L, m, image, err, cand, k);
    if (r.distance.hi() < Dyadic::pow2(-k)) {
      r.steps = c + 1;
      return r;
    }
  }
  throw infeasible_error("b_search: enumeration budget " + std::to_string(budget) + " exhausted");
}

}  // namespace cstar
