#include "cstar/uhf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cstar {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::string trim_ws(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::size_t pow2size(std::size_t e) {
  if (e >= 8 * sizeof(std::size_t) - 2) throw infeasible_error("leg layout too large");
  return std::size_t(1) << e;
}

// sum of coefficient * product of letters, letters realized by gen
SparseMatrix evaluate(const StarPoly& p, std::size_t n, const std::function<SparseMatrix(std::uint64_t)>& gen) {
  std::map<std::uint64_t, SparseMatrix> cache;
  auto letter = [&](const Letter& l) {
    auto it = cache.find(l.gen);
    if (it == cache.end()) it = cache.emplace(l.gen, gen(l.gen)).first;
    return l.star ? it->second.adjoint() : it->second;
  };
  SparseMatrix out(n);
  for (const auto& [w, c] : p.terms()) {
    SparseMatrix t = SparseMatrix::identity(n);
    for (const auto& l : w) t = t * letter(l);
    out += c * t;
  }
  return out;
}

// e_ij of M_d (x) 1_D
SparseMatrix lifted_unit(std::uint64_t d, std::uint64_t D, std::uint64_t i, std::uint64_t j) {
  SparseMatrix m(static_cast<std::size_t>(d * D));
  for (std::uint64_t c = 0; c < D; ++c) m.add(i * D + c, j * D + c, 1);
  return m;
}

}  // namespace

// ---- supernatural numbers

SupernaturalNumber::SupernaturalNumber(Enumerator primes, bool infinite_type, std::string name)
    : primes_(std::move(primes)), infinite_(infinite_type), name_(std::move(name)) {}

SupernaturalNumber SupernaturalNumber::parse(const std::string& s) {
  std::vector<std::pair<std::uint64_t, long>> fin, inf;  // exponent -1 = inf
  std::stringstream ss(s);
  std::string part;
  std::vector<std::string> names;
  while (std::getline(ss, part, '*')) {
    part = trim_ws(part);
    auto caret = part.find('^');
    std::string ps = part.substr(0, caret), es = caret == std::string::npos ? "1" : part.substr(caret + 1);
    std::uint64_t p;
    try {
      std::size_t used;
      p = std::stoull(ps, &used);
      if (used != ps.size()) throw std::invalid_argument(ps);
    } catch (const std::exception&) {
      throw parse_error("supernatural number: bad prime '" + ps + "'");
    }
    if (!is_prime(p)) throw parse_error("supernatural number: " + ps + " is not prime");
    if (es == "inf") {
      inf.push_back({p, -1});
    } else {
      long e;
      try {
        std::size_t used;
        e = std::stol(es, &used);
        if (used != es.size() || e < 0) throw std::invalid_argument(es);
      } catch (const std::exception&) {
        throw parse_error("supernatural number: bad exponent '" + es + "'");
      }
      if (e > 0) fin.push_back({p, e});
    }
    names.push_back(ps + "^" + es);
  }
  if (names.empty()) throw parse_error("supernatural number: empty");
  std::vector<std::uint64_t> head;
  for (auto [p, e] : fin)
    for (long i = 0; i < e; ++i) head.push_back(p);
  std::vector<std::uint64_t> cyc;
  for (auto [p, e] : inf) cyc.push_back(p);
  std::string name;
  for (std::size_t i = 0; i < names.size(); ++i) name += (i ? "*" : "") + names[i];
  auto en = [head, cyc](std::size_t i) -> std::optional<std::uint64_t> {
    if (i == 0) return std::nullopt;
    if (i <= head.size()) return head[i - 1];
    if (cyc.empty()) return std::nullopt;
    return cyc[(i - 1 - head.size()) % cyc.size()];
  };
  return SupernaturalNumber(en, !cyc.empty(), name);
}

std::optional<std::uint64_t> SupernaturalNumber::prime(std::size_t i) const {
  auto p = primes_(i);
  if (p && !is_prime(*p)) throw std::logic_error("supernatural " + name_ + ": enumerated a non-prime");
  return p;
}

std::uint64_t SupernaturalNumber::truncation(std::size_t n) const {
  std::uint64_t d = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    auto p = prime(i);
    if (!p) throw infeasible_error("supernatural " + name_ + ": enumeration stalls before stage " + std::to_string(n));
    if (__builtin_mul_overflow(d, *p, &d)) throw infeasible_error("supernatural " + name_ + ": stage too large");
  }
  return d;
}

std::vector<std::uint64_t> SupernaturalNumber::support(std::size_t n) const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 1; i <= n; ++i) {
    auto p = prime(i);
    if (!p) break;
    if (std::find(out.begin(), out.end(), *p) == out.end()) out.push_back(*p);
  }
  return out;
}

// ---- presentations

UhfPresentation::UhfPresentation(SupernaturalNumber n, std::size_t max_stage)
    : LimitPresentation(
          [n](std::size_t m) -> PresentationPtr {
            return std::make_shared<MatrixPresentation>(static_cast<std::size_t>(n.truncation(m)));
          },
          [n](std::size_t m) {
            std::uint64_t d = n.truncation(m), p = n.truncation(m + 1) / d;
            ComputableMap f;
            f.exact = true;
            // e_ij -> e_ij (x) 1_p
            f.image = [d, p](const StarPoly& x, long) {
              return x.substitute([d, p](std::uint64_t g) {
                std::uint64_t i = g / d, j = g % d;
                StarPoly out;
                for (std::uint64_t c = 0; c < p; ++c) out += StarPoly::gen((i * p + c) * (d * p) + j * p + c);
                return out;
              });
            };
            return f;
          },
          true, 64, max_stage, "uhf:" + n.name()),
      n_(std::move(n)) {}

SparseMatrix UhfPresentation::realize_sparse(const StarPoly& p, std::size_t stage) const {
  check_point(p);
  if (top_stage(p) > stage) throw precondition_error(descriptor() + ": point reaches beyond the requested stage");
  const std::uint64_t dt = dim(stage);
  return evaluate(p, dt, [&](std::uint64_t g) {
    auto [s, idx] = unpair64(g);
    std::uint64_t d = dim(s);
    return lifted_unit(d, dt / d, idx / d, idx % d);
  });
}

DyadicInterval UhfPresentation::norm(const StarPoly& p, long k) const {
  check_point(p);
  std::size_t top = top_stage(p);
  if (top > max_stage())
    throw infeasible_error(descriptor() + ": stage " + std::to_string(top) + " is beyond the numeric stage budget");
  return sparse_norm(realize_sparse(p, top), k);
}

std::shared_ptr<UhfPresentation> uhf_presentation(const SupernaturalNumber& n, std::size_t max_stage) {
  return std::make_shared<UhfPresentation>(n, max_stage);
}

UhfTensorPresentation::UhfTensorPresentation(std::shared_ptr<const UhfPresentation> a,
                                             std::shared_ptr<const UhfPresentation> b)
    : a_(std::move(a)), b_(std::move(b)) {}

bool UhfTensorPresentation::valid_generator(std::uint64_t g) const {
  auto [m, p] = unpair64(g);
  return a_->valid_generator(m) && b_->valid_generator(p);
}

Rational UhfTensorPresentation::generator_bound(std::uint64_t g) const {
  if (!valid_generator(g)) throw precondition_error(descriptor() + ": no special point " + std::to_string(g));
  return 1;
}

std::optional<StarPoly> UhfTensorPresentation::unit_resolution() const {
  return StarPoly::gen(pair64(LimitPresentation::generator(0, 0), LimitPresentation::generator(0, 0)));
}

std::string UhfTensorPresentation::special_point_name(std::uint64_t g) const {
  auto [m, p] = unpair64(g);
  return a_->special_point_name(m) + "(x)" + b_->special_point_name(p);
}

std::pair<std::size_t, std::size_t> UhfTensorPresentation::top_stages(const StarPoly& p) const {
  std::size_t l = 0, r = 0;
  for (auto g : p.generators()) {
    auto [m, q] = unpair64(g);
    l = std::max<std::size_t>(l, unpair64(m).first);
    r = std::max<std::size_t>(r, unpair64(q).first);
  }
  return {l, r};
}

SparseMatrix UhfTensorPresentation::realize_sparse(const StarPoly& p, std::size_t ls, std::size_t rs) const {
  check_point(p);
  auto [l, r] = top_stages(p);
  if (l > ls || r > rs) throw precondition_error(descriptor() + ": point reaches beyond the requested stages");
  const std::uint64_t dl = a_->dim(ls), dr = b_->dim(rs);
  return evaluate(p, dl * dr, [&](std::uint64_t g) {
    auto [m, q] = unpair64(g);
    auto [sa, ia] = unpair64(m);
    auto [sb, ib] = unpair64(q);
    std::uint64_t da = a_->dim(sa), db = b_->dim(sb);
    return kron(lifted_unit(da, dl / da, ia / da, ia % da), lifted_unit(db, dr / db, ib / db, ib % db));
  });
}

DyadicInterval UhfTensorPresentation::norm(const StarPoly& p, long k) const {
  check_point(p);
  auto [l, r] = top_stages(p);
  if (l > a_->max_stage() || r > b_->max_stage())
    throw infeasible_error(descriptor() + ": stage beyond the numeric stage budget");
  return sparse_norm(realize_sparse(p, l, r), k);
}

// ---- leg points

LegPoint::LegPoint(std::size_t l, std::size_t r, SparseMatrix x) : left(l), right(r), m(std::move(x)) {
  if (m.dim() != pow2size(l + r)) throw precondition_error("leg point: dimension does not match the layout");
}

LegPoint LegPoint::identity(std::size_t l, std::size_t r) { return {l, r, SparseMatrix::identity(pow2size(l + r))}; }

LegPoint LegPoint::unit(std::size_t l, std::size_t r, std::size_t i, std::size_t j) {
  return {l, r, SparseMatrix::unit(pow2size(l + r), i, j)};
}

LegPoint lift(const LegPoint& x, std::size_t left, std::size_t right) {
  if (left < x.left || right < x.right) throw precondition_error("lift: layout shrinks");
  if (left == x.left && right == x.right) return x;
  const std::size_t a = pow2size(left - x.left), b = pow2size(right - x.right);
  const std::size_t r0 = pow2size(x.right), R = pow2size(right);
  SparseMatrix out(pow2size(left + right));
  for (const auto& [ij, v] : x.m.entries()) {
    std::size_t i1 = ij.first / r0, i2 = ij.first % r0, j1 = ij.second / r0, j2 = ij.second % r0;
    for (std::size_t s = 0; s < a; ++s)
      for (std::size_t t = 0; t < b; ++t)
        out.add((i1 * a + s) * R + i2 * b + t, (j1 * a + s) * R + j2 * b + t, v);
  }
  return {left, right, std::move(out)};
}

namespace {

std::pair<LegPoint, LegPoint> common(const LegPoint& a, const LegPoint& b) {
  std::size_t l = std::max(a.left, b.left), r = std::max(a.right, b.right);
  return {lift(a, l, r), lift(b, l, r)};
}

// drop the last leg of the first (copy = 0) or second copy when x acts trivially on it
std::optional<LegPoint> drop_leg(const LegPoint& x, int copy) {
  if ((copy == 0 ? x.left : x.right) == 0) return std::nullopt;
  const std::size_t r0 = pow2size(x.right);
  std::size_t nl = x.left - (copy == 0), nr = x.right - (copy == 1);
  SparseMatrix y(pow2size(nl + nr));
  for (const auto& [ij, v] : x.m.entries()) {
    std::size_t i1 = ij.first / r0, i2 = ij.first % r0, j1 = ij.second / r0, j2 = ij.second % r0;
    std::size_t bi = copy == 0 ? i1 & 1 : i2 & 1, bj = copy == 0 ? j1 & 1 : j2 & 1;
    if (bi != bj) return std::nullopt;
    if (bi) continue;
    if (copy == 0)
      y.add((i1 >> 1) * r0 + i2, (j1 >> 1) * r0 + j2, v);
    else
      y.add(i1 * (r0 >> 1) + (i2 >> 1), j1 * (r0 >> 1) + (j2 >> 1), v);
  }
  LegPoint out(nl, nr, std::move(y));
  if (!(lift(out, x.left, x.right).m == x.m)) return std::nullopt;
  return out;
}

}  // namespace

LegPoint operator*(const LegPoint& a, const LegPoint& b) {
  auto [x, y] = common(a, b);
  return {x.left, x.right, x.m * y.m};
}

LegPoint operator+(const LegPoint& a, const LegPoint& b) {
  auto [x, y] = common(a, b);
  return {x.left, x.right, x.m + y.m};
}

LegPoint operator-(const LegPoint& a, const LegPoint& b) {
  auto [x, y] = common(a, b);
  return {x.left, x.right, x.m + GaussianRational(-1) * y.m};
}

LegPoint operator*(const GaussianRational& c, const LegPoint& a) { return {a.left, a.right, c * a.m}; }

bool operator==(const LegPoint& a, const LegPoint& b) {
  auto [x, y] = common(a, b);
  return x.m == y.m;
}

LegPoint trim(const LegPoint& x) {
  LegPoint cur = x;
  for (int copy : {1, 0})
    while (auto y = drop_leg(cur, copy)) cur = std::move(*y);
  return cur;
}

DyadicInterval norm(const LegPoint& x, long k) { return sparse_norm(trim(x).m, k); }

StarPoly uhf_point(const LegPoint& x) {
  if (x.right != 0) throw precondition_error("uhf_point: element of the tensor product");
  const std::uint64_t d = pow2size(x.left);
  StarPoly p;
  for (const auto& [ij, v] : x.m.entries())
    p.add_term({Letter{UhfPresentation::unit_generator(x.left, d, ij.first, ij.second), false}}, v);
  return p;
}

StarPoly uhf_tensor_point(const LegPoint& x) {
  const std::uint64_t dl = pow2size(x.left), dr = pow2size(x.right);
  StarPoly p;
  for (const auto& [ij, v] : x.m.entries()) {
    std::uint64_t g1 = UhfPresentation::unit_generator(x.left, dl, ij.first / dr, ij.second / dr);
    std::uint64_t g2 = UhfPresentation::unit_generator(x.right, dr, ij.first % dr, ij.second % dr);
    std::uint64_t g;
    try {
      g = pair64(g1, g2);
    } catch (const precondition_error&) {
      throw infeasible_error("uhf tensor point: special point index beyond 64 bits");
    }
    p.add_term({Letter{g, false}}, v);
  }
  return p;
}

namespace {

std::size_t binary_stage(const UhfPresentation& a, std::size_t stage) {
  if (a.dim(stage) != (std::uint64_t(1) << stage))
    throw precondition_error(a.descriptor() + ": leg bookkeeping needs M_{2^inf}");
  return stage;
}

}  // namespace

LegPoint leg_point_from_uhf(const UhfPresentation& a, const StarPoly& p) {
  std::size_t s = binary_stage(a, a.top_stage(p));
  return {s, 0, a.realize_sparse(p, s)};
}

LegPoint leg_point_from_tensor(const UhfTensorPresentation& b, const StarPoly& p) {
  auto [l, r] = b.top_stages(p);
  binary_stage(b.left(), l);
  binary_stage(b.right(), r);
  return {l, r, b.realize_sparse(p, l, r)};
}

// ---- leg permutations

bool LegPermutation::valid() const {
  std::vector<bool> seen(perm.size(), false);
  for (auto p : perm) {
    if (p >= perm.size() || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

LegPermutation LegPermutation::inverse() const {
  LegPermutation q;
  q.perm.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) q.perm[perm[i]] = i;
  return q;
}

SparseMatrix LegPermutation::matrix() const {
  if (!valid()) throw precondition_error("leg permutation: not a permutation");
  const std::size_t n = perm.size(), N = pow2size(n);
  SparseMatrix u(N);
  for (std::size_t x = 0; x < N; ++x) {
    std::size_t y = 0;
    for (std::size_t i = 0; i < n; ++i)
      if ((x >> (n - 1 - i)) & 1) y |= std::size_t(1) << (n - 1 - perm[i]);
    u.add(y, x, 1);
  }
  return u;
}

HalfFlip half_flip(std::size_t depth, std::size_t width) {
  HalfFlip h;
  h.depth = depth;
  h.width = width;
  const std::size_t left = depth + width, n = left + width;
  h.legs.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) h.legs.perm[i] = i;
  for (std::size_t i = 0; i < width; ++i) std::swap(h.legs.perm[depth + i], h.legs.perm[left + i]);
  h.w = LegPoint(left, width, h.legs.matrix());
  return h;
}

LegPoint first_copy_expectation(const LegPoint& x) {
  return {x.left, 0, sparse_partial_trace_first(x.m, pow2size(x.left), pow2size(x.right))};
}

DyadicInterval distance_to_first_copy(const LegPoint& x, long k) {
  return norm(x - lift(first_copy_expectation(x), x.left, x.right), k);
}

HalfFlipReport certify_half_flip(const HalfFlip& h, const std::vector<LegPoint>& a, const std::vector<LegPoint>& y,
                                 long k) {
  HalfFlipReport r{Dyadic(0), Dyadic(0), Dyadic(0)};
  for (const auto& x : a) {
    if (x.right != 0) throw precondition_error("certify_half_flip: first-copy points expected");
    r.commutator = max(r.commutator, norm(h.w * x - x * h.w, k).hi());
  }
  for (const auto& z : y) {
    if (z.left != 0) throw precondition_error("certify_half_flip: second-copy points expected");
    LegPoint c = h.w.adjoint() * z * h.w;
    r.absorption = max(r.absorption, distance_to_first_copy(c, k).hi());
  }
  r.unitarity = norm(h.w.adjoint() * h.w - LegPoint::identity(), k).hi();
  return r;
}

}  // namespace cstar
