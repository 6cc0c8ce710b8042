#include "jiangsu_internal.hpp"

#include <map>
#include <mutex>
#include <set>

namespace cstar {

namespace {

constexpr long kBoundPrec = 64;

Dyadic up_add(const Dyadic& a, const Dyadic& b) { return add(a, b, MPFR_RNDU); }
Dyadic up_mul(const Dyadic& a, const Dyadic& b) { return mul(a, b, MPFR_RNDU); }

std::set<std::size_t> lengths(const std::vector<std::vector<std::uint32_t>>& cycles) {
  std::set<std::size_t> out;
  for (const auto& c : cycles) out.insert(c.size());
  return out;
}

// For the circulant family with coefficient enclosures c: the unitarity
// defect sum_e |(c * c~)[e] - delta_e| (circulant norm <= l1 of coefficients)
// and the radius sum_d rad(c[d]).
struct CirculantBounds {
  Dyadic defect, radius;
};

CirculantBounds circulant_bounds(const std::vector<ComplexInterval>& c) {
  precision_scope ps(128);
  const std::size_t L = c.size();
  Dyadic defect(0), radius(0);
  for (std::size_t e = 0; e < L; ++e) {
    ComplexInterval g(0);
    for (std::size_t d = 0; d < L; ++d) g += mul_conj(c[d], c[(d + L - e) % L]);
    if (e == 0) g -= ComplexInterval(1);
    defect = up_add(defect, g.abs_upper());
    radius = up_add(radius, c[e].rad());
  }
  return {defect, radius};
}

struct SideBounds {
  Dyadic defect{0}, radius{0};
};

CirculantBounds cached_bounds(std::size_t L, const Rational& s) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, Rational>, CirculantBounds> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({L, s});
    if (it != cache.end()) return it->second;
  }
  CirculantBounds cb = circulant_bounds(cycle_exp_coefficients(L, s));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(L, s), cb);
  return cb;
}

SideBounds side_bounds(const std::vector<std::vector<std::uint32_t>>& cycles, const Rational& s) {
  SideBounds b;
  for (std::size_t L : lengths(cycles)) {
    CirculantBounds cb = cached_bounds(L, s);
    b.defect = max(b.defect, cb.defect);
    b.radius = max(b.radius, cb.radius);
  }
  return b;
}

// max over cycle lengths of ||exp(ih) - S|| with S the cycle shift (s = 1)
Dyadic shift_distance(const std::vector<std::vector<std::uint32_t>>& cycles) {
  precision_scope ps(128);
  Dyadic out(0);
  for (std::size_t L : lengths(cycles)) {
    auto c = cycle_exp_coefficients(L, 1);
    Dyadic s(0);
    for (std::size_t d = 0; d < L; ++d) {
      ComplexInterval z = c[d];
      if (d == (L - 1) % L) z -= ComplexInterval(1);
      s = up_add(s, z.abs_upper());
    }
    out = max(out, s);
  }
  return out;
}

Dyadic block_norm_upper(const IntervalMatrix& m, long k) { return matrix_norm(m, k).hi(); }

Dyadic max_block_norm(const std::array<IntervalMatrix, 3>& b, long k) {
  Dyadic out(0);
  for (const auto& m : b) out = max(out, block_norm_upper(m, k));
  return out;
}

}  // namespace

PathFrame path_frame(const JiangSuMap& J, const Rational& t) {
  if (t < 0 || t > 1) throw precondition_error("path_frame: t outside [0, 1]");
  SideBounds bu = side_bounds(J.u_cycles(), 1 - t);
  SideBounds bv = side_bounds(J.v_cycles(), t);
  precision_scope ps(kBoundPrec);
  Dyadic one(1);
  Dyadic nu = up_add(one, bu.defect), nv = up_add(one, bv.defect);  // ||E||^2 bounds
  PathFrame f;
  f.t = t;
  // w w* - 1 = E_u (E_v E_v* - 1) E_u* + (E_u E_u* - 1), and the mirror for w* w
  f.delta = max(up_add(up_mul(nu, bv.defect), bu.defect), up_add(up_mul(nv, bu.defect), bv.defect));
  f.norm_sq = up_add(one, f.delta);
  // ||E|| <= ||E||^2 once ||E|| >= 1; otherwise ||E|| <= 1
  f.rho = up_add(up_mul(nu, bv.radius), up_mul(bu.radius, nv));
  return f;
}

std::array<IntervalMatrix, 3> slot_blocks(const HalfPowerMatrixFunction& f, const Rational& t, long k) {
  return {hp_eval(f, t / 2, k), hp_eval(f, Rational(1, 2), k), hp_eval(f, (t + 1) / 2, k)};
}

PhiImage::PhiImage(std::shared_ptr<const JiangSuMap> J, StarPoly f)
    : J_(std::move(J)), f_(std::move(f)), fl_(J_->realize(f_)) {}

PhiImage phi(long m, const StarPoly& f) { return PhiImage(jiangsu_map(m), f); }

DyadicInterval PhiImage::norm_at(const Rational& t, long k) const {
  PathFrame fr = path_frame(*J_, t);
  auto blocks = slot_blocks(fl_, t, k + 8);
  DyadicInterval d(0);
  for (const auto& b : blocks) d = max(d, matrix_norm(b, k + 2));
  precision_scope ps(std::max<long>(kBoundPrec, k + 16));
  Dyadic lo = mul(d.lo(), sub(Dyadic(1), fr.delta, MPFR_RNDD), MPFR_RNDD);
  Dyadic hi = mul(d.hi(), fr.norm_sq, MPFR_RNDU);
  return DyadicInterval(max(lo, Dyadic(0)), hi);
}

DyadicInterval PhiImage::sup_norm(long k) const {
  // norm of a block diagonal is the largest block norm
  CertifiedFunction base = certified(fl_);
  DyadicInterval best;
  bool first = true;
  for (Reparam xi : {Reparam::lower_half, Reparam::midpoint, Reparam::upper_half}) {
    DyadicInterval r = cstar::sup_norm(compose_reparam(base, xi), k + 1);
    if (first) {
      best = r;
      first = false;
    } else {
      best = DyadicInterval(max(best.lo(), r.lo()), max(best.hi(), r.hi()));
    }
  }
  return best;
}

Dyadic permutation_boundary_distance(const JiangSuMap& J, const HalfPowerMatrixFunction& f, int endpoint, long k) {
  if (endpoint != 0 && endpoint != 1) throw precondition_error("endpoint must be 0 or 1");
  precision_scope ps(std::max<long>(128, k + 32));
  const std::size_t blk = J.block(), kl = J.slots();
  const std::size_t P = J.stage().p_next.get_ui(), Q = J.stage().q_next.get_ui();
  IntervalMatrix exact_end(RationalMatrix(hp_endpoint(f, endpoint)));
  IntervalMatrix mid = hp_eval(f, Rational(1, 2), k + 32);
  const PermutationUnitary& w = endpoint == 0 ? J.u() : J.v();

  using Key = std::pair<std::uint32_t, std::uint32_t>;
  std::map<Key, ComplexInterval> b;
  for (std::size_t i = 0; i < kl; ++i) {
    Reparam xi = slot_reparam(J.stage(), i);
    bool at_end = endpoint == 0 ? xi == Reparam::lower_half : xi == Reparam::upper_half;
    const IntervalMatrix& val = at_end ? exact_end : mid;
    for (std::size_t c = 0; c < blk; ++c)
      for (std::size_t d = 0; d < blk; ++d) {
        const ComplexInterval& z = val(c, d);
        if (z.re.is_point() && z.im.is_point() && z.re.lo().is_zero() && z.im.lo().is_zero()) continue;
        b[{w.sigma[i * blk + c], w.sigma[i * blk + d]}] = z;
      }
  }
  // kept leg and averaged leg of an index A*Q + B
  auto kept = [&](std::uint32_t x) -> std::size_t { return endpoint == 0 ? x / Q : x % Q; };
  auto summed = [&](std::uint32_t x) -> std::size_t { return endpoint == 0 ? x % Q : x / Q; };
  auto index = [&](std::size_t kk, std::size_t ss) -> std::uint32_t {
    return static_cast<std::uint32_t>(endpoint == 0 ? kk * Q + ss : ss * Q + kk);
  };
  const std::size_t count = endpoint == 0 ? Q : P;
  DyadicInterval inv = DyadicInterval::from_rational(Rational(1, long(count)));

  std::map<std::pair<std::size_t, std::size_t>, ComplexInterval> E;
  for (const auto& [key, z] : b)
    if (summed(key.first) == summed(key.second)) E[{kept(key.first), kept(key.second)}] += z;
  for (auto& [key, z] : E) z = inv * z;

  const std::size_t n = J.dim();
  std::vector<Dyadic> row(n, Dyadic(0)), col(n, Dyadic(0));
  auto accumulate = [&](std::uint32_t x, std::uint32_t y, const ComplexInterval& z) {
    Dyadic a = z.abs_upper();
    row[x] = add(row[x], a, MPFR_RNDU);
    col[y] = add(col[y], a, MPFR_RNDU);
  };
  for (const auto& [key, z] : b) {
    if (summed(key.first) != summed(key.second)) {
      accumulate(key.first, key.second, z);
    } else {
      accumulate(key.first, key.second, z - E[{kept(key.first), kept(key.second)}]);
    }
  }
  for (const auto& [key, e] : E)
    for (std::size_t s = 0; s < count; ++s) {
      std::uint32_t x = index(key.first, s), y = index(key.second, s);
      if (!b.count({x, y})) accumulate(x, y, -e);
    }
  Dyadic r(0), c(0);
  for (std::size_t i = 0; i < n; ++i) {
    r = max(r, row[i]);
    c = max(c, col[i]);
  }
  return sqrt(mul(r, c, MPFR_RNDU), MPFR_RNDU);
}

Dyadic PhiImage::boundary_distance(int endpoint, long k) const {
  // w(0) = exp(i h_u) and w(1) = exp(i h_v) exactly; compare with u, v
  Dyadic base = permutation_boundary_distance(*J_, fl_, endpoint, k);
  Dyadic eps = shift_distance(endpoint == 0 ? J_->u_cycles() : J_->v_cycles());
  auto blocks = slot_blocks(fl_, Rational(endpoint), k + 8);
  Dyadic dn = max_block_norm(blocks, k + 4);
  precision_scope ps(kBoundPrec);
  // ||E* D E - u* D u|| <= ||D|| eps (2 + eps)
  Dyadic drift = up_mul(dn, up_mul(eps, up_add(Dyadic(2), eps)));
  return up_add(base, drift);
}

HomomorphismDefects phi_defects(const JiangSuMap& J, const StarPoly& x, const StarPoly& y, const Rational& t,
                                long k) {
  PathFrame fr = path_frame(J, t);
  HalfPowerMatrixFunction fx = J.realize(x), fy = J.realize(y), fxy = J.realize(x * y),
                          fxs = J.realize(x.adjoint());
  const long kk = k + 16;
  auto bx = slot_blocks(fx, t, kk), by = slot_blocks(fy, t, kk), bxy = slot_blocks(fxy, t, kk),
       bxs = slot_blocks(fxs, t, kk);
  Dyadic nx = max_block_norm(bx, kk), ny = max_block_norm(by, kk), nxy = max_block_norm(bxy, kk),
         nxs = max_block_norm(bxs, kk);
  Dyadic eps_mul(0), eps_adj(0);
  for (std::size_t s = 0; s < 3; ++s) {
    eps_mul = max(eps_mul, (bx[s] * by[s] - bxy[s]).norm_upper_cheap());
    eps_adj = max(eps_adj, (bxs[s] - bx[s].adjoint()).norm_upper_cheap());
  }
  precision_scope ps(kBoundPrec);
  const Dyadic& W2 = fr.norm_sq;
  // members evaluated with different path enclosure members differ by sigma
  auto sigma = [&](const Dyadic& nd) { return up_mul(Dyadic(4), up_mul(fr.rho, up_mul(W2, nd))); };
  HomomorphismDefects d;
  d.t = t;
  // w*[Dx (w w* - 1) Dy + (Dx Dy - Dxy)] w
  Dyadic consistent = up_mul(W2, up_add(up_mul(up_mul(nx, ny), fr.delta), eps_mul));
  d.multiplicative = up_add(consistent, up_add(up_mul(up_mul(W2, nx), sigma(ny)), sigma(nxy)));
  d.adjoint = up_add(up_mul(W2, eps_adj), sigma(nxs));
  d.unital = fr.delta;
  return d;
}

// ---- dense evaluation

namespace {

BallMatrix circulant_block(const std::vector<Ball>& c) {
  const std::size_t L = c.size();
  BallMatrix C(L, L);
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t b = 0; b < L; ++b) {
      const Ball& z = c[(a + L - b) % L];
      C.mid(a, b) = z.mid;
      C.rad(a, b) = z.rad;
    }
  return C;
}

}  // namespace

// coefficient balls per cycle length
std::map<std::size_t, BallMatrix> circulant_balls(const std::vector<std::vector<std::uint32_t>>& cycles,
                                                  const std::function<std::vector<ComplexInterval>(std::size_t)>& coeff) {
  std::map<std::size_t, BallMatrix> out;
  for (std::size_t L : lengths(cycles)) {
    auto c = coeff(L);
    std::vector<Ball> b(L);
    for (std::size_t d = 0; d < L; ++d) b[d] = to_ball(c[d]);
    out.emplace(L, circulant_block(b));
  }
  return out;
}

// C X with C block-circulant on the cycles
BallMatrix circulant_left(const std::vector<std::vector<std::uint32_t>>& cycles,
                          const std::map<std::size_t, BallMatrix>& blocks, const BallMatrix& X) {
  BallMatrix Y(X.rows(), X.cols());
  for (const auto& cyc : cycles) {
    const std::size_t L = cyc.size();
    BallMatrix G(L, X.cols());
    for (std::size_t a = 0; a < L; ++a) {
      G.mid.row(a) = X.mid.row(cyc[a]);
      G.rad.row(a) = X.rad.row(cyc[a]);
    }
    BallMatrix R = ball_mul(blocks.at(L), G);
    for (std::size_t a = 0; a < L; ++a) {
      Y.mid.row(cyc[a]) = R.mid.row(a);
      Y.rad.row(cyc[a]) = R.rad.row(a);
    }
  }
  return Y;
}

// X C with C block-circulant on the cycles
BallMatrix circulant_right(const std::vector<std::vector<std::uint32_t>>& cycles,
                           const std::map<std::size_t, BallMatrix>& blocks, const BallMatrix& X) {
  BallMatrix Y(X.rows(), X.cols());
  for (const auto& cyc : cycles) {
    const std::size_t L = cyc.size();
    BallMatrix G(X.rows(), L);
    for (std::size_t a = 0; a < L; ++a) {
      G.mid.col(a) = X.mid.col(cyc[a]);
      G.rad.col(a) = X.rad.col(cyc[a]);
    }
    BallMatrix R = ball_mul(G, blocks.at(L));
    for (std::size_t a = 0; a < L; ++a) {
      Y.mid.col(cyc[a]) = R.mid.col(a);
      Y.rad.col(cyc[a]) = R.rad.col(a);
    }
  }
  return Y;
}

BallMatrix dense_circulant(const std::vector<std::vector<std::uint32_t>>& cycles,
                           const std::map<std::size_t, BallMatrix>& blocks, std::size_t n) {
  BallMatrix E(n, n);
  for (const auto& cyc : cycles) {
    const BallMatrix& C = blocks.at(cyc.size());
    for (std::size_t a = 0; a < cyc.size(); ++a)
      for (std::size_t b = 0; b < cyc.size(); ++b) {
        E.mid(cyc[a], cyc[b]) = C.mid(a, b);
        E.rad(cyc[a], cyc[b]) = C.rad(a, b);
      }
  }
  return E;
}

BallMatrix path_dense(const JiangSuMap& J, const Rational& t) {
  auto bu = circulant_balls(J.u_cycles(), [&](std::size_t L) { return cycle_exp_coefficients(L, 1 - t); });
  auto bv = circulant_balls(J.v_cycles(), [&](std::size_t L) { return cycle_exp_coefficients(L, t); });
  return circulant_left(J.u_cycles(), bu, dense_circulant(J.v_cycles(), bv, J.dim()));
}

BallMatrix PhiImage::eval_dense(const Rational& t) const {
  const std::size_t n = J_->dim(), blk = J_->block();
  BallMatrix W = path_dense(*J_, t);
  auto blocks = slot_blocks(fl_, t, 80);
  std::array<BallMatrix, 3> bb;
  for (std::size_t s = 0; s < 3; ++s) {
    bb[s] = BallMatrix(blk, blk);
    for (std::size_t i = 0; i < blk; ++i)
      for (std::size_t j = 0; j < blk; ++j) {
        Ball z = to_ball(blocks[s](i, j));
        bb[s].mid(i, j) = z.mid;
        bb[s].rad(i, j) = z.rad;
      }
  }
  BallMatrix DW(n, n);
  for (std::size_t i = 0; i < J_->slots(); ++i) {
    Reparam xi = slot_reparam(J_->stage(), i);
    const BallMatrix& B = bb[xi == Reparam::lower_half ? 0 : xi == Reparam::midpoint ? 1 : 2];
    BallMatrix rows(blk, n);
    rows.mid = W.mid.middleRows(i * blk, blk);
    rows.rad = W.rad.middleRows(i * blk, blk);
    BallMatrix R = ball_mul(B, rows);
    DW.mid.middleRows(i * blk, blk) = R.mid;
    DW.rad.middleRows(i * blk, blk) = R.rad;
  }
  return ball_mul(W.adjoint(), DW);
}

Dyadic scalar_candidate_distance_lower(long k) {
  auto J = jiangsu_map(0);
  // ||w* D w - 1|| >= (1 - delta) ||D - 1|| - delta at t = 1
  PathFrame fr = path_frame(*J, 1);
  StarPoly scalar;
  for (std::uint64_t j = 0; j < 3; ++j) scalar += StarPoly::gen(2 + j, true) * StarPoly::gen(2 + j);
  HalfPowerMatrixFunction iota = J->realize(scalar);
  auto blocks = slot_blocks(iota, 1, k + 8);
  DyadicInterval dn(0);
  for (auto& b : blocks) dn = max(dn, matrix_norm(b - IntervalMatrix::identity(b.dim()), k + 4));
  precision_scope ps(kBoundPrec);
  Dyadic lo = sub(mul(dn.lo(), sub(Dyadic(1), fr.delta, MPFR_RNDD), MPFR_RNDD), fr.delta, MPFR_RNDD);
  return max(lo, Dyadic(0));
}

}  // namespace cstar
