#include "cstar/sparse.hpp"
#include "cstar/matrix_ops.hpp"

#include <numeric>
#include <sstream>

namespace cstar {

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.e_.emplace(Index{i, i}, GaussianRational(1));
  return m;
}

SparseMatrix SparseMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  SparseMatrix m(n);
  m.e_.emplace(Index{i, j}, GaussianRational(1));
  return m;
}

SparseMatrix SparseMatrix::from_dense(const RationalMatrix& d) {
  SparseMatrix m(d.dim());
  for (std::size_t i = 0; i < d.dim(); ++i)
    for (std::size_t j = 0; j < d.dim(); ++j)
      if (!d(i, j).is_zero()) m.e_.emplace(Index{i, j}, d(i, j));
  return m;
}

GaussianRational SparseMatrix::at(std::size_t i, std::size_t j) const {
  auto it = e_.find({i, j});
  return it == e_.end() ? GaussianRational() : it->second;
}

void SparseMatrix::add(std::size_t i, std::size_t j, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = e_.emplace(Index{i, j}, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) e_.erase(it);
}

SparseMatrix SparseMatrix::adjoint() const {
  SparseMatrix m(n_);
  for (const auto& [ij, c] : e_) m.e_.emplace(Index{ij.second, ij.first}, c.conj());
  return m;
}

RationalMatrix SparseMatrix::dense() const {
  RationalMatrix d(n_);
  for (const auto& [ij, c] : e_) d(ij.first, ij.second) = c;
  return d;
}

RationalMatrix SparseMatrix::restrict(const std::vector<std::size_t>& idx) const {
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t a = 0; a < idx.size(); ++a) pos[idx[a]] = a;
  RationalMatrix d(idx.size());
  for (const auto& [ij, c] : e_) {
    auto r = pos.find(ij.first), s = pos.find(ij.second);
    if (r != pos.end() && s != pos.end()) d(r->second, s->second) = c;
  }
  return d;
}

SparseMatrix& SparseMatrix::operator+=(const SparseMatrix& o) {
  if (o.n_ != n_) throw precondition_error("sparse matrix dimension mismatch");
  for (const auto& [ij, c] : o.e_) add(ij.first, ij.second, c);
  return *this;
}

SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) { return a += b; }

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.dim() != b.dim()) throw precondition_error("sparse matrix dimension mismatch");
  std::map<std::size_t, std::vector<std::pair<std::size_t, const GaussianRational*>>> rows;
  for (const auto& [ij, c] : b.entries()) rows[ij.first].push_back({ij.second, &c});
  SparseMatrix r(a.dim());
  for (const auto& [ij, c] : a.entries()) {
    auto it = rows.find(ij.second);
    if (it == rows.end()) continue;
    for (const auto& [col, v] : it->second) r.add(ij.first, col, c * *v);
  }
  return r;
}

SparseMatrix operator*(const GaussianRational& c, const SparseMatrix& a) {
  SparseMatrix r(a.dim());
  if (c.is_zero()) return r;
  for (const auto& [ij, v] : a.entries()) r.add(ij.first, ij.second, c * v);
  return r;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::size_t m = b.dim();
  SparseMatrix r(a.dim() * m);
  for (const auto& [ij, c] : a.entries())
    for (const auto& [kl, d] : b.entries()) r.add(ij.first * m + kl.first, ij.second * m + kl.second, c * d);
  return r;
}

SparseHalfPower SparseHalfPower::monomial(unsigned r, unsigned s, const SparseMatrix& c) {
  SparseHalfPower f(c.dim());
  f.add_term(r, s, c);
  return f;
}

void SparseHalfPower::add_term(unsigned r, unsigned s, const SparseMatrix& c) {
  if (c.dim() != n_) throw precondition_error("sparse half-power dimension mismatch");
  if (s >= 2) {
    // (1-t)^{s/2} = (1-t)^{s%2/2} sum_i binom(s/2, i) (-t)^i keeps the form canonical
    Integer binom = 1;
    const unsigned half = s / 2;
    for (unsigned i = 0; i <= half; ++i) {
      add_term(r + 2 * i, s % 2, GaussianRational(Rational(i % 2 ? -binom : binom)) * c);
      binom = binom * (half - i) / (i + 1);
    }
    return;
  }
  auto it = t_.find({r, s});
  if (it == t_.end()) {
    if (!c.is_zero()) t_.emplace(Exponents{r, s}, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

SparseHalfPower SparseHalfPower::adjoint() const {
  SparseHalfPower f(n_);
  for (const auto& [e, c] : t_) f.t_.emplace(e, c.adjoint());
  return f;
}

SparseMatrix SparseHalfPower::endpoint(int e) const {
  SparseMatrix r(n_);
  for (const auto& [ex, c] : t_)
    if ((e == 0 ? ex.first : ex.second) == 0) r += c;
  return r;
}

std::vector<std::vector<std::size_t>> SparseHalfPower::components() const {
  std::vector<std::size_t> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> used(n_, false);
  for (const auto& [e, c] : t_)
    for (const auto& [ij, v] : c.entries()) {
      used[ij.first] = used[ij.second] = true;
      std::size_t a = find(ij.first), b = find(ij.second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n_; ++i)
    if (used[i]) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, idx] : groups) out.push_back(std::move(idx));
  return out;
}

HalfPowerMatrixFunction SparseHalfPower::restrict(const std::vector<std::size_t>& idx) const {
  HalfPowerMatrixFunction f(idx.size());
  for (const auto& [e, c] : t_) f.add_term(e.first, e.second, c.restrict(idx));
  return f;
}

HalfPowerMatrixFunction SparseHalfPower::dense() const {
  HalfPowerMatrixFunction f(n_);
  for (const auto& [e, c] : t_) f.add_term(e.first, e.second, c.dense());
  return f;
}

SparseHalfPower operator+(SparseHalfPower a, const SparseHalfPower& b) {
  for (const auto& [e, c] : b.terms()) a.add_term(e.first, e.second, c);
  return a;
}

SparseHalfPower operator*(const SparseHalfPower& a, const SparseHalfPower& b) {
  SparseHalfPower f(a.dim());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) f.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
  return f;
}

SparseHalfPower operator*(const GaussianRational& c, const SparseHalfPower& a) {
  SparseHalfPower f(a.dim());
  for (const auto& [e, m] : a.terms()) f.add_term(e.first, e.second, c * m);
  return f;
}

namespace {

std::string fingerprint(const HalfPowerMatrixFunction& f) {
  std::ostringstream os;
  os << f.dim();
  for (const auto& [e, c] : f.terms()) {
    os << '|' << e.first << ',' << e.second << ':';
    for (std::size_t i = 0; i < c.dim(); ++i)
      for (std::size_t j = 0; j < c.dim(); ++j)
        if (!c(i, j).is_zero()) os << i << ' ' << j << ' ' << to_string(c(i, j)) << ';';
  }
  return os.str();
}

}  // namespace

DyadicInterval sup_norm(const SparseHalfPower& f, long k, std::size_t max_block, SupNormOptions opt) {
  auto comps = f.components();
  if (comps.empty()) return DyadicInterval(0);
  std::map<std::string, DyadicInterval> seen;
  DyadicInterval best(0);
  for (const auto& idx : comps) {
    if (idx.size() > max_block)
      throw infeasible_error("sparse sup_norm: block of size " + std::to_string(idx.size()) + " exceeds " +
                             std::to_string(max_block));
    HalfPowerMatrixFunction g = f.restrict(idx);
    std::string key = fingerprint(g);
    auto it = seen.find(key);
    if (it == seen.end()) it = seen.emplace(key, sup_norm(g, k, opt)).first;
    best = max(best, it->second);
  }
  return best;
}

}  // namespace cstar

namespace cstar {

DyadicInterval sparse_norm(const SparseMatrix& m, long k, std::size_t max_block) {
  if (m.is_zero()) return DyadicInterval(0);
  auto comps = SparseHalfPower::monomial(0, 0, m).components();
  std::map<std::string, DyadicInterval> seen;
  DyadicInterval best(0);
  for (const auto& idx : comps) {
    if (idx.size() > max_block)
      throw infeasible_error("sparse norm: block of size " + std::to_string(idx.size()) + " exceeds " +
                             std::to_string(max_block));
    RationalMatrix b = m.restrict(idx);
    std::ostringstream key;
    write_matrix(key, b);
    auto it = seen.find(key.str());
    if (it == seen.end()) it = seen.emplace(key.str(), matrix_norm(b, k)).first;
    best = max(best, it->second);
  }
  return best;
}

SparseMatrix sparse_partial_trace_first(const SparseMatrix& b, std::size_t m, std::size_t n) {
  if (b.dim() != m * n) throw precondition_error("partial trace: dimension mismatch");
  SparseMatrix out(m);
  const GaussianRational w(make_rational(1, static_cast<long>(n)));
  for (const auto& [ij, v] : b.entries()) {
    auto [i, j] = ij;
    if (i % n == j % n) out.add(i / n, j / n, w * v);
  }
  return out;
}

}  // namespace cstar
