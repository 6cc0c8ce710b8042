#include "cstar/interval_matrix.hpp"

#include "cstar/errors.hpp"

namespace cstar {

IntervalMatrix::IntervalMatrix(const RationalMatrix& m) : n_(m.dim()), a_(m.dim() * m.dim()) {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (!m(i, j).is_zero()) (*this)(i, j) = ComplexInterval::from(m(i, j));
}

IntervalMatrix IntervalMatrix::identity(std::size_t n) {
  IntervalMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) r(i, i) = ComplexInterval(1);
  return r;
}

IntervalMatrix IntervalMatrix::adjoint() const {
  IntervalMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j).conj();
  return r;
}

IntervalMatrix IntervalMatrix::mid() const {
  IntervalMatrix r(n_);
  for (std::size_t k = 0; k < a_.size(); ++k)
    r.a_[k] = ComplexInterval(DyadicInterval(a_[k].re.mid()), DyadicInterval(a_[k].im.mid()));
  return r;
}

bool IntervalMatrix::contains(const RationalMatrix& m) const {
  if (m.dim() != n_) return false;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (!(*this)(i, j).contains(m(i, j))) return false;
  return true;
}

bool IntervalMatrix::contains(const IntervalMatrix& m) const {
  if (m.n_ != n_) return false;
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!a_[k].contains(m.a_[k])) return false;
  return true;
}

IntervalMatrix IntervalMatrix::hermitian_part_upper() const {
  IntervalMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    r(i, i) = ComplexInterval((*this)(i, i).re, DyadicInterval(0));
    for (std::size_t j = i + 1; j < n_; ++j) {
      r(i, j) = (*this)(i, j);
      r(j, i) = (*this)(i, j).conj();
    }
  }
  return r;
}

Dyadic IntervalMatrix::frobenius_upper() const {
  Dyadic s(0);
  for (const auto& z : a_) {
    Dyadic m = z.abs_upper();
    s = add(s, mul(m, m, MPFR_RNDU), MPFR_RNDU);
  }
  return sqrt(s, MPFR_RNDU);
}

Dyadic IntervalMatrix::radius_frobenius() const {
  Dyadic s(0);
  for (const auto& z : a_) {
    Dyadic r = z.rad();
    s = add(s, mul(r, r, MPFR_RNDU), MPFR_RNDU);
  }
  return sqrt(s, MPFR_RNDU);
}

Dyadic IntervalMatrix::norm_upper_cheap() const {
  Dyadic r1(0), rinf(0);
  std::vector<Dyadic> col(n_, Dyadic(0));
  for (std::size_t i = 0; i < n_; ++i) {
    Dyadic row(0);
    for (std::size_t j = 0; j < n_; ++j) {
      Dyadic m = (*this)(i, j).abs_upper();
      row = add(row, m, MPFR_RNDU);
      col[j] = add(col[j], m, MPFR_RNDU);
    }
    rinf = max(rinf, row);
  }
  for (const auto& c : col) r1 = max(r1, c);
  return sqrt(mul(r1, rinf, MPFR_RNDU), MPFR_RNDU);
}

Dyadic IntervalMatrix::max_entry_width() const {
  Dyadic w(0);
  for (const auto& z : a_) w = max(w, max(z.re.width(), z.im.width()));
  return w;
}

IntervalMatrix& IntervalMatrix::operator+=(const IntervalMatrix& o) {
  if (o.n_ != n_) throw precondition_error("matrix dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

IntervalMatrix& IntervalMatrix::operator-=(const IntervalMatrix& o) {
  if (o.n_ != n_) throw precondition_error("matrix dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b) {
  IntervalMatrix r = a;
  return r += b;
}

IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b) {
  IntervalMatrix r = a;
  return r -= b;
}

static bool is_zero(const ComplexInterval& z) {
  return z.re.is_point() && z.im.is_point() && z.re.lo().is_zero() && z.im.lo().is_zero();
}

IntervalMatrix operator*(const IntervalMatrix& a, const IntervalMatrix& b) {
  std::size_t n = a.dim();
  if (b.dim() != n) throw precondition_error("matrix dimension mismatch");
  IntervalMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const ComplexInterval& x = a(i, k);
      if (is_zero(x)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const ComplexInterval& y = b(k, j);
        if (!is_zero(y)) r(i, j) += x * y;
      }
    }
  return r;
}

IntervalMatrix operator*(const ComplexInterval& c, const IntervalMatrix& a) {
  IntervalMatrix r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) r(i, j) = c * a(i, j);
  return r;
}

IntervalMatrix hull(const IntervalMatrix& a, const IntervalMatrix& b) {
  IntervalMatrix r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) r(i, j) = hull(a(i, j), b(i, j));
  return r;
}

IntervalMatrix kron(const IntervalMatrix& a, const IntervalMatrix& b) {
  std::size_t m = a.dim(), n = b.dim();
  IntervalMatrix r(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) r(i * n + k, j * n + l) = a(i, j) * b(k, l);
    }
  return r;
}

IntervalMatrix inflate(const IntervalMatrix& a, const Dyadic& r) {
  IntervalMatrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = inflate(a(i, j), r);
  return out;
}

}  // namespace cstar
