#include "cstar/rational_matrix.hpp"

#include "cstar/errors.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace cstar {

RationalMatrix RationalMatrix::identity(std::size_t n) { return scalar(n, 1); }

RationalMatrix RationalMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  RationalMatrix m(n);
  m(i, j) = 1;
  return m;
}

RationalMatrix RationalMatrix::scalar(std::size_t n, const GaussianRational& c) {
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

RationalMatrix RationalMatrix::adjoint() const {
  RationalMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j).conj();
  return r;
}

bool RationalMatrix::is_zero() const {
  for (const auto& z : a_)
    if (!z.is_zero()) return false;
  return true;
}

bool RationalMatrix::is_identity() const { return *this == identity(n_); }

bool RationalMatrix::is_unitary() const { return (adjoint() * *this).is_identity(); }

GaussianRational RationalMatrix::trace() const {
  GaussianRational t;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

Rational RationalMatrix::norm1_upper() const {
  Rational best = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += abs_upper((*this)(i, j));
    if (s > best) best = s;
  }
  return best;
}

Rational RationalMatrix::norm_inf_upper() const {
  Rational best = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < n_; ++j) s += abs_upper((*this)(i, j));
    if (s > best) best = s;
  }
  return best;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o) {
  if (o.n_ != n_) throw precondition_error("matrix dimension mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& o) {
  if (o.n_ != n_) throw precondition_error("matrix dimension mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const GaussianRational& c) {
  for (auto& z : a_) z = z * c;
  return *this;
}

RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
RationalMatrix operator-(const RationalMatrix& a) { return GaussianRational(-1) * a; }
RationalMatrix operator*(const GaussianRational& c, RationalMatrix a) { return a *= c; }

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  std::size_t n = a.dim();
  if (b.dim() != n) throw precondition_error("matrix dimension mismatch");
  RationalMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const GaussianRational& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const GaussianRational& y = b(k, j);
        if (!y.is_zero()) r(i, j) += x * y;
      }
    }
  return r;
}

RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
  std::size_t m = a.dim(), n = b.dim();
  RationalMatrix r(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (!b(k, l).is_zero()) r(i * n + k, j * n + l) = a(i, j) * b(k, l);
    }
  return r;
}

RationalMatrix direct_sum(const std::vector<RationalMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.dim();
  RationalMatrix r(n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) r(off + i, off + j) = b(i, j);
    off += b.dim();
  }
  return r;
}

RationalMatrix read_matrix(std::istream& in) {
  long long n = -1;
  if (!(in >> n) || n <= 0) throw parse_error("matrix file: expected a positive dimension");
  RationalMatrix m(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) {
      std::string tok;
      if (!(in >> tok)) throw parse_error("matrix file: expected " + std::to_string(n * n) + " entries");
      m(i, j) = parse_gaussian(tok);
    }
  std::string extra;
  if (in >> extra) throw parse_error("matrix file: trailing token '" + extra + "'");
  return m;
}

RationalMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw parse_error("cannot open matrix file '" + path + "'");
  return read_matrix(f);
}

void write_matrix(std::ostream& out, const RationalMatrix& m) {
  out << m.dim() << "\n";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out << (j ? " " : "") << to_string(m(i, j));
    out << "\n";
  }
}

}  // namespace cstar
