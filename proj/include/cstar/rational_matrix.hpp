#ifndef CSTAR_RATIONAL_MATRIX_HPP
#define CSTAR_RATIONAL_MATRIX_HPP

#include "cstar/gaussian.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace cstar {

// Square matrix over Q(i) with exact arithmetic.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static RationalMatrix identity(std::size_t n);
  // e_ij with 0-based indices
  static RationalMatrix unit(std::size_t n, std::size_t i, std::size_t j);
  static RationalMatrix scalar(std::size_t n, const GaussianRational& c);

  std::size_t dim() const { return n_; }
  GaussianRational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const GaussianRational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  RationalMatrix adjoint() const;
  bool is_zero() const;
  bool is_identity() const;
  bool is_unitary() const;  // exact u*u = 1
  GaussianRational trace() const;

  // max column / row sums of |re|+|im|: rational upper bounds of ||.||_1, ||.||_inf
  Rational norm1_upper() const;
  Rational norm_inf_upper() const;

  RationalMatrix& operator+=(const RationalMatrix& o);
  RationalMatrix& operator-=(const RationalMatrix& o);
  RationalMatrix& operator*=(const GaussianRational& c);

  friend bool operator==(const RationalMatrix& x, const RationalMatrix& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

 private:
  std::size_t n_ = 0;
  std::vector<GaussianRational> a_;
};

RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b);
RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a);
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator*(const GaussianRational& c, RationalMatrix a);

// Kronecker product; the left factor is the outer (most significant) index.
RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b);
// Block diagonal sum.
RationalMatrix direct_sum(const std::vector<RationalMatrix>& blocks);

// Matrix file format: first token n, then n*n tokens "a/b+c/di", row-major.
RationalMatrix read_matrix(std::istream& in);
RationalMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const RationalMatrix& m);

}  // namespace cstar

#endif
