#ifndef CSTAR_INTERVAL_MATRIX_HPP
#define CSTAR_INTERVAL_MATRIX_HPP

#include "cstar/complex_interval.hpp"
#include "cstar/rational_matrix.hpp"

#include <vector>

namespace cstar {

// Square matrix of complex interval entries. Operations round outward, so
// every result contains all products/sums of point matrices in the operands.
class IntervalMatrix {
 public:
  IntervalMatrix() = default;
  explicit IntervalMatrix(std::size_t n) : n_(n), a_(n * n) {}
  explicit IntervalMatrix(const RationalMatrix& m);

  static IntervalMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  ComplexInterval& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const ComplexInterval& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  IntervalMatrix adjoint() const;
  // entrywise midpoints as a point matrix
  IntervalMatrix mid() const;
  bool contains(const RationalMatrix& m) const;
  bool contains(const IntervalMatrix& m) const;
  // enforce H(j,i) = conj(H(i,j)) and real diagonal (intersection with the
  // Hermitian enclosure: uses the upper triangle)
  IntervalMatrix hermitian_part_upper() const;

  // upper bounds
  Dyadic frobenius_upper() const;      // sup over members of ||X||_F
  Dyadic radius_frobenius() const;     // ||entrywise radii||_F
  Dyadic norm_upper_cheap() const;     // sqrt(||X||_1 ||X||_inf) over members
  Dyadic max_entry_width() const;

  IntervalMatrix& operator+=(const IntervalMatrix& o);
  IntervalMatrix& operator-=(const IntervalMatrix& o);

 private:
  std::size_t n_ = 0;
  std::vector<ComplexInterval> a_;
};

IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix operator*(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix operator*(const ComplexInterval& c, const IntervalMatrix& a);
IntervalMatrix hull(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix kron(const IntervalMatrix& a, const IntervalMatrix& b);
// widen every entry (re and im) by r
IntervalMatrix inflate(const IntervalMatrix& a, const Dyadic& r);

}  // namespace cstar

#endif
