#ifndef CSTAR_SPARSE_HPP
#define CSTAR_SPARSE_HPP

#include "cstar/function.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace cstar {

// Square sparse matrix over Q(i); zero entries are never stored.
class SparseMatrix {
 public:
  using Index = std::pair<std::size_t, std::size_t>;
  using Entries = std::map<Index, GaussianRational>;

  SparseMatrix() = default;
  explicit SparseMatrix(std::size_t n) : n_(n) {}
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix unit(std::size_t n, std::size_t i, std::size_t j);
  static SparseMatrix from_dense(const RationalMatrix& m);

  std::size_t dim() const { return n_; }
  const Entries& entries() const { return e_; }
  bool is_zero() const { return e_.empty(); }
  GaussianRational at(std::size_t i, std::size_t j) const;
  void add(std::size_t i, std::size_t j, const GaussianRational& c);

  SparseMatrix adjoint() const;
  RationalMatrix dense() const;
  // rows/columns restricted to idx (same order for both)
  RationalMatrix restrict(const std::vector<std::size_t>& idx) const;

  SparseMatrix& operator+=(const SparseMatrix& o);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

 private:
  std::size_t n_ = 0;
  Entries e_;
};

SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b);
SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator*(const GaussianRational& c, const SparseMatrix& a);
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

// Half-power function with sparse coefficients.
class SparseHalfPower {
 public:
  using Exponents = std::pair<unsigned, unsigned>;
  SparseHalfPower() = default;
  explicit SparseHalfPower(std::size_t n) : n_(n) {}
  static SparseHalfPower monomial(unsigned r, unsigned s, const SparseMatrix& c);

  std::size_t dim() const { return n_; }
  const std::map<Exponents, SparseMatrix>& terms() const { return t_; }
  void add_term(unsigned r, unsigned s, const SparseMatrix& c);
  SparseHalfPower adjoint() const;
  // f(0) or f(1), exact
  SparseMatrix endpoint(int e) const;

  // Simultaneous row/column blocks: f is the direct sum of its restrictions.
  std::vector<std::vector<std::size_t>> components() const;
  HalfPowerMatrixFunction restrict(const std::vector<std::size_t>& idx) const;
  HalfPowerMatrixFunction dense() const;

  friend bool operator==(const SparseHalfPower& a, const SparseHalfPower& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

 private:
  std::size_t n_ = 0;
  std::map<Exponents, SparseMatrix> t_;
};

SparseHalfPower operator+(SparseHalfPower a, const SparseHalfPower& b);
SparseHalfPower operator*(const SparseHalfPower& a, const SparseHalfPower& b);
SparseHalfPower operator*(const GaussianRational& c, const SparseHalfPower& a);

// ||m|| through the decomposition into simultaneous row/column blocks;
// identical blocks are computed once. Blocks above max_block throw infeasible_error.
DyadicInterval sparse_norm(const SparseMatrix& m, long k, std::size_t max_block = 256);
// trace-normalized partial trace on M_m (x) M_n keeping the first factor
SparseMatrix sparse_partial_trace_first(const SparseMatrix& b, std::size_t m, std::size_t n);

// sup-norm through the block decomposition; identical blocks are computed once.
// Blocks larger than max_block throw infeasible_error.
DyadicInterval sup_norm(const SparseHalfPower& f, long k, std::size_t max_block = 96, SupNormOptions opt = {});

}  // namespace cstar

#endif
