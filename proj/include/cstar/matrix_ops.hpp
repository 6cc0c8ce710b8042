#ifndef CSTAR_MATRIX_OPS_HPP
#define CSTAR_MATRIX_OPS_HPP

#include "cstar/errors.hpp"
#include "cstar/interval_matrix.hpp"

#include <vector>

namespace cstar {

// Enclosure of the spectral norm, width <= 2^-k (plus the spread of the
// input for interval matrices).
DyadicInterval matrix_norm(const RationalMatrix& m, long k);
DyadicInterval matrix_norm(const IntervalMatrix& m, long k);

// Certified test: every Hermitian matrix whose lower triangle lies in the
// enclosure is positive definite.
bool certify_positive_definite(const IntervalMatrix& a);

// exp(H) with truncation remainder <= 2^-k folded into the enclosure.
// bound, if positive, is a caller-supplied upper bound on ||H||.
IntervalMatrix matrix_exp(const IntervalMatrix& h, long k, const Dyadic& bound = Dyadic(0));

struct SchurLogResult {
  IntervalMatrix h;                        // Hermitian enclosure
  Rational theta;                          // branch [theta, theta + 2 pi)
  std::vector<DyadicInterval> eigenvalues; // enclosures of the spectrum of h
  Dyadic exp_error;                        // certified ||exp(ih) - u|| upper bound
  Dyadic norm_bound;                       // upper bound on ||h||
};

// Self-adjoint h with exp(ih) = u to within 2^-k, for an exactly unitary
// rational u.
SchurLogResult schur_log(const RationalMatrix& u, long k);

// a = sum_ij a_ij (x) e_ij in M_m (x) M_n, given by its n x n blocks.
std::vector<std::vector<RationalMatrix>> block_entries(const RationalMatrix& a, std::size_t m, std::size_t n);
RationalMatrix from_block_entries(const std::vector<std::vector<RationalMatrix>>& blocks);

// Certified lower bound ||sum_ij x_i a_ij y_j*|| <= ||a||; requires
// ||sum x_i x_i*|| < 1 and ||sum y_i y_i*|| < 1 (certified, else throws).
Dyadic row_column_lower_bound(const std::vector<std::vector<RationalMatrix>>& a,
                              const std::vector<RationalMatrix>& x,
                              const std::vector<RationalMatrix>& y);

struct RowColumnTuples {
  std::vector<RationalMatrix> x, y;
};
// Trial tuples built from a floating-point top singular pair of a, scaled
// by (1 - 2^-scale_bits) so the constraints hold.
RowColumnTuples row_column_witness(const std::vector<std::vector<RationalMatrix>>& a, long scale_bits = 10);
// Best lower bound over the witness and the n*m*m matrix-unit tuples.
Dyadic row_column_search(const std::vector<std::vector<RationalMatrix>>& a);

// Trace-normalized partial trace on M_m (x) M_n. keep = 1 keeps the first
// factor (returns an m x m matrix), keep = 2 keeps the second.
RationalMatrix partial_trace_expectation(const RationalMatrix& b, std::size_t m, std::size_t n, int keep);
// ||b - E(b) (x) 1|| (keep = 1) or ||b - 1 (x) E(b)|| (keep = 2), an upper
// bound for the distance of b to the corresponding subalgebra.
DyadicInterval distance_to_factor(const RationalMatrix& b, std::size_t m, std::size_t n, int keep, long k);
IntervalMatrix partial_trace_expectation(const IntervalMatrix& b, std::size_t m, std::size_t n, int keep);
DyadicInterval distance_to_factor(const IntervalMatrix& b, std::size_t m, std::size_t n, int keep, long k);

}  // namespace cstar

#endif
