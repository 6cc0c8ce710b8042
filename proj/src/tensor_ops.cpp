#include "cstar/errors.hpp"
#include "cstar/matrix_ops.hpp"

#include <Eigen/Dense>

namespace cstar {

std::vector<std::vector<RationalMatrix>> block_entries(const RationalMatrix& a, std::size_t m, std::size_t n) {
  if (a.dim() != m * n) throw precondition_error("block_entries: dimension is not m*n");
  std::vector<std::vector<RationalMatrix>> blocks(n, std::vector<RationalMatrix>(n, RationalMatrix(m)));
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) blocks[i][j](p, q) = a(p * n + i, q * n + j);
  return blocks;
}

RationalMatrix from_block_entries(const std::vector<std::vector<RationalMatrix>>& blocks) {
  std::size_t n = blocks.size();
  std::size_t m = n ? blocks[0][0].dim() : 0;
  RationalMatrix a(m * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a += kron(blocks[i][j], RationalMatrix::unit(n, i, j));
  return a;
}

static RationalMatrix gram_rows(const std::vector<RationalMatrix>& x) {
  RationalMatrix s(x.at(0).dim());
  for (const auto& xi : x) s += xi * xi.adjoint();
  return s;
}

Dyadic row_column_lower_bound(const std::vector<std::vector<RationalMatrix>>& a,
                              const std::vector<RationalMatrix>& x,
                              const std::vector<RationalMatrix>& y) {
  std::size_t n = a.size();
  if (x.size() != n || y.size() != n) throw precondition_error("row_column: tuple length differs from block count");
  const long k = 40;
  if (!(matrix_norm(gram_rows(x), k).hi() < Dyadic(1)))
    throw precondition_error("row_column: ||sum x_i x_i*|| < 1 not certified");
  if (!(matrix_norm(gram_rows(y), k).hi() < Dyadic(1)))
    throw precondition_error("row_column: ||sum y_i y_i*|| < 1 not certified");
  RationalMatrix s(x[0].dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!a[i][j].is_zero()) s += x[i] * a[i][j] * y[j].adjoint();
  return matrix_norm(s, k).lo();
}

RowColumnTuples row_column_witness(const std::vector<std::vector<RationalMatrix>>& a, long scale_bits) {
  std::size_t n = a.size(), m = a.at(0).at(0).dim();
  Eigen::MatrixXcd big(n * m, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q)
          big(i * m + p, j * m + q) = {a[i][j](p, q).re.get_d(), a[i][j](p, q).im.get_d()};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(big, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXcd xi = svd.matrixU().col(0), zeta = svd.matrixV().col(0);
  // x_i = c |e_1><xi_i| so that sum x_i a_ij y_j* = c^2 <xi, a zeta> e_11
  auto to_rational = [](double d) { return Rational(Dyadic::from_double(d).to_rational()); };
  auto build = [&](const Eigen::VectorXcd& v) {
    Rational nrm_sq = 0;
    std::vector<RationalMatrix> t(n, RationalMatrix(m));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t p = 0; p < m; ++p) {
        GaussianRational c(to_rational(v(i * m + p).real()), to_rational(-v(i * m + p).imag()));
        t[i](0, p) = c;
        nrm_sq += c.norm_sq();
      }
    // scale by (1 - 2^-bits) / sqrt(nrm_sq) using a rational upper bound of the root
    Rational root_up = Dyadic::round(nrm_sq, MPFR_RNDU, 64).to_rational();
    DyadicInterval r = sqrt(DyadicInterval(Dyadic::round(root_up, MPFR_RNDU, 64)));
    Rational scale = (Rational(1) - pow2(-scale_bits)) / r.hi().to_rational();
    for (auto& ti : t) ti *= GaussianRational(scale);
    return t;
  };
  return {build(xi), build(zeta)};
}

Dyadic row_column_search(const std::vector<std::vector<RationalMatrix>>& a) {
  std::size_t n = a.size(), m = a.at(0).at(0).dim();
  auto w = row_column_witness(a);
  Dyadic best = row_column_lower_bound(a, w.x, w.y);
  // single matrix-unit tuples: x_i = c e_1p at one slot, y_j = c e_1q at one slot
  Rational c = Rational(1) - pow2(-10);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) {
          std::vector<RationalMatrix> x(n, RationalMatrix(m)), y(n, RationalMatrix(m));
          x[i](0, p) = c;
          y[j](0, q) = c;
          best = max(best, row_column_lower_bound(a, x, y));
        }
  return best;
}

RationalMatrix partial_trace_expectation(const RationalMatrix& b, std::size_t m, std::size_t n, int keep) {
  if (b.dim() != m * n) throw precondition_error("partial trace: dimension is not m*n");
  if (keep == 1) {
    RationalMatrix e(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        GaussianRational s;
        for (std::size_t l = 0; l < n; ++l) s += b(i * n + l, j * n + l);
        e(i, j) = s / GaussianRational(Rational(static_cast<long>(n)));
      }
    return e;
  }
  if (keep == 2) {
    RationalMatrix e(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        GaussianRational s;
        for (std::size_t l = 0; l < m; ++l) s += b(l * n + i, l * n + j);
        e(i, j) = s / GaussianRational(Rational(static_cast<long>(m)));
      }
    return e;
  }
  throw precondition_error("partial trace: leg must be 1 or 2");
}

DyadicInterval distance_to_factor(const RationalMatrix& b, std::size_t m, std::size_t n, int keep, long k) {
  RationalMatrix e = partial_trace_expectation(b, m, n, keep);
  RationalMatrix lifted = keep == 1 ? kron(e, RationalMatrix::identity(n)) : kron(RationalMatrix::identity(m), e);
  return matrix_norm(b - lifted, k);
}

IntervalMatrix partial_trace_expectation(const IntervalMatrix& b, std::size_t m, std::size_t n, int keep) {
  if (b.dim() != m * n) throw precondition_error("partial trace: dimension is not m*n");
  if (keep != 1 && keep != 2) throw precondition_error("partial trace: leg must be 1 or 2");
  std::size_t d = keep == 1 ? m : n, other = keep == 1 ? n : m;
  DyadicInterval inv = DyadicInterval(1) / DyadicInterval(static_cast<long>(other));
  IntervalMatrix e(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      ComplexInterval s;
      for (std::size_t l = 0; l < other; ++l) s += keep == 1 ? b(i * n + l, j * n + l) : b(l * n + i, l * n + j);
      e(i, j) = inv * s;
    }
  return e;
}

DyadicInterval distance_to_factor(const IntervalMatrix& b, std::size_t m, std::size_t n, int keep, long k) {
  IntervalMatrix e = partial_trace_expectation(b, m, n, keep);
  IntervalMatrix lifted = keep == 1 ? kron(e, IntervalMatrix::identity(n)) : kron(IntervalMatrix::identity(m), e);
  return matrix_norm(b - lifted, k);
}

}  // namespace cstar
