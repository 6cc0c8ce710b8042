#ifndef CSTAR_BALL_HPP
#define CSTAR_BALL_HPP

#include "cstar/complex_interval.hpp"

#include <Eigen/Dense>

#include <complex>

namespace cstar {

// Dense complex ball matrix in double precision: every member X satisfies
// |X_ij - mid_ij| <= rad_ij. Used where MPFR intervals are too slow
// (dimension ~ 10^3). The bounds assume round-to-nearest and no contraction.
struct BallMatrix {
  Eigen::MatrixXcd mid;
  Eigen::MatrixXd rad;

  BallMatrix() = default;
  BallMatrix(Eigen::Index rows, Eigen::Index cols)
      : mid(Eigen::MatrixXcd::Zero(rows, cols)), rad(Eigen::MatrixXd::Zero(rows, cols)) {}
  static BallMatrix identity(Eigen::Index n);

  Eigen::Index rows() const { return mid.rows(); }
  Eigen::Index cols() const { return mid.cols(); }
  BallMatrix adjoint() const;
  double max_rad() const { return rad.size() ? rad.maxCoeff() : 0.0; }
};

// upward-safe version of a nonnegative double computed with a few roundings
inline double round_up(double x) { return x * (1.0 + 0x1p-48) + 0x1p-500; }

struct Ball {
  std::complex<double> mid;
  double rad = 0;
};
Ball to_ball(const ComplexInterval& z);

BallMatrix ball_mul(const BallMatrix& a, const BallMatrix& b);
BallMatrix ball_add(const BallMatrix& a, const BallMatrix& b);
BallMatrix ball_sub(const BallMatrix& a, const BallMatrix& b);
// c must be exactly representable (only its rounding of products is bounded)
BallMatrix ball_scale(std::complex<double> c, const BallMatrix& a);
// division by a positive double
BallMatrix ball_div(const BallMatrix& a, double d);
// upper bound on sup ||X||_F over members
double ball_frobenius_upper(const BallMatrix& a);
// upper bound on sup ||X - Y||_F over members X of a and a fixed point matrix y
double ball_distance_frobenius(const BallMatrix& a, const Eigen::MatrixXcd& y);
bool ball_contains(const BallMatrix& a, const Eigen::MatrixXcd& y);
// enclosure of the trace
ComplexInterval ball_trace(const BallMatrix& a);

}  // namespace cstar

#endif
