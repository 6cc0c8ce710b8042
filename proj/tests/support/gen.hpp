#ifndef CSTAR_TEST_GEN_HPP
#define CSTAR_TEST_GEN_HPP

#include "cstar/rational_matrix.hpp"

#include <random>

namespace gen {

using cstar::GaussianRational;
using cstar::RationalMatrix;

inline cstar::Rational small_rational(std::mt19937_64& rng, int h = 6, int d = 4) {
  std::uniform_int_distribution<int> num(-h, h), den(1, d);
  return cstar::make_rational(num(rng), den(rng));
}

inline RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t n, int h = 6, int d = 4) {
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = {small_rational(rng, h, d), small_rational(rng, h, d)};
  return m;
}

inline RationalMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  RationalMatrix m = random_matrix(rng, n);
  return cstar::make_rational(1, 2) * (m + m.adjoint());
}

// product of Pythagorean Givens rotations and fourth-root-of-unity phases
inline RationalMatrix random_unitary(std::mt19937_64& rng, std::size_t n, int factors = 4) {
  static const int triples[][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}, {20, 21, 29}};
  static const GaussianRational phases[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::uniform_int_distribution<int> tri(0, 4), ph(0, 3);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  RationalMatrix u = RationalMatrix::identity(n);
  for (int f = 0; f < factors; ++f) {
    RationalMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = phases[ph(rng)];
    u = d * u;
    if (n < 2) continue;
    std::size_t p = idx(rng), q = idx(rng);
    if (p == q) q = (p + 1) % n;
    const int* t = triples[tri(rng)];
    cstar::Rational c = cstar::make_rational(t[0], t[2]), s = cstar::make_rational(t[1], t[2]);
    RationalMatrix g = RationalMatrix::identity(n);
    g(p, p) = c;
    g(q, q) = c;
    g(p, q) = cstar::Rational(-s);
    g(q, p) = s;
    u = g * u;
  }
  return u;
}

}  // namespace gen

#endif
