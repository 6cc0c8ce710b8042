#ifndef CSTAR_CODING_HPP
#define CSTAR_CODING_HPP

#include "cstar/starpoly.hpp"

#include <cstdint>
#include <utility>

namespace cstar {

using Code = Integer;

// Cantor pairing (m+p)(m+p+1)/2 + p and its inverse.
Integer pair(const Integer& m, const Integer& p);
std::pair<Integer, Integer> unpair(const Integer& n);
std::uint64_t pair64(std::uint64_t m, std::uint64_t p);  // throws on overflow
std::pair<std::uint64_t, std::uint64_t> unpair64(std::uint64_t n);

// Bit-exact code of a *-polynomial.
//
// The zero polynomial has code 0. Otherwise the binary expansion of the code
// is a marker bit 1 followed by a stream of Elias-gamma numbers, each natural
// x written as gamma(x + 1):
//   T                         number of terms (>= 1)
//   per term, in increasing length-lexicographic word order:
//     L                       word length
//     2*g + s                 per letter (g generator index, s = 1 if starred)
//     zz(a), b - 1            real part a/b in lowest terms
//     zz(c), d - 1            imaginary part c/d in lowest terms
// with zz(z) = 2z for z >= 0 and -2z - 1 for z < 0. A natural that is not
// produced this way (truncated stream, trailing bits, unordered words, zero
// coefficients, non-reduced fractions) decodes to the zero polynomial.
Code encode_poly(const StarPoly& p);
StarPoly decode_poly(const Code& c);

}  // namespace cstar

#endif
