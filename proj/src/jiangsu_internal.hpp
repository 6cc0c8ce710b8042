#ifndef CSTAR_JIANGSU_INTERNAL_HPP
#define CSTAR_JIANGSU_INTERNAL_HPP

#include "cstar/jiangsu.hpp"

#include <functional>
#include <map>

namespace cstar {

using Cycles = std::vector<std::vector<std::uint32_t>>;

// one dense ball block per cycle length
std::map<std::size_t, BallMatrix> circulant_balls(const Cycles& cycles,
                                                  const std::function<std::vector<ComplexInterval>(std::size_t)>& coeff);
BallMatrix circulant_left(const Cycles& cycles, const std::map<std::size_t, BallMatrix>& blocks, const BallMatrix& X);
BallMatrix circulant_right(const Cycles& cycles, const std::map<std::size_t, BallMatrix>& blocks, const BallMatrix& X);
BallMatrix dense_circulant(const Cycles& cycles, const std::map<std::size_t, BallMatrix>& blocks, std::size_t n);
// w(t) = exp(i(1-t)h_u) exp(i t h_v) as a dense ball matrix
BallMatrix path_dense(const JiangSuMap& J, const Rational& t);

}  // namespace cstar

#endif
