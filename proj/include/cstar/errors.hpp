#ifndef CSTAR_ERRORS_HPP
#define CSTAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cstar {

// Input could not be parsed (CLI exit code 2).
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested computation is outside what can be done at desk scale,
// or a configured budget was exhausted (CLI exit code 3).
class infeasible_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certificate could not be established (CLI exit code 4).
class certification_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hypothesis of an operation violated by the caller.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cstar

#endif
