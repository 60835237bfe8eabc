#ifndef BETAGOF_ERRORS_HPP
#define BETAGOF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace betagof {

// Sample contains values on the boundary of [0,1] where log-likelihood terms
// are undefined (MLE refuses such data instead of clamping it).
class NonInteriorData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Constant sample, or moments outside the range any beta law can produce.
class DegenerateSample : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Iterative solver hit its iteration cap without meeting the residual target.
class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Probability integral transform produced an exact 0 or 1.
class DegenerateTransform : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed distribution spec string or config document.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace betagof

#endif
