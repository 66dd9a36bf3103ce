#pragma once

#include <stdexcept>
#include <string>

namespace dephasim {

// Raised when an adaptive numerical scheme cannot reach its tolerance.
// Carries the error estimate that was actually achieved.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

}  // namespace dephasim
