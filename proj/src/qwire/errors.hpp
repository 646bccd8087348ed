#pragma once

#include <stdexcept>
#include <string>

namespace qwire {

// Convergence failures and other runtime numerics problems. Contract
// violations (bad arguments) use std::invalid_argument.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qwire
