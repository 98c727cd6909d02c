#ifndef DGPDYN_ERRORS_HPP
#define DGPDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dgpdyn {

/// Thrown when an iterative or quadrature evaluation fails to reach its
/// accuracy target within budget. Domain violations use std::domain_error /
/// std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, long terms_or_nodes_used = -1)
      : std::runtime_error(what), terms_(terms_or_nodes_used) {}

  long terms_or_nodes_used() const noexcept { return terms_; }

 private:
  long terms_;
};

}  // namespace dgpdyn

#endif
