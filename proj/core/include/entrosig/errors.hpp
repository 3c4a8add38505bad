#pragma once

#include <stdexcept>
#include <string>

namespace entrosig {

/// A distribution could not be formed because the input carries no mass
/// (all-zero frame, zero total power).
class DegenerateDistribution : public std::domain_error {
 public:
  explicit DegenerateDistribution(const std::string& what) : std::domain_error(what) {}
};

/// q_i == 0 where p_i > 0 in a divergence that requires absolute continuity.
class SupportMismatch : public std::domain_error {
 public:
  explicit SupportMismatch(const std::string& what) : std::domain_error(what) {}
};

/// A closed-form expression was evaluated outside its domain.
class SingularFormula : public std::domain_error {
 public:
  explicit SingularFormula(const std::string& what) : std::domain_error(what) {}
};

/// The detection calibration region cannot support a threshold estimate.
class CalibrationError : public std::runtime_error {
 public:
  explicit CalibrationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entrosig
