#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ellipsolve {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Out-of-domain argument (non-finite input, modulus outside [0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation requested inside a pole-exclusion zone. `location` is the nearest
// pole in the coordinate of the function that raised it.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, double location)
      : Error(what), location_(location) {}
  double location() const noexcept { return location_; }

 private:
  double location_;
};

// Zero denominator or otherwise unusable parameter set; `condition` names the
// violated requirement, e.g. "omega != 0".
class ParameterError : public Error {
 public:
  ParameterError(const std::string& what, std::string condition)
      : Error(what), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

// A printed validity condition of a solution does not hold.
class ConditionError : public Error {
 public:
  ConditionError(const std::string& what, std::string condition)
      : Error(what), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

class InvalidGridError : public Error {
 public:
  using Error::Error;
};

class UnknownIdError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> final_residuals)
      : Error(what), residuals_(std::move(final_residuals)) {}
  const std::vector<double>& final_residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

class UnresolvedErrataError : public Error {
 public:
  UnresolvedErrataError(const std::string& what, std::vector<std::string> families)
      : Error(what), families_(std::move(families)) {}
  const std::vector<std::string>& families() const noexcept { return families_; }

 private:
  std::vector<std::string> families_;
};

}  // namespace ellipsolve
