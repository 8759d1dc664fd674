#ifndef PARAWEIGHT_ERRORS_HPP
#define PARAWEIGHT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace paraweight {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside its mathematical domain (delta not in (0,1), complex
/// input where a real field is required, point off a table, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Structural misconfiguration: incompatible grids, m + 4 > k_max, a
/// mollifier width the time step cannot resolve, a bad run config.
struct ConfigError : Error {
  using Error::Error;
};

/// A documented operation precondition was violated at run time.
struct PreconditionError : Error {
  using Error::Error;
};

/// A sampler produced a non-finite value.
struct EvaluationError : Error {
  using Error::Error;
};

/// phi saturates below the requested tau_max (non-Osgood modulus).
struct WeightDomainExhausted : Error {
  double sup_phi;
  WeightDomainExhausted(const std::string& msg, double sup)
      : Error(msg), sup_phi(sup) {}
};

/// The weight leaves double range before reaching tau_max.
struct WeightRangeError : Error {
  using Error::Error;
};

/// No paraproduct shift m <= m_max achieves the positivity bound.
struct ThresholdNotFound : Error {
  std::vector<double> margin_profile;  // min ratio per scanned m
  ThresholdNotFound(const std::string& msg, std::vector<double> profile)
      : Error(msg), margin_profile(std::move(profile)) {}
};

}  // namespace paraweight

#endif
