#ifndef EPLAB_ERRORS_HPP
#define EPLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eplab {

/// Base class for all eplab errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A density value was <= 0 (or below the configured floor).
class NonPositiveDensityError : public Error {
 public:
  explicit NonPositiveDensityError(const std::string& msg) : Error(msg) {}
};

/// S < R encountered where the invariant ordering requires S >= R.
class InvalidInvariantOrderError : public Error {
 public:
  explicit InvalidInvariantOrderError(const std::string& msg) : Error(msg) {}
};

/// A classifier was called with the wrong adiabatic exponent branch.
class WrongGammaError : public Error {
 public:
  explicit WrongGammaError(const std::string& msg) : Error(msg) {}
};

/// Total charge exceeds the configured maximum.
class UnboundedChargeError : public Error {
 public:
  explicit UnboundedChargeError(const std::string& msg) : Error(msg) {}
};

/// The time step underflowed (wave speeds not finite or absurdly large).
class CflViolationError : public Error {
 public:
  explicit CflViolationError(const std::string& msg) : Error(msg) {}
};

/// Density fell below the vacuum floor during time stepping.
class VacuumError : public Error {
 public:
  explicit VacuumError(const std::string& msg) : Error(msg) {}
};

/// Riccati bound requested for a seed that is not super-critical.
class NotSupercriticalError : public Error {
 public:
  explicit NotSupercriticalError(const std::string& msg) : Error(msg) {}
};

/// Snapshot sequence too sparse in time for reliable path tracing.
class SnapshotsTooSparseError : public Error {
 public:
  explicit SnapshotsTooSparseError(const std::string& msg) : Error(msg) {}
};

/// Configuration / input file could not be parsed.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// Unknown scenario preset name.
class UnknownPresetError : public Error {
 public:
  explicit UnknownPresetError(const std::string& msg) : Error(msg) {}
};

/// Preset parameters outside their validated range.
class UnsupportedParametersError : public Error {
 public:
  explicit UnsupportedParametersError(const std::string& msg) : Error(msg) {}
};

}  // namespace eplab

#endif  // EPLAB_ERRORS_HPP
