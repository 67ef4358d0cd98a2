#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace icts {

// Error categories. The C API maps these one-to-one onto status codes,
// and the CLI maps them onto process exit codes.
enum class ErrorCode {
  validation = 1,        // a numerical check or acceptance property failed
  config = 2,            // malformed or schema-violating configuration
  io = 3,                // file system failure
  invalid_argument = 4,  // a library precondition was violated
  internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string msg)
      : std::runtime_error(std::move(msg)), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct InvalidArgument : Error {
  explicit InvalidArgument(std::string m)
      : Error(ErrorCode::invalid_argument, std::move(m)) {}
};

// A documented caller obligation (e.g. "noise mode must be vacuum") was broken.
struct ContractViolation : Error {
  explicit ContractViolation(std::string m)
      : Error(ErrorCode::invalid_argument, std::move(m)) {}
};

// Bogoliubov coefficients that do not satisfy |u|^2 - |v|^2 = 1.
struct InvalidCoefficients : Error {
  explicit InvalidCoefficients(std::string m)
      : Error(ErrorCode::invalid_argument, std::move(m)) {}
};

// g1 requested where both fluxes vanish (0/0).
struct UndefinedCoherence : Error {
  explicit UndefinedCoherence(std::string m)
      : Error(ErrorCode::invalid_argument, std::move(m)) {}
};

// Truncated Fock simulation leaked too much population into the cutoff boundary.
struct CutoffTooSmall : Error {
  CutoffTooSmall(std::string m, int suggested)
      : Error(ErrorCode::invalid_argument, std::move(m)),
        suggested_cutoff(suggested) {}
  int suggested_cutoff;
};

// Frequency grid too narrow to bracket the requested feature (e.g. a FWHM).
struct InsufficientSpan : Error {
  explicit InsufficientSpan(std::string m)
      : Error(ErrorCode::invalid_argument, std::move(m)) {}
};

// Fringe fit could not be performed (singular design, too few samples, ...).
struct EstimationFailed : Error {
  explicit EstimationFailed(std::string m)
      : Error(ErrorCode::invalid_argument, std::move(m)) {}
};

struct ConfigError : Error {
  explicit ConfigError(std::string m) : Error(ErrorCode::config, std::move(m)) {}
};

struct IoError : Error {
  explicit IoError(std::string m) : Error(ErrorCode::io, std::move(m)) {}
};

}  // namespace icts
