#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pcmrank {

enum class ErrorCode {
  ParseError,
  DuplicatePair,
  UnknownPlayer,
  NegativeCount,
  NotZeroLoss,
  CountMismatch,
  GraphDisconnected,
  EmptyProblem,
  NoConvergence,
  NoData,
  ShapeError,
  Undefined,
};

/// Wire name of an error code, e.g. "DUPLICATE_PAIR".
const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// The comparison graph splits into more than one component; carries the
/// partition (as label groups) so callers can report what is unreachable.
class DisconnectedError : public Error {
 public:
  explicit DisconnectedError(std::vector<std::vector<std::string>> components);

  const std::vector<std::vector<std::string>>& components() const {
    return components_;
  }

 private:
  std::vector<std::vector<std::string>> components_;
};

/// An iterative solver ran out of iterations; carries the best estimate seen.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& message, double best_lambda_max,
                     int iterations)
      : Error(ErrorCode::NoConvergence, message),
        best_lambda_max_(best_lambda_max),
        iterations_(iterations) {}

  double best_lambda_max() const { return best_lambda_max_; }
  int iterations() const { return iterations_; }

 private:
  double best_lambda_max_;
  int iterations_;
};

}  // namespace pcmrank
