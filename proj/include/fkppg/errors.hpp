#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fkppg {

enum class ErrCode {
  // parsing
  SyntaxError,
  UndeclaredVariable,
  DuplicateCheckpoint,
  MissingNil,
  UnknownDistribution,
  // expression evaluation
  NumericDomain,
  PredicateNotBoolean,
  ScoreOutOfRange,
  QueryOutOfRange,
  InvalidParameter,
  // model validation / stepping
  UnknownCheckpoint,
  PartitionViolation,
  NilSelfLoopConflict,
  ScoreOnNil,
  // exact oracle
  ContinuousDistribution,
  PathExplosion,
  ZeroTotalWeight,
  NotTerminatedYet,
  // particle engines
  ZeroWeightEnsemble,
  // I/O
  FileNotFound,
};

const char* err_code_name(ErrCode code);

/// Single exception type for the whole library; `code()` identifies the
/// failure class, optional fields carry diagnostic context.
class Error : public std::runtime_error {
 public:
  Error(ErrCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrCode code() const { return code_; }

  // Source position for parse diagnostics (1-based; -1 when absent).
  int line = -1;
  int column = -1;
  // Step/statement index for engine and measure errors (-1 when absent).
  long step = -1;

 private:
  ErrCode code_;
};

}  // namespace fkppg
