#pragma once

#include <stdexcept>
#include <string>

namespace parabolic {

enum class Module { Conformal, Weights, Cones, Models, Lp, Cli };

enum class ErrorKind {
  InvalidArgument,
  InstanceTooLarge,
  OddTotalWeight,
  Genericity,
  NonGeneralWeight,
  WeightOnWall,
  EnumerationTooLarge,
  NTooSmall,
  SumTooLarge,
  HeightTooSmall,
  InvalidSequence,
  NotEffective,
  NonIntegralClass,
  NotAGenerator,
  DimensionMismatch,
  NotInInterior,
  Internal,
};

const char* to_string(Module module);
const char* to_string(ErrorKind kind);

/// Domain error carrying the originating module. The CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(Module module, ErrorKind kind, const std::string& message)
      : std::runtime_error(message), module_(module), kind_(kind) {}

  Module module() const noexcept { return module_; }
  ErrorKind kind() const noexcept { return kind_; }

 private:
  Module module_;
  ErrorKind kind_;
};

}  // namespace parabolic
