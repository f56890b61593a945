#include "parabolic/error.hpp"

namespace parabolic {

const char* to_string(Module module) {
  switch (module) {
    case Module::Conformal: return "conformal";
    case Module::Weights: return "weights";
    case Module::Cones: return "cones";
    case Module::Models: return "models";
    case Module::Lp: return "lp";
    case Module::Cli: return "cli";
  }
  return "unknown";
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::InstanceTooLarge: return "instance_too_large";
    case ErrorKind::OddTotalWeight: return "odd_total_weight";
    case ErrorKind::Genericity: return "genericity";
    case ErrorKind::NonGeneralWeight: return "non_general_weight";
    case ErrorKind::WeightOnWall: return "weight_on_wall";
    case ErrorKind::EnumerationTooLarge: return "enumeration_too_large";
    case ErrorKind::NTooSmall: return "n_too_small";
    case ErrorKind::SumTooLarge: return "sum_too_large";
    case ErrorKind::HeightTooSmall: return "height_too_small";
    case ErrorKind::InvalidSequence: return "invalid_sequence";
    case ErrorKind::NotEffective: return "not_effective";
    case ErrorKind::NonIntegralClass: return "non_integral_class";
    case ErrorKind::NotAGenerator: return "not_a_generator";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::NotInInterior: return "not_in_interior";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace parabolic
