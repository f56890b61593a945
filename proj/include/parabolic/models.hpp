#pragma once

#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "parabolic/cones.hpp"
#include "parabolic/kernels.hpp"
#include "parabolic/rational.hpp"
#include "parabolic/weights.hpp"

namespace parabolic {

enum class CrossingKind { BlowUp, Flip, BlowDown };

struct CrossingEvent {
  Rational c;
  Wall wall;
  long dim_minus = 0;  // dimension of the locus removed on the small side
  long dim_plus = 0;   // dimension of the locus added on the large side
  CrossingKind kind = CrossingKind::Flip;
};

struct WallWalk {
  std::vector<CrossingEvent> events;  // sorted by c, ties by wall order
  Rational c_max;                     // 1 / max a_i, excluded
  /// Scale of the first wall with dim_plus < 0, past which the moduli space
  /// is empty; events there and beyond are not reported.
  std::optional<Rational> empty_beyond;
};

/// Walls met by c * w for c in [1, 1 / max a_i), each with the dimensions of the
/// loci exchanged. Requires an effective general w with sum < 2.
WallWalk wall_walk(const ParabolicWeight& w, Exec exec = Exec::Parallel, int max_n = 20);

struct ThetaClass {
  Integer k;             // least common denominator of the weight
  DivisorClass divisor;  // b = k a, t = N - k with N = sum(b) / 2
  Rational exponent;     // e = k (1 - sum(a) / 2) = -t
  /// rank V_k(k a): zero for an odd sum; unset when k is too large to run the recursion.
  std::optional<Integer> system_rank;
};

ThetaClass theta_class(const ParabolicWeight& w);

enum class ModelKind { ParabolicModuli, GitQuotient, BoundaryReduction };

struct ModelDescription {
  ModelKind kind = ModelKind::ParabolicModuli;
  std::vector<int> points;          // indices the model lives on
  std::optional<ParabolicWeight> weight;
  std::vector<Integer> linearization;  // GIT quotient only, on `points`
  std::vector<int> dropped_points;
  long degree_shift = 0;
  Integer scale;                    // multiplier used to clear denominators
  Membership cone_status = Membership::Interior;
  std::vector<std::string> steps;   // reductions applied, in order
};

/// Least positive multiple of d with integral coordinates and even sum(b),
/// together with the multiplier.
std::pair<DivisorClass, Integer> clear_denominators(const DivisorClass& d);

/// The moduli space whose theta divisor is a multiple of d (maximal Picard
/// chart, n >= 5). Reductions run in a fixed order: drop the E part when t < 0,
/// strip zero coordinates, then saturated coordinates b_i = N - t.
ModelDescription classify_model(const DivisorClass& d, int n);

/// Whether a description names the same space as M(w): the parabolic weight
/// itself, or, for sum(w) <= 2, the GIT quotient on the ray of w.
bool describes(const ModelDescription& model, const ParabolicWeight& w);

}  // namespace parabolic
