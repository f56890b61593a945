#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "parabolic/kernels.hpp"
#include "parabolic/rational.hpp"

namespace parabolic {

/// n >= 3 rationals strictly between 0 and 1. Also read as the linearization
/// O(a_1, ..., a_n) on (P^1)^n; only ratios matter for that reading.
class ParabolicWeight {
 public:
  explicit ParabolicWeight(RationalVector a);

  std::size_t size() const { return a_.size(); }
  const Rational& operator[](std::size_t i) const { return a_[i]; }
  const RationalVector& values() const { return a_; }
  const Rational& sum() const { return sum_; }

  /// c * a; throws InvalidArgument if an entry leaves (0, 1).
  ParabolicWeight scaled(const Rational& c) const;

  /// Least k with k * a integral, and that integer vector.
  Integer denominator() const;
  std::vector<Integer> cleared() const;

  bool operator==(const ParabolicWeight& other) const { return a_ == other.a_; }

 private:
  RationalVector a_;
  Rational sum_;
};

/// The hyperplane sum_I a - sum_{I^c} a = 2m, stored canonically: m >= 0, and
/// for m = 0 the side containing index 0. I may be all of [n].
struct Wall {
  SubsetMask subset = 0;
  long m = 0;

  std::vector<int> indices() const { return mask_to_indices(subset); }
  bool operator==(const Wall&) const = default;
};

Wall canonical_wall(int n, SubsetMask subset, long m);

/// Order used for every wall list: by m, then by the sorted index list.
bool wall_less(const Wall& a, const Wall& b);

/// sum_I a - sum_{I^c} a.
Rational wall_defect(const ParabolicWeight& w, SubsetMask subset);

/// Coincidence pattern of n points on the line, as a set partition of [n].
struct PointConfig {
  std::vector<std::vector<int>> blocks;
};

/// Throws InvalidArgument unless the blocks partition [0, n).
void validate(const PointConfig& config, std::size_t n);

enum class Stability { Stable, StrictlySemistable, Unstable };
Stability stability(const PointConfig& config, const ParabolicWeight& w);

enum class LinearizationClass { NotEffective, EffectiveNotGeneral, General };

struct LinearizationInfo {
  LinearizationClass kind = LinearizationClass::NotEffective;
  bool maximal_stable_locus = false;
};

/// Effective: every a_i < a/2. General: no nonempty I balances its complement.
LinearizationInfo classify_linearization(const ParabolicWeight& w, Exec exec = Exec::Parallel);

/// Every canonical wall through w, for all m >= 0, sorted. Refuses n > max_n.
std::vector<Wall> walls_containing(const ParabolicWeight& w, Exec exec = Exec::Parallel, int max_n = 20);

/// Whether no wall of any m separates w1 and w2. Both must avoid every wall.
bool same_chamber(const ParabolicWeight& w1, const ParabolicWeight& w2, Exec exec = Exec::Parallel,
                  int max_n = 20);

struct PicardInfo {
  std::size_t rank = 0;
  std::vector<std::pair<int, int>> unstable_pairs;  // a_i + a_j >= a/2
};

/// Rank n - k of the GIT quotient's rational Picard group, with the k unstable pairs.
/// Requires n >= 5 and an effective general linearization.
PicardInfo picard_rank_git(const ParabolicWeight& w);

}  // namespace parabolic
