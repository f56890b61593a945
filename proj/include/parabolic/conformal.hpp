#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "parabolic/kernels.hpp"
#include "parabolic/rational.hpp"

namespace parabolic {

/// Level and shape of an sl2 conformal block on the projective line.
struct BlockSpec {
  int level = 0;
  std::vector<int> shape;

  long weight_sum() const;
  bool operator==(const BlockSpec&) const = default;
};

/// Throws InvalidArgument on a negative level or entry.
void validate(const BlockSpec& spec);

/// Zeros stripped, entries sorted descending. Rank is unchanged.
BlockSpec canonical(const BlockSpec& spec);

/// Top row x and bottom row y of a boxed Catalan path at a given level.
struct DoubleSequence {
  std::vector<int> top;
  std::vector<int> bottom;
  int level = 0;

  std::size_t size() const { return top.size(); }
  std::vector<int> shape() const;
  bool operator==(const DoubleSequence&) const = default;
};

/// Resource guards for the exponential routines.
struct Limits {
  long max_weight_sum = 40;
  long max_paths = 5'000'000;
};

/// Rank of V_level(shape) by the height-state recursion. Total function.
Integer rank_fusion(const BlockSpec& spec);

/// Every double sequence of the given level and shape, lexicographic in the
/// flattened (top, bottom) matrix. The parallel variant splits on prefixes and
/// concatenates in order, so both variants return identical lists.
std::vector<DoubleSequence> enumerate_paths(const BlockSpec& spec, const Limits& limits = {},
                                            Exec exec = Exec::Parallel);

/// Lexicographically least double sequence, or nullopt when the rank is zero.
/// Runs in O(n * level * max k) with no resource guard.
std::optional<DoubleSequence> first_path(const BlockSpec& spec);

/// Empty when ds satisfies every defining condition, otherwise the first violation.
std::optional<std::string> check_double_sequence(const DoubleSequence& ds);
inline bool is_valid(const DoubleSequence& ds) { return !check_double_sequence(ds); }

/// Largest upper corner over columns 1..n-1 (0 when n < 2).
int height(const DoubleSequence& ds);

/// A product of brackets (y_i - y_j), one factor per pair, 0-based indices.
struct SectionBasisElement {
  std::vector<std::pair<int, int>> pairs;
};

/// All bracket monomials with degree vector equal to the shape, in a fixed order.
std::vector<SectionBasisElement> section_generators(const std::vector<int>& shape);

struct SectionRank {
  std::size_t rank = 0;
  bool odd_total_weight = false;
};

/// Dimension of the span of bracket monomials vanishing to total order at
/// least N - level at `point`. Odd total weight gives rank 0 with the flag set.
SectionRank rank_sections(const BlockSpec& spec, const RationalVector& point,
                          const Limits& limits = {});

/// rank_sections at p_i = i and at p_i = i^2 + 1; throws Genericity if they differ.
SectionRank rank_sections_generic(const BlockSpec& spec, const Limits& limits = {});

struct ProductCheck {
  bool compatible = false;
  Integer rank_a;
  Integer rank_b;
  Integer rank_sum;  // rank at level a+b, shape a+b
};

/// Both factors nonzero. When they are, the summed block must be nonzero too;
/// a violation raises Internal.
ProductCheck product_compatible(const BlockSpec& a, const BlockSpec& b);

}  // namespace parabolic
