#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "parabolic/cones.hpp"
#include "parabolic/kernels.hpp"
#include "parabolic/weights.hpp"

namespace parabolic {

/// Random effective integral class on n points with sum(b) even. Draws until
/// the class is effective; `positive_t` picks the t > 0 or t <= 0 half.
DivisorClass random_effective_class(std::mt19937_64& rng, int n, bool positive_t);

/// Random weight with entries p/q, 2 <= q <= max_den, 1 <= p < q.
ParabolicWeight random_weight(std::mt19937_64& rng, int n, int max_den);

/// Random effective general weight with sum below 2.
ParabolicWeight random_small_general_weight(std::mt19937_64& rng, int n);

struct SelftestRow {
  std::string suite;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

/// Small exhaustive and fixed-seed invariant suites. Output is deterministic.
std::vector<SelftestRow> run_selftest(Exec exec = Exec::Parallel);

}  // namespace parabolic
