#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "parabolic/error.hpp"
#include "parabolic/selftest.hpp"
#include "parabolic/weights.hpp"

using namespace parabolic;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

ParabolicWeight uniform(int n, long p, long d) { return ParabolicWeight(RationalVector(n, q(p, d))); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

// Every (I, m) with the defect equal to 2m, canonicalized by hand: m >= 0, and
// for m = 0 the side containing index 0.
std::vector<Wall> brute_walls(const ParabolicWeight& w) {
  const int n = static_cast<int>(w.size());
  const SubsetMask all = (SubsetMask{1} << n) - 1;
  std::set<std::pair<long, std::vector<int>>> found;
  for (SubsetMask mask = 1; mask <= all; ++mask) {
    Rational defect = 0;
    for (int i = 0; i < n; ++i) defect += (mask >> i & 1) ? w[i] : Rational(-w[i]);
    const Rational half = defect / 2;
    if (half.get_den() != 1 || half < 0) continue;
    const long m = half.get_num().get_si();
    if (m == 0 && !(mask & 1)) continue;
    found.insert({m, mask_to_indices(mask)});
  }
  std::vector<Wall> out;
  for (const auto& [m, idx] : found) out.push_back({indices_to_mask(idx), m});
  return out;
}

}  // namespace

TEST_SUITE("weights") {
  TEST_CASE("construction and scaling") {
    const ParabolicWeight w({q(1, 2), q(1, 3), q(1, 6)});
    CHECK(w.sum() == 1);
    CHECK(w.denominator() == 6);
    CHECK(w.cleared() == std::vector<Integer>{3, 2, 1});
    CHECK(w.scaled(q(3, 2))[0] == q(3, 4));
    CHECK(kind_of([&] { w.scaled(2); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { ParabolicWeight({q(1, 2), q(1, 2)}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { ParabolicWeight({q(1, 2), q(1, 2), 1}); }) == ErrorKind::InvalidArgument);
  }

  TEST_CASE("point stability") {
    const auto fifth = uniform(5, 1, 5);
    CHECK(stability({{{0, 1, 2}, {3}, {4}}}, fifth) == Stability::Unstable);
    CHECK(stability({{{0}, {1}, {2}, {3}, {4}}}, fifth) == Stability::Stable);
    CHECK(stability({{{0, 1}, {2}, {3}, {4}}}, fifth) == Stability::Stable);
    const ParabolicWeight w({q(2, 6), q(1, 6), q(1, 6), q(1, 6), q(1, 6)});
    CHECK(stability({{{0, 1}, {2}, {3}, {4}}}, w) == Stability::StrictlySemistable);
    CHECK_THROWS_AS(stability({{{0, 1}, {1, 2}, {3}, {4}}}, w), Error);
    CHECK_THROWS_AS(stability({{{0, 1}, {3}, {4}}}, w), Error);
  }

  TEST_CASE("linearization classes") {
    const auto fifth = classify_linearization(uniform(5, 1, 5));
    CHECK(fifth.kind == LinearizationClass::General);
    CHECK(fifth.maximal_stable_locus);
    CHECK(classify_linearization(uniform(4, 1, 2)).kind == LinearizationClass::EffectiveNotGeneral);
    CHECK(classify_linearization(ParabolicWeight({q(9, 10), q(1, 10), q(1, 10)})).kind ==
          LinearizationClass::NotEffective);
    const ParabolicWeight skew({q(5, 14), q(2, 14), q(2, 14), q(2, 14), q(2, 14)});
    CHECK(classify_linearization(skew).kind == LinearizationClass::General);
    CHECK_FALSE(classify_linearization(skew).maximal_stable_locus);
  }

  TEST_CASE("canonical walls") {
    const int n = 5;
    const SubsetMask all = 0b11111;
    CHECK(canonical_wall(n, 0b00011, -1) == canonical_wall(n, all ^ 0b00011, 1));
    CHECK(canonical_wall(n, 0b00110, 0) == Wall{0b11001, 0});
    CHECK(canonical_wall(n, 0b00111, 0) == Wall{0b00111, 0});
    CHECK(wall_less({0b10, 0}, {0b1, 1}));
    CHECK(wall_less({0b0011, 1}, {0b0101, 1}));
    CHECK(wall_defect(uniform(5, 1, 3), all) == q(5, 3));
  }

  TEST_CASE("wall lists") {
    const auto half = walls_containing(uniform(6, 1, 2));
    CHECK(half.size() == 16);
    CHECK(std::count_if(half.begin(), half.end(), [](const Wall& w) { return w.m == 0; }) == 10);
    CHECK(walls_containing(uniform(5, 1, 5)).empty());
    const ParabolicWeight w({q(3, 4), q(3, 4), q(3, 4), q(3, 4), q(1, 2), q(1, 2)});
    const auto list = walls_containing(w);
    CHECK(std::find(list.begin(), list.end(), Wall{0b001111, 1}) != list.end());
    CHECK(kind_of([] { walls_containing(uniform(22, 1, 22)); }) == ErrorKind::EnumerationTooLarge);
  }

  TEST_CASE("wall lists match a brute-force scan") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = std::uniform_int_distribution<int>(3, 8)(rng);
      const ParabolicWeight w = random_weight(rng, n, 4);
      const auto expect = brute_walls(w);
      CHECK(walls_containing(w, Exec::Serial) == expect);
      CHECK(walls_containing(w, Exec::Parallel) == expect);
    }
  }

  TEST_CASE("general means no walls when the sum is below 2") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = std::uniform_int_distribution<int>(3, 8)(rng);
      const ParabolicWeight w = random_weight(rng, n, 5);
      if (w.sum() >= 2) continue;
      const auto info = classify_linearization(w);
      if (info.kind == LinearizationClass::NotEffective) continue;
      CHECK((info.kind == LinearizationClass::General) == walls_containing(w).empty());
    }
  }

  TEST_CASE("chambers") {
    const auto fifth = uniform(5, 1, 5);
    CHECK(same_chamber(fifth, fifth));
    CHECK(same_chamber(fifth, ParabolicWeight({q(1, 4), q(1, 5), q(1, 5), q(1, 5), q(1, 5)})));
    CHECK_FALSE(same_chamber(uniform(5, 1, 3), uniform(5, 1, 2)));
    CHECK(kind_of([&] { same_chamber(fifth, uniform(6, 1, 5)); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] { same_chamber(fifth, uniform(6, 1, 2)); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] { same_chamber(uniform(4, 1, 2), uniform(4, 1, 3)); }) == ErrorKind::WeightOnWall);
  }

  TEST_CASE("same_chamber is an equivalence relation") {
    std::mt19937_64 rng(23);
    const int n = 5;
    std::vector<ParabolicWeight> pool;
    while (pool.size() < 30) {
      ParabolicWeight w = random_weight(rng, n, 4);
      if (walls_containing(w).empty()) pool.push_back(w);
    }
    for (const auto& a : pool) {
      CHECK(same_chamber(a, a));
      for (const auto& b : pool) {
        CHECK(same_chamber(a, b, Exec::Serial) == same_chamber(b, a, Exec::Parallel));
        if (!same_chamber(a, b)) continue;
        for (const auto& c : pool)
          if (same_chamber(b, c)) CHECK(same_chamber(a, c));
      }
    }
  }

  TEST_CASE("Picard ranks") {
    const auto fifth = picard_rank_git(uniform(5, 1, 5));
    CHECK(fifth.rank == 5);
    CHECK(fifth.unstable_pairs.empty());
    const auto skew = picard_rank_git(ParabolicWeight({q(5, 14), q(2, 14), q(2, 14), q(2, 14), q(2, 14)}));
    CHECK(skew.rank == 1);
    CHECK(skew.unstable_pairs.size() == 4);
    CHECK(kind_of([] { picard_rank_git(uniform(4, 1, 5)); }) == ErrorKind::NTooSmall);
    CHECK(kind_of([] { picard_rank_git(uniform(6, 1, 2)); }) == ErrorKind::NonGeneralWeight);
    CHECK(kind_of([] { picard_rank_git(ParabolicWeight({q(9, 10), q(1, 10), q(1, 10), q(1, 10), q(1, 10)})); }) ==
          ErrorKind::NotEffective);
  }

  TEST_CASE("Picard rank stays in range and unstable pairs share a vertex") {
    std::mt19937_64 rng(29);
    int seen = 0;
    while (seen < 100) {
      const int n = std::uniform_int_distribution<int>(5, 9)(rng);
      const ParabolicWeight w = random_weight(rng, n, 7);
      if (classify_linearization(w).kind != LinearizationClass::General) continue;
      ++seen;
      const auto info = picard_rank_git(w);
      CHECK(info.rank >= 1);
      CHECK(info.rank <= w.size());
      CHECK(info.rank + info.unstable_pairs.size() == w.size());
      for (const auto& [i, j] : info.unstable_pairs)
        for (const auto& [k, l] : info.unstable_pairs) CHECK((i == k || i == l || j == k || j == l));
    }
  }
}
