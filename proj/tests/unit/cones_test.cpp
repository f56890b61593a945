#include <doctest.h>

#include <algorithm>
#include <random>

#include "../oracles/oracles.hpp"
#include "parabolic/cones.hpp"
#include "parabolic/error.hpp"
#include "parabolic/selftest.hpp"

using namespace parabolic;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

RationalCone git_cone(int n) {
  RationalCone cone;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      RationalVector g(n, 0);
      g[i] = g[j] = 1;
      cone.generators.push_back(g);
    }
  return cone;
}

RationalCone moduli_cone(int n) {
  RationalCone cone;
  for (const auto& g : moduli_effective_generators(n)) cone.generators.push_back(g.coordinates());
  return cone;
}

DivisorClass reconstruct(const std::vector<DecompositionTerm>& terms, std::size_t n) {
  DivisorClass sum{RationalVector(n, 0), 0};
  for (const auto& term : terms) {
    for (std::size_t i = 0; i < n; ++i) sum.b[i] += Rational(term.multiplicity) * term.generator.b[i];
    sum.t += Rational(term.multiplicity) * term.generator.t;
  }
  return sum;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_SUITE("cones") {
  TEST_CASE("generator classes") {
    CHECK(DivisorClass::exceptional(5) == DivisorClass{RationalVector(5, 0), -1});
    CHECK(DivisorClass::generator(6, 0b111111) == DivisorClass{RationalVector(6, 1), 2});
    CHECK(DivisorClass::generator(5, 0) == DivisorClass::exceptional(5));
    for (int n = 5; n <= 10; ++n) {
      const auto gens = moduli_effective_generators(n);
      CHECK(gens.size() == (std::size_t{1} << (n - 1)));
      CHECK(gens.front() == DivisorClass::exceptional(n));
    }
    CHECK(kind_of([] { moduli_effective_generators(4); }) == ErrorKind::NTooSmall);
  }

  TEST_CASE("membership examples") {
    const RationalCone cone = git_cone(5);
    RationalVector sum(5, 0);
    for (const auto& g : cone.generators)
      for (int i = 0; i < 5; ++i) sum[i] += g[i];
    CHECK(cone_membership_lp(sum, cone).status == Membership::Interior);
    CHECK(cone_membership_lp(cone.generators[0], cone).status == Membership::Boundary);
    RationalVector neg = sum;
    for (auto& v : neg) v = -v;
    const auto out = cone_membership_lp(neg, cone);
    REQUIRE(out.status == Membership::Outside);
    CHECK(dot(out.separator, neg) < 0);
    for (const auto& g : cone.generators) CHECK(dot(out.separator, g) >= 0);
  }

  TEST_CASE("membership matches facet inequalities of random cones") {
    std::mt19937_64 rng(31);
    int tried = 0;
    while (tried < 60) {
      const int d = std::uniform_int_distribution<int>(2, 4)(rng);
      const int m = std::uniform_int_distribution<int>(d, d + 4)(rng);
      RationalCone cone;
      for (int j = 0; j < m; ++j) {
        RationalVector g(d);
        for (auto& v : g) v = std::uniform_int_distribution<int>(-1, 3)(rng);
        cone.generators.push_back(g);
      }
      if (oracle::matrix_rank(cone.generators) != static_cast<std::size_t>(d)) continue;
      const auto hull = oracle::facets(cone.generators);
      // Skip cones that are all of Q^d.
      if (hull.empty()) continue;
      ++tried;
      CHECK(facets(cone) == hull);
      for (int probe = 0; probe < 10; ++probe) {
        RationalVector v(d);
        for (auto& x : v) x = std::uniform_int_distribution<int>(-2, 4)(rng);
        bool inside = true, strict = true;
        for (const auto& f : hull) {
          Rational s = 0;
          for (int i = 0; i < d; ++i) s += Rational(f[i]) * v[i];
          inside = inside && s >= 0;
          strict = strict && s > 0;
        }
        const auto r = cone_membership_lp(v, cone);
        CHECK(inside == oracle::in_cone(v, cone.generators));
        const Membership expect = !inside ? Membership::Outside : strict ? Membership::Interior : Membership::Boundary;
        CHECK(r.status == expect);
        if (r.status != Membership::Outside) {
          RationalVector back(d, 0);
          for (int j = 0; j < m; ++j)
            for (int i = 0; i < d; ++i) back[i] += r.combination[j] * cone.generators[j][i];
          CHECK(back == v);
        }
      }
    }
  }

  TEST_CASE("hypersimplex cone facets") {
    for (int n = 5; n <= 8; ++n) CHECK(facets(git_cone(n)).size() == static_cast<std::size_t>(2 * n));
    CHECK(facets(git_cone(5)) == oracle::facets(git_cone(5).generators));
    CHECK(facets(git_cone(6)) == oracle::facets(git_cone(6).generators));
    CHECK(kind_of([] { facets(RationalCone{{{1, 0, 0}, {0, 1, 0}}}); }) == ErrorKind::InvalidArgument);
  }

  TEST_CASE("moduli cone facets agree with brute force") {
    const RationalCone cone = moduli_cone(5);
    CHECK(facets(cone) == oracle::facets(cone.generators));
  }

  TEST_CASE("GIT cone inequalities") {
    CHECK(git_cone_membership({1, 1, 0, 0, 0}) == Membership::Boundary);
    CHECK(git_cone_membership({1, 1, 1, 1, 1}) == Membership::Interior);
    CHECK(git_cone_membership({4, 1, 1, 1, 1}) == Membership::Boundary);
    CHECK(git_cone_membership({5, 1, 1, 1, 1}) == Membership::Outside);
    CHECK(git_cone_membership({3, 1, 1, 1, 1}) == Membership::Interior);
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = std::uniform_int_distribution<int>(5, 7)(rng);
      RationalVector b(n);
      for (auto& v : b) v = std::uniform_int_distribution<int>(-1, 5)(rng);
      CHECK(git_cone_membership(b) == cone_membership_lp(b, git_cone(n)).status);
    }
  }

  TEST_CASE("GIT generators") {
    RationalVector fifth(5, q(1, 5));
    CHECK(git_effective_generators(ParabolicWeight(fifth)).size() == 10);
    const ParabolicWeight skew({q(5, 14), q(2, 14), q(2, 14), q(2, 14), q(2, 14)});
    const auto gens = git_effective_generators(skew);
    CHECK(gens.size() == 6);
    for (const auto& g : gens) {
      CHECK(g.t == 0);
      CHECK(g.b[0] == 0);
    }
    CHECK(kind_of([] {
            git_effective_generators(ParabolicWeight({q(2, 6), q(1, 6), q(1, 6), q(1, 6), q(1, 6)}));
          }) == ErrorKind::NonGeneralWeight);
  }

  TEST_CASE("surgery examples") {
    const auto small = surgery({{1, 1, 0, 1, 0, 0}, {0, 0, 1, 0, 1, 1}, 2});
    CHECK(small.subset == std::vector<int>{0, 5});
    CHECK(small.output == DoubleSequence{{0, 1, 0, 1, 0, 0}, {0, 0, 1, 0, 1, 0}, 1});
    CHECK(height(small.output) == 1);

    const DoubleSequence before{{5, 0, 3, 0, 2, 2, 0, 0, 1, 0}, {0, 4, 1, 2, 0, 0, 2, 2, 1, 1}, 5};
    REQUIRE(is_valid(before));
    const auto r = surgery(before);
    CHECK(r.subset == std::vector<int>{0, 2, 4, 8});
    CHECK(r.output == DoubleSequence{{4, 0, 3, 0, 1, 2, 0, 0, 1, 0}, {0, 4, 0, 2, 0, 0, 2, 2, 0, 1}, 4});
    CHECK(height(r.output) == height(before) - 1);

    CHECK(kind_of([] { surgery({{1, 0}, {0, 1}, 1}); }) == ErrorKind::HeightTooSmall);
    CHECK(kind_of([] { surgery({{1, 1}, {0, 1}, 1}); }) == ErrorKind::InvalidSequence);
  }

  TEST_CASE("surgery on every small sorted shape") {
    std::size_t checked = 0;
    for (int level = 2; level <= 3; ++level)
      for (int n = 2; n <= 5; ++n) {
        std::vector<int> k(n, level);
        while (true) {
          for (const auto& ds : oracle::all_paths(level, k)) {
            const int h = oracle::brute_height(ds);
            if (h < 2) continue;
            ++checked;
            const auto r = surgery(ds);
            CHECK(r.output.level == level - 1);
            CHECK(oracle::brute_height(r.output) == h - 1);
            CHECK(oracle::satisfies_definition(r.output));
            CHECK(r.subset.size() % 2 == 0);
            CHECK(r.subset.size() >= 2);
            auto shape = k;
            for (int i : r.subset) --shape[i];
            CHECK(r.output.shape() == shape);
          }
          // next non-increasing sequence with entries in [1, level]
          int i = n - 1;
          while (i >= 0 && k[i] == 1) --i;
          if (i < 0) break;
          --k[i];
          for (int j = i + 1; j < n; ++j) k[j] = k[i];
        }
      }
    CHECK(checked > 30);
  }

  TEST_CASE("decomposition examples") {
    for (SubsetMask mask : {SubsetMask{0b00011}, SubsetMask{0b01111}, SubsetMask{0b11110}}) {
      const auto g = DivisorClass::generator(5, mask);
      const auto terms = decompose(g);
      REQUIRE(terms.size() == 1);
      CHECK(terms[0].subset == mask);
      CHECK(terms[0].multiplicity == 1);
    }
    const DivisorClass ones{RationalVector(6, 1), 0};
    CHECK(reconstruct(decompose(ones), 6) == ones);
    const DivisorClass twos{RationalVector(5, 2), 1};
    CHECK(is_effective(twos));
    const auto terms = decompose(twos);
    CHECK(reconstruct(terms, 5) == twos);
    CHECK(terms.size() == 4);
    CHECK(kind_of([] { decompose({{1, 1, 1, 0, 0}, 0}); }) == ErrorKind::NonIntegralClass);
    CHECK(kind_of([] { decompose({{q(1, 2), q(1, 2), 1, 0, 0}, 0}); }) == ErrorKind::NonIntegralClass);
    CHECK(kind_of([] { decompose({{5, 1, 1, 1, 0}, 0}); }) == ErrorKind::NotEffective);
  }

  TEST_CASE("random decompositions reconstruct") {
    std::mt19937_64 rng(41);
    for (int n = 5; n <= 7; ++n)
      for (int trial = 0; trial < 30; ++trial) {
        const DivisorClass d = random_effective_class(rng, n, trial % 2 == 0);
        const auto terms = decompose(d);
        CHECK(reconstruct(terms, n) == d);
        for (const auto& term : terms) {
          CHECK(term.multiplicity > 0);
          CHECK(term.generator == DivisorClass::generator(n, term.subset));
          CHECK(std::popcount(term.subset) % 2 == 0);
        }
      }
  }

  TEST_CASE("effective classes lie in the generator cone") {
    std::mt19937_64 rng(43);
    const RationalCone cone = moduli_cone(5);
    for (int trial = 0; trial < 200; ++trial) {
      DivisorClass d{RationalVector(5), 0};
      for (auto& v : d.b) v = std::uniform_int_distribution<int>(0, 4)(rng);
      d.t = std::uniform_int_distribution<int>(-2, 4)(rng);
      Rational s = 0;
      for (const auto& v : d.b) s += v;
      if (s.get_num() % 2 != 0) d.b[0] += 1;
      if (is_effective(d)) CHECK(cone_membership_lp(d.coordinates(), cone).status != Membership::Outside);
    }
  }

  TEST_CASE("extremality certificates") {
    for (int n = 5; n <= 6; ++n) {
      const auto all = moduli_effective_generators(n);
      const auto certs = certify_all(n, Exec::Serial);
      REQUIRE(certs.size() == all.size());
      for (std::size_t c = 0; c < certs.size(); ++c) {
        const auto& cert = certs[c];
        CHECK(cert.generator == all[c]);
        CHECK(cert.functionals.size() == static_cast<std::size_t>(n));
        CHECK(oracle::matrix_rank(cert.functionals) == static_cast<std::size_t>(n));
        CHECK(cert.corrected_pair_functional == (std::popcount(cert.subset) == 2));
        const auto gc = cert.generator.coordinates();
        for (const auto& f : cert.functionals) {
          CHECK(dot(f, gc) == 0);
          for (const auto& other : all) CHECK(dot(f, other.coordinates()) >= 0);
        }
        CHECK(dot(cert.separator, gc) < 0);
        for (const auto& other : all)
          if (!(other == cert.generator)) CHECK(dot(cert.separator, other.coordinates()) >= 0);
      }
    }
  }

  TEST_CASE("pair functional for G_12 on five points") {
    const auto cert = extremality_certificate(DivisorClass::generator(5, 0b11), 5);
    CHECK(cert.corrected_pair_functional);
    CHECK(cert.functionals[0] == RationalVector{-1, 1, 1, 1, 1, -1});
  }

  TEST_CASE("non-generators are refused") {
    CHECK(kind_of([] { extremality_certificate({{1, 1, 0, 0, 0}, 1}, 5); }) == ErrorKind::NotAGenerator);
    CHECK(kind_of([] { extremality_certificate({{1, 1, 1, 0, 0}, q(1, 2)}, 5); }) == ErrorKind::NotAGenerator);
    CHECK(kind_of([] { extremality_certificate({{2, 0, 0, 0, 0}, 0}, 5); }) == ErrorKind::NotAGenerator);
    // indicator with t = |I|/2 is a multiple of no generator and is not extremal
    const RationalCone cone = moduli_cone(5);
    CHECK(cone_membership_lp(DivisorClass{{1, 1, 1, 1, 0}, 2}.coordinates(), cone).status != Membership::Boundary);
  }
}
