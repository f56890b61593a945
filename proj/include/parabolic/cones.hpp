#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "parabolic/conformal.hpp"
#include "parabolic/kernels.hpp"
#include "parabolic/rational.hpp"
#include "parabolic/weights.hpp"

namespace parabolic {

/// O(b_1, ..., b_n) - tE on the blow-up of the GIT quotient at one point.
struct DivisorClass {
  RationalVector b;
  Rational t = 0;

  std::size_t size() const { return b.size(); }
  /// (b_1, ..., b_n, t) in Q^{n+1}.
  RationalVector coordinates() const;
  bool operator==(const DivisorClass& other) const { return b == other.b && t == other.t; }

  static DivisorClass exceptional(std::size_t n);
  /// b = indicator of `subset`, t = |subset|/2 - 1. The empty set gives E.
  static DivisorClass generator(std::size_t n, SubsetMask subset);
};

struct RationalCone {
  std::vector<RationalVector> generators;
};

enum class Membership { Interior, Boundary, Outside };

struct MembershipResult {
  Membership status = Membership::Outside;
  RationalVector combination;  // lambda >= 0 with sum lambda_j g_j = v (Interior, Boundary)
  RationalVector separator;    // f >= 0 on every generator and f.v < 0 (Outside)
};

/// Exact LP membership. Interior means relative interior: v - eps * (sum of
/// generators) stays in the cone for some eps > 0.
MembershipResult cone_membership_lp(const RationalVector& v, const RationalCone& cone);

/// Inward primitive integer normals of the facets of a full-dimensional cone,
/// sorted. Double description on the dual cone; every facet is checked to be
/// valid and tight on d - 1 independent generators before it is returned.
std::vector<std::vector<Integer>> facets(const RationalCone& cone);

/// Cone over the hypersimplex: b >= 0 and 2 b_i <= sum b.
Membership git_cone_membership(const RationalVector& b);

/// D_{ij} = e_i + e_j for every stable pair a_i + a_j < a/2, with t = 0.
std::vector<DivisorClass> git_effective_generators(const ParabolicWeight& w);

/// G_I for every even I, E first, then by size and lexicographically. 2^{n-1} classes.
std::vector<DivisorClass> moduli_effective_generators(int n, int max_n = 20);

struct SurgeryResult {
  std::vector<int> subset;  // T, 0-based, sorted
  DoubleSequence output;
};

/// Lowers the height and level of a double sequence by one, removing one box
/// from each column of an even set T. The shape must be sorted descending with
/// positive entries and the height at least 2.
SurgeryResult surgery(const DoubleSequence& ds);

struct DecompositionTerm {
  SubsetMask subset = 0;  // 0 stands for E
  DivisorClass generator;
  Integer multiplicity;
};

/// Writes an effective integral class as a nonnegative integer combination of
/// the G_I and E. Terms are sorted by subset; the reconstruction is checked.
std::vector<DecompositionTerm> decompose(const DivisorClass& d);

/// True when d is effective per the conformal-block test (t > 0) or the GIT cone (t <= 0).
/// Requires integral b, t and even sum b.
bool is_effective(const DivisorClass& d);

struct ExtremalityCertificate {
  SubsetMask subset = 0;
  DivisorClass generator;
  std::vector<RationalVector> functionals;  // n independent, zero on g, >= 0 on all generators
  bool corrected_pair_functional = false;  // |I| = 2 uses sum_{j != k} b_j - b_k - t
  RationalVector separator;                 // < 0 on g, >= 0 on every other generator
};

/// Both certificates for one generator, verified before return.
ExtremalityCertificate extremality_certificate(const DivisorClass& g, int n);

std::vector<ExtremalityCertificate> certify_all(int n, Exec exec = Exec::Parallel);

}  // namespace parabolic
