#include "parabolic/cones.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>

#include "parabolic/error.hpp"
#include "parabolic/linalg.hpp"
#include "parabolic/lp.hpp"

namespace parabolic {

RationalVector DivisorClass::coordinates() const {
  RationalVector v = b;
  v.push_back(t);
  return v;
}

DivisorClass DivisorClass::exceptional(std::size_t n) { return DivisorClass{RationalVector(n), Rational(-1)}; }

DivisorClass DivisorClass::generator(std::size_t n, SubsetMask subset) {
  DivisorClass g{RationalVector(n), Rational(std::popcount(subset) / 2 - 1)};
  for (std::size_t i = 0; i < n; ++i)
    if (subset >> i & 1) g.b[i] = 1;
  return g;
}

// ---------------------------------------------------------------------------
// Membership

MembershipResult cone_membership_lp(const RationalVector& v, const RationalCone& cone) {
  const std::size_t d = v.size();
  const std::size_t m = cone.generators.size();
  for (const auto& g : cone.generators)
    if (g.size() != d) throw Error(Module::Cones, ErrorKind::DimensionMismatch, "generator and vector dimensions differ");

  // maximize eps subject to G lambda + eps * s = v, where s is the sum of the generators.
  LinearProgram lp{Matrix(d, RationalVector(m + 1)), v, RationalVector(m + 1)};
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      lp.a[i][j] = cone.generators[j][i];
      lp.a[i][m] += cone.generators[j][i];
    }
  lp.c[m] = 1;
  const LpSolution sol = solve(lp);

  MembershipResult out;
  if (sol.status == LpStatus::Infeasible) {
    out.status = Membership::Outside;
    out.separator = sol.farkas;
    return out;
  }

  if (sol.status == LpStatus::Unbounded) {
    out.status = Membership::Interior;
    LinearProgram feas{Matrix(d, RationalVector(m)), v, RationalVector(m)};
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < d; ++i) feas.a[i][j] = cone.generators[j][i];
    out.combination = solve(feas).x;
  } else {
    const Rational eps = sol.x[m];
    out.status = eps > 0 ? Membership::Interior : Membership::Boundary;
    out.combination.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(m));
    for (auto& lambda : out.combination) lambda += eps;
  }

  RationalVector check(d);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < d; ++i) check[i] += out.combination[j] * cone.generators[j][i];
  if (check != v) throw Error(Module::Cones, ErrorKind::Internal, "membership witness failed verification");
  return out;
}

Membership git_cone_membership(const RationalVector& b) {
  Rational total = 0;
  for (const auto& v : b) total += v;
  bool strict = true;
  for (const auto& v : b) {
    if (v < 0 || 2 * v > total) return Membership::Outside;
    if (v == 0 || 2 * v == total) strict = false;
  }
  return strict ? Membership::Interior : Membership::Boundary;
}

// ---------------------------------------------------------------------------
// Facets

namespace {

using IntVector = std::vector<Integer>;

class Bits {
 public:
  explicit Bits(std::size_t size = 0) : words_((size + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  bool contains(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((o.words_[i] & ~words_[i]) != 0) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  IntVector v;
  Bits zeros;
};

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void make_primitive(IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
}

RationalVector to_rational(const IntVector& v) { return RationalVector(v.begin(), v.end()); }

}  // namespace

std::vector<std::vector<Integer>> facets(const RationalCone& cone) {
  const std::size_t m = cone.generators.size();
  if (m == 0) throw Error(Module::Cones, ErrorKind::InvalidArgument, "cone has no generators");
  const std::size_t d = cone.generators.front().size();
  std::vector<IntVector> gens;
  for (const auto& g : cone.generators) {
    if (g.size() != d) throw Error(Module::Cones, ErrorKind::DimensionMismatch, "generators have different dimensions");
    gens.push_back(primitive_integer(g));
  }

  std::vector<std::size_t> basis;
  EchelonBasis echelon(d);
  for (std::size_t j = 0; j < m && basis.size() < d; ++j)
    if (echelon.insert(cone.generators[j])) basis.push_back(j);
  if (basis.size() < d) throw Error(Module::Cones, ErrorKind::InvalidArgument, "cone is not full-dimensional");

  // Dual rays of {f : g_b . f >= 0, b in basis} are the columns of the inverse.
  Matrix square(d, RationalVector(d));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) square[r][c] = cone.generators[basis[r]][c];
  std::vector<Ray> rays;
  for (std::size_t j = 0; j < d; ++j) {
    RationalVector e(d);
    e[j] = 1;
    auto col = solve_square(square, e);
    Ray ray{primitive_integer(*col), Bits(m)};
    for (std::size_t r = 0; r < d; ++r)
      if (r != j) ray.zeros.set(basis[r]);
    rays.push_back(std::move(ray));
  }

  std::vector<char> in_basis(m, 0);
  for (std::size_t b : basis) in_basis[b] = 1;
  for (std::size_t c = 0; c < m; ++c) {
    if (in_basis[c]) continue;
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(gens[c], rays[r].v);
      if (val[r] > 0) pos.push_back(r);
      if (val[r] < 0) neg.push_back(r);
      if (val[r] >= 0) {
        Ray kept = rays[r];
        if (val[r] == 0) kept.zeros.set(c);
        next.push_back(std::move(kept));
      }
    }
    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        const Bits common = rays[p].zeros & rays[q].zeros;
        if (common.count() + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && rays[r].zeros.contains(common)) adjacent = false;
        if (!adjacent) continue;
        Ray ray{IntVector(d), common};
        const Integer wp = val[p], wq = -val[q];
        for (std::size_t i = 0; i < d; ++i) ray.v[i] = wp * rays[q].v[i] + wq * rays[p].v[i];
        make_primitive(ray.v);
        ray.zeros.set(c);
        next.push_back(std::move(ray));
      }
    rays = std::move(next);
  }

  std::vector<IntVector> out;
  for (const auto& ray : rays) {
    Matrix tight;
    for (const auto& g : gens) {
      const Integer s = dot(g, ray.v);
      if (s < 0) throw Error(Module::Cones, ErrorKind::Internal, "facet normal is negative on a generator");
      if (s == 0) tight.push_back(to_rational(g));
    }
    if (rank(tight) + 1 != d) throw Error(Module::Cones, ErrorKind::Internal, "facet is not tight on d - 1 generators");
    out.push_back(ray.v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Generators

std::vector<DivisorClass> git_effective_generators(const ParabolicWeight& w) {
  const LinearizationInfo info = classify_linearization(w);
  if (info.kind == LinearizationClass::NotEffective)
    throw Error(Module::Cones, ErrorKind::NotEffective, "linearization is not effective");
  if (info.kind != LinearizationClass::General)
    throw Error(Module::Cones, ErrorKind::NonGeneralWeight, "linearization is not general");
  const std::size_t n = w.size();
  const Rational half = w.sum() / 2;
  std::vector<DivisorClass> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (w[i] + w[j] < half) {
        DivisorClass g{RationalVector(n), Rational(0)};
        g.b[i] = g.b[j] = 1;
        out.push_back(std::move(g));
      }
  return out;
}

std::vector<DivisorClass> moduli_effective_generators(int n, int max_n) {
  if (n < 5) throw Error(Module::Cones, ErrorKind::NTooSmall, "effective cone generators need n >= 5");
  if (n > std::min(max_n, 30)) throw Error(Module::Cones, ErrorKind::EnumerationTooLarge, "too many generators");
  std::vector<SubsetMask> masks;
  for (SubsetMask mask = 0; mask < (SubsetMask{1} << n); ++mask)
    if (std::popcount(mask) % 2 == 0) masks.push_back(mask);
  std::sort(masks.begin(), masks.end(), [](SubsetMask a, SubsetMask b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    return mask_to_indices(a) < mask_to_indices(b);
  });
  std::vector<DivisorClass> out;
  out.reserve(masks.size());
  for (SubsetMask mask : masks) out.push_back(DivisorClass::generator(static_cast<std::size_t>(n), mask));
  return out;
}

// ---------------------------------------------------------------------------
// Surgery

SurgeryResult surgery(const DoubleSequence& ds) {
  if (auto why = check_double_sequence(ds)) throw Error(Module::Cones, ErrorKind::InvalidSequence, *why);
  const std::vector<int> shape = ds.shape();
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (shape[i] <= 0) throw Error(Module::Cones, ErrorKind::InvalidArgument, "shape entries must be positive");
    if (i > 0 && shape[i] > shape[i - 1])
      throw Error(Module::Cones, ErrorKind::InvalidArgument, "shape must be sorted descending");
  }
  const int h = height(ds);
  if (h <= 1) throw Error(Module::Cones, ErrorKind::HeightTooSmall, "surgery needs height at least 2");

  const int n = static_cast<int>(ds.size());
  std::vector<int> before(n + 1, 0), upper(n), lower(n);
  for (int i = 0; i < n; ++i) {
    upper[i] = before[i] + ds.top[i];
    lower[i] = before[i] - ds.bottom[i];
    before[i + 1] = before[i] + ds.top[i] - ds.bottom[i];
  }
  auto peak_between = [&](int from, int to) {
    for (int i = from; i <= to; ++i)
      if (upper[i] == h) return true;
    return false;
  };

  std::vector<int> odd, even;
  for (int start = 0; start < n;) {
    int end = start;
    while (before[end + 1] != 0) ++end;
    if (peak_between(start, end)) {
      int c = start;
      while (true) {
        odd.push_back(c);
        int e = c + 1;
        while (e <= end && !(lower[e] == 0 && peak_between(c, e))) ++e;
        if (e > end) throw Error(Module::Cones, ErrorKind::Internal, "no closing column in excursion");
        even.push_back(e);
        if (!peak_between(e + 1, end)) break;
        c = e + 1;
        while (c <= end && ds.top[c] == 0) ++c;
        if (c > end) throw Error(Module::Cones, ErrorKind::Internal, "no rising column after a return");
      }
    }
    start = end + 1;
  }

  SurgeryResult out{{}, ds};
  out.output.level = ds.level - 1;
  for (int c : odd) --out.output.top[c];
  for (int c : even) --out.output.bottom[c];
  out.subset = odd;
  out.subset.insert(out.subset.end(), even.begin(), even.end());
  std::sort(out.subset.begin(), out.subset.end());

  if (auto why = check_double_sequence(out.output))
    throw Error(Module::Cones, ErrorKind::Internal, "surgery produced an invalid sequence: " + *why);
  if (height(out.output) != h - 1) throw Error(Module::Cones, ErrorKind::Internal, "surgery did not lower the height");
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

struct IntegralClass {
  std::vector<long> b;
  long t = 0;
  long total = 0;
};

IntegralClass integral(const DivisorClass& d) {
  IntegralClass c;
  auto as_long = [](const Rational& q) {
    if (q.get_den() != 1)
      throw Error(Module::Cones, ErrorKind::NonIntegralClass,
                  "class " + to_string(q) + " is not integral; clear denominators first");
    if (!q.get_num().fits_sint_p()) throw Error(Module::Cones, ErrorKind::InstanceTooLarge, "coordinate too large");
    return q.get_num().get_si();
  };
  for (const auto& v : d.b) c.b.push_back(as_long(v));
  c.t = as_long(d.t);
  c.total = std::accumulate(c.b.begin(), c.b.end(), 0L);
  if (c.total % 2 != 0)
    throw Error(Module::Cones, ErrorKind::NonIntegralClass, "sum of b is odd; scale the class by 2");
  return c;
}

bool effective(const IntegralClass& c) {
  for (long v : c.b)
    if (v < 0) return false;
  if (c.t <= 0) {
    RationalVector b(c.b.begin(), c.b.end());
    return git_cone_membership(b) != Membership::Outside;
  }
  const long level = c.total / 2 - c.t;
  if (level < 0) return false;
  BlockSpec spec{static_cast<int>(level), std::vector<int>(c.b.begin(), c.b.end())};
  return rank_fusion(spec) > 0;
}

}  // namespace

bool is_effective(const DivisorClass& d) { return effective(integral(d)); }

std::vector<DecompositionTerm> decompose(const DivisorClass& d) {
  IntegralClass c = integral(d);
  if (!effective(c)) throw Error(Module::Cones, ErrorKind::NotEffective, "class is not effective");
  const std::size_t n = c.b.size();
  std::map<SubsetMask, Integer> count;

  while (true) {
    if (c.t < 0) {
      count[0] += -c.t;
      c.t = 0;
    }
    std::vector<int> support;
    for (std::size_t i = 0; i < n; ++i)
      if (c.b[i] != 0) support.push_back(static_cast<int>(i));
    if (support.empty()) {
      if (c.t != 0) throw Error(Module::Cones, ErrorKind::Internal, "leftover t on the zero class");
      break;
    }
    std::stable_sort(support.begin(), support.end(), [&](int i, int j) { return c.b[i] > c.b[j]; });
    BlockSpec spec{static_cast<int>(c.total / 2 - c.t), {}};
    for (int i : support) spec.shape.push_back(static_cast<int>(c.b[i]));
    const auto path = first_path(spec);
    if (!path) throw Error(Module::Cones, ErrorKind::Internal, "effective class has no double sequence");

    if (height(*path) <= 1) {
      SubsetMask mask = 0;
      for (int i : support) mask |= SubsetMask{1} << i;
      count[mask] += 1;
      const long extra = static_cast<long>(support.size()) / 2 - 1 - c.t;
      if (extra < 0) throw Error(Module::Cones, ErrorKind::Internal, "negative multiple of E");
      if (extra > 0) count[0] += extra;
      break;
    }

    const SurgeryResult cut = surgery(*path);
    SubsetMask mask = 0;
    for (int pos : cut.subset) {
      const int i = support[pos];
      mask |= SubsetMask{1} << i;
      c.b[i] -= 1;
    }
    count[mask] += 1;
    const long size = static_cast<long>(cut.subset.size());
    c.total -= size;
    c.t += 1 - size / 2;
  }

  std::vector<DecompositionTerm> out;
  DivisorClass sum{RationalVector(n), Rational(0)};
  for (const auto& [mask, mult] : count) {
    DecompositionTerm term{mask, DivisorClass::generator(n, mask), mult};
    for (std::size_t i = 0; i < n; ++i) sum.b[i] += Rational(mult) * term.generator.b[i];
    sum.t += Rational(mult) * term.generator.t;
    out.push_back(std::move(term));
  }
  if (!(sum == d)) throw Error(Module::Cones, ErrorKind::Internal, "decomposition does not reconstruct the class");
  return out;
}

// ---------------------------------------------------------------------------
// Extremality

namespace {

RationalVector indicator_functional(std::size_t n, const std::vector<int>& ones, const Rational& t_coef) {
  RationalVector f(n + 1);
  for (int j : ones) f[j] = 1;
  f[n] = t_coef;
  return f;
}

}  // namespace

ExtremalityCertificate extremality_certificate(const DivisorClass& g, int n) {
  if (n < 5) throw Error(Module::Cones, ErrorKind::NTooSmall, "extremality certificates need n >= 5");
  const std::size_t size = static_cast<std::size_t>(n);
  if (g.size() != size) throw Error(Module::Cones, ErrorKind::DimensionMismatch, "class has wrong length");
  SubsetMask mask = 0;
  for (std::size_t i = 0; i < size; ++i) {
    if (g.b[i] == 1)
      mask |= SubsetMask{1} << i;
    else if (g.b[i] != 0)
      throw Error(Module::Cones, ErrorKind::NotAGenerator, "class is not one of the effective cone generators");
  }
  if (std::popcount(mask) % 2 != 0 || !(DivisorClass::generator(size, mask) == g))
    throw Error(Module::Cones, ErrorKind::NotAGenerator, "class is not one of the effective cone generators");

  ExtremalityCertificate cert{mask, g, {}, false, {}};
  const std::vector<int> in = mask_to_indices(mask);
  std::vector<int> out_of;
  for (int j = 0; j < n; ++j)
    if (!(mask >> j & 1)) out_of.push_back(j);

  if (in.size() == 2) {
    cert.corrected_pair_functional = true;
    for (int k : in) {
      RationalVector f = indicator_functional(size, {}, Rational(-1));
      for (int j = 0; j < n; ++j) f[j] = j == k ? -1 : 1;
      cert.functionals.push_back(std::move(f));
    }
  } else if (in.size() >= 4) {
    // 2i - 2 element subsets of I whose indicators span Q^I, padded by the complement.
    const std::size_t s = in.size();
    for (std::size_t k = 0; k < s; ++k) {
      std::vector<int> chosen = out_of;
      if (k + 1 < s) {
        for (std::size_t p = 0; p + 1 < s; ++p)
          if (p != k) chosen.push_back(in[p]);
      } else {
        for (std::size_t p = 0; p + 3 < s; ++p) chosen.push_back(in[p]);
        chosen.push_back(in[s - 1]);
      }
      cert.functionals.push_back(indicator_functional(size, chosen, Rational(-2)));
    }
  }
  for (int k : out_of)
    cert.functionals.push_back(indicator_functional(size, {k}, Rational(0)));

  const auto all = moduli_effective_generators(n);
  const RationalVector gc = g.coordinates();
  for (const auto& f : cert.functionals) {
    if (dot(f, gc) != 0) throw Error(Module::Cones, ErrorKind::Internal, "certificate functional does not vanish on g");
    for (const auto& other : all)
      if (dot(f, other.coordinates()) < 0)
        throw Error(Module::Cones, ErrorKind::Internal, "certificate functional is negative on a generator");
  }
  if (rank(cert.functionals) != size)
    throw Error(Module::Cones, ErrorKind::Internal, "certificate functionals are dependent");

  RationalCone rest;
  for (const auto& other : all)
    if (!(other == g)) rest.generators.push_back(other.coordinates());
  const MembershipResult lp = cone_membership_lp(gc, rest);
  if (lp.status != Membership::Outside)
    throw Error(Module::Cones, ErrorKind::Internal, "generator lies in the cone of the others");
  cert.separator = lp.separator;
  return cert;
}

std::vector<ExtremalityCertificate> certify_all(int n, Exec exec) {
  const auto gens = moduli_effective_generators(n);
  return map_indices<ExtremalityCertificate>(gens.size(), exec,
                                             [&](std::size_t i) { return extremality_certificate(gens[i], n); });
}

}  // namespace parabolic
