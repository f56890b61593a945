#include "parabolic/models.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <tuple>

#include "parabolic/conformal.hpp"
#include "parabolic/error.hpp"

namespace parabolic {

namespace {

CrossingKind kind_of(long dim_minus, long dim_plus) {
  if (dim_minus == 0) return CrossingKind::BlowUp;
  if (dim_plus == 0) return CrossingKind::BlowDown;
  return CrossingKind::Flip;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

WallWalk wall_walk(const ParabolicWeight& w, Exec exec, int max_n) {
  if (w.sum() >= 2) throw Error(Module::Models, ErrorKind::SumTooLarge, "wall walk needs sum(a) < 2");
  const LinearizationInfo info = classify_linearization(w, exec);
  if (info.kind == LinearizationClass::NotEffective)
    throw Error(Module::Models, ErrorKind::NotEffective, "weight is not effective");
  if (info.kind != LinearizationClass::General)
    throw Error(Module::Models, ErrorKind::NonGeneralWeight, "weight is not general");
  const int n = static_cast<int>(w.size());
  if (n > std::min(max_n, 62)) throw Error(Module::Models, ErrorKind::EnumerationTooLarge, "too many points for a subset scan");

  WallWalk walk;
  Rational top = 0;
  for (const auto& v : w.values()) top = std::max(top, v);
  walk.c_max = 1 / top;

  // Along c * w the wall (I, m) is met at c = 2m / D_I, for D_I > 0 and m >= 1.
  // The m in range satisfy D_I / 2 <= m < c_max D_I / 2.
  auto m_range = [&](SubsetMask mask) -> std::pair<Integer, Integer> {
    const Rational d = wall_defect(w, mask);
    if (d <= 0) return {1, 0};
    const Rational lo = d / 2, hi = walk.c_max * d / 2;
    Integer first = std::max(Integer(1), ceil_div(lo.get_num(), lo.get_den()));
    Integer last = ceil_div(hi.get_num(), hi.get_den()) - 1;
    return {first, last};
  };
  const auto masks = collect_masks(n, exec, [&](SubsetMask mask) {
    auto [first, last] = m_range(mask);
    return first <= last;
  });

  for (SubsetMask mask : masks) {
    auto [first, last] = m_range(mask);
    const Rational d = wall_defect(w, mask);
    for (Integer m = first; m <= last; ++m) {
      CrossingEvent ev;
      ev.c = Rational(2 * m) / d;
      ev.wall = Wall{mask, m.get_si()};
      ev.dim_minus = 2 * ev.wall.m + n - 2 - std::popcount(mask);
      ev.dim_plus = n - 4 - ev.dim_minus;
      ev.kind = kind_of(ev.dim_minus, ev.dim_plus);
      walk.events.push_back(ev);
    }
  }
  std::sort(walk.events.begin(), walk.events.end(), [](const CrossingEvent& a, const CrossingEvent& b) {
    if (a.c != b.c) return a.c < b.c;
    return wall_less(a.wall, b.wall);
  });

  for (std::size_t i = 0; i < walk.events.size(); ++i)
    if (walk.events[i].dim_plus < 0) {
      walk.empty_beyond = walk.events[i].c;
      const Rational cut = walk.events[i].c;
      std::erase_if(walk.events, [&](const CrossingEvent& e) { return e.c >= cut; });
      break;
    }

  if (!walk.events.empty()) {
    const SubsetMask full = (SubsetMask{1} << n) - 1;
    const CrossingEvent& first = walk.events.front();
    if (!(first.wall == Wall{full, 1}) || first.c != 2 / w.sum() || first.kind != CrossingKind::BlowUp)
      throw Error(Module::Models, ErrorKind::Internal, "first wall is not the total wall with m = 1");
  }
  return walk;
}

ThetaClass theta_class(const ParabolicWeight& w) {
  ThetaClass out;
  out.k = w.denominator();
  const std::vector<Integer> b = w.cleared();
  Integer total = 0;
  for (const auto& v : b) total += v;
  out.divisor.b.assign(b.begin(), b.end());
  out.divisor.t = Rational(total, 2) - Rational(out.k);
  out.divisor.t.canonicalize();
  out.exponent = -out.divisor.t;

  const long bound = 1'000'000;
  if (total % 2 != 0) {
    out.system_rank = Integer(0);
  } else if (out.k <= bound) {
    BlockSpec spec{static_cast<int>(out.k.get_si()), {}};
    for (const auto& v : b) spec.shape.push_back(static_cast<int>(v.get_si()));
    out.system_rank = rank_fusion(spec);
  }
  return out;
}

std::pair<DivisorClass, Integer> clear_denominators(const DivisorClass& d) {
  const RationalVector coords = d.coordinates();
  Integer scale = lcm_of_denominators(coords);
  Integer total = 0;
  for (std::size_t i = 0; i < d.size(); ++i) total += coords[i].get_num() * (scale / coords[i].get_den());
  if (total % 2 != 0) scale *= 2;
  DivisorClass c{RationalVector(d.size()), d.t * Rational(scale)};
  for (std::size_t i = 0; i < d.size(); ++i) c.b[i] = d.b[i] * Rational(scale);
  return {c, scale};
}

ModelDescription classify_model(const DivisorClass& d, int n) {
  if (n < 5) throw Error(Module::Models, ErrorKind::NTooSmall, "model classification needs n >= 5");
  if (d.size() != static_cast<std::size_t>(n))
    throw Error(Module::Models, ErrorKind::DimensionMismatch, "class has wrong length");

  ModelDescription model;
  DivisorClass cleared;
  std::tie(cleared, model.scale) = clear_denominators(d);
  if (!is_effective(cleared)) throw Error(Module::Models, ErrorKind::NotEffective, "class is not effective");

  RationalCone eff;
  for (const auto& g : moduli_effective_generators(n)) eff.generators.push_back(g.coordinates());
  model.cone_status = cone_membership_lp(cleared.coordinates(), eff).status;

  std::vector<Integer> b(n);
  for (int i = 0; i < n; ++i) b[i] = cleared.b[i].get_num();
  Integer t = cleared.t.get_num();
  if (t < 0) {
    t = 0;
    model.steps.push_back("drop_exceptional");
  }
  for (int i = 0; i < n; ++i) {
    if (b[i] == 0)
      model.dropped_points.push_back(i);
    else
      model.points.push_back(i);
  }
  if (!model.dropped_points.empty()) model.steps.push_back("vacua");

  Integer sum = 0;
  for (int i : model.points) sum += b[i];
  const Integer level = sum / 2 - t;
  std::vector<int> saturated;
  for (int i : model.points)
    if (b[i] == level) saturated.push_back(i);
  if (!saturated.empty()) {
    model.steps.push_back("saturation");
    model.kind = ModelKind::BoundaryReduction;
    std::vector<int> kept;
    for (int i : model.points)
      if (!std::binary_search(saturated.begin(), saturated.end(), i)) kept.push_back(i);
    model.points = kept;
    model.dropped_points.insert(model.dropped_points.end(), saturated.begin(), saturated.end());
    std::sort(model.dropped_points.begin(), model.dropped_points.end());
    model.degree_shift = -static_cast<long>(saturated.size());
    return model;
  }

  if (model.dropped_points.empty() && model.cone_status != Membership::Interior)
    throw Error(Module::Models, ErrorKind::NotInInterior, "class is on the boundary of the effective cone");

  RationalVector a;
  if (t > 0) {
    model.kind = ModelKind::ParabolicModuli;
    for (int i : model.points) a.push_back(Rational(b[i], level));
  } else {
    model.kind = ModelKind::GitQuotient;
    Integer g = 0;
    for (int i : model.points) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(b[i]).get_mpz_t());
      a.push_back(Rational(b[i], sum));
    }
    // Only the ray matters; report the primitive linearization.
    for (int i : model.points) model.linearization.push_back(Integer(b[i]) / g);
  }
  for (auto& v : a) v.canonicalize();
  model.weight = ParabolicWeight(std::move(a));
  return model;
}

bool describes(const ModelDescription& model, const ParabolicWeight& w) {
  if (!model.weight || !model.dropped_points.empty() || model.points.size() != w.size()) return false;
  if (model.kind == ModelKind::ParabolicModuli) return *model.weight == w;
  if (model.kind == ModelKind::GitQuotient) {
    if (w.sum() > 2) return false;
    for (std::size_t i = 0; i < w.size(); ++i)
      if ((*model.weight)[i] != w[i] / w.sum()) return false;
    return true;
  }
  return false;
}

}  // namespace parabolic
