#include "parabolic/weights.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>

#include "parabolic/error.hpp"

namespace parabolic {

ParabolicWeight::ParabolicWeight(RationalVector a) : a_(std::move(a)), sum_(0) {
  if (a_.size() < 3) throw Error(Module::Weights, ErrorKind::InvalidArgument, "a parabolic weight needs n >= 3");
  if (a_.size() > 62) throw Error(Module::Weights, ErrorKind::InvalidArgument, "at most 62 parabolic points");
  for (auto& v : a_) {
    v.canonicalize();
    if (v <= 0 || v >= 1)
      throw Error(Module::Weights, ErrorKind::InvalidArgument, "weight entry " + to_string(v) + " not in (0, 1)");
    sum_ += v;
  }
}

ParabolicWeight ParabolicWeight::scaled(const Rational& c) const {
  RationalVector b(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) b[i] = c * a_[i];
  return ParabolicWeight(std::move(b));
}

Integer ParabolicWeight::denominator() const { return lcm_of_denominators(a_); }

std::vector<Integer> ParabolicWeight::cleared() const {
  const Integer k = denominator();
  std::vector<Integer> out(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) out[i] = a_[i].get_num() * (k / a_[i].get_den());
  return out;
}

Wall canonical_wall(int n, SubsetMask subset, long m) {
  const SubsetMask full = n >= 64 ? ~SubsetMask{0} : (SubsetMask{1} << n) - 1;
  if (m < 0 || (m == 0 && (subset & 1) == 0)) return Wall{full & ~subset, -m};
  return Wall{subset, m};
}

bool wall_less(const Wall& a, const Wall& b) {
  if (a.m != b.m) return a.m < b.m;
  return a.indices() < b.indices();
}

Rational wall_defect(const ParabolicWeight& w, SubsetMask subset) {
  Rational d = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (subset >> i & 1)
      d += w[i];
    else
      d -= w[i];
  }
  return d;
}

namespace {

// Integer image k * a of a weight for the 2^n scans, with a 64-bit fast path.
class ScaledWeight {
 public:
  explicit ScaledWeight(const ParabolicWeight& w) : n_(static_cast<int>(w.size())), big_(w.cleared()), k_(w.denominator()) {
    for (const auto& v : big_) total_ += v;
    const Integer bound = Integer(1) << 60;
    small_ = total_ < bound && k_ < bound;
    if (small_) {
      for (const auto& v : big_) small_a_.push_back(v.get_si());
      small_total_ = total_.get_si();
      small_k_ = k_.get_si();
    }
  }

  int size() const { return n_; }

  // 2 * sum_I A - S, which is k times the wall defect.
  Integer defect(SubsetMask mask) const {
    if (small_) return Integer(static_cast<long>(small_defect(mask)));
    Integer in = 0;
    for (int i = 0; i < n_; ++i)
      if (mask >> i & 1) in += big_[i];
    return 2 * in - total_;
  }

  // Returns m when mask names a canonical wall through the weight.
  std::optional<long> wall_index(SubsetMask mask) const {
    if (small_) {
      const std::int64_t d = small_defect(mask);
      if (d < 0 || d % (2 * small_k_) != 0) return std::nullopt;
      const std::int64_t m = d / (2 * small_k_);
      if (m == 0 && (mask & 1) == 0) return std::nullopt;
      return static_cast<long>(m);
    }
    const Integer d = defect(mask);
    if (d < 0 || d % (2 * k_) != 0) return std::nullopt;
    const Integer m = d / (2 * k_);
    if (m == 0 && (mask & 1) == 0) return std::nullopt;
    return m.get_si();
  }

  // floor(defect / 2): the chamber coordinate of the subset.
  Integer chamber_index(SubsetMask mask) const {
    Integer q;
    const Integer d = defect(mask);
    const Integer den = 2 * k_;
    mpz_fdiv_q(q.get_mpz_t(), d.get_mpz_t(), den.get_mpz_t());
    return q;
  }

  bool balanced(SubsetMask mask) const {
    if (small_) return small_defect(mask) == 0;
    return defect(mask) == 0;
  }

 private:
  std::int64_t small_defect(SubsetMask mask) const {
    std::int64_t in = 0;
    for (int i = 0; i < n_; ++i)
      if (mask >> i & 1) in += small_a_[i];
    return 2 * in - small_total_;
  }

  int n_;
  std::vector<Integer> big_;
  Integer k_;
  Integer total_ = 0;
  bool small_ = false;
  std::vector<std::int64_t> small_a_;
  std::int64_t small_total_ = 0;
  std::int64_t small_k_ = 1;
};

void guard_size(std::size_t n, int max_n) {
  if (static_cast<int>(n) > max_n) {
    std::ostringstream msg;
    msg << "subset scan over n = " << n << " points exceeds the bound " << max_n;
    throw Error(Module::Weights, ErrorKind::EnumerationTooLarge, msg.str());
  }
}

}  // namespace

void validate(const PointConfig& config, std::size_t n) {
  std::vector<char> seen(n, 0);
  std::size_t count = 0;
  for (const auto& block : config.blocks) {
    if (block.empty()) throw Error(Module::Weights, ErrorKind::InvalidArgument, "empty block in point configuration");
    for (int i : block) {
      if (i < 0 || static_cast<std::size_t>(i) >= n || seen[i])
        throw Error(Module::Weights, ErrorKind::InvalidArgument, "point configuration is not a partition of [n]");
      seen[i] = 1;
      ++count;
    }
  }
  if (count != n) throw Error(Module::Weights, ErrorKind::InvalidArgument, "point configuration misses an index");
}

Stability stability(const PointConfig& config, const ParabolicWeight& w) {
  validate(config, w.size());
  const Rational half = w.sum() / 2;
  Stability out = Stability::Stable;
  for (const auto& block : config.blocks) {
    Rational s = 0;
    for (int i : block) s += w[i];
    if (s > half) return Stability::Unstable;
    if (s == half) out = Stability::StrictlySemistable;
  }
  return out;
}

LinearizationInfo classify_linearization(const ParabolicWeight& w, Exec exec) {
  const std::size_t n = w.size();
  const Rational half = w.sum() / 2;
  LinearizationInfo info;
  for (std::size_t i = 0; i < n; ++i)
    if (w[i] >= half) return info;

  info.maximal_stable_locus = true;
  for (std::size_t i = 0; i < n && info.maximal_stable_locus; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (w[i] + w[j] >= half) {
        info.maximal_stable_locus = false;
        break;
      }

  guard_size(n, 62);
  const ScaledWeight sw(w);
  // Sets containing index 0 suffice: I and its complement balance together.
  const auto balanced = collect_masks(static_cast<int>(n), exec,
                                      [&](SubsetMask mask) { return (mask & 1) && sw.balanced(mask); });
  info.kind = balanced.empty() ? LinearizationClass::General : LinearizationClass::EffectiveNotGeneral;
  return info;
}

std::vector<Wall> walls_containing(const ParabolicWeight& w, Exec exec, int max_n) {
  guard_size(w.size(), std::min(max_n, 62));
  const ScaledWeight sw(w);
  const auto masks = collect_masks(sw.size(), exec, [&](SubsetMask mask) { return sw.wall_index(mask).has_value(); });
  std::vector<Wall> out;
  out.reserve(masks.size());
  for (SubsetMask mask : masks) out.push_back(Wall{mask, *sw.wall_index(mask)});
  std::sort(out.begin(), out.end(), wall_less);
  return out;
}

bool same_chamber(const ParabolicWeight& w1, const ParabolicWeight& w2, Exec exec, int max_n) {
  if (w1.size() != w2.size())
    throw Error(Module::Weights, ErrorKind::DimensionMismatch, "weights have different lengths");
  guard_size(w1.size(), std::min(max_n, 62));
  const ScaledWeight s1(w1), s2(w2);
  const int n = s1.size();
  for (const ScaledWeight* s : {&s1, &s2})
    if (!collect_masks(n, exec, [&](SubsetMask mask) { return s->wall_index(mask).has_value(); }).empty())
      throw Error(Module::Weights, ErrorKind::WeightOnWall, "weight lies on a stability wall");
  const auto differ =
      collect_masks(n, exec, [&](SubsetMask mask) { return s1.chamber_index(mask) != s2.chamber_index(mask); });
  return differ.empty();
}

PicardInfo picard_rank_git(const ParabolicWeight& w) {
  const std::size_t n = w.size();
  if (n < 5) throw Error(Module::Weights, ErrorKind::NTooSmall, "Picard rank is computed for n >= 5 only");
  const LinearizationInfo info = classify_linearization(w);
  if (info.kind == LinearizationClass::NotEffective)
    throw Error(Module::Weights, ErrorKind::NotEffective, "linearization is not effective");
  if (info.kind != LinearizationClass::General)
    throw Error(Module::Weights, ErrorKind::NonGeneralWeight, "linearization is not general");

  PicardInfo out;
  const Rational half = w.sum() / 2;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (w[i] + w[j] >= half) out.unstable_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
  for (std::size_t p = 0; p < out.unstable_pairs.size(); ++p)
    for (std::size_t q = p + 1; q < out.unstable_pairs.size(); ++q) {
      auto [a, b] = out.unstable_pairs[p];
      auto [c, d] = out.unstable_pairs[q];
      if (a != c && a != d && b != c && b != d)
        throw Error(Module::Weights, ErrorKind::Internal, "unstable-pair graph has two disjoint edges");
    }
  out.rank = n - out.unstable_pairs.size();
  return out;
}

}  // namespace parabolic
