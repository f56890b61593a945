#include "parabolic/conformal.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "parabolic/error.hpp"
#include "parabolic/linalg.hpp"

namespace parabolic {

long BlockSpec::weight_sum() const { return std::accumulate(shape.begin(), shape.end(), 0L); }

void validate(const BlockSpec& spec) {
  if (spec.level < 0) throw Error(Module::Conformal, ErrorKind::InvalidArgument, "level must be nonnegative");
  for (int k : spec.shape)
    if (k < 0) throw Error(Module::Conformal, ErrorKind::InvalidArgument, "shape entries must be nonnegative");
}

BlockSpec canonical(const BlockSpec& spec) {
  BlockSpec out{spec.level, {}};
  for (int k : spec.shape)
    if (k != 0) out.shape.push_back(k);
  std::sort(out.shape.begin(), out.shape.end(), std::greater<>());
  return out;
}

std::vector<int> DoubleSequence::shape() const {
  std::vector<int> k(top.size());
  for (std::size_t i = 0; i < top.size(); ++i) k[i] = top[i] + bottom[i];
  return k;
}

Integer rank_fusion(const BlockSpec& spec) {
  validate(spec);
  for (int k : spec.shape)
    if (k > spec.level) return 0;
  const long total = spec.weight_sum();
  const int cap = static_cast<int>(std::min<long>(spec.level, total / 2));
  const long two_level = 2L * spec.level;

  std::vector<Integer> f(cap + 1), g(cap + 1);
  f[0] = 1;
  for (int k : spec.shape) {
    for (auto& v : g) v = 0;
    for (int h = 0; h <= cap; ++h) {
      if (f[h] == 0) continue;
      for (int h2 = std::abs(h - k); h2 <= std::min(h + k, cap); h2 += 2)
        if (h + k + h2 <= two_level) g[h2] += f[h];
    }
    std::swap(f, g);
  }
  return f[0];
}

namespace {

// Column choices and backward reachability for one (level, shape).
// Heights are the prefix values P_i = sum_{j<i} (x_j - y_j).
class PathSpace {
 public:
  explicit PathSpace(const BlockSpec& spec) : level_(spec.level), shape_(spec.shape) {
    validate(spec);
    const int n = static_cast<int>(shape_.size());
    cap_ = static_cast<int>(std::min<long>(level_, spec.weight_sum() / 2));
    reach_.assign(n + 1, std::vector<char>(cap_ + 1, 0));
    reach_[n][0] = 1;
    for (int i = n - 1; i >= 0; --i)
      for (int p = 0; p <= cap_; ++p) {
        auto [lo, hi] = range(i, p);
        for (int x = lo; x <= hi && !reach_[i][p]; ++x)
          if (reachable(i + 1, next(i, p, x))) reach_[i][p] = 1;
      }
  }

  int columns() const { return static_cast<int>(shape_.size()); }
  bool nonempty() const { return reachable(0, 0); }
  bool reachable(int i, int p) const { return p >= 0 && p <= cap_ && reach_[i][p]; }

  // Admissible top entries in column i from height p.
  std::pair<int, int> range(int i, int p) const {
    const int k = shape_[i];
    const int lo = std::max({0, k - level_, k - p});
    const int hi = std::min(k, level_ - p);
    return {lo, hi};
  }
  int next(int i, int p, int x) const { return p + 2 * x - shape_[i]; }

  DoubleSequence make(const std::vector<int>& top) const {
    DoubleSequence ds{top, std::vector<int>(top.size()), level_};
    for (std::size_t i = 0; i < top.size(); ++i) ds.bottom[i] = shape_[i] - top[i];
    return ds;
  }

  // Appends every completion of `prefix` (ending at height p) in lex order.
  void complete(std::vector<int>& prefix, int p, std::vector<DoubleSequence>& out) const {
    const int i = static_cast<int>(prefix.size());
    if (i == columns()) {
      out.push_back(make(prefix));
      return;
    }
    auto [lo, hi] = range(i, p);
    for (int x = lo; x <= hi; ++x) {
      const int q = next(i, p, x);
      if (!reachable(i + 1, q)) continue;
      prefix.push_back(x);
      complete(prefix, q, out);
      prefix.pop_back();
    }
  }

 private:
  int level_;
  std::vector<int> shape_;
  int cap_ = 0;
  std::vector<std::vector<char>> reach_;
};

struct Prefix {
  std::vector<int> top;
  int height = 0;
};

}  // namespace

std::vector<DoubleSequence> enumerate_paths(const BlockSpec& spec, const Limits& limits, Exec exec) {
  validate(spec);
  if (spec.weight_sum() > limits.max_weight_sum) {
    std::ostringstream msg;
    msg << "weight sum " << spec.weight_sum() << " exceeds bound " << limits.max_weight_sum;
    throw Error(Module::Conformal, ErrorKind::InstanceTooLarge, msg.str());
  }
  if (rank_fusion(spec) > limits.max_paths) {
    std::ostringstream msg;
    msg << "more than " << limits.max_paths << " double sequences";
    throw Error(Module::Conformal, ErrorKind::EnumerationTooLarge, msg.str());
  }
  std::vector<DoubleSequence> out;
  for (int k : spec.shape)
    if (k > spec.level) return out;
  const PathSpace space(spec);
  if (!space.nonempty()) return out;

  if (exec == Exec::Serial) {
    std::vector<int> prefix;
    space.complete(prefix, 0, out);
    return out;
  }

  // Grow prefixes breadth-first, keeping lex order, until there is enough work to split.
  std::vector<Prefix> frontier{Prefix{}};
  for (int depth = 0; depth < space.columns() && frontier.size() < 256; ++depth) {
    std::vector<Prefix> grown;
    for (const auto& pre : frontier) {
      auto [lo, hi] = space.range(depth, pre.height);
      for (int x = lo; x <= hi; ++x) {
        const int q = space.next(depth, pre.height, x);
        if (!space.reachable(depth + 1, q)) continue;
        Prefix child = pre;
        child.top.push_back(x);
        child.height = q;
        grown.push_back(std::move(child));
      }
    }
    frontier = std::move(grown);
  }
  auto parts = map_indices<std::vector<DoubleSequence>>(frontier.size(), Exec::Parallel, [&](std::size_t i) {
    std::vector<DoubleSequence> part;
    std::vector<int> prefix = frontier[i].top;
    space.complete(prefix, frontier[i].height, part);
    return part;
  });
  for (auto& part : parts)
    for (auto& ds : part) out.push_back(std::move(ds));
  return out;
}

std::optional<DoubleSequence> first_path(const BlockSpec& spec) {
  validate(spec);
  for (int k : spec.shape)
    if (k > spec.level) return std::nullopt;
  const PathSpace space(spec);
  if (!space.nonempty()) return std::nullopt;
  std::vector<int> top;
  int p = 0;
  for (int i = 0; i < space.columns(); ++i) {
    auto [lo, hi] = space.range(i, p);
    int x = lo;
    while (!space.reachable(i + 1, space.next(i, p, x))) ++x;
    (void)hi;
    top.push_back(x);
    p = space.next(i, p, x);
  }
  return space.make(top);
}

std::optional<std::string> check_double_sequence(const DoubleSequence& ds) {
  if (ds.top.size() != ds.bottom.size()) return "rows have different lengths";
  if (ds.level < 0) return "negative level";
  const int l = ds.level;
  long prefix = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const int x = ds.top[i], y = ds.bottom[i];
    std::ostringstream at;
    at << " at column " << i + 1;
    if (x < 0 || x > l) return "top entry out of [0, level]" + at.str();
    if (y < 0 || y > l) return "bottom entry out of [0, level]" + at.str();
    if (x + prefix > l) return "upper corner above level" + at.str();
    if (prefix - y < 0) return "lower corner below axis" + at.str();
    prefix += x - y;
    sx += x;
    sy += y;
  }
  if (sx != sy) return std::string("top and bottom sums differ");
  return std::nullopt;
}

int height(const DoubleSequence& ds) {
  int h = 0, prefix = 0;
  for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
    h = std::max(h, prefix + ds.top[i]);
    prefix += ds.top[i] - ds.bottom[i];
  }
  return h;
}

// ---------------------------------------------------------------------------
// Section-space oracle

namespace {

using Exponent = std::vector<std::uint8_t>;
using Polynomial = std::map<Exponent, Rational>;

// The bracket product evaluated at y = z + point, truncated below total degree
// max_degree (negative means no truncation).
Polynomial expand(const SectionBasisElement& g, const RationalVector& point, int max_degree) {
  const std::size_t n = point.size();
  Polynomial f{{Exponent(n, 0), Rational(1)}};
  for (auto [i, j] : g.pairs) {
    Polynomial next;
    const Rational c = point[i] - point[j];
    for (const auto& [e, coef] : f) {
      const int deg = std::accumulate(e.begin(), e.end(), 0);
      if (c != 0) next[e] += coef * c;
      if (max_degree < 0 || deg + 1 < max_degree) {
        Exponent ei = e;
        ++ei[i];
        next[ei] += coef;
        Exponent ej = e;
        ++ej[j];
        next[ej] -= coef;
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    f = std::move(next);
  }
  return f;
}

Matrix to_rows(const std::vector<Polynomial>& polys) {
  std::map<Exponent, std::size_t> column;
  for (const auto& p : polys)
    for (const auto& kv : p) column.emplace(kv.first, 0);
  std::size_t next = 0;
  for (auto& kv : column) kv.second = next++;
  Matrix rows(polys.size(), RationalVector(column.size()));
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (const auto& [e, coef] : polys[r]) rows[r][column[e]] = coef;
  return rows;
}

void check_limits(const BlockSpec& spec, const Limits& limits) {
  if (spec.weight_sum() > limits.max_weight_sum) {
    std::ostringstream msg;
    msg << "weight sum " << spec.weight_sum() << " exceeds bound " << limits.max_weight_sum;
    throw Error(Module::Conformal, ErrorKind::InstanceTooLarge, msg.str());
  }
}

}  // namespace

std::vector<SectionBasisElement> section_generators(const std::vector<int>& shape) {
  std::vector<SectionBasisElement> out;
  std::vector<int> rem = shape;
  const int n = static_cast<int>(shape.size());
  SectionBasisElement cur;

  // Assign the edges of vertex i to partners j, j+1, ... in turn.
  std::function<void(int, int)> assign = [&](int i, int j) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    if (rem[i] == 0) {
      assign(i + 1, i + 2);
      return;
    }
    if (j >= n) return;
    const int most = std::min(rem[i], rem[j]);
    for (int m = most; m >= 0; --m) {
      for (int r = 0; r < m; ++r) cur.pairs.emplace_back(i, j);
      rem[i] -= m;
      rem[j] -= m;
      assign(i, j + 1);
      rem[i] += m;
      rem[j] += m;
      cur.pairs.resize(cur.pairs.size() - m);
    }
  };
  assign(0, 1);
  return out;
}

SectionRank rank_sections(const BlockSpec& spec, const RationalVector& point, const Limits& limits) {
  validate(spec);
  check_limits(spec, limits);
  const std::size_t n = spec.shape.size();
  if (point.size() != n)
    throw Error(Module::Conformal, ErrorKind::InvalidArgument, "point has wrong number of coordinates");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (point[i] == point[j])
        throw Error(Module::Conformal, ErrorKind::InvalidArgument, "point coordinates must be distinct");
  if (spec.weight_sum() % 2 != 0) return {0, true};

  const auto generators = section_generators(spec.shape);
  if (static_cast<long>(generators.size()) > limits.max_paths)
    throw Error(Module::Conformal, ErrorKind::EnumerationTooLarge, "too many bracket monomials");

  // Span of the bracket monomials, keeping an independent subset.
  const RationalVector origin(n);
  std::vector<Polynomial> full;
  full.reserve(generators.size());
  for (const auto& g : generators) full.push_back(expand(g, origin, -1));
  const Matrix coords = to_rows(full);
  EchelonBasis span(coords.empty() ? 0 : coords.front().size());
  std::vector<std::size_t> basis;
  for (std::size_t r = 0; r < coords.size(); ++r)
    if (span.insert(coords[r])) basis.push_back(r);

  const long order = spec.weight_sum() / 2 - spec.level;
  if (order <= 0) return {basis.size(), false};

  std::vector<Polynomial> low;
  for (std::size_t r : basis) low.push_back(expand(generators[r], point, static_cast<int>(order)));
  return {basis.size() - rank(to_rows(low)), false};
}

SectionRank rank_sections_generic(const BlockSpec& spec, const Limits& limits) {
  const std::size_t n = spec.shape.size();
  RationalVector p(n), q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long idx = static_cast<long>(i) + 1;
    p[i] = idx;
    q[i] = idx * idx + 1;
  }
  const SectionRank a = rank_sections(spec, p, limits);
  const SectionRank b = rank_sections(spec, q, limits);
  if (a.rank != b.rank) {
    std::ostringstream msg;
    msg << "ranks disagree at two sample points (" << a.rank << " vs " << b.rank << ")";
    throw Error(Module::Conformal, ErrorKind::Genericity, msg.str());
  }
  return a;
}

ProductCheck product_compatible(const BlockSpec& a, const BlockSpec& b) {
  BlockSpec x = a, y = b;
  const std::size_t n = std::max(x.shape.size(), y.shape.size());
  x.shape.resize(n, 0);
  y.shape.resize(n, 0);
  BlockSpec sum{x.level + y.level, std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) sum.shape[i] = x.shape[i] + y.shape[i];

  ProductCheck out;
  out.rank_a = rank_fusion(x);
  out.rank_b = rank_fusion(y);
  out.rank_sum = rank_fusion(sum);
  out.compatible = out.rank_a > 0 && out.rank_b > 0;
  if (out.compatible && out.rank_sum == 0)
    throw Error(Module::Conformal, ErrorKind::Internal, "product of nonzero blocks vanished");
  return out;
}

}  // namespace parabolic
