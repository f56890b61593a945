#include "parabolic/selftest.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <sstream>

#include "parabolic/conformal.hpp"
#include "parabolic/error.hpp"
#include "parabolic/models.hpp"

namespace parabolic {

DivisorClass random_effective_class(std::mt19937_64& rng, int n, bool positive_t) {
  std::uniform_int_distribution<int> entry(0, 4), index(0, n - 1);
  while (true) {
    std::vector<long> b(n);
    for (auto& v : b) v = entry(rng);
    if (std::accumulate(b.begin(), b.end(), 0L) % 2 != 0) ++b[index(rng)];
    const long half = std::accumulate(b.begin(), b.end(), 0L) / 2;
    long t;
    if (positive_t) {
      if (half < 1) continue;
      t = std::uniform_int_distribution<long>(1, half)(rng);
    } else {
      t = std::uniform_int_distribution<long>(-3, 0)(rng);
    }
    DivisorClass d{RationalVector(b.begin(), b.end()), Rational(t)};
    if (is_effective(d)) return d;
  }
}

ParabolicWeight random_weight(std::mt19937_64& rng, int n, int max_den) {
  RationalVector a(n);
  for (auto& v : a) {
    const int q = std::uniform_int_distribution<int>(2, max_den)(rng);
    const int p = std::uniform_int_distribution<int>(1, q - 1)(rng);
    v = make_rational(p, q);
  }
  return ParabolicWeight(std::move(a));
}

ParabolicWeight random_small_general_weight(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> part(1, 20), num(20, 39);
  while (true) {
    std::vector<long> u(n);
    for (auto& v : u) v = part(rng);
    const long total = std::accumulate(u.begin(), u.end(), 0L);
    const Rational target = make_rational(num(rng), 20);  // in [1, 2)
    RationalVector a(n);
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      a[i] = Rational(u[i]) * target / Rational(total);
      a[i].canonicalize();
      if (a[i] >= 1) ok = false;
    }
    if (!ok) continue;
    ParabolicWeight w(std::move(a));
    if (classify_linearization(w, Exec::Serial).kind == LinearizationClass::General) return w;
  }
}

namespace {

class Suite {
 public:
  explicit Suite(std::string name) { row_.suite = std::move(name); }

  template <class Fn>
  void check(const std::string& label, Fn&& fn) {
    ++row_.cases;
    std::string why;
    try {
      if (!fn()) why = "check failed";
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (!why.empty()) {
      if (row_.failures == 0) row_.first_failure = label + ": " + why;
      ++row_.failures;
    }
  }

  SelftestRow row() const { return row_; }

 private:
  SelftestRow row_;
};

std::string describe(const BlockSpec& spec) {
  std::ostringstream out;
  out << "level " << spec.level << " shape (";
  for (std::size_t i = 0; i < spec.shape.size(); ++i) out << (i ? "," : "") << spec.shape[i];
  out << ")";
  return out.str();
}

// Every shape of length <= max_n with entries in [0, level], levels 0..max_level.
void for_each_shape(int max_n, int max_level, bool sorted_positive, const std::function<void(const BlockSpec&)>& fn) {
  for (int level = 0; level <= max_level; ++level)
    for (int n = 0; n <= max_n; ++n) {
      std::vector<int> shape(n, sorted_positive ? level : 0);
      const int low = sorted_positive ? 1 : 0;
      if (sorted_positive && level == 0 && n > 0) continue;
      std::fill(shape.begin(), shape.end(), low);
      while (true) {
        bool keep = true;
        if (sorted_positive)
          for (int i = 1; i < n; ++i) keep = keep && shape[i] <= shape[i - 1];
        if (keep) fn(BlockSpec{level, shape});
        int i = n - 1;
        while (i >= 0 && shape[i] == level) shape[i--] = low;
        if (i < 0) break;
        ++shape[i];
      }
    }
}

}  // namespace

std::vector<SelftestRow> run_selftest(Exec exec) {
  std::vector<SelftestRow> rows;
  std::mt19937_64 rng(20100531);

  {
    Suite s("rank fusion vs paths");
    for_each_shape(6, 4, false, [&](const BlockSpec& spec) {
      s.check(describe(spec), [&] {
        const auto paths = enumerate_paths(spec, {}, exec);
        return Integer(static_cast<long>(paths.size())) == rank_fusion(spec);
      });
    });
    rows.push_back(s.row());
  }
  {
    Suite s("rank sections vs fusion");
    for_each_shape(6, 4, true, [&](const BlockSpec& spec) {
      if (spec.weight_sum() > 10 || spec.weight_sum() % 2 != 0) return;
      s.check(describe(spec), [&] {
        return Integer(static_cast<long>(rank_sections_generic(spec).rank)) == rank_fusion(spec);
      });
    });
    rows.push_back(s.row());
  }
  {
    Suite s("path validator");
    for_each_shape(4, 3, false, [&](const BlockSpec& spec) {
      s.check(describe(spec), [&] {
        const auto paths = enumerate_paths(spec, {}, exec);
        for (const auto& ds : paths) {
          if (!is_valid(ds) || ds.shape() != spec.shape) return false;
          // Moving one box between the rows keeps the shape; the result is valid
          // exactly when it is another enumerated path.
          for (std::size_t i = 0; i < ds.size(); ++i)
            for (int delta : {-1, 1}) {
              DoubleSequence moved = ds;
              moved.top[i] += delta;
              moved.bottom[i] -= delta;
              const bool listed = std::find(paths.begin(), paths.end(), moved) != paths.end();
              if (is_valid(moved) != listed) return false;
              DoubleSequence bumped = ds;
              bumped.top[i] += delta;
              if (is_valid(bumped) && bumped.shape() == ds.shape()) return false;
            }
        }
        return true;
      });
    });
    rows.push_back(s.row());
  }
  {
    Suite s("surgery");
    for_each_shape(6, 4, true, [&](const BlockSpec& spec) {
      if (spec.shape.empty()) return;
      for (const auto& ds : enumerate_paths(spec, {}, exec)) {
        const int h = height(ds);
        if (h <= 1) continue;
        s.check(describe(spec), [&] {
          const SurgeryResult r = surgery(ds);
          std::vector<int> expect = spec.shape;
          for (int i : r.subset) --expect[i];
          return r.subset.size() >= 2 && r.subset.size() % 2 == 0 && r.output.level == spec.level - 1 &&
                 height(r.output) == h - 1 && r.output.shape() == expect && is_valid(r.output);
        });
      }
    });
    rows.push_back(s.row());
  }
  {
    Suite s("generators and certificates");
    for (int n = 5; n <= 6; ++n) {
      s.check("count n=" + std::to_string(n),
              [&] { return moduli_effective_generators(n).size() == (std::size_t{1} << (n - 1)); });
      s.check("certificates n=" + std::to_string(n),
              [&] { return certify_all(n, exec).size() == (std::size_t{1} << (n - 1)); });
    }
    rows.push_back(s.row());
  }
  {
    Suite s("git cone inequalities vs lp");
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 5 + trial % 2;
      RationalVector b(n);
      for (auto& v : b) v = make_rational(std::uniform_int_distribution<int>(-2, 12)(rng), 4);
      s.check("trial " + std::to_string(trial), [&] {
        RationalCone cone;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            RationalVector g(n);
            g[i] = g[j] = 1;
            cone.generators.push_back(g);
          }
        return cone_membership_lp(b, cone).status == git_cone_membership(b);
      });
    }
    rows.push_back(s.row());
  }
  {
    Suite s("decompose reconstruction");
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 5 + trial % 2;
      const DivisorClass d = random_effective_class(rng, n, trial % 4 < 2);
      s.check("trial " + std::to_string(trial), [&] {
        DivisorClass sum{RationalVector(n), Rational(0)};
        for (const auto& term : decompose(d)) {
          if (term.multiplicity <= 0 || std::popcount(term.subset) % 2 != 0) return false;
          for (int i = 0; i < n; ++i) sum.b[i] += Rational(term.multiplicity) * term.generator.b[i];
          sum.t += Rational(term.multiplicity) * term.generator.t;
        }
        return sum == d;
      });
    }
    rows.push_back(s.row());
  }
  {
    Suite s("wall walk");
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 5 + trial % 3;
      const ParabolicWeight w = random_small_general_weight(rng, n);
      s.check("trial " + std::to_string(trial), [&] {
        const WallWalk walk = wall_walk(w, exec);
        if (walk.events.empty()) return false;
        const auto& first = walk.events.front();
        if (first.c != 2 / w.sum() || first.kind != CrossingKind::BlowUp || first.wall.m != 1 ||
            std::popcount(first.wall.subset) != n)
          return false;
        for (std::size_t i = 0; i < walk.events.size(); ++i) {
          const auto& e = walk.events[i];
          if (e.dim_minus + e.dim_plus != n - 4 || e.dim_minus < 0 || e.dim_plus < 0) return false;
          if (i > 0 && e.c < walk.events[i - 1].c) return false;
        }
        return true;
      });
    }
    rows.push_back(s.row());
  }
  {
    Suite s("theta round trip");
    int found = 0;
    while (found < 20) {
      const int n = 5 + found % 2;
      const ParabolicWeight w = random_weight(rng, n, 6);
      const ThetaClass theta = theta_class(w);
      if (!is_effective(clear_denominators(theta.divisor).first)) continue;
      ++found;
      s.check("trial " + std::to_string(found), [&] { return describes(classify_model(theta.divisor, n), w); });
    }
    rows.push_back(s.row());
  }
  {
    Suite s("serial vs parallel kernels");
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 10 + trial % 3;
      RationalVector a(n);
      for (auto& v : a) v = make_rational(std::uniform_int_distribution<int>(1, 3)(rng), 4);
      const ParabolicWeight w(a);
      s.check("walls trial " + std::to_string(trial),
              [&] { return walls_containing(w, Exec::Serial) == walls_containing(w, Exec::Parallel); });
    }
    s.check("paths level 4 shape (2,2,3,1,1,1,2,2)", [&] {
      const BlockSpec spec{4, {2, 2, 3, 1, 1, 1, 2, 2}};
      return enumerate_paths(spec, {}, Exec::Serial) == enumerate_paths(spec, {}, Exec::Parallel);
    });
    rows.push_back(s.row());
  }
  return rows;
}

}  // namespace parabolic
