// parabolic: command-line front end. Every command prints one JSON document.

#include <omp.h>

#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "json_io.hpp"
#include "parabolic/cones.hpp"
#include "parabolic/conformal.hpp"
#include "parabolic/error.hpp"
#include "parabolic/models.hpp"
#include "parabolic/selftest.hpp"
#include "parabolic/weights.hpp"

using namespace parabolic;
using parabolic::cli::Json;
using parabolic::cli::name;

namespace {

struct Settings {
  long max_weight_sum = 40;
  int max_n = 20;
  bool pretty = false;
  int indent() const { return pretty ? 2 : -1; }
  Limits limits() const {
    Limits l;
    l.max_weight_sum = max_weight_sum;
    return l;
  }
};

Json envelope(const std::string& command, Json input) {
  Json out;
  out["schema"] = 1;
  out["command"] = command;
  out["input"] = std::move(input);
  return out;
}

ParabolicWeight weight_from(const std::string& text) { return ParabolicWeight(parse_rational_list(text)); }

DivisorClass class_from(const std::string& b, const std::string& t) {
  return DivisorClass{parse_rational_list(b), parse_rational(t)};
}

int check_n(const std::string& what, int n, const Settings& s) {
  if (n > s.max_n)
    throw Error(Module::Cli, ErrorKind::InstanceTooLarge, what + " exceeds --max-n " + std::to_string(s.max_n));
  return n;
}

Json block_input(int level, const std::vector<int>& shape) { return Json{{"level", level}, {"shape", shape}}; }

// ---------------------------------------------------------------------------

struct RankArgs {
  int level = 0;
  std::string shape, method = "fusion", point;
  std::optional<int> times_level;
  std::string times_shape;
};

Json run_rank(const RankArgs& a, const Settings& s) {
  const BlockSpec spec{a.level, cli::parse_int_list(a.shape)};
  Json out = envelope("rank", block_input(spec.level, spec.shape));
  out["method"] = a.method;
  if (a.method == "fusion") {
    out["rank"] = cli::to_json(rank_fusion(spec));
  } else if (a.method == "paths") {
    out["rank"] = enumerate_paths(spec, s.limits()).size();
  } else {
    SectionRank r;
    if (a.point.empty()) {
      r = rank_sections_generic(spec, s.limits());
      out["points"] = "generic";
    } else {
      const RationalVector p = parse_rational_list(a.point);
      r = rank_sections(spec, p, s.limits());
      out["points"] = cli::to_json(p);
    }
    out["rank"] = r.rank;
    out["odd_total_weight"] = r.odd_total_weight;
  }
  if (a.times_level) {
    const BlockSpec other{*a.times_level, cli::parse_int_list(a.times_shape)};
    const ProductCheck p = product_compatible(spec, other);
    out["product"] = Json{{"with", block_input(other.level, other.shape)},
                          {"compatible", p.compatible},
                          {"rank_a", cli::to_json(p.rank_a)},
                          {"rank_b", cli::to_json(p.rank_b)},
                          {"rank_sum", cli::to_json(p.rank_sum)}};
  }
  return out;
}

struct PathsArgs {
  int level = 0;
  std::string shape, top, bottom;
  bool first = false, serial = false;
};

Json run_paths(const PathsArgs& a, const Settings& s) {
  if (!a.top.empty() || !a.bottom.empty()) {
    const DoubleSequence ds{cli::parse_int_list(a.top), cli::parse_int_list(a.bottom), a.level};
    Json out = envelope("paths", Json{{"level", a.level}, {"top", ds.top}, {"bottom", ds.bottom}});
    const auto why = check_double_sequence(ds);
    out["valid"] = !why;
    if (why)
      out["violation"] = *why;
    else
      out["height"] = height(ds), out["shape"] = ds.shape();
    return out;
  }
  const BlockSpec spec{a.level, cli::parse_int_list(a.shape)};
  Json out = envelope("paths", block_input(spec.level, spec.shape));
  Json list = Json::array();
  if (a.first) {
    out["mode"] = "first";
    if (auto ds = first_path(spec)) list.push_back(cli::to_json(*ds));
  } else {
    for (const auto& ds : enumerate_paths(spec, s.limits(), a.serial ? Exec::Serial : Exec::Parallel))
      list.push_back(cli::to_json(ds));
    out["count"] = list.size();
  }
  out["paths"] = std::move(list);
  return out;
}

struct SurgeryArgs {
  int level = 0;
  std::string top, bottom;
};

Json run_surgery(const SurgeryArgs& a) {
  const DoubleSequence ds{cli::parse_int_list(a.top), cli::parse_int_list(a.bottom), a.level};
  Json out = envelope("surgery", Json{{"level", a.level}, {"top", ds.top}, {"bottom", ds.bottom}});
  const SurgeryResult r = surgery(ds);
  out["T"] = cli::indices_to_json(r.subset);
  out["output"] = cli::to_json(r.output);
  out["output"]["shape"] = r.output.shape();
  return out;
}

struct ClassArgs {
  std::string b, t = "0";
};

Json run_decompose(const ClassArgs& a) {
  const DivisorClass d = class_from(a.b, a.t);
  Json out = envelope("decompose", cli::to_json(d));
  Json terms = Json::array();
  for (const auto& term : decompose(d))
    terms.push_back(Json{{"I", cli::subset_to_json(term.subset)},
                         {"exceptional", term.subset == 0},
                         {"class", cli::to_json(term.generator)},
                         {"multiplicity", cli::to_json(term.multiplicity)}});
  out["terms"] = std::move(terms);
  return out;
}

struct GeneratorArgs {
  std::optional<int> n;
  std::string weight;
  bool with_facets = false;
};

Json run_generators(const GeneratorArgs& a, const Settings& s) {
  if (a.n.has_value() == !a.weight.empty())
    throw Error(Module::Cli, ErrorKind::InvalidArgument, "give exactly one of --n or --weight");
  Json out;
  std::vector<DivisorClass> gens;
  if (a.n) {
    out = envelope("generators", Json{{"n", *a.n}});
    out["cone"] = "moduli";
    gens = moduli_effective_generators(check_n("n", *a.n, s), s.max_n);
  } else {
    const ParabolicWeight w = weight_from(a.weight);
    out = envelope("generators", Json{{"weight", cli::to_json(w.values())}});
    out["cone"] = "git";
    gens = git_effective_generators(w);
  }
  Json list = Json::array();
  for (const auto& g : gens) list.push_back(cli::to_json(g));
  out["count"] = gens.size();
  out["generators"] = std::move(list);
  if (a.with_facets) {
    RationalCone cone;
    for (const auto& g : gens) cone.generators.push_back(a.n ? g.coordinates() : g.b);
    Json normals = Json::array();
    for (const auto& f : facets(cone)) normals.push_back(cli::integers_to_json(f));
    out["facet_count"] = normals.size();
    out["facets"] = std::move(normals);
  }
  return out;
}

struct CertifyArgs {
  int n = 5;
  std::string subset;
  bool all = false;
};

Json certificate_json(const ExtremalityCertificate& c) {
  Json fs = Json::array();
  for (const auto& f : c.functionals) fs.push_back(cli::to_json(f));
  return Json{{"I", cli::subset_to_json(c.subset)},
              {"class", cli::to_json(c.generator)},
              {"functionals", std::move(fs)},
              {"corrected_pair_functional", c.corrected_pair_functional},
              {"separator", cli::to_json(c.separator)}};
}

Json run_certify(const CertifyArgs& a, const Settings& s) {
  check_n("n", a.n, s);
  Json out = envelope("certify", Json{{"n", a.n}, {"I", a.subset}});
  if (a.all || a.subset.empty()) {
    const auto certs = certify_all(a.n);
    out["input"].erase("I");
    out["certified"] = certs.size();
    Json corrected = Json::array();
    for (const auto& c : certs)
      if (c.corrected_pair_functional) corrected.push_back(cli::subset_to_json(c.subset));
    out["corrected_pair_functionals"] = std::move(corrected);
    return out;
  }
  SubsetMask mask = 0;
  for (int i : cli::parse_indices(a.subset, static_cast<std::size_t>(a.n))) mask |= SubsetMask{1} << i;
  out["certificate"] = certificate_json(extremality_certificate(DivisorClass::generator(a.n, mask), a.n));
  return out;
}

struct WeightArgs {
  std::string weight, partition, other;
};

Json run_stability(const WeightArgs& a) {
  const ParabolicWeight w = weight_from(a.weight);
  const PointConfig config = cli::parse_partition(a.partition, w.size());
  Json blocks = Json::array();
  for (const auto& b : config.blocks) blocks.push_back(cli::indices_to_json(b));
  Json out = envelope("stability", Json{{"weight", cli::to_json(w.values())}, {"partition", std::move(blocks)}});
  out["stability"] = name(stability(config, w));
  return out;
}

Json run_classify_weight(const WeightArgs& a) {
  const ParabolicWeight w = weight_from(a.weight);
  Json out = envelope("classify-weight", Json{{"weight", cli::to_json(w.values())}});
  const LinearizationInfo info = classify_linearization(w);
  out["class"] = name(info.kind);
  out["maximal_stable_locus"] = info.maximal_stable_locus;
  if (info.kind == LinearizationClass::General && w.size() >= 5) {
    const PicardInfo p = picard_rank_git(w);
    Json pairs = Json::array();
    for (auto [i, j] : p.unstable_pairs) pairs.push_back(Json::array({i + 1, j + 1}));
    out["picard_rank"] = p.rank;
    out["unstable_pairs"] = std::move(pairs);
  }
  return out;
}

Json run_walls(const WeightArgs& a, const Settings& s) {
  const ParabolicWeight w = weight_from(a.weight);
  Json input{{"weight", cli::to_json(w.values())}};
  if (!a.other.empty()) input["other"] = cli::to_json(parse_rational_list(a.other));
  Json out = envelope("walls", std::move(input));
  Json list = Json::array();
  for (const auto& wall : walls_containing(w, Exec::Parallel, s.max_n)) list.push_back(cli::to_json(wall));
  out["count"] = list.size();
  out["walls"] = std::move(list);
  if (!a.other.empty()) out["same_chamber"] = same_chamber(w, weight_from(a.other), Exec::Parallel, s.max_n);
  return out;
}

Json run_walk(const WeightArgs& a, const Settings& s) {
  const ParabolicWeight w = weight_from(a.weight);
  Json out = envelope("walk", Json{{"weight", cli::to_json(w.values())}});
  const WallWalk walk = wall_walk(w, Exec::Parallel, s.max_n);
  Json events = Json::array();
  for (const auto& e : walk.events) events.push_back(cli::to_json(e));
  out["c_max"] = cli::to_json(walk.c_max);
  out["events"] = std::move(events);
  out["empty_beyond"] = walk.empty_beyond ? Json(cli::to_json(*walk.empty_beyond)) : Json(nullptr);
  return out;
}

Json run_theta(const WeightArgs& a) {
  const ParabolicWeight w = weight_from(a.weight);
  Json out = envelope("theta", Json{{"weight", cli::to_json(w.values())}});
  const ThetaClass theta = theta_class(w);
  out["k"] = cli::to_json(theta.k);
  out["class"] = cli::to_json(theta.divisor);
  out["exponent"] = cli::to_json(theta.exponent);
  out["system_rank"] = theta.system_rank ? cli::to_json(*theta.system_rank) : Json(nullptr);
  return out;
}

Json run_classify_model(const ClassArgs& a) {
  const DivisorClass d = class_from(a.b, a.t);
  Json out = envelope("classify-model", cli::to_json(d));
  const ModelDescription m = classify_model(d, static_cast<int>(d.size()));
  out["kind"] = name(m.kind);
  out["points"] = cli::indices_to_json(m.points);
  out["weight"] = m.weight ? cli::to_json(m.weight->values()) : Json(nullptr);
  if (m.kind == ModelKind::GitQuotient) out["linearization"] = cli::integers_to_json(m.linearization);
  out["dropped_points"] = cli::indices_to_json(m.dropped_points);
  out["degree_shift"] = m.degree_shift;
  out["scale"] = cli::to_json(m.scale);
  out["cone_status"] = name(m.cone_status);
  out["steps"] = m.steps;
  return out;
}

Json run_git_cone(const ClassArgs& a) {
  const RationalVector b = parse_rational_list(a.b);
  Json out = envelope("git-cone", Json{{"b", cli::to_json(b)}});
  const Membership by_inequalities = git_cone_membership(b);
  RationalCone cone;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      RationalVector g(b.size());
      g[i] = g[j] = 1;
      cone.generators.push_back(std::move(g));
    }
  const MembershipResult lp = cone_membership_lp(b, cone);
  if (lp.status != by_inequalities)
    throw Error(Module::Cones, ErrorKind::Internal, "inequality and LP membership disagree");
  out["membership"] = name(by_inequalities);
  if (lp.status == Membership::Outside)
    out["separator"] = cli::to_json(lp.separator);
  else
    out["combination"] = cli::to_json(lp.combination);
  return out;
}

struct SelftestArgs {
  bool serial = false, table = false;
};

int run_selftest_command(const SelftestArgs& a, const Settings& s) {
  const auto rows = run_selftest(a.serial ? Exec::Serial : Exec::Parallel);
  bool passed = true;
  for (const auto& r : rows) passed = passed && r.failures == 0;
  if (a.table) {
    std::cout << std::left << std::setw(32) << "suite" << std::right << std::setw(8) << "cases" << std::setw(10)
              << "failures" << "\n";
    for (const auto& r : rows)
      std::cout << std::left << std::setw(32) << r.suite << std::right << std::setw(8) << r.cases << std::setw(10)
                << r.failures << "\n";
    std::cout << (passed ? "all suites passed" : "FAILURES") << "\n";
  } else {
    Json out = envelope("selftest", Json{{"exec", a.serial ? "serial" : "parallel"}});
    Json list = Json::array();
    for (const auto& r : rows) {
      Json row{{"suite", r.suite}, {"cases", r.cases}, {"failures", r.failures}};
      if (r.failures) row["first_failure"] = r.first_failure;
      list.push_back(std::move(row));
    }
    out["suites"] = std::move(list);
    out["passed"] = passed;
    std::cout << out.dump(s.indent()) << "\n";
  }
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("PARABOLIC_THREADS")) {
    const int t = std::atoi(threads);
    if (t > 0) omp_set_num_threads(t);
  }

  CLI::App app{"Exact computations for rank-2 parabolic bundles on the projective line", "parabolic"};
  app.require_subcommand(1);
  Settings settings;
  app.add_option("--max-weight-sum", settings.max_weight_sum, "Bound on the shape sum for enumeration")
      ->capture_default_str();
  app.add_option("--max-n", settings.max_n, "Bound on n for subset scans")->capture_default_str();
  app.add_flag("--pretty", settings.pretty, "Indent the JSON output");

  std::function<Json()> job;
  std::function<int()> raw_job;

  RankArgs rank;
  auto* cmd = app.add_subcommand("rank", "Rank of a conformal block");
  cmd->add_option("--level", rank.level)->required();
  cmd->add_option("--shape", rank.shape, "Comma-separated shape")->required();
  cmd->add_option("--method", rank.method)->check(CLI::IsMember({"fusion", "paths", "sections"}))->capture_default_str();
  cmd->add_option("--point", rank.point, "Evaluation point for --method sections");
  cmd->add_option("--times-level", rank.times_level, "Second factor of a product check");
  cmd->add_option("--times-shape", rank.times_shape);
  cmd->callback([&] { job = [&] { return run_rank(rank, settings); }; });

  PathsArgs paths;
  cmd = app.add_subcommand("paths", "Enumerate or validate double sequences");
  cmd->add_option("--level", paths.level)->required();
  cmd->add_option("--shape", paths.shape);
  cmd->add_option("--top", paths.top, "Validate this top row instead of enumerating");
  cmd->add_option("--bottom", paths.bottom);
  cmd->add_flag("--first", paths.first, "Only the lexicographically least sequence");
  cmd->add_flag("--serial", paths.serial, "Use the serial enumerator");
  cmd->callback([&] { job = [&] { return run_paths(paths, settings); }; });

  SurgeryArgs surg;
  cmd = app.add_subcommand("surgery", "Lower the height of a double sequence by one");
  cmd->add_option("--level", surg.level)->required();
  cmd->add_option("--top", surg.top)->required();
  cmd->add_option("--bottom", surg.bottom)->required();
  cmd->callback([&] { job = [&] { return run_surgery(surg); }; });

  ClassArgs dec;
  cmd = app.add_subcommand("decompose", "Write an effective class as a sum of extremal generators");
  cmd->add_option("--b", dec.b, "Comma-separated coefficients")->required();
  cmd->add_option("--t", dec.t, "Coefficient of -E")->capture_default_str();
  cmd->callback([&] { job = [&] { return run_decompose(dec); }; });

  GeneratorArgs gen;
  cmd = app.add_subcommand("generators", "Effective cone generators");
  cmd->add_option("--n", gen.n, "Moduli cone on n points");
  cmd->add_option("--weight", gen.weight, "GIT cone for this linearization");
  cmd->add_flag("--facets", gen.with_facets, "Also enumerate facets");
  cmd->callback([&] { job = [&] { return run_generators(gen, settings); }; });

  CertifyArgs cert;
  cmd = app.add_subcommand("certify", "Extremality certificates");
  cmd->add_option("--n", cert.n)->required();
  cmd->add_option("--subset", cert.subset, "1-based even subset; empty for E");
  cmd->add_flag("--all", cert.all, "Certify every generator");
  cmd->callback([&] { job = [&] { return run_certify(cert, settings); }; });

  WeightArgs stab;
  cmd = app.add_subcommand("stability", "Stability of a coincidence pattern");
  cmd->add_option("--weight", stab.weight)->required();
  cmd->add_option("--partition", stab.partition, "Blocks of coinciding points, e.g. 1,2|3|4|5")->required();
  cmd->callback([&] { job = [&] { return run_stability(stab); }; });

  WeightArgs cw;
  cmd = app.add_subcommand("classify-weight", "Effective / general / maximal stable locus");
  cmd->add_option("--weight", cw.weight)->required();
  cmd->callback([&] { job = [&] { return run_classify_weight(cw); }; });

  WeightArgs walls;
  cmd = app.add_subcommand("walls", "Walls through a weight");
  cmd->add_option("--weight", walls.weight)->required();
  cmd->add_option("--other", walls.other, "Also test whether this weight is in the same chamber");
  cmd->callback([&] { job = [&] { return run_walls(walls, settings); }; });

  WeightArgs walk;
  cmd = app.add_subcommand("walk", "Wall crossings along the ray of a weight");
  cmd->add_option("--weight", walk.weight)->required();
  cmd->callback([&] { job = [&] { return run_walk(walk, settings); }; });

  WeightArgs theta;
  cmd = app.add_subcommand("theta", "Theta divisor class of a weight");
  cmd->add_option("--weight", theta.weight)->required();
  cmd->callback([&] { job = [&] { return run_theta(theta); }; });

  ClassArgs model;
  cmd = app.add_subcommand("classify-model", "Birational model of a divisor class");
  cmd->add_option("--b", model.b)->required();
  cmd->add_option("--t", model.t)->capture_default_str();
  cmd->callback([&] { job = [&] { return run_classify_model(model); }; });

  ClassArgs git;
  cmd = app.add_subcommand("git-cone", "Membership in the cone over the hypersimplex");
  cmd->add_option("--b", git.b)->required();
  cmd->callback([&] { job = [&] { return run_git_cone(git); }; });

  SelftestArgs self;
  cmd = app.add_subcommand("selftest", "Run the built-in invariant suites");
  cmd->add_flag("--serial", self.serial, "Use serial kernels");
  cmd->add_flag("--table", self.table, "Plain-text table instead of JSON");
  cmd->callback([&] { raw_job = [&] { return run_selftest_command(self, settings); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (raw_job) return raw_job();
    std::cout << job().dump(settings.indent()) << "\n";
    return 0;
  } catch (const Error& e) {
    Json err{{"schema", 1},
             {"command", command},
             {"error", {{"module", to_string(e.module())}, {"kind", to_string(e.kind())}, {"message", e.what()}}}};
    std::cout << err.dump(settings.indent()) << "\n";
    std::cerr << "parabolic " << command << ": " << e.what() << "\n";
    return e.module() == Module::Cli ? 2 : 1;
  }
}
