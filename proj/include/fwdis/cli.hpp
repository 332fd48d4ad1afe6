#ifndef FWDIS_CLI_HPP
#define FWDIS_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fwdis/instances.hpp"
#include "fwdis/io.hpp"
#include "fwdis/objectives.hpp"
#include "fwdis/oracle.hpp"
#include "fwdis/regions.hpp"
#include "fwdis/schedule.hpp"
#include "fwdis/solver.hpp"

namespace fwdis::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

/// Exit codes: 0 success / all checks pass, 1 runtime or check failure,
/// 2 usage or config error.
enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

inline constexpr std::size_t kDefaultCap = 1000000;

struct RunConfig {
  std::string command;
  std::string objective;
  std::string region = "box";
  std::optional<std::size_t> iters;
  std::optional<double> epsilon;
  std::size_t cap = kDefaultCap;
  std::optional<std::uint64_t> seed;
  StartMode start = StartMode::Origin;
  std::string out;
  double resolution = 0.05;
  bool skip_lyapunov = false;
  std::optional<std::size_t> estimate_smoothness;
  // compare over generated quadratics
  std::string seeds = "1..10";
  std::size_t dim = 4;
  std::string family = "box";
};

inline json to_json(const RunConfig& c) {
  json j{{"command", c.command}, {"objective", c.objective}, {"region", c.region}, {"cap", c.cap},
         {"start", to_string(c.start)}, {"out", c.out}, {"resolution", c.resolution},
         {"skip_lyapunov", c.skip_lyapunov}, {"seeds", c.seeds}, {"dim", c.dim}, {"family", c.family}};
  j["iters"] = c.iters ? json(*c.iters) : json(nullptr);
  j["epsilon"] = c.epsilon ? json(*c.epsilon) : json(nullptr);
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  j["estimate_smoothness"] = c.estimate_smoothness ? json(*c.estimate_smoothness) : json(nullptr);
  return j;
}

inline StartMode parse_start(const std::string& s) {
  if (s == "origin") return StartMode::Origin;
  if (s == "mininf") return StartMode::MinInfNorm;
  throw ConfigError("start must be origin or mininf, got '" + s + "'");
}

inline RunConfig run_config_from_json(const json& j) {
  try {
    RunConfig c;
    c.command = j.value("command", "");
    c.objective = j.value("objective", "");
    c.region = j.value("region", "box");
    if (j.contains("iters") && !j["iters"].is_null()) c.iters = j["iters"].get<std::size_t>();
    if (j.contains("epsilon") && !j["epsilon"].is_null()) c.epsilon = j["epsilon"].get<double>();
    c.cap = j.value("cap", kDefaultCap);
    if (j.contains("seed") && !j["seed"].is_null()) c.seed = j["seed"].get<std::uint64_t>();
    c.start = parse_start(j.value("start", "origin"));
    c.out = j.value("out", "");
    c.resolution = j.value("resolution", 0.05);
    c.skip_lyapunov = j.value("skip_lyapunov", false);
    if (j.contains("estimate_smoothness") && !j["estimate_smoothness"].is_null())
      c.estimate_smoothness = j["estimate_smoothness"].get<std::size_t>();
    c.seeds = j.value("seeds", "1..10");
    c.dim = j.value("dim", std::size_t{4});
    c.family = j.value("family", "box");
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
}

namespace detail {

struct Instance {
  std::string id;
  AnyObjective objective;
  Region region;
};

inline void require_seed(const RunConfig& c, const char* why) {
  if (!c.seed) throw ConfigError(std::string("--seed is required for ") + why);
}

inline Instance load_instance(const RunConfig& c, Validation validation) {
  if (c.objective.empty()) throw ConfigError("--objective is required");
  AnyObjective f = io::load_objective(c.objective, validation);
  if (c.estimate_smoothness) {
    require_seed(c, "--estimate-smoothness");
    const double L = certified_smoothness_estimate(f, *c.estimate_smoothness, *c.seed);
    f = WithSmoothness<AnyObjective>(f, L);
  }
  Region r = io::parse_region(c.region, f.dimension());
  return {fs::path(c.objective).stem().string() + "/" + r.kind_name(), std::move(f), std::move(r)};
}

/// T from --iters or from --epsilon/--cap; warns when the cap binds.
inline std::size_t resolve_iterations(const RunConfig& c, std::size_t n, double L, std::ostream& err) {
  if (c.iters.has_value() == c.epsilon.has_value())
    throw ConfigError("give exactly one of --iters or --epsilon");
  if (c.iters) {
    if (*c.iters == 0) throw ConfigError("--iters must be >= 1");
    return *c.iters;
  }
  if (!(*c.epsilon > 0.0)) throw ConfigError("--epsilon must be positive");
  if (c.cap == 0) throw ConfigError("--cap must be >= 1");
  const IterationChoice choice = iterations_for_epsilon(n, L, *c.epsilon, c.cap);
  if (!choice.reached)
    err << "warning: beta <= " << *c.epsilon << " needs more than " << c.cap
        << " iterations; running with T = " << c.cap << " (beta = " << choice.beta << ")\n";
  return choice.iterations;
}

inline std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& s) {
  try {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
      const auto v = std::stoull(s);
      return {v, v};
    }
    const auto a = std::stoull(s.substr(0, dots));
    const auto b = std::stoull(s.substr(dots + 2));
    if (b < a) throw ConfigError("seed range is empty");
    return {a, b};
  } catch (const std::logic_error&) {
    throw ConfigError("bad seed range '" + s + "', expected A..B");
  }
}

inline RegionFamily parse_family(const std::string& s) {
  if (s == "box") return RegionFamily::Box;
  if (s == "cardinality") return RegionFamily::Cardinality;
  if (s == "knapsack") return RegionFamily::Knapsack;
  if (s == "halfspaces3") return RegionFamily::Halfspaces3;
  throw ConfigError("unknown family '" + s + "' (box, cardinality, knapsack, halfspaces3, mixed)");
}

struct OracleChoice {
  std::optional<OracleResult> result;
  double gap = 0.0;  // L sqrt(n) r for grid search, 0 for corners
};

inline bool oracle_available(const Instance& inst) {
  const bool corners = inst.objective.target<MultilinearObjective>() &&
                       std::holds_alternative<BoxKind>(inst.region.kind());
  return corners || inst.objective.dimension() <= kMaxGridDimension;
}

inline OracleChoice run_oracle(const Instance& inst, double resolution) {
  OracleChoice o;
  if (const auto* ml = inst.objective.target<MultilinearObjective>();
      ml && std::holds_alternative<BoxKind>(inst.region.kind())) {
    o.result = corner_maximize(*ml, inst.region);
  } else if (inst.objective.dimension() <= kMaxGridDimension) {
    o.result = grid_maximize(inst.objective, inst.region, resolution);
    o.gap = grid_gap(inst.objective.smoothness(), inst.objective.dimension(), resolution);
  }
  return o;
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace detail

inline int cmd_solve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  detail::Instance inst = detail::load_instance(c, Validation::Strict);
  SolveConfig sc;
  sc.iterations = detail::resolve_iterations(c, inst.objective.dimension(), inst.objective.smoothness(), err);
  sc.start = c.start;
  sc.feasibility_stride = 0;
  const SolveTrace trace = fw_dis(inst.objective, inst.region, sc);

  const json echo = to_json(c);
  out << std::setprecision(12) << "instance " << inst.id << "\n"
      << "iterations " << trace.iterations << "\n"
      << "smoothness " << trace.smoothness << "\n"
      << "beta " << trace.beta << "\n"
      << "best_f " << trace.best_f << "\n"
      << "final_f " << trace.final_f << "\n";
  if (!c.out.empty()) {
    const fs::path dir(c.out);
    io::write_file_atomic(dir / "trace.csv", io::trace_csv(trace));
    io::write_file_atomic(dir / "summary.json", io::summary_json(trace, echo).dump(2) + "\n");
    io::write_file_atomic(dir / "config.json", echo.dump(2) + "\n");
    out << "wrote " << (dir / "trace.csv").string() << "\n";
  }
  return kOk;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  detail::require_seed(c, "verify (sampled property checks)");
  detail::Instance inst = detail::load_instance(c, Validation::Skip);
  const std::size_t n = inst.objective.dimension();
  if (!detail::oracle_available(inst))
    throw ConfigError("verify needs n <= " + std::to_string(kMaxGridDimension) +
                      " (or a multilinear objective on the box with n <= " + std::to_string(kMaxTableSize) +
                      "); got n = " + std::to_string(n));
  const std::uint64_t seed = *c.seed;
  std::vector<CheckReport> reports;
  auto add = [&](CheckReport r) {
    r.instance = inst.id;
    reports.push_back(std::move(r));
  };

  add(check_finite_differences(inst.objective, 100, seed));
  add(check_dr_inequality(inst.objective, 1000, seed + 1));
  add(check_gradient_antitone(inst.objective, 1000, seed + 2));

  const Inequalities ineq = inst.region.inequalities();
  if (n <= kMaxVertexDimension && ineq.A.size() <= kMaxVertexRows) {
    const std::vector<Point> vertices = enumerate_vertices(inst.region);
    std::mt19937_64 rng(seed + 3);
    std::normal_distribution<double> z(0.0, 1.0);
    CheckReport worst{"lmo-optimality", "", std::numeric_limits<double>::infinity(), true, ""};
    Point g(n);
    for (int s = 0; s < 200; ++s) {
      for (auto& v : g) v = z(rng);
      const CheckReport r = check_lmo(inst.region, g, vertices);
      worst.margin = std::min(worst.margin, r.margin);
      worst.pass = worst.pass && r.pass;
    }
    add(worst);
  }

  const detail::OracleChoice oracle = detail::run_oracle(inst, c.resolution);
  add(check_join_lower_bound(inst.objective, oracle.result->x, 1000, seed + 4));

  SolveConfig sc;
  sc.iterations = detail::resolve_iterations(c, n, inst.objective.smoothness(), err);
  sc.start = c.start;
  sc.store_iterates = true;
  const Schedule schedule = build_schedule(sc.iterations);
  const SolveTrace trace = fw_dis(inst.objective, inst.region, sc, schedule);
  const double f_star = oracle.result->f;

  add(check_lemma1(trace, schedule));
  add(check_lemma2(inst.objective, trace, *oracle.result, schedule));
  if (c.start == StartMode::Origin) {
    if (!c.skip_lyapunov) add(check_lyapunov_increment(trace, f_star, schedule));
    add(check_certificate(trace, f_star - oracle.gap));
  } else {
    add(check_generalized_start(trace, f_star - oracle.gap));
  }

  bool all = true;
  std::ostringstream report;
  report << std::setprecision(12) << "# oracle=" << to_string(oracle.result->method) << " f_star=" << f_star
         << " gap=" << oracle.gap << " T=" << sc.iterations << " beta=" << trace.beta << "\n";
  for (const auto& r : reports) {
    report << format_report(r) << "\n";
    all = all && r.pass;
  }
  report << "# overall=" << (all ? "PASS" : "FAIL") << "\n";
  out << report.str();
  if (!c.out.empty()) {
    io::write_file_atomic(fs::path(c.out) / "report.txt", report.str());
    io::write_file_atomic(fs::path(c.out) / "config.json", to_json(c).dump(2) + "\n");
  }
  return all ? kOk : kFailure;
}

struct CompareRow {
  std::string id;
  std::size_t n = 0;
  double fw_final = 0.0, fw_best = 0.0, classic_final = 0.0, beta = 0.0;
  std::optional<double> f_star;
};

inline int cmd_compare(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<detail::Instance> instances;
  if (!c.objective.empty()) {
    instances.push_back(detail::load_instance(c, Validation::Strict));
  } else {
    detail::require_seed(c, "compare over generated instances");
    if (c.dim == 0) throw ConfigError("--dim must be >= 1");
    const auto [lo, hi] = detail::parse_seed_range(c.seeds);
    const bool mixed = c.family == "mixed";
    const RegionFamily fixed = mixed ? RegionFamily::Box : detail::parse_family(c.family);
    for (std::uint64_t s = lo; s <= hi; ++s) {
      std::mt19937_64 rng(*c.seed * 1000003ULL + s);
      const QuadraticSpec spec = random_dr_quadratic(c.dim, rng);
      const RegionFamily fam = mixed ? static_cast<RegionFamily>((s - lo) % 4) : fixed;
      Region r = random_region(fam, c.dim, rng);
      instances.push_back({"quadratic-" + std::to_string(s) + "/" + to_string(fam), quadratic_objective(spec),
                           std::move(r)});
    }
  }
  const std::size_t n0 = instances.front().objective.dimension();
  const std::size_t T = detail::resolve_iterations(c, n0, instances.front().objective.smoothness(), err);

  // Instances are independent; results are collected in input order.
  std::vector<std::future<CompareRow>> jobs;
  for (const auto& inst : instances) {
    jobs.push_back(std::async(std::launch::async, [&inst, &c, T] {
      SolveConfig sc;
      sc.iterations = T;
      sc.start = c.start;
      sc.feasibility_stride = 0;
      const SolveTrace fw = fw_dis(inst.objective, inst.region, sc);
      const SolveTrace classic = classic_fw_baseline(inst.objective, inst.region, sc);
      CompareRow row{inst.id, inst.objective.dimension(), fw.final_f, fw.best_f, classic.final_f, fw.beta, {}};
      if (detail::oracle_available(inst)) row.f_star = detail::run_oracle(inst, c.resolution).result->f;
      return row;
    }));
  }

  std::ostringstream table;
  table << "instance,n,fw_dis_final,fw_dis_best,classic_final,f_star,fw_dis_ratio,classic_ratio,beta\n";
  for (auto& job : jobs) {
    const CompareRow row = job.get();
    auto ratio = [&](double v) {
      return row.f_star && *row.f_star > 0.0 ? detail::fmt(v / *row.f_star) : std::string("n/a");
    };
    table << row.id << ',' << row.n << ',' << detail::fmt(row.fw_final) << ',' << detail::fmt(row.fw_best) << ','
          << detail::fmt(row.classic_final) << ',' << (row.f_star ? detail::fmt(*row.f_star) : "n/a") << ','
          << ratio(row.fw_final) << ',' << ratio(row.classic_final) << ',' << detail::fmt(row.beta) << '\n';
  }
  out << table.str();
  if (!c.out.empty()) {
    io::write_file_atomic(fs::path(c.out) / "compare.csv", table.str());
    io::write_file_atomic(fs::path(c.out) / "config.json", to_json(c).dump(2) + "\n");
  }
  return kOk;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frank-Wolfe maximization of non-monotone DR-submodular functions over convex regions"};
  app.require_subcommand(1);

  RunConfig c;
  std::string start = "origin";
  std::string config_path;
  std::size_t iters = 0, est = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run config (as written to <out>/config.json)");
    sub->add_option("--objective", c.objective, "set-function table file or objective JSON");
    sub->add_option("--region", c.region, "box | cardinality:K | region JSON file");
    sub->add_option("--iters", iters, "iteration count T");
    sub->add_option("--epsilon", eps, "target additive error; picks T");
    sub->add_option("--cap", c.cap, "largest T considered with --epsilon");
    sub->add_option("--seed", seed, "seed for sampled checks and generated instances");
    sub->add_option("--start", start, "origin | mininf");
    sub->add_option("--out", c.out, "output directory");
    sub->add_option("--resolution", c.resolution, "grid step for the brute-force oracle");
    sub->add_option("--estimate-smoothness", est, "estimate L from this many sampled pairs (x1.5)");
  };
  CLI::App* solve = app.add_subcommand("solve", "run the solver and write a trace");
  CLI::App* verify = app.add_subcommand("verify", "run solver checks against brute-force oracles");
  CLI::App* compare = app.add_subcommand("compare", "compare against classic Frank-Wolfe");
  for (auto* sub : {solve, verify, compare}) add_common(sub);
  verify->add_flag("--skip-lyapunov", c.skip_lyapunov, "skip the Lyapunov increment check");
  compare->add_option("--seeds", c.seeds, "seed range A..B for generated quadratics");
  compare->add_option("--dim", c.dim, "dimension of generated quadratics");
  compare->add_option("--family", c.family, "box | cardinality | knapsack | halfspaces3 | mixed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (!config_path.empty()) {
      RunConfig loaded = run_config_from_json(io::read_json_file(config_path));
      // Flags given on the command line override the file.
      if (sub->count("--objective")) loaded.objective = c.objective;
      if (sub->count("--region")) loaded.region = c.region;
      if (sub->count("--out")) loaded.out = c.out;
      if (sub->count("--iters")) {
        loaded.iters = iters;
        loaded.epsilon.reset();
      }
      if (sub->count("--seed")) loaded.seed = seed;
      c = loaded;
    } else {
      if (sub->count("--iters")) c.iters = iters;
      if (sub->count("--epsilon")) c.epsilon = eps;
      if (sub->count("--seed")) c.seed = seed;
      if (sub->count("--estimate-smoothness")) c.estimate_smoothness = est;
      c.start = parse_start(start);
    }
    c.command = sub->get_name();
    if (sub == solve) return cmd_solve(c, out, err);
    if (sub == verify) return cmd_verify(c, out, err);
    return cmd_compare(c, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace fwdis::cli

#endif  // FWDIS_CLI_HPP
