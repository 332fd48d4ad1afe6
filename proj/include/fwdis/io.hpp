#ifndef FWDIS_IO_HPP
#define FWDIS_IO_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fwdis/objectives.hpp"
#include "fwdis/regions.hpp"
#include "fwdis/solver.hpp"

namespace fwdis {

/// Malformed input file or config; the CLI maps this to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io {

using json = nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Set-function tables: first line n, then 2^n lines "bitmask value".

inline SetFunctionTable read_set_function_table(std::istream& in) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      const auto pos = out.find_first_not_of(" \t\r");
      if (pos != std::string::npos && out[pos] != '#') return true;
    }
    return false;
  };
  if (!next_line(line)) throw ConfigError("set function table: missing size line");
  std::size_t n = 0;
  {
    std::istringstream ls(line);
    if (!(ls >> n) || n == 0 || n > kMaxTableSize)
      throw ConfigError("set function table: first line must be n in 1.." + std::to_string(kMaxTableSize));
  }
  const std::size_t count = std::size_t{1} << n;
  SetFunctionTable t{n, std::vector<double>(count, 0.0)};
  std::vector<bool> seen(count, false);
  for (std::size_t k = 0; k < count; ++k) {
    if (!next_line(line))
      throw ConfigError("set function table: expected " + std::to_string(count) + " entries, got " +
                        std::to_string(k));
    std::istringstream ls(line);
    std::uint64_t mask = 0;
    double v = 0.0;
    if (!(ls >> mask >> v)) throw ConfigError("set function table: bad entry '" + line + "'");
    if (mask >= count) throw ConfigError("set function table: bitmask " + std::to_string(mask) + " out of range");
    if (seen[mask]) throw ConfigError("set function table: duplicate bitmask " + std::to_string(mask));
    seen[mask] = true;
    t.values[mask] = v;
  }
  if (next_line(line)) throw ConfigError("set function table: trailing data after 2^n entries");
  return t;
}

inline void write_set_function_table(std::ostream& out, const SetFunctionTable& t) {
  out << t.n << '\n' << std::setprecision(17);
  for (std::size_t m = 0; m < t.values.size(); ++m) out << m << ' ' << t.values[m] << '\n';
}

// ---------------------------------------------------------------------------
// Whitespace-separated matrices, one row per line.

inline Matrix read_matrix_text(std::istream& in) {
  Matrix M;
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    Point row;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ConfigError("matrix text: bad number '" + tok + "'");
      }
    }
    if (!M.empty() && row.size() != M.front().size()) throw ConfigError("matrix text: ragged rows");
    M.push_back(std::move(row));
  }
  return M;
}

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json read_json_file(const fs::path& p) {
  try {
    return json::parse(read_file(p));
  } catch (const json::exception& e) {
    throw ConfigError(p.string() + ": " + e.what());
  }
}

/// Writes through a temporary sibling and renames it into place.
inline void write_file_atomic(const fs::path& p, const std::string& contents) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << contents;
    if (!out) throw ConfigError("write failed for " + tmp.string());
  }
  fs::rename(tmp, p);
}

namespace detail {
inline Matrix json_matrix(const json& j, const char* what) {
  try {
    return j.get<Matrix>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(what) + " must be an array of numeric rows");
  }
}
inline Point json_vector(const json& j, const char* what) {
  try {
    return j.get<Point>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(what) + " must be a numeric array");
  }
}
inline fs::path resolve(const fs::path& base, const std::string& rel) {
  fs::path p(rel);
  return p.is_absolute() ? p : base / p;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Objectives.
//
// A path ending in .json holds {"kind": "quadratic", "H": [[...]] | "H_file":
// "...", "h": [...], "L": optional} or {"kind": "multilinear", "values":
// [...] | "table_file": "..."}. Any other path is a set-function table.

inline QuadraticSpec quadratic_spec_from_json(const json& j, const fs::path& base = {}) {
  QuadraticSpec spec;
  if (j.contains("H"))
    spec.H = detail::json_matrix(j.at("H"), "H");
  else if (j.contains("H_file")) {
    std::ifstream in(detail::resolve(base, j.at("H_file").get<std::string>()));
    if (!in) throw ConfigError("cannot open H_file");
    spec.H = read_matrix_text(in);
  } else {
    throw ConfigError("quadratic config needs H or H_file");
  }
  if (!j.contains("h")) throw ConfigError("quadratic config needs h");
  spec.h = detail::json_vector(j.at("h"), "h");
  if (j.contains("L") && !j.at("L").is_null()) spec.declared_L = j.at("L").get<double>();
  return spec;
}

inline json to_json(const QuadraticSpec& spec) {
  json j{{"kind", "quadratic"}, {"H", spec.H}, {"h", spec.h}};
  if (spec.declared_L) j["L"] = *spec.declared_L;
  return j;
}

inline SetFunctionTable table_from_json(const json& j, const fs::path& base = {}) {
  if (j.contains("values")) {
    SetFunctionTable t;
    t.values = detail::json_vector(j.at("values"), "values");
    std::size_t n = 0;
    while ((std::size_t{1} << n) < t.values.size()) ++n;
    if ((std::size_t{1} << n) != t.values.size()) throw ConfigError("values must have 2^n entries");
    t.n = n;
    return t;
  }
  if (j.contains("table_file")) {
    std::ifstream in(detail::resolve(base, j.at("table_file").get<std::string>()));
    if (!in) throw ConfigError("cannot open table_file");
    return read_set_function_table(in);
  }
  throw ConfigError("multilinear config needs values or table_file");
}

inline AnyObjective load_objective(const fs::path& path, Validation validation) {
  try {
    if (path.extension() == ".json") {
      const json j = read_json_file(path);
      const std::string kind = j.value("kind", "");
      const fs::path base = path.parent_path();
      if (kind == "quadratic") return quadratic_objective(quadratic_spec_from_json(j, base), validation);
      if (kind == "multilinear") return multilinear_objective(table_from_json(j, base), validation);
      throw ConfigError(path.string() + ": unknown objective kind '" + kind + "'");
    }
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    return multilinear_objective(read_set_function_table(in), validation);
  } catch (const InvalidArgument& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Regions: "box", "cardinality:K", or a JSON file
// {"kind": "box" | "cardinality" | "knapsack" | "halfspaces", ...}.

inline Region region_from_json(const json& j, std::size_t n, const fs::path& base = {}) {
  const std::string kind = j.value("kind", "");
  if (kind == "box") return Region::box(n);
  if (kind == "cardinality") return Region::cardinality(n, j.at("k").get<double>());
  if (kind == "knapsack") {
    Region r = Region::knapsack(detail::json_vector(j.at("w"), "w"), j.at("b").get<double>());
    if (r.dimension() != n) throw ConfigError("knapsack weights do not match the objective dimension");
    return r;
  }
  if (kind == "halfspaces") {
    Matrix A;
    if (j.contains("A"))
      A = detail::json_matrix(j.at("A"), "A");
    else if (j.contains("A_file")) {
      std::ifstream in(detail::resolve(base, j.at("A_file").get<std::string>()));
      if (!in) throw ConfigError("cannot open A_file");
      A = read_matrix_text(in);
    } else {
      throw ConfigError("halfspaces config needs A or A_file");
    }
    Region r = Region::halfspaces(std::move(A), detail::json_vector(j.at("b"), "b"));
    if (r.dimension() != n) throw ConfigError("halfspace rows do not match the objective dimension");
    return r;
  }
  throw ConfigError("unknown region kind '" + kind + "'");
}

inline json to_json(const Region& r) {
  return std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, BoxKind>) return {{"kind", "box"}};
        else if constexpr (std::is_same_v<K, CardinalityKind>) return {{"kind", "cardinality"}, {"k", k.k}};
        else if constexpr (std::is_same_v<K, KnapsackKind>) return {{"kind", "knapsack"}, {"w", k.w}, {"b", k.b}};
        else return {{"kind", "halfspaces"}, {"A", k.A}, {"b", k.b}};
      },
      r.kind());
}

inline Region parse_region(const std::string& spec, std::size_t n) {
  try {
    if (spec == "box") return Region::box(n);
    if (spec.rfind("cardinality:", 0) == 0) {
      const std::string k = spec.substr(12);
      std::size_t used = 0;
      const double kv = std::stod(k, &used);
      if (used != k.size()) throw ConfigError("bad cardinality budget '" + k + "'");
      return Region::cardinality(n, kv);
    }
    const fs::path p(spec);
    if (!fs::exists(p)) throw ConfigError("region '" + spec + "' is neither box, cardinality:K, nor a file");
    return region_from_json(read_json_file(p), n, p.parent_path());
  } catch (const InfeasibleRegion& e) {
    throw ConfigError("region " + spec + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError("region " + spec + ": " + e.what());
  } catch (const json::exception& e) {
    throw ConfigError("region " + spec + ": " + e.what());
  } catch (const std::invalid_argument&) {
    throw ConfigError("region " + spec + ": bad number");
  }
}

// ---------------------------------------------------------------------------
// Traces.

inline constexpr const char* kTraceHeader = "j,t,sqrt_a,step_coeff,f,best_f,lyapunov,residual,x_inf_norm";

namespace detail {
inline void put(std::ostream& os, double v) {
  if (!std::isnan(v)) os << v;
}
}  // namespace detail

/// CSV with header kTraceHeader; NaN fields are left empty.
inline void write_trace_csv(std::ostream& os, const SolveTrace& trace) {
  os << kTraceHeader << '\n' << std::setprecision(17);
  for (const auto& r : trace.records) {
    os << r.j << ',';
    detail::put(os, r.t);
    os << ',';
    detail::put(os, r.sqrt_a);
    os << ',';
    detail::put(os, r.step_coeff);
    os << ',';
    detail::put(os, r.f);
    os << ',';
    detail::put(os, r.best_f);
    os << ',';
    detail::put(os, r.lyapunov);
    os << ',';
    detail::put(os, r.residual);
    os << ',';
    detail::put(os, r.x_inf_norm);
    os << '\n';
  }
}

inline std::string trace_csv(const SolveTrace& trace) {
  std::ostringstream os;
  write_trace_csv(os, trace);
  return os.str();
}

inline json nan_to_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

inline json summary_json(const SolveTrace& trace, const json& config_echo = json::object()) {
  return {
      {"method", trace.method},
      {"dimension", trace.dimension},
      {"iterations", trace.iterations},
      {"start_mode", to_string(trace.start_mode)},
      {"smoothness", trace.smoothness},
      {"beta", nan_to_null(trace.beta)},
      {"best_f", trace.best_f},
      {"best_index", trace.best_index},
      {"final_f", trace.final_f},
      {"start_f", trace.start_f()},
      {"start_inf_norm", trace.start_inf_norm()},
      {"max_residual", trace.max_residual()},
      {"best_point", trace.best_point},
      {"final_point", trace.final_point},
      {"start_point", trace.start},
      {"config", config_echo},
  };
}

}  // namespace io
}  // namespace fwdis

#endif  // FWDIS_IO_HPP
