#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pms/catalog.hpp"
#include "pms/convert.hpp"
#include "pms/io.hpp"
#include "pms/parallel.hpp"

namespace pms {

class config_error : public error {
public:
  using error::error;
};

struct TaskSpec {
  std::string type;
  json params;
};

struct ExperimentConfig {
  json space_source;  // {"catalog": name} | {"file": path} | {"inline": doc}; optional for converge-only
  std::vector<std::string> omega_ids;  // overrides the source's default region
  std::vector<TaskSpec> tasks;
  bool rational = false;
  bool seed_set = false;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  unsigned jobs = 1;
  json raw;

  static ExperimentConfig parse(const json& doc);
};

namespace detail {

inline bool task_is_stochastic(const TaskSpec& t) {
  if (t.type == "spectral") return true;
  if (t.type == "axioms")
    return t.params.contains("mode") && t.params["mode"] == "randomized";
  if (t.type == "cheeger")
    return t.params.contains("method") && t.params["method"] == "local-search";
  return false;
}

}  // namespace detail

inline ExperimentConfig ExperimentConfig::parse(const json& doc) {
  ExperimentConfig cfg;
  cfg.raw = doc;
  if (!doc.is_object()) throw config_error("config: document must be an object");
  if (doc.contains("version") && doc["version"] != 1)
    throw config_error("config.version: only version 1 is understood");
  if (doc.contains("space")) {
    if (!doc["space"].is_object()) throw config_error("config.space: must be an object");
    cfg.space_source = doc["space"];
  }
  if (doc.contains("omega")) {
    if (!doc["omega"].is_array()) throw config_error("config.omega: must be an array of point ids");
    for (auto& id : doc["omega"]) cfg.omega_ids.push_back(id.get<std::string>());
  }
  if (!doc.contains("tasks") || !doc["tasks"].is_array() || doc["tasks"].empty())
    throw config_error("config.tasks: a nonempty task list is required");
  for (std::size_t i = 0; i < doc["tasks"].size(); ++i) {
    const auto& t = doc["tasks"][i];
    std::string path = "config.tasks[" + std::to_string(i) + "]";
    if (t.is_string()) {
      cfg.tasks.push_back({t.get<std::string>(), json::object()});
    } else if (t.is_object() && t.contains("type")) {
      cfg.tasks.push_back({t["type"].get<std::string>(), t});
    } else {
      throw config_error(path + ": task needs a 'type'");
    }
    const std::string& type = cfg.tasks.back().type;
    if (type != "axioms" && type != "cheeger" && type != "kappa-scan" && type != "spectral" &&
        type != "torsion" && type != "converge")
      throw config_error(path + ".type: unknown task '" + type + "'");
    if (type != "converge" && !doc.contains("space"))
      throw config_error(path + ": task needs config.space");
  }
  if (doc.contains("mode")) {
    std::string mode = doc["mode"].get<std::string>();
    if (mode != "float" && mode != "rational")
      throw config_error("config.mode: must be 'float' or 'rational'");
    cfg.rational = mode == "rational";
  }
  if (doc.contains("seed")) {
    cfg.seed = doc["seed"].get<std::uint64_t>();
    cfg.seed_set = true;
  }
  for (auto& t : cfg.tasks)
    if (detail::task_is_stochastic(t) && !cfg.seed_set)
      throw config_error("config.seed: required when stochastic tasks are present");
  if (doc.contains("out")) cfg.out_dir = doc["out"].get<std::string>();
  if (doc.contains("jobs")) cfg.jobs = doc["jobs"].get<unsigned>();
  return cfg;
}

// ---------------------------------------------------------------------------
// Space resolution.
// ---------------------------------------------------------------------------

template <typename T>
struct ResolvedSpace {
  std::string name;
  FiniteSpace<T> space;
  SubsetMask omega;
};

namespace detail {

inline std::pair<std::string, std::string> split_catalog_name(const std::string& name) {
  auto colon = name.find(':');
  if (colon == std::string::npos) return {name, ""};
  return {name.substr(0, colon), name.substr(colon + 1)};
}

template <typename T>
ResolvedSpace<T> resolve_catalog(const std::string& name) {
  auto [family, arg] = split_catalog_name(name);
  if (family == "unit-square") {
    std::size_t n = arg.empty() ? 4 : std::stoul(arg);
    auto g = build_unit_square<T>(n);
    return {name, std::move(g.space), std::move(g.omega)};
  }
  if (family == "dumbbell") {
    std::size_t lobes = 2, size = 4;
    if (!arg.empty()) {
      auto x = arg.find('x');
      if (x == std::string::npos) throw config_error("config.space.catalog: dumbbell:<lobes>x<size>");
      lobes = std::stoul(arg.substr(0, x));
      size = std::stoul(arg.substr(x + 1));
    }
    auto d = build_dumbbell<T>(lobes, size, frac<T>(1, 100));
    return {name, std::move(d.space), std::move(d.omega)};
  }
  if constexpr (!scalar_traits<T>::is_exact) {
    if (family == "radial-disk") {
      std::size_t n = arg.empty() ? 32 : std::stoul(arg);
      auto g = build_radial_disk(n);
      return {name, std::move(g.space), std::move(g.omega)};
    }
    if (family == "gaussian-line") {
      std::size_t n = arg.empty() ? 64 : std::stoul(arg);
      auto g = build_gaussian_line(n);
      return {name, std::move(g.space), std::move(g.omega)};
    }
    if (family == "fractional-row") {
      std::size_t n = arg.empty() ? 8 : std::stoul(arg);
      auto space = build_fractional_row(n, 0.5, 1.0 / static_cast<double>(n));
      SubsetMask omega = SubsetMask::full(space.points());
      omega.set(space.points() - 1, false);
      return {name, std::move(space), std::move(omega)};
    }
  } else {
    if (family == "radial-disk" || family == "gaussian-line" || family == "fractional-row")
      throw config_error("config.mode: catalog family '" + family + "' needs float mode");
  }
  for (auto& inst : standard_suite<T>())
    if (inst.name == name) return {name, std::move(inst.space), std::move(inst.omega)};
  throw config_error("config.space.catalog: unknown catalog space '" + name + "'");
}

template <typename T>
ResolvedSpace<T> resolve_space(const ExperimentConfig& cfg) {
  if (cfg.space_source.is_null()) throw config_error("config.space: missing");
  if (cfg.space_source.contains("catalog")) {
    auto resolved = resolve_catalog<T>(cfg.space_source["catalog"].get<std::string>());
    if (!cfg.omega_ids.empty()) resolved.omega = mask_from_ids(resolved.space, cfg.omega_ids);
    return resolved;
  }
  json doc;
  std::string name;
  if (cfg.space_source.contains("file")) {
    name = cfg.space_source["file"].get<std::string>();
    doc = json::parse(read_text_file(name));
  } else if (cfg.space_source.contains("inline")) {
    name = "inline";
    doc = cfg.space_source["inline"];
  } else {
    throw config_error("config.space: needs 'catalog', 'file' or 'inline'");
  }
  auto space = space_from_json<T>(doc);
  SubsetMask omega =
      cfg.omega_ids.empty() ? SubsetMask::full(space.points()) : mask_from_ids(space, cfg.omega_ids);
  return {std::move(name), std::move(space), std::move(omega)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Run manifest.
// ---------------------------------------------------------------------------

struct TaskOutcome {
  std::string type;
  std::string status;  // "ok" or the error text
  std::string error_kind;
  std::vector<std::pair<std::string, std::string>> files;  // name -> content
  double wall_ms = 0;
};

struct RunManifest {
  std::string config_hash;
  std::string version;
  std::vector<TaskOutcome> tasks;  // file contents dropped after writing

  json to_json() const {
    json doc;
    doc["config_hash"] = config_hash;
    doc["version"] = version;
    doc["tasks"] = json::array();
    for (auto& t : tasks) {
      json item;
      item["type"] = t.type;
      item["status"] = t.status;
      if (!t.error_kind.empty()) item["error_kind"] = t.error_kind;
      item["outputs"] = json::array();
      for (auto& [name, content] : t.files) item["outputs"].push_back(name);
      item["wall_ms"] = t.wall_ms;
      doc["tasks"].push_back(std::move(item));
    }
    return doc;
  }
};

inline constexpr const char* kToolVersion = "0.1.0";

inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// Task execution.
// ---------------------------------------------------------------------------

namespace detail {

template <typename T>
void run_axioms_task(const ExperimentConfig& cfg, const ResolvedSpace<T>& rs, const TaskSpec& task,
                     TaskOutcome& out) {
  const auto& space = rs.space;
  CheckMode mode = CheckMode::Exhaustive(cfg.jobs);
  bool exhaustive = space.points() <= 14;
  if (task.params.contains("mode")) exhaustive = task.params["mode"] == "exhaustive";
  if (!exhaustive) {
    std::size_t trials = task.params.value("trials", std::size_t{1024});
    mode = CheckMode::Randomized(cfg.seed, trials, cfg.jobs);
  }
  auto report = check_axioms(space, mode);
  json doc;
  doc["space"] = rs.name;
  doc["mode"] = exhaustive ? "exhaustive" : "randomized";
  doc["report"] = axiom_report_to_json(space, report);
  if (space.points() <= 20) doc["profile"] = profile_to_json(isoperimetric_profile(space));
  out.files.emplace_back("axioms.json", doc.dump(2) + "\n");
}

template <typename T>
void run_cheeger_task(const ExperimentConfig& cfg, const ResolvedSpace<T>& rs, const TaskSpec& task,
                      TaskOutcome& out) {
  std::size_t n_chambers = task.params.value("N", std::size_t{1});
  std::string method = task.params.value("method", std::string("auto"));
  const double budget_points = std::log(1e8) / std::log(static_cast<double>(n_chambers + 1));
  CheegerCertificate<T> cert;
  if (method == "auto") {
    if (n_chambers == 1 && rs.space.oracle().has_cut_form())
      method = "dinkelbach";
    else if (static_cast<double>(rs.omega.count()) <= budget_points)
      method = "brute";
    else
      method = "local-search";
  }
  if (method == "dinkelbach")
    cert = dinkelbach_h1(rs.space, rs.omega);
  else if (method == "brute")
    cert = brute_force_hN(rs.space, rs.omega, n_chambers);
  else if (method == "local-search")
    cert = local_search_hN(rs.space, rs.omega, n_chambers, cfg.seed,
                           task.params.value("restarts", std::size_t{8}));
  else
    throw config_error("config.tasks.cheeger.method: unknown method '" + method + "'");
  json doc = certificate_to_json(rs.space, cert);
  doc["space"] = rs.name;
  doc["N"] = n_chambers;
  out.files.emplace_back("cheeger_N" + std::to_string(n_chambers) + ".json", doc.dump(2) + "\n");
}

template <typename T>
void run_kappa_scan_task(const ExperimentConfig& cfg, const ResolvedSpace<T>& rs,
                         const TaskSpec& task, TaskOutcome& out) {
  std::size_t steps = task.params.value("steps", std::size_t{28});
  if (steps < 2) throw config_error("config.tasks.kappa-scan.steps: need at least 2");
  T hi;
  if (task.params.contains("max"))
    hi = scalar_from_json<T>(task.params["max"]);
  else
    hi = T(2) * rs.space.perimeter(rs.omega) / rs.space.measure_of(rs.omega);
  std::vector<T> grid;
  for (std::size_t i = 0; i <= steps; ++i)
    grid.push_back(hi * T(static_cast<long>(i)) / T(static_cast<long>(steps)));
  auto scan = kappa_threshold_scan(rs.space, rs.omega, grid, cfg.jobs);
  out.files.emplace_back("kappa_scan.csv", scan_to_csv(scan));
  json doc;
  doc["space"] = rs.name;
  if (scan.last_false) doc["last_false"] = value_to_json(*scan.last_false);
  if (scan.first_true) doc["first_true"] = value_to_json(*scan.first_true);
  out.files.emplace_back("kappa_scan.json", doc.dump(2) + "\n");
}

template <typename T>
void run_spectral_task(const ExperimentConfig& cfg, const ResolvedSpace<T>& rs,
                       const TaskSpec& task, TaskOutcome& out) {
  json doc;
  doc["space"] = rs.name;
  auto l11 = lambda_11(rs.space, rs.omega, cfg.seed, task.params.value("samples", std::size_t{1000}));
  doc["lambda11"] = eigen_result_to_json(rs.space, l11);
  std::vector<double> ps;
  if (task.params.contains("p"))
    for (auto& p : task.params["p"]) ps.push_back(p.get<double>());
  if (!ps.empty()) {
    RayleighOptions options;
    options.restarts = task.params.value("restarts", std::size_t{16});
    options.max_iterations = task.params.value("max_iterations", std::size_t{100000});
    const auto& dspace = space_to_double(rs.space);
    doc["p_eigenvalues"] = json::array();
    for (double p : ps) {
      PBoundReport bound;
      auto result = lambda_1p(dspace, rs.omega, p, cfg.seed, &bound, options);
      json item = eigen_result_to_json(dspace, result);
      item["bound"] = bound_report_to_json(bound);
      doc["p_eigenvalues"].push_back(std::move(item));
    }
    if (scalar_traits<T>::is_exact) doc["p_eigenvalue_arithmetic"] = "float";
  }
  out.files.emplace_back("spectral.json", doc.dump(2) + "\n");
}

template <typename T>
void run_torsion_task(const ExperimentConfig& cfg, const ResolvedSpace<T>& rs, const TaskSpec& task,
                      TaskOutcome& out) {
  (void)cfg;
  std::vector<double> ps{2.0};
  if (task.params.contains("p")) {
    ps.clear();
    for (auto& p : task.params["p"]) ps.push_back(p.get<double>());
  }
  double tolerance = task.params.value("tolerance", 1e-8);
  const auto& dspace = space_to_double(rs.space);
  json doc;
  doc["space"] = rs.name;
  doc["results"] = json::array();
  for (double p : ps) {
    auto result = torsion(dspace, rs.omega, p, tolerance);
    doc["results"].push_back(torsion_result_to_json(dspace, result, p));
  }
  if (scalar_traits<T>::is_exact) doc["arithmetic"] = "float";
  out.files.emplace_back("torsion.json", doc.dump(2) + "\n");
}

inline std::string trend_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return "single";
  bool dec = true, inc = true, eq = true;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] < xs[i - 1])) dec = false;
    if (!(xs[i] > xs[i - 1])) inc = false;
    if (std::abs(xs[i] - xs[i - 1]) > 1e-9 * (1.0 + std::abs(xs[i]))) eq = false;
  }
  if (eq) return "constant";
  if (dec) return "decreasing";
  if (inc) return "increasing";
  return "mixed";
}

inline void run_converge_task(const ExperimentConfig& cfg, const TaskSpec& task, TaskOutcome& out) {
  std::string family = task.params.value("family", std::string());
  if (family.empty()) throw config_error("config.tasks.converge.family: required");
  std::vector<std::size_t> levels;
  if (task.params.contains("levels"))
    for (auto& l : task.params["levels"]) levels.push_back(l.get<std::size_t>());
  if (levels.empty()) throw config_error("config.tasks.converge.levels: required");
  std::vector<double> ps;
  if (task.params.contains("p"))
    for (auto& p : task.params["p"]) ps.push_back(p.get<double>());

  RayleighOptions options;
  options.restarts = task.params.value("restarts", std::size_t{4});
  options.max_iterations = task.params.value("max_iterations", std::size_t{20000});

  std::string csv = "n,h1,lambda11";
  if (family == "radial-disk") csv += ",ball_ratio_r05,ball_ratio_expected_r05";
  if (family == "gaussian-line") csv += ",interior_mass,mass_defect";
  for (double p : ps)
    csv += ",lambda1p_p" + format_double(p) + ",hard_bound_p" + format_double(p) + ",paper_bound_p" +
           format_double(p) + ",margin_p" + format_double(p);
  csv += "\n";

  std::vector<double> h1_col;
  std::vector<std::string> failures;
  for (auto n : levels) {
    std::string row = std::to_string(n);
    try {
      FiniteSpace<double> space({1.0}, PerimeterOracle<double>::cut(1, {}));
      SubsetMask omega(1);
      if (family == "unit-square") {
        auto g = build_unit_square<double>(n);
        space = std::move(g.space);
        omega = std::move(g.omega);
      } else if (family == "radial-disk") {
        auto g = build_radial_disk(n);
        space = std::move(g.space);
        omega = std::move(g.omega);
      } else if (family == "gaussian-line") {
        auto g = build_gaussian_line(n);
        space = std::move(g.space);
        omega = std::move(g.omega);
      } else if (family == "fractional-row") {
        space = build_fractional_row(n, 0.5, 1.0 / static_cast<double>(n));
        omega = SubsetMask::full(space.points());
        omega.set(space.points() - 1, false);
      } else {
        throw config_error("config.tasks.converge.family: unknown family '" + family + "'");
      }
      auto cert = dinkelbach_h1(space, omega);
      auto l11 = lambda_11(space, omega, cfg.seed, 64);
      h1_col.push_back(cert.value);
      row += "," + format_double(cert.value) + "," + format_double(l11.value);
      if (family == "radial-disk") {
        auto g2 = build_radial_disk(n);
        auto ball = g2.ball_mask(0, 0, 0.5);
        double ratio = g2.space.perimeter(ball) / g2.space.measure_of(ball);
        row += "," + format_double(ratio) + "," + format_double(std::sqrt(0.5) / 2.0);
      }
      if (family == "gaussian-line") {
        double mass = space.measure_of(omega);
        row += "," + format_double(mass) + "," + format_double(std::abs(1.0 - mass));
      }
      for (double p : ps) {
        PBoundReport bound;
        auto result = lambda_1p(space, omega, p, cfg.seed, &bound, options);
        row += "," + format_double(result.value) + "," + format_double(bound.hard_bound) + "," +
               format_double(bound.paper_bound) + "," + format_double(result.value - bound.paper_bound);
      }
    } catch (const config_error&) {
      throw;
    } catch (const error& e) {
      row += ",FAILED: " + std::string(e.what());
      failures.push_back(std::to_string(n) + ": " + e.what());
    }
    csv += row + "\n";
  }
  out.files.emplace_back("converge_" + family + ".csv", csv);
  json doc;
  doc["family"] = family;
  doc["h1_trend"] = trend_of(h1_col);
  doc["failures"] = failures;
  out.files.emplace_back("converge_" + family + ".json", doc.dump(2) + "\n");
}

template <typename T>
void run_one_task(const ExperimentConfig& cfg, const std::optional<ResolvedSpace<T>>& rs,
                  const TaskSpec& task, TaskOutcome& out) {
  if (task.type == "converge") {
    run_converge_task(cfg, task, out);
    return;
  }
  if (!rs) throw config_error("config.space: missing for task '" + task.type + "'");
  if (task.type == "axioms")
    run_axioms_task(cfg, *rs, task, out);
  else if (task.type == "cheeger")
    run_cheeger_task(cfg, *rs, task, out);
  else if (task.type == "kappa-scan")
    run_kappa_scan_task(cfg, *rs, task, out);
  else if (task.type == "spectral")
    run_spectral_task(cfg, *rs, task, out);
  else if (task.type == "torsion")
    run_torsion_task(cfg, *rs, task, out);
  else
    throw config_error("config.tasks: unknown task '" + task.type + "'");
}

template <typename T>
RunManifest run_typed(const ExperimentConfig& cfg) {
  std::optional<ResolvedSpace<T>> rs;
  bool needs_space = false;
  for (auto& t : cfg.tasks)
    if (t.type != "converge") needs_space = true;
  if (needs_space) rs.emplace(resolve_space<T>(cfg));

  RunManifest manifest;
  manifest.version = kToolVersion;
  manifest.config_hash = fnv1a_hex(cfg.raw.dump());
  manifest.tasks.resize(cfg.tasks.size());

  parallel_chunks(cfg.tasks.size(), cfg.jobs, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      TaskOutcome& out = manifest.tasks[i];
      out.type = cfg.tasks[i].type;
      auto t0 = std::chrono::steady_clock::now();
      try {
        run_one_task<T>(cfg, rs, cfg.tasks[i], out);
        out.status = "ok";
      } catch (const theorem_violation_error& e) {
        out.status = e.what();
        out.error_kind = "theorem-violation";
      } catch (const config_error& e) {
        out.status = e.what();
        out.error_kind = "config";
      } catch (const error& e) {
        out.status = e.what();
        out.error_kind = "solver";
      }
      out.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  });

  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  for (auto& task : manifest.tasks)
    for (auto& [name, content] : task.files)
      write_text_file((fs::path(cfg.out_dir) / name).string(), content);
  write_text_file((fs::path(cfg.out_dir) / "manifest.json").string(),
                  manifest.to_json().dump(2) + "\n");

  // Error policy: theorem violations are fatal with a witness dump; other
  // task failures propagate with task context.
  for (auto& task : manifest.tasks) {
    if (task.status == "ok") continue;
    if (task.error_kind == "theorem-violation") {
      write_text_file((fs::path(cfg.out_dir) / "violation_witness.txt").string(),
                      task.type + ": " + task.status + "\n");
      throw theorem_violation_error("task '" + task.type + "': " + task.status);
    }
  }
  for (auto& task : manifest.tasks) {
    if (task.status == "ok") continue;
    if (task.error_kind == "config") throw config_error("task '" + task.type + "': " + task.status);
    throw error("task '" + task.type + "': " + task.status);
  }
  return manifest;
}

}  // namespace detail

inline RunManifest run(const ExperimentConfig& cfg) {
  if (cfg.rational) return detail::run_typed<Rational>(cfg);
  return detail::run_typed<double>(cfg);
}

}  // namespace pms
