// Command-line driver: loads spaces, runs solvers/verifiers/refinement
// studies, writes machine-readable results (JSON certificates, CSV sweeps).

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pms/run.hpp"

namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string mode = "float";
  std::string out_dir = "out";
  unsigned jobs = 1;
  std::string space;
  std::string omega;
};

pms::json space_source_json(const std::string& src) {
  pms::json out;
  if (src.rfind("catalog:", 0) == 0)
    out["catalog"] = src.substr(8);
  else
    out["file"] = src;
  return out;
}

pms::json base_config(const GlobalOptions& g) {
  pms::json cfg;
  cfg["version"] = 1;
  if (!g.space.empty()) cfg["space"] = space_source_json(g.space);
  if (!g.omega.empty()) {
    pms::json ids = pms::json::array();
    std::string cur;
    for (char c : g.omega + ",") {
      if (c == ',') {
        if (!cur.empty()) ids.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    cfg["omega"] = ids;
  }
  cfg["mode"] = g.mode;
  cfg["seed"] = g.seed;
  cfg["out"] = g.out_dir;
  cfg["jobs"] = g.jobs;
  return cfg;
}

int execute(const pms::json& cfg_doc) {
  auto cfg = pms::ExperimentConfig::parse(cfg_doc);
  auto manifest = pms::run(cfg);
  for (auto& task : manifest.tasks) {
    std::printf("%-12s %s (%.1f ms)", task.type.c_str(), task.status.c_str(), task.wall_ms);
    for (auto& [name, content] : task.files) std::printf("  %s/%s", cfg.out_dir.c_str(), name.c_str());
    std::printf("\n");
  }
  std::printf("manifest: %s/manifest.json (config %s)\n", cfg.out_dir.c_str(),
              manifest.config_hash.c_str());
  return 0;
}

int dispatch(const pms::json& cfg_doc) {
  try {
    return execute(cfg_doc);
  } catch (const pms::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const pms::theorem_violation_error& e) {
    std::fprintf(stderr, "theorem violation: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite perimeter-measure spaces: Cheeger constants, curvature thresholds, "
               "eigenvalues, torsion"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "seed for stochastic tasks (default 0)");
  app.add_option("--mode", g.mode, "arithmetic mode: float | rational")
      ->check(CLI::IsMember({"float", "rational"}));
  app.add_option("--out", g.out_dir, "output directory (default: out)");
  app.add_option("--jobs", g.jobs, "parallel workers (0 = hardware)");

  auto add_space_options = [&](CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--space", g.space, "catalog:<name> or interchange JSON file");
    if (required) opt->required();
    cmd->add_option("--omega", g.omega, "comma-separated point ids of the region");
  };

  // axioms
  auto* axioms = app.add_subcommand("axioms", "check the perimeter axioms");
  add_space_options(axioms);
  bool randomized = false;
  std::size_t trials = 1024;
  axioms->add_flag("--randomized", randomized, "sample sets instead of exhausting them");
  axioms->add_option("--trials", trials, "randomized trials (default 1024)");
  axioms->callback([&] {
    auto cfg = base_config(g);
    pms::json t;
    t["type"] = "axioms";
    if (randomized) {
      t["mode"] = "randomized";
      t["trials"] = trials;
    } else {
      t["mode"] = "exhaustive";
    }
    cfg["tasks"] = pms::json::array({t});
    std::exit(dispatch(cfg));
  });

  // cheeger
  auto* cheeger = app.add_subcommand("cheeger", "N-Cheeger constant and cluster");
  add_space_options(cheeger);
  std::size_t n_chambers = 1;
  std::string method = "auto";
  std::size_t restarts = 8;
  cheeger->add_option("--N", n_chambers, "number of chambers (default 1)");
  cheeger->add_option("--method", method, "auto | brute | dinkelbach | local-search")
      ->check(CLI::IsMember({"auto", "brute", "dinkelbach", "local-search"}));
  cheeger->add_option("--restarts", restarts, "local-search restarts (default 8)");
  cheeger->callback([&] {
    auto cfg = base_config(g);
    pms::json t;
    t["type"] = "cheeger";
    t["N"] = n_chambers;
    t["method"] = method;
    t["restarts"] = restarts;
    cfg["tasks"] = pms::json::array({t});
    std::exit(dispatch(cfg));
  });

  // kappa-scan
  auto* scan = app.add_subcommand("kappa-scan", "prescribed-curvature threshold scan");
  add_space_options(scan);
  std::size_t steps = 28;
  double kappa_max = -1;
  scan->add_option("--steps", steps, "grid steps (default 28)");
  scan->add_option("--max", kappa_max, "grid upper end (default 2 P(omega)/m(omega))");
  scan->callback([&] {
    auto cfg = base_config(g);
    pms::json t;
    t["type"] = "kappa-scan";
    t["steps"] = steps;
    if (kappa_max > 0) t["max"] = kappa_max;
    cfg["tasks"] = pms::json::array({t});
    std::exit(dispatch(cfg));
  });

  // spectral
  auto* spectral = app.add_subcommand("spectral", "first 1- and p-eigenvalues");
  add_space_options(spectral);
  std::vector<double> ps;
  std::size_t sp_restarts = 16;
  std::size_t samples = 1000;
  spectral->add_option("--p", ps, "p exponents, e.g. --p 1.5,2,3")->delimiter(',');
  spectral->add_option("--restarts", sp_restarts, "descent restarts (default 16)");
  spectral->add_option("--samples", samples, "random Rayleigh validation samples (default 1000)");
  spectral->callback([&] {
    auto cfg = base_config(g);
    pms::json t;
    t["type"] = "spectral";
    t["p"] = ps;
    t["restarts"] = sp_restarts;
    t["samples"] = samples;
    cfg["tasks"] = pms::json::array({t});
    std::exit(dispatch(cfg));
  });

  // torsion
  auto* torsion = app.add_subcommand("torsion", "p-torsional creep energy minimizer");
  add_space_options(torsion);
  std::vector<double> tps{2.0};
  double tolerance = 1e-8;
  torsion->add_option("--p", tps, "p exponents (default 2)")->delimiter(',');
  torsion->add_option("--tolerance", tolerance, "gradient tolerance (default 1e-8)");
  torsion->callback([&] {
    auto cfg = base_config(g);
    pms::json t;
    t["type"] = "torsion";
    t["p"] = tps;
    t["tolerance"] = tolerance;
    cfg["tasks"] = pms::json::array({t});
    std::exit(dispatch(cfg));
  });

  // converge
  auto* converge = app.add_subcommand("converge", "refinement study over a catalog family");
  std::string family;
  std::vector<std::size_t> levels;
  std::vector<double> cps;
  converge->add_option("--family", family,
                       "unit-square | radial-disk | gaussian-line | fractional-row")
      ->required();
  converge->add_option("--levels", levels, "refinement levels, e.g. --levels 4,8,16")
      ->required()
      ->delimiter(',');
  converge->add_option("--p", cps, "p exponents for the eigenvalue columns")->delimiter(',');
  converge->callback([&] {
    auto cfg = base_config(g);
    pms::json t;
    t["type"] = "converge";
    t["family"] = family;
    t["levels"] = levels;
    if (!cps.empty()) t["p"] = cps;
    cfg["tasks"] = pms::json::array({t});
    std::exit(dispatch(cfg));
  });

  // run
  auto* runcmd = app.add_subcommand("run", "execute a full experiment config");
  std::string config_path;
  runcmd->add_option("config", config_path, "experiment config JSON")->required();
  runcmd->callback([&] {
    pms::json doc;
    try {
      doc = pms::json::parse(pms::read_text_file(config_path));
    } catch (const std::exception& e) {
      std::fprintf(stderr, "config error: %s\n", e.what());
      std::exit(2);
    }
    // command line overrides
    if (!doc.contains("out") || g.out_dir != "out") doc["out"] = g.out_dir;
    if (app.count("--seed")) doc["seed"] = g.seed;
    if (app.count("--mode")) doc["mode"] = g.mode;
    if (app.count("--jobs")) doc["jobs"] = g.jobs;
    std::exit(dispatch(doc));
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
