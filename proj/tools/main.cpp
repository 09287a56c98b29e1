// Command-line front end: simulation campaigns, CF tables, decompositions,
// localisability probes, and the statistical check suite.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "multistable/charfn.hpp"
#include "multistable/checks.hpp"
#include "multistable/config.hpp"
#include "multistable/decomp.hpp"
#include "multistable/io.hpp"
#include "multistable/localize.hpp"
#include "multistable/parallel.hpp"
#include "multistable/series.hpp"
#include "multistable/stable.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string config_file;
  std::optional<std::uint64_t> seed_override;
  std::string out_override;
  int threads = 1;
};

multistable::CampaignConfig load(const CommonOpts& opts) {
  auto cfg = multistable::load_config(opts.config_file);
  if (opts.seed_override) cfg.seed = *opts.seed_override;
  if (!opts.out_override.empty()) cfg.output_dir = opts.out_override;
  if (cfg.output_dir.empty()) {
    if (const char* env = std::getenv("MULTISTABLE_OUT"))
      cfg.output_dir = env;
    else
      cfg.output_dir = "out";
  }
  cfg.validate();
  return cfg;
}

void write_manifest(const multistable::CampaignConfig& cfg,
                    const std::string& command,
                    const std::vector<std::string>& outputs) {
  json j;
  j["tool"] = "multistable";
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = json::parse(multistable::config_to_json(cfg));
  j["outputs"] = outputs;
  const fs::path file = fs::path(cfg.output_dir) / (command + "_manifest.json");
  fs::create_directories(cfg.output_dir);
  std::ofstream(file) << j.dump(2) << '\n';
}

int cmd_simulate(const CommonOpts& opts) {
  const auto cfg = load(opts);
  const auto alpha = cfg.alpha.build(cfg.horizon);
  const multistable::CAlphaTable table(alpha.lower_bound(),
                                       alpha.upper_bound());
  const auto grid =
      multistable::TimeGrid::uniform(cfg.grid_points, cfg.horizon);
  const auto kind = cfg.process_kind();

  std::vector<multistable::PathSample> paths(
      static_cast<std::size_t>(cfg.n_paths),
      multistable::PathSample{grid, {}, kind, 0, 0});
  multistable::Kernel kernel;
  if (kind == multistable::ProcessKind::kGeneral)
    kernel = cfg.kernel->build(cfg.horizon);

  multistable::parallel_for(
      static_cast<std::size_t>(cfg.n_paths), opts.threads,
      [&](std::size_t i) {
        const auto draw =
            multistable::draw_series(cfg.seed + i, cfg.n_terms, cfg.horizon);
        switch (kind) {
          case multistable::ProcessKind::kIndependent:
            paths[i] = simulate_LI_fkl(draw, alpha, grid, table);
            break;
          case multistable::ProcessKind::kFieldBased:
            paths[i] = simulate_LF_fkl(draw, alpha, grid, table);
            break;
          case multistable::ProcessKind::kGeneral:
            paths[i] = simulate_general_fkl(draw, alpha, kernel, grid, table);
            break;
        }
      });

  const fs::path file = fs::path(cfg.output_dir) / "paths.csv";
  multistable::write_paths_csv(file, paths);
  write_manifest(cfg, "simulate", {"paths.csv"});
  std::cout << "wrote " << file.string() << " (" << cfg.n_paths << " paths, "
            << cfg.grid_points << " grid points)\n";
  return 0;
}

int cmd_cf(const CommonOpts& opts, const std::string& query_file) {
  const auto cfg = load(opts);
  const auto alpha = cfg.alpha.build(cfg.horizon);
  const auto kind = cfg.process_kind();
  if (kind == multistable::ProcessKind::kGeneral)
    throw multistable::ConfigError(
        "cf: analytic CFs are available for the independent and field_based "
        "processes");

  std::ifstream in(query_file);
  if (!in)
    throw multistable::ConfigError("cannot open query file: " + query_file);

  std::vector<multistable::CFTableRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line_no == 1 && line.find("theta") != std::string::npos) continue;
    std::istringstream ls(line);
    std::string t_str, th_str;
    if (!std::getline(ls, t_str, ',') || !std::getline(ls, th_str, ','))
      throw multistable::ConfigError(query_file + ":" +
                                     std::to_string(line_no) +
                                     ": expected `t,theta`");
    double t, th;
    try {
      t = std::stod(t_str);
      th = std::stod(th_str);
    } catch (...) {
      throw multistable::ConfigError(query_file + ":" +
                                     std::to_string(line_no) +
                                     ": malformed number");
    }
    const multistable::CFQuery q{{t}, {th}};
    const multistable::CFResult res =
        (kind == multistable::ProcessKind::kFieldBased)
            ? multistable::cf_LF_joint(alpha, q)
            : multistable::cf_LI_joint(alpha, q);
    rows.push_back({th, res.value.real(), res.value.imag(),
                    res.error_estimate});
  }
  const fs::path file = fs::path(cfg.output_dir) / "cf_table.csv";
  multistable::write_cf_table_csv(file, rows);
  write_manifest(cfg, "cf", {"cf_table.csv"});
  std::cout << "wrote " << file.string() << " (" << rows.size()
            << " queries)\n";
  return 0;
}

int cmd_decompose(const CommonOpts& opts, const std::string& rule) {
  const auto cfg = load(opts);
  const auto alpha = cfg.alpha.build(cfg.horizon);
  const multistable::CAlphaTable table(alpha.lower_bound(),
                                       alpha.upper_bound());
  const auto grid =
      multistable::TimeGrid::uniform(cfg.grid_points, cfg.horizon);
  const auto draw =
      multistable::draw_series(cfg.seed, cfg.n_terms, cfg.horizon);

  multistable::DecompositionResult dec;
  if (rule == "magnitude")
    dec = multistable::decompose_LI_magnitude(draw, alpha, grid, table);
  else if (rule == "alternate")
    dec = multistable::decompose_LI_alternate(draw, alpha, grid, table);
  else if (rule == "field")
    dec = multistable::decompose_LF_field(draw, alpha, grid, table);
  else
    throw multistable::ConfigError("unknown decomposition rule '" + rule +
                                   "' (magnitude | alternate | field)");

  const fs::path file = fs::path(cfg.output_dir) / "decomposition.csv";
  multistable::write_decomposition_csv(file, dec);
  write_manifest(cfg, "decompose", {"decomposition.csv"});
  std::cout << "wrote " << file.string() << " (rule " << rule << ")\n";
  return 0;
}

int cmd_localize(const CommonOpts& opts, double u,
                 std::vector<double> r_values, int n_paths) {
  const auto cfg = load(opts);
  const auto alpha = cfg.alpha.build(cfg.horizon);
  const multistable::CAlphaTable table(alpha.lower_bound(),
                                       alpha.upper_bound());
  if (r_values.empty()) r_values = {0.2, 0.05, 0.0125};
  if (n_paths <= 0) n_paths = cfg.n_paths;
  if (n_paths < 2)
    throw multistable::ConfigError("localize: need n_paths >= 2");

  const auto kind = cfg.process_kind();
  if (kind == multistable::ProcessKind::kGeneral)
    throw multistable::ConfigError(
        "localize: supported for the independent and field_based processes");

  const auto rep = multistable::tangent_check(
      kind, alpha, u, r_values, {0.5, 1.0}, n_paths, cfg.seed, cfg.n_terms,
      table, opts.threads);

  json j;
  j["process"] = multistable::to_string(rep.process);
  j["u"] = rep.u;
  j["r"] = rep.r_values;
  j["distance"] = rep.distances;
  j["band"] = rep.band;
  j["pass"] = rep.pass;
  const fs::path file = fs::path(cfg.output_dir) / "tangent_report.json";
  fs::create_directories(cfg.output_dir);
  std::ofstream(file) << j.dump(2) << '\n';
  write_manifest(cfg, "localize", {"tangent_report.json"});
  std::cout << "wrote " << file.string() << " (pass=" << rep.pass << ")\n";
  return rep.pass ? 0 : 1;
}

int cmd_check(const CommonOpts& opts) {
  const auto cfg = load(opts);
  if (cfg.n_paths < 2)
    throw multistable::ConfigError(
        "check: insufficient samples for statistical checks (n_paths >= 2)");

  multistable::CheckParams params;
  params.seed = cfg.seed;
  params.threads = opts.threads;

  // Scaled-down versions of the core checks, driven by the campaign size.
  const int m = cfg.n_paths;
  const int n = cfg.n_terms;
  std::vector<multistable::CheckResult> results;
  // Test mode: shift the alpha used on the analytic side, which must make
  // the CF-match check fail.
  const double shift = cfg.inject_alpha_mismatch ? 0.3 : 0.0;
  results.push_back(multistable::check_li_marginal_cf(
      params, n, m, cfg.thresholds.cf_sup, shift));
  results.push_back(multistable::check_representation_equivalence(
      params, n, std::min(m, 10000), cfg.thresholds.ks_p));
  results.push_back(multistable::check_decomposition_bitexact(
      params, std::min(m, 100), std::min(n, 2000)));
  results.push_back(multistable::check_increment_independence(
      params, m, std::max(m, 20000), n));
  results.push_back(multistable::check_tangency(params, m, n));
  results.push_back(multistable::check_martingale_mean(params, m,
                                                       std::min(n, 2000)));

  json arr = json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    json j;
    j["test"] = r.name;
    j["statistic"] = r.statistic;
    j["threshold"] = r.threshold;
    j["pass"] = r.pass;
    j["detail"] = r.detail;
    arr.push_back(j);
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": "
              << r.detail << '\n';
  }
  const fs::path file = fs::path(cfg.output_dir) / "check_report.json";
  fs::create_directories(cfg.output_dir);
  std::ofstream(file) << arr.dump(2) << '\n';
  write_manifest(cfg, "check", {"check_report.json"});
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multistable Levy motion toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOpts opts;
  std::uint64_t seed_val = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_file, "campaign config file")
        ->required();
    sub->add_option("--seed", seed_val, "seed override");
    sub->add_option("--out", opts.out_override, "output directory override");
    sub->add_option("--threads", opts.threads, "worker threads");
  };

  auto* sim = app.add_subcommand("simulate", "simulate process paths");
  add_common(sim);

  auto* cf = app.add_subcommand("cf", "evaluate characteristic functions");
  add_common(cf);
  std::string query_file;
  cf->add_option("--queries", query_file, "CSV query file with t,theta rows")
      ->required();

  auto* dec = app.add_subcommand("decompose", "semi-martingale decomposition");
  add_common(dec);
  std::string rule = "magnitude";
  dec->add_option("--rule", rule, "magnitude | alternate | field");

  auto* loc = app.add_subcommand("localize", "tangent-process probe");
  add_common(loc);
  double u = 0.5;
  std::vector<double> r_values;
  int loc_paths = 0;
  loc->add_option("--u", u, "base time");
  loc->add_option("--r", r_values, "decreasing scale list");
  loc->add_option("--paths", loc_paths, "Monte Carlo batch size");

  auto* chk = app.add_subcommand("check", "run the statistical check suite");
  add_common(chk);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto* sub : {sim, cf, dec, loc, chk})
    if (sub->parsed() && sub->count("--seed") > 0) seed_set = true;
  if (seed_set) opts.seed_override = seed_val;

  try {
    if (sim->parsed()) return cmd_simulate(opts);
    if (cf->parsed()) return cmd_cf(opts, query_file);
    if (dec->parsed()) return cmd_decompose(opts, rule);
    if (loc->parsed()) return cmd_localize(opts, u, r_values, loc_paths);
    if (chk->parsed()) return cmd_check(opts);
  } catch (const multistable::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
