// mgale: scenario runner and verification front end.

#include "scenario.hpp"
#include "suites.hpp"

#include "mgale/fixtures.hpp"
#include "mgale/mgale.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

#ifndef MGALE_SCENARIO_DIR
#define MGALE_SCENARIO_DIR "scenarios"
#endif

namespace fs = std::filesystem;
using namespace mgale;
using namespace mgale::cli;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::string out_dir = "mgale_out";
  unsigned threads = 0;

  ScenarioOverrides overrides() const { return {seed, mode, threads}; }
  std::uint64_t seed_or_default() const { return seed.value_or(42); }
};

std::string suite_file(const suites::SuiteOutcome& o) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "suite_%02d_", o.id);
  return buf + o.name + ".csv";
}

/// Runs the chosen suites, writes one CSV each plus a summary; timings go to stdout only.
int run_suites(const Globals& g, const std::vector<int>& only, bool exact_only) {
  fs::create_directories(g.out_dir);
  CsvTable summary({"suite", "name", "passed", "headline"});
  bool all = true;
  const suites::SuiteConfig cfg{g.seed_or_default(), g.threads};
  for (const auto& info : suites::registry()) {
    if (!only.empty() && std::find(only.begin(), only.end(), info.id) == only.end()) continue;
    if (exact_only && info.id >= 11) continue;
    const auto start = std::chrono::steady_clock::now();
    const auto o = info.run(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.table.write((fs::path(g.out_dir) / suite_file(o)).string());
    summary.add_row({std::to_string(o.id), o.name, format_bool(o.passed), o.headline});
    std::printf("%s suite %2d %-26s %7.2fs  %s\n", o.passed ? "PASS" : "FAIL", o.id, o.name.c_str(), secs,
                o.headline.c_str());
    std::fflush(stdout);
    all = all && o.passed;
  }
  summary.write((fs::path(g.out_dir) / "selftest_summary.csv").string());
  return all ? kOk : kCheckFailed;
}

int run_scenarios(const Globals& g, const std::vector<std::string>& files) {
  int worst = kOk;
  for (const auto& f : files) worst = std::max(worst, run_scenario_file(f, g.out_dir, g.overrides(), std::cout));
  return worst;
}

std::vector<std::string> scenario_files(const std::string& dir) {
  std::vector<std::string> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

template <Scalar S>
int crossings_command(const Globals& g, const std::string& band_text, const std::string& path_file,
                      std::optional<std::size_t> N_opt) {
  const Json doc = parse_json_document(read_text_file(path_file));
  const Process<S> f = process_from_json<S>(doc.contains("process") ? doc.at("process") : doc);
  const auto comma = band_text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--band must be a,b");
  const Band<S> band{parse_scalar<S>(band_text.substr(0, comma)), parse_scalar<S>(band_text.substr(comma + 1))};
  const std::size_t N = N_opt.value_or(f.horizon());
  if (N > f.horizon()) throw std::invalid_argument("--N exceeds the path horizon");
  const CrossingTable t = crossing_table(band, f, N);
  const auto u = upcrossings_before(band, f, N);
  CsvTable table({"atom", "k", "sigma", "tau"});
  for (Atom a = 0; a < f.atom_count(); ++a) {
    std::printf("atom %zu  band (%s, %s)  N = %zu\n", a, format_scalar(band.a).c_str(), format_scalar(band.b).c_str(), N);
    std::printf("  %4s %8s %8s\n", "k", "sigma_k", "tau_k");
    for (std::size_t k = 0; k < t.sigma.size(); ++k) {
      std::printf("  %4zu %8zu %8zu\n", k, t.sigma[k][a], t.tau[k][a]);
      table.add_row({std::to_string(a), std::to_string(k), std::to_string(t.sigma[k][a]), std::to_string(t.tau[k][a])});
    }
    std::printf("  upcrossings_before = %zu\n", u[a]);
  }
  if (f.atom_count() == 1) {
    const auto ps = FiniteMeasureSpace<S>::uniform(1);
    const auto rep = evaluate_upcrossing_estimate(band, f, ps, N);
    std::printf("  estimate: (b - a) U = %s, (f_N - a)^+ = %s\n", format_scalar(rep.lhs).c_str(),
                format_scalar(rep.rhs).c_str());
  }
  fs::create_directories(g.out_dir);
  table.write((fs::path(g.out_dir) / "crossings.csv").string());
  return kOk;
}

int scenario_from_json(const Globals& g, const Json& doc, const std::string& origin) {
  return run_scenario_text(doc.dump(2), origin, g.out_dir, g.overrides(), std::cout);
}

template <Scalar S>
int ui_command(const Globals& g, const std::string& family, std::size_t horizon, double p) {
  if (family != "shrinking" && family != "fixed") throw std::invalid_argument("--family must be shrinking or fixed");
  const auto fam = family == "shrinking" ? fixtures::shrinking_spikes<S>(horizon) : fixtures::fixed_mass_spikes<S>(horizon);
  VitaliOptions<S> o;
  o.epsilons = {ratio<S>(1, 2)};
  for (std::int64_t c : {1, 2, 4, 8, 16, 32}) o.c_grid.push_back(S(c));
  const auto rep = vitali_empirical<S>(
      fam.space, [&](std::size_t n) { return fam.member(n); }, RandomVariable<S>(fam.space.atom_count(), S(0)),
      Exponent::finite(p), horizon, o);
  CsvTable table({"quantity", "argument", "value"});
  for (std::size_t i = 0; i < o.c_grid.size(); ++i)
    table.add_row({"ui_modulus", format_scalar(o.c_grid[i]), format_double(rep.ui_modulus_curve[i].to_double())});
  for (std::size_t i = 0; i < rep.checkpoints.size(); ++i) {
    table.add_row({"lp_distance", std::to_string(rep.checkpoints[i]), format_double(rep.lp_distance[i].to_double())});
    table.add_row({"in_measure_1/2", std::to_string(rep.checkpoints[i]), format_scalar(rep.in_measure[0][i])});
  }
  fs::create_directories(g.out_dir);
  table.write((fs::path(g.out_dir) / ("ui_" + family + ".csv")).string());
  std::cout << table.str();
  std::printf("in_measure_decay %s  ui_modulus_small %s  lp_decay %s  consistent %s\n",
              format_bool(rep.in_measure_decay).c_str(), format_bool(rep.ui_modulus_small).c_str(),
              format_bool(rep.lp_decay).c_str(), format_bool(rep.consistent).c_str());
  return rep.consistent ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mgale: finite-space martingale verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "override the scenario seed (default 42)");
  app.add_option("--mode", g.mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--out-dir", g.out_dir, "directory for CSV output")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads for Monte Carlo (0 = all cores)");

  int rc = kOk;

  auto* check = app.add_subcommand("check", "run the exact suites, or the given scenario files");
  std::vector<std::string> check_files;
  std::vector<int> check_only;
  check->add_option("scenarios", check_files, "scenario JSON files");
  check->add_option("--suite", check_only, "suite ids to run (default: all exact suites 1-10)");

  auto* run = app.add_subcommand("run", "run one scenario file");
  std::string run_file;
  run->add_option("scenario", run_file)->required();
  run->footer("Check types:\n" + check_catalogue());

  auto* cross = app.add_subcommand("crossings", "crossing table and upcrossing count for a path");
  std::string band_text, path_file;
  std::optional<std::size_t> cross_N;
  cross->add_option("--band", band_text, "a,b")->required();
  cross->add_option("--path", path_file, "JSON file: a process, or a scenario with a \"process\" field")->required();
  cross->add_option("--N", cross_N, "end time (default: horizon)");

  auto* conv = app.add_subcommand("converge", "Monte Carlo convergence diagnostics");
  std::string conv_model = "polya_urn";
  std::size_t conv_trials = 10000, conv_horizon = 10000, conv_window = 1000;
  double conv_tol = 1e-2;
  conv->add_option("--model", conv_model, "polya_urn | fair_walk")->capture_default_str();
  conv->add_option("--trials", conv_trials)->capture_default_str();
  conv->add_option("--horizon", conv_horizon)->capture_default_str();
  conv->add_option("--window", conv_window)->capture_default_str();
  conv->add_option("--tol", conv_tol)->capture_default_str();

  auto* bc = app.add_subcommand("bc", "Borel-Cantelli surrogate");
  std::string bc_model = "independent";
  std::string bc_prob = "1/2";
  bool bc_inverse_square = false;
  std::size_t bc_horizon = 200, bc_trials = 10000;
  bc->add_option("--model", bc_model)->check(CLI::IsMember({"independent"}))->capture_default_str();
  bc->add_option("--prob", bc_prob, "constant event probability")->capture_default_str();
  bc->add_flag("--inverse-square", bc_inverse_square, "use P(S_n) = 1/n^2 instead");
  bc->add_option("--horizon", bc_horizon)->capture_default_str();
  bc->add_option("--trials", bc_trials)->capture_default_str();

  auto* ui = app.add_subcommand("ui", "uniform-integrability modulus curves for a spike family");
  std::string ui_family = "shrinking";
  std::size_t ui_horizon = 64;
  double ui_p = 1;
  ui->add_option("--family", ui_family, "shrinking | fixed")->capture_default_str();
  ui->add_option("--horizon", ui_horizon)->capture_default_str();
  ui->add_option("--p", ui_p)->capture_default_str();

  auto* self = app.add_subcommand("selftest", "all acceptance suites plus the shipped scenarios");
  std::string scenario_dir = MGALE_SCENARIO_DIR;
  self->add_option("--scenarios", scenario_dir, "directory of scenario files")->capture_default_str();

  app.footer("Exit codes: 0 all checks hold, 1 a check failed, 2 configuration error.\nScenario check types:\n" +
             check_catalogue());

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kConfigError;
  }

  try {
    if (*check) {
      rc = check_files.empty() ? run_suites(g, check_only, true) : run_scenarios(g, check_files);
    } else if (*run) {
      rc = run_scenario_file(run_file, g.out_dir, g.overrides(), std::cout);
    } else if (*cross) {
      rc = g.mode.value_or("exact") == "exact" ? crossings_command<Rational>(g, band_text, path_file, cross_N)
                                               : crossings_command<double>(g, band_text, path_file, cross_N);
    } else if (*conv) {
      Json model{{"type", conv_model}};
      Json doc{{"name", "converge"}, {"mode", "float"}, {"checks", Json::array()}};
      doc["checks"].push_back({{"type", "limit_estimate"}, {"model", model}, {"trials", conv_trials},
                               {"horizon", conv_horizon}, {"window", conv_window}, {"tol", conv_tol}});
      doc["checks"].push_back({{"type", "band_decay"}, {"model", Json{{"type", "fair_walk"}}}, {"trials", conv_trials},
                               {"horizon", 32}, {"band", {"-1/2", "1/2"}}});
      Globals fg = g;
      fg.mode = "float";
      rc = scenario_from_json(fg, doc, "converge");
    } else if (*bc) {
      Json schedule = bc_inverse_square ? Json("inverse_square") : Json{{"constant", bc_prob}};
      Json doc{{"name", "bc"}, {"mode", "float"}, {"checks", Json::array()}};
      doc["checks"].push_back({{"type", "borel_cantelli"}, {"schedule", schedule}, {"trials", bc_trials},
                               {"horizon", bc_horizon}, {"tail_start", bc_horizon / 2},
                               {"min_match", bc_inverse_square ? 0.95 : 0.999}});
      Globals fg = g;
      fg.mode = "float";
      rc = scenario_from_json(fg, doc, "bc");
    } else if (*ui) {
      rc = g.mode.value_or("float") == "exact" ? ui_command<Rational>(g, ui_family, ui_horizon, ui_p)
                                               : ui_command<double>(g, ui_family, ui_horizon, ui_p);
    } else if (*self) {
      rc = run_suites(g, {}, false);
      const auto files = scenario_files(scenario_dir);
      if (!files.empty()) {
        Globals sg = g;
        sg.out_dir = (fs::path(g.out_dir) / "scenarios").string();
        rc = std::max(rc, run_scenarios(sg, files));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return rc;
}
