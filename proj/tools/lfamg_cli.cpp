#include "lfamg/experiment.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertionFailed = 1;
constexpr int kExitConfigError = 2;

struct CommonArgs {
  std::string config_path;
  std::string out_json;
  std::string out_csv;
  std::optional<std::uint64_t> seed;
  int workers = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_csv, bool with_workers) {
  cmd->add_option("--config", args.config_path, "Path to the JSON experiment config");
  cmd->add_option("--out-json", args.out_json, "Write the JSON report here (overrides the config)");
  if (with_csv) cmd->add_option("--out-csv", args.out_csv, "Write the CSV report here (overrides the config)");
  cmd->add_option("--seed", args.seed, "Override the run seed");
  if (with_workers) cmd->add_option("--workers", args.workers, "Concurrent sweep workers")->check(CLI::PositiveNumber);
}

lfamg::ExperimentConfig load(const CommonArgs& args) {
  lfamg::ExperimentConfig config =
      args.config_path.empty() ? lfamg::default_config() : lfamg::load_config_file(args.config_path);
  if (args.seed) config.run.seed = *args.seed;
  if (!args.out_json.empty()) config.outputs.json_path = args.out_json;
  if (!args.out_csv.empty()) config.outputs.csv_path = args.out_csv;
  return config;
}

void write_outputs(const lfamg::ExperimentConfig& config, const std::vector<lfamg::ConvergenceReport>& reports) {
  if (!config.outputs.json_path.empty())
    lfamg::write_text_file(lfamg::resolve_output_path(config.outputs.json_path),
                           lfamg::compare_report_json(reports));
  if (!config.outputs.csv_path.empty())
    lfamg::write_text_file(lfamg::resolve_output_path(config.outputs.csv_path), lfamg::compare_csv(reports));
}

void print_report_line(const lfamg::ConvergenceReport& r) {
  std::cout << "d=" << r.problem.d << " n=" << r.problem.n << " bc=" << lfamg::to_string(r.problem.bc)
            << " smoother=" << lfamg::to_string(r.cycle.smoother.kind) << " rho_lfa=" << r.rho_lfa;
  if (r.rho_dense_bc) std::cout << " rho_dense_bc=" << *r.rho_dense_bc;
  if (r.rho_dense_periodic) std::cout << " rho_dense_periodic=" << *r.rho_dense_periodic;
  std::cout << " rho_observed=" << r.rho_observed << " defect_track=" << r.defect_track
            << (r.assertions_ok() ? " [ok]" : " [FAILED]") << '\n';
}

int cmd_verify_compat(const CommonArgs& args) {
  const lfamg::ExperimentConfig config = load(args);
  const lfamg::CompatSuiteResult result = lfamg::run_verify_compat(config);
  for (const lfamg::CompatReport& entry : result.entries) {
    std::cout << (entry.verdict ? "pass" : "FAIL") << "  (" << entry.name_bc << ", " << entry.name_periodic
              << ")  operator_defect=" << entry.operator_defect << " range_defect=" << entry.range_defect << '\n';
  }
  if (!config.outputs.json_path.empty())
    lfamg::write_text_file(lfamg::resolve_output_path(config.outputs.json_path), lfamg::compat_report_json(result));
  if (!result.all_ok) {
    std::cout << "first failing pair: " << result.first_failure << '\n';
    return kExitAssertionFailed;
  }
  return kExitOk;
}

int cmd_compare(const CommonArgs& args) {
  const lfamg::ExperimentConfig config = load(args);
  const std::vector<lfamg::ConvergenceReport> reports{lfamg::run_compare(config)};
  print_report_line(reports.front());
  write_outputs(config, reports);
  return reports.front().assertions_ok() ? kExitOk : kExitAssertionFailed;
}

int cmd_track(const CommonArgs& args) {
  const lfamg::ExperimentConfig config = load(args);
  const lfamg::TrackResult result = lfamg::run_track(config);
  for (const lfamg::TrackEntry& entry : result.entries)
    std::cout << entry.iterator_name << "  max_defect=" << entry.max_defect << '\n';
  if (!result.asserted) std::cout << "(mismatched initial data: defects reported, not asserted)\n";
  if (!config.outputs.json_path.empty())
    lfamg::write_text_file(lfamg::resolve_output_path(config.outputs.json_path), lfamg::track_report_json(result));
  return result.ok ? kExitOk : kExitAssertionFailed;
}

int cmd_sweep(const CommonArgs& args) {
  const lfamg::ExperimentConfig config = load(args);
  const std::vector<lfamg::ConvergenceReport> reports = lfamg::run_sweep(config, args.workers);
  for (const lfamg::ConvergenceReport& report : reports) print_report_line(report);
  write_outputs(config, reports);
  for (const lfamg::ConvergenceReport& report : reports)
    if (!report.assertions_ok()) return kExitAssertionFailed;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric multigrid experiments with machine-checked local Fourier analysis"};
  app.require_subcommand(1);

  CommonArgs verify_args, compare_args, track_args, sweep_args;
  CLI::App* verify = app.add_subcommand("verify-compat", "Certify the LFA-compatibility of every configured pair");
  add_common(verify, verify_args, false, false);
  CLI::App* compare = app.add_subcommand("compare", "Compare rho_lfa, dense spectral radii and the observed rate");
  add_common(compare, compare_args, true, false);
  CLI::App* track = app.add_subcommand("track", "Run the BC iteration and its periodic embedding side by side");
  add_common(track, track_args, false, false);
  CLI::App* sweep = app.add_subcommand("sweep", "Run a compare sweep over config axes");
  add_common(sweep, sweep_args, true, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify_compat(verify_args);
    if (compare->parsed()) return cmd_compare(compare_args);
    if (track->parsed()) return cmd_track(track_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
  } catch (const lfamg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAssertionFailed;
  }
  return kExitConfigError;
}
