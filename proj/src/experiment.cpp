#include "lfamg/experiment.hpp"

#include "lfamg/detail/axis.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

namespace lfamg {

using nlohmann::json;

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError("config section '" + path + "' must be an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const auto& a : allowed)
      if (item.key() == a) {
        known = true;
        break;
      }
    if (!known) throw ConfigError("unknown config key '" + path + "." + item.key() + "'");
  }
}

template <class T>
T get_field(const json& j, const std::string& path, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + path + "." + key + "': " + e.what());
  }
}

SmootherSpec parse_smoother(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("cycle.smoother needs a 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "jacobi") {
    check_keys(j, "cycle.smoother", {"kind", "omega"});
    return SmootherSpec::jacobi(get_field<double>(j, "cycle.smoother", "omega", 2.0 / 3.0));
  }
  if (kind == "rbgs") {
    check_keys(j, "cycle.smoother", {"kind"});
    return SmootherSpec::red_black_gs();
  }
  if (kind == "line") {
    check_keys(j, "cycle.smoother", {"kind", "direction"});
    return SmootherSpec::line_relaxation(get_field<int>(j, "cycle.smoother", "direction", 0));
  }
  if (kind == "polynomial") {
    check_keys(j, "cycle.smoother", {"kind", "coefficients"});
    if (!j.contains("coefficients")) throw ConfigError("polynomial smoother needs 'coefficients'");
    return SmootherSpec::polynomial(j.at("coefficients").get<std::vector<double>>());
  }
  if (kind == "exact") {
    check_keys(j, "cycle.smoother", {"kind"});
    return SmootherSpec::exact_solve();
  }
  throw ConfigError("unknown smoother kind '" + kind + "'");
}

json smoother_to_json(const SmootherSpec& s) {
  json j;
  j["kind"] = to_string(s.kind);
  if (s.kind == SmootherKind::WeightedJacobi) j["omega"] = s.omega;
  if (s.kind == SmootherKind::LineRelaxation) j["direction"] = s.line_direction;
  if (s.kind == SmootherKind::Polynomial) j["coefficients"] = s.coefficients;
  return j;
}

json problem_to_json(const ProblemConfig& p) {
  return json{{"d", p.d}, {"n", p.n}, {"c", p.c}, {"bc", to_string(p.bc)}};
}

json cycle_to_json(const CycleSpec& c) {
  return json{{"type", to_string(c.type)},
              {"nu1", c.nu1},
              {"nu2", c.nu2},
              {"coarsest_n", c.coarsest_n},
              {"smoother", smoother_to_json(c.smoother)}};
}

json run_to_json(const RunConfig& r) {
  return json{{"iterations", r.iterations},
              {"seed", r.seed},
              {"track_steps", r.track_steps},
              {"tolerances",
               json{{"track", r.tol_track},
                    {"observed_vs_dense", r.tol_observed},
                    {"observed_vs_dense_degenerate", r.tol_observed_degenerate},
                    {"lfa_vs_dense", r.tol_lfa_dense},
                    {"compat", r.tol_compat}}}};
}

std::string iso_utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ExperimentConfig default_config() {
  ExperimentConfig config;
  config.problem = ProblemConfig{1, 8, 1.0, BoundaryKind::Dirichlet};
  config.cycle.type = CycleSpec::Type::TwoGrid;
  config.cycle.nu1 = 1;
  config.cycle.nu2 = 0;
  config.cycle.smoother = SmootherSpec::jacobi(2.0 / 3.0);
  config.cycle.coarsest_n = 2;
  return config;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, "<root>", {"problem", "cycle", "run", "outputs", "debug", "sweep"});
  ExperimentConfig config = default_config();

  if (j.contains("problem")) {
    const json& p = j.at("problem");
    check_keys(p, "problem", {"d", "n", "c", "bc"});
    config.problem.d = get_field<int>(p, "problem", "d", config.problem.d);
    config.problem.n = get_field<int>(p, "problem", "n", config.problem.n);
    config.problem.c = get_field<double>(p, "problem", "c", config.problem.c);
    if (p.contains("bc")) {
      try {
        config.problem.bc = boundary_kind_from_string(p.at("bc").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }
  if (j.contains("cycle")) {
    const json& c = j.at("cycle");
    check_keys(c, "cycle", {"type", "nu1", "nu2", "smoother", "coarsest_n", "transfer"});
    if (c.contains("type")) {
      const std::string type = c.at("type").get<std::string>();
      if (type == "two_grid")
        config.cycle.type = CycleSpec::Type::TwoGrid;
      else if (type == "v_cycle")
        config.cycle.type = CycleSpec::Type::VCycle;
      else
        throw ConfigError("unknown cycle type '" + type + "'");
    }
    config.cycle.nu1 = get_field<int>(c, "cycle", "nu1", config.cycle.nu1);
    config.cycle.nu2 = get_field<int>(c, "cycle", "nu2", config.cycle.nu2);
    config.cycle.coarsest_n = get_field<int>(c, "cycle", "coarsest_n", config.cycle.coarsest_n);
    if (c.contains("smoother")) config.cycle.smoother = parse_smoother(c.at("smoother"));
    if (c.contains("transfer")) {
      const json& t = c.at("transfer");
      check_keys(t, "cycle.transfer", {"restriction", "prolongation"});
      const std::string restriction = get_field<std::string>(t, "cycle.transfer", "restriction", "full_weighting");
      const std::string prolongation = get_field<std::string>(t, "cycle.transfer", "prolongation", "linear");
      if (restriction != "full_weighting") throw ConfigError("only full_weighting restriction is supported");
      if (prolongation != "linear") throw ConfigError("only linear prolongation is supported");
    }
  }
  if (j.contains("run")) {
    const json& r = j.at("run");
    check_keys(r, "run", {"iterations", "seed", "track_steps", "tolerances"});
    config.run.iterations = get_field<int>(r, "run", "iterations", config.run.iterations);
    config.run.seed = get_field<std::uint64_t>(r, "run", "seed", config.run.seed);
    config.run.track_steps = get_field<int>(r, "run", "track_steps", config.run.track_steps);
    if (r.contains("tolerances")) {
      const json& t = r.at("tolerances");
      check_keys(t, "run.tolerances",
                 {"track", "observed_vs_dense", "observed_vs_dense_degenerate", "lfa_vs_dense", "compat"});
      config.run.tol_track = get_field<double>(t, "run.tolerances", "track", config.run.tol_track);
      config.run.tol_observed = get_field<double>(t, "run.tolerances", "observed_vs_dense", config.run.tol_observed);
      config.run.tol_observed_degenerate =
          get_field<double>(t, "run.tolerances", "observed_vs_dense_degenerate", config.run.tol_observed_degenerate);
      config.run.tol_lfa_dense = get_field<double>(t, "run.tolerances", "lfa_vs_dense", config.run.tol_lfa_dense);
      config.run.tol_compat = get_field<double>(t, "run.tolerances", "compat", config.run.tol_compat);
    }
  }
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    check_keys(o, "outputs", {"json", "csv"});
    config.outputs.json_path = get_field<std::string>(o, "outputs", "json", "");
    config.outputs.csv_path = get_field<std::string>(o, "outputs", "csv", "");
  }
  if (j.contains("debug")) {
    const json& d = j.at("debug");
    check_keys(d, "debug", {"corrupt_corner_scaling", "mismatch_initial_data"});
    config.debug.corrupt_corner_scaling = get_field<bool>(d, "debug", "corrupt_corner_scaling", false);
    config.debug.mismatch_initial_data = get_field<bool>(d, "debug", "mismatch_initial_data", false);
  }
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    check_keys(s, "sweep", {"n", "c", "omega"});
    if (s.contains("n")) config.sweep.n = s.at("n").get<std::vector<int>>();
    if (s.contains("c")) config.sweep.c = s.at("c").get<std::vector<double>>();
    if (s.contains("omega")) config.sweep.omega = s.at("omega").get<std::vector<double>>();
  }
  validate_config(config);
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void validate_config(const ExperimentConfig& config) {
  try {
    const GridSpec grid = make_grid(config.problem.d, config.problem.n, config.problem.bc);
    if (!(config.problem.c > 0.0)) throw std::invalid_argument("reaction c must be strictly positive");
    config.cycle.validate(grid);
    if (config.run.iterations < 30) throw std::invalid_argument("run.iterations must be >= 30");
    if (config.run.track_steps < 1 || config.run.track_steps > 100)
      throw std::invalid_argument("run.track_steps must lie in [1, 100]");
    if (!config.sweep.omega.empty() && config.cycle.smoother.kind != SmootherKind::WeightedJacobi)
      throw std::invalid_argument("omega sweeps need the jacobi smoother");
    for (int n : config.sweep.n) make_grid(config.problem.d, n, config.problem.bc);
    for (double c : config.sweep.c)
      if (!(c > 0.0)) throw std::invalid_argument("sweep reaction values must be strictly positive");
    for (double w : config.sweep.omega)
      if (!(w > 0.0) || w > 1.0) throw std::invalid_argument("sweep omega values must lie in (0, 1]");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string resolve_output_path(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  if (const char* dir = std::getenv("LFAMG_OUT_DIR"); dir && *dir) return std::string(dir) + "/" + path;
  return path;
}

ProblemSetup make_setup(const ProblemConfig& problem) {
  const GridSpec bc_grid = make_grid(problem.d, problem.n, problem.bc);
  if (problem.bc == BoundaryKind::Periodic) {
    DiscreteOperator op = make_operator(bc_grid, problem.c);
    return ProblemSetup{bc_grid, bc_grid, anchor_for(problem.bc), op, op, std::nullopt};
  }
  ExtensionPair pair = extension_for(problem.bc, problem.n, problem.d);
  const GridSpec periodic_grid = pair.target_grid();
  return ProblemSetup{bc_grid,
                      periodic_grid,
                      anchor_for(problem.bc),
                      make_operator(bc_grid, problem.c),
                      make_operator(periodic_grid, problem.c),
                      std::move(pair)};
}

std::unique_ptr<LinearOp> corrupt_corner_scaling(const DiscreteOperator& periodic_op) {
  if (periodic_op.grid().bc != BoundaryKind::Periodic)
    throw std::invalid_argument("corner corruption applies to periodic operators");
  const GridSpec grid = periodic_op.grid();
  const double h = grid.h();
  const double delta = 1.0 / (h * h) - 1.0;  // corner coupling -1/h^2 becomes -1
  return std::make_unique<FnOp>(grid.total_points(), grid.total_points(), [periodic_op, grid, delta](const Vec& x) {
    Vec y = periodic_op.apply(x);
    const auto shape = grid.shape();
    for (int axis = 0; axis < grid.d; ++axis) {
      detail::for_each_line(shape, grid.d, axis, [&](Index base, Index stride, int len) {
        const Index last = base + static_cast<Index>(len - 1) * stride;
        y[base] += delta * x[last];
        y[last] += delta * x[base];
      });
    }
    return y;
  });
}

double tracking_defect(const LinearOp& iterator_bc, const DiscreteOperator& A_bc, const LinearOp& iterator_periodic,
                       const DiscreteOperator& A_periodic, const ExtensionPair& pair, int steps, std::uint64_t seed,
                       bool mismatch_initial_data) {
  const Index m = A_bc.rows();
  const Vec f = seeded_random_vector(m, seed);
  const Vec u0 = seeded_random_vector(m, seed + 1);
  const Vec f_tilde = pair.extend(f);
  Vec u_tilde0 = pair.extend(u0);
  if (mismatch_initial_data) u_tilde0 += seeded_random_vector(u_tilde0.size(), seed + 2);

  Vec u = u0;
  Vec u_tilde = u_tilde0;
  double worst = 0.0;
  for (int k = 0; k < steps; ++k) {
    u = u + iterator_bc.apply(f - A_bc.apply(u));
    u_tilde = u_tilde + iterator_periodic.apply(f_tilde - A_periodic.apply(u_tilde));
    const double defect = (u_tilde - pair.extend(u)).norm() / (1.0 + u_tilde.norm());
    worst = std::max(worst, defect);
  }
  return worst;
}

CompatSuiteResult run_verify_compat(const ExperimentConfig& config) {
  if (config.problem.bc == BoundaryKind::Periodic)
    throw ConfigError("verify-compat needs a boundary-value problem, not a periodic one");
  const ProblemSetup setup = make_setup(config.problem);
  const ExtensionPair& pair = *setup.pair;
  const double tol = config.run.tol_compat;
  const std::string bc_name = to_string(config.problem.bc);

  CompatSuiteResult result;
  auto record = [&](CompatReport report) {
    if (!report.verdict && result.first_failure.empty())
      result.first_failure = "(" + report.name_bc + ", " + report.name_periodic + ")";
    result.entries.push_back(std::move(report));
  };

  // Operators (optionally with the corner-scaling fault injected).
  if (config.debug.corrupt_corner_scaling) {
    const auto corrupted = corrupt_corner_scaling(setup.A_periodic);
    record(check_lfa_compatible(setup.A_bc, *corrupted, pair, tol, "A_" + bc_name, "A_periodic(corrupted)"));
    const DenseSolveOp inv_bc(setup.A_bc);
    const DenseSolveOp inv_p(*corrupted);
    record(check_lfa_compatible(inv_bc, inv_p, pair, tol, "inv(A_" + bc_name + ")", "inv(A_periodic(corrupted))"));
  } else {
    record(check_lfa_compatible(setup.A_bc, setup.A_periodic, pair, tol, "A_" + bc_name, "A_periodic"));
    const DenseSolveOp inv_bc(setup.A_bc);
    const DenseSolveOp inv_p(setup.A_periodic);
    record(check_lfa_compatible(inv_bc, inv_p, pair, tol, "inv(A_" + bc_name + ")", "inv(A_periodic)"));
  }

  // Each smoother kind, as the induced single-step iterator.
  std::vector<SmootherSpec> smoothers;
  smoothers.push_back(config.cycle.smoother.kind == SmootherKind::WeightedJacobi ? config.cycle.smoother
                                                                                 : SmootherSpec::jacobi(2.0 / 3.0));
  smoothers.push_back(SmootherSpec::red_black_gs());
  if (config.cycle.smoother.kind == SmootherKind::Polynomial)
    smoothers.push_back(config.cycle.smoother);
  else {
    const double diag = setup.A_bc.diagonal_value();
    smoothers.push_back(SmootherSpec::polynomial({0.8 / diag, 0.4 / diag}));
  }
  if (config.problem.d >= 2) smoothers.push_back(SmootherSpec::line_relaxation(0));

  for (const SmootherSpec& spec : smoothers) {
    const Smoother s_bc(spec, setup.A_bc);
    const Smoother s_p(spec, setup.A_periodic);
    record(check_lfa_compatible(*s_bc.iterator_op(), *s_p.iterator_op(), pair, tol, "S_" + spec.name() + "_" + bc_name,
                                "S_" + spec.name() + "_periodic"));
  }

  // Transfers: full weighting and linear interpolation, rectangular checks.
  const ExtensionPair coarse_pair = extension_for(config.problem.bc, config.problem.n / 2, config.problem.d);
  const auto fw_bc = full_weighting(setup.bc_grid, setup.anchor);
  const auto fw_p = full_weighting(setup.periodic_grid, setup.anchor);
  record(check_lfa_compatible(*fw_bc, *fw_p, pair, coarse_pair, tol, "FW_" + bc_name, "FW_periodic"));
  const auto interp_bc = dlinear_interpolation(setup.bc_grid, setup.anchor);
  const auto interp_p = dlinear_interpolation(setup.periodic_grid, setup.anchor);
  record(check_lfa_compatible(*interp_bc, *interp_p, coarse_pair, pair, tol, "Interp_" + bc_name, "Interp_periodic"));

  // Two-grid and V-cycle iterators.
  CycleSpec tg = config.cycle;
  tg.type = CycleSpec::Type::TwoGrid;
  const Multigrid mg_tg_bc(setup.bc_grid, config.problem.c, tg, setup.anchor);
  const Multigrid mg_tg_p(setup.periodic_grid, config.problem.c, tg, setup.anchor);
  record(check_lfa_compatible(*mg_tg_bc.iterator_op(), *mg_tg_p.iterator_op(), pair, tol, "B_TG_" + bc_name,
                              "B_TG_periodic"));

  CycleSpec vc = config.cycle;
  vc.type = CycleSpec::Type::VCycle;
  const Multigrid mg_vc_bc(setup.bc_grid, config.problem.c, vc, setup.anchor);
  const Multigrid mg_vc_p(setup.periodic_grid, config.problem.c, vc, setup.anchor);
  record(check_lfa_compatible(*mg_vc_bc.iterator_op(), *mg_vc_p.iterator_op(), pair, tol, "B_VCycle_" + bc_name,
                              "B_VCycle_periodic"));

  result.all_ok = result.first_failure.empty();
  return result;
}

ConvergenceReport run_compare(const ExperimentConfig& config) {
  validate_config(config);
  const ProblemSetup setup = make_setup(config.problem);
  ConvergenceReport report;
  report.problem = config.problem;
  report.cycle = config.cycle;
  report.run = config.run;

  const LfaResult lfa = lfa_convergence_factor(config.cycle, setup.periodic_grid, config.problem.c, setup.anchor);
  report.rho_lfa = lfa.rho;
  report.argmax_theta = lfa.argmax.angles();
  report.lfa_table.reserve(lfa.table.size());
  for (const auto& [freq, rho] : lfa.table) report.lfa_table.emplace_back(freq.angles(), rho);

  const Multigrid mg_bc(setup.bc_grid, config.problem.c, config.cycle, setup.anchor);
  const auto propagator_bc = mg_bc.propagator_op();

  if (setup.bc_grid.total_points() <= 4096) {
    const SpectralInfo info = dense_spectral_info(*propagator_bc);
    report.rho_dense_bc = info.rho;
    report.gap_bc = info.gap;
    report.near_degenerate = info.rho > 0.0 && info.gap < 0.05;
  }
  if (setup.periodic_grid.total_points() <= 4096) {
    if (config.problem.bc == BoundaryKind::Periodic) {
      report.rho_dense_periodic = report.rho_dense_bc;
    } else {
      const Multigrid mg_p(setup.periodic_grid, config.problem.c, config.cycle, setup.anchor);
      report.rho_dense_periodic = dense_spectral_info(*mg_p.propagator_op()).rho;
    }
  }

  const RateMeasurement rate = measure_asymptotic_rate(*propagator_bc, config.run.iterations, config.run.seed);
  report.rho_observed = rate.rho;
  report.diverged = rate.diverged;
  report.residual_history = rate.history;

  if (setup.pair) {
    const Multigrid mg_p(setup.periodic_grid, config.problem.c, config.cycle, setup.anchor);
    report.defect_track =
        tracking_defect(*mg_bc.iterator_op(), setup.A_bc, *mg_p.iterator_op(), setup.A_periodic, *setup.pair,
                        config.run.track_steps, config.run.seed, config.debug.mismatch_initial_data);
  } else {
    report.defect_track = 0.0;
  }

  if (report.rho_dense_periodic)
    report.lfa_matches_dense_periodic = std::abs(report.rho_lfa - *report.rho_dense_periodic) <= config.run.tol_lfa_dense;
  if (report.rho_dense_bc) {
    report.bc_bounded_by_lfa = *report.rho_dense_bc <= report.rho_lfa + config.run.tol_lfa_dense;
    report.equality_with_lfa = std::abs(*report.rho_dense_bc - report.rho_lfa) <= config.run.tol_lfa_dense;
    const double tol = report.near_degenerate ? config.run.tol_observed_degenerate : config.run.tol_observed;
    report.observed_matches_dense = !report.diverged && std::abs(report.rho_observed - *report.rho_dense_bc) <= tol;
  }
  report.track_ok = config.debug.mismatch_initial_data || report.defect_track <= config.run.tol_track;
  return report;
}

TrackResult run_track(const ExperimentConfig& config) {
  validate_config(config);
  if (config.problem.bc == BoundaryKind::Periodic)
    throw ConfigError("track needs a boundary-value problem, not a periodic one");
  const ProblemSetup setup = make_setup(config.problem);
  const ExtensionPair& pair = *setup.pair;

  TrackResult result;
  result.asserted = !config.debug.mismatch_initial_data;

  const Smoother s_bc(config.cycle.smoother, setup.A_bc);
  const Smoother s_p(config.cycle.smoother, setup.A_periodic);
  result.entries.push_back(
      {"smoother:" + config.cycle.smoother.name(),
       tracking_defect(*s_bc.iterator_op(), setup.A_bc, *s_p.iterator_op(), setup.A_periodic, pair,
                       config.run.track_steps, config.run.seed, config.debug.mismatch_initial_data)});

  const Multigrid mg_bc(setup.bc_grid, config.problem.c, config.cycle, setup.anchor);
  const Multigrid mg_p(setup.periodic_grid, config.problem.c, config.cycle, setup.anchor);
  result.entries.push_back(
      {std::string(to_string(config.cycle.type)),
       tracking_defect(*mg_bc.iterator_op(), setup.A_bc, *mg_p.iterator_op(), setup.A_periodic, pair,
                       config.run.track_steps, config.run.seed, config.debug.mismatch_initial_data)});

  for (const TrackEntry& entry : result.entries) result.worst = std::max(result.worst, entry.max_defect);
  result.ok = !result.asserted || result.worst <= config.run.tol_track;
  return result;
}

std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& config) {
  const std::vector<int> ns = config.sweep.n.empty() ? std::vector<int>{config.problem.n} : config.sweep.n;
  const std::vector<double> cs = config.sweep.c.empty() ? std::vector<double>{config.problem.c} : config.sweep.c;
  std::vector<double> omegas;
  if (config.sweep.omega.empty())
    omegas = {config.cycle.smoother.omega};
  else
    omegas = config.sweep.omega;

  std::vector<ExperimentConfig> expanded;
  for (int n : ns) {
    for (double c : cs) {
      for (double omega : omegas) {
        ExperimentConfig entry = config;
        entry.sweep = SweepConfig{};
        entry.problem.n = n;
        entry.problem.c = c;
        if (config.cycle.smoother.kind == SmootherKind::WeightedJacobi) entry.cycle.smoother.omega = omega;
        expanded.push_back(std::move(entry));
      }
    }
  }
  return expanded;
}

std::vector<ConvergenceReport> run_sweep(const ExperimentConfig& config, int workers) {
  const std::vector<ExperimentConfig> configs = expand_sweep(config);
  std::vector<ConvergenceReport> results(configs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) results[i] = run_compare(configs[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) return;
      results[i] = run_compare(configs[i]);
    }
  };
  const std::size_t pool_size = std::min<std::size_t>(static_cast<std::size_t>(workers), configs.size());
  std::vector<std::thread> pool;
  pool.reserve(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  return results;
}

std::string compare_csv_header() {
  return "d,n,c,bc,smoother,ω,ν1,ν2,rho_lfa,rho_dense_bc,rho_dense_periodic,rho_observed,argmax_freq,"
         "defect_track";
}

std::string compare_csv_row(const ConvergenceReport& report) {
  std::ostringstream os;
  os << report.problem.d << ',' << report.problem.n << ',' << fmt_double(report.problem.c) << ','
     << to_string(report.problem.bc) << ',' << to_string(report.cycle.smoother.kind) << ',';
  if (report.cycle.smoother.kind == SmootherKind::WeightedJacobi) os << fmt_double(report.cycle.smoother.omega);
  os << ',' << report.cycle.nu1 << ',' << report.cycle.nu2 << ',' << fmt_double(report.rho_lfa) << ',';
  if (report.rho_dense_bc) os << fmt_double(*report.rho_dense_bc);
  os << ',';
  if (report.rho_dense_periodic) os << fmt_double(*report.rho_dense_periodic);
  os << ',' << fmt_double(report.rho_observed) << ',';
  for (int a = 0; a < report.problem.d; ++a) {
    if (a > 0) os << ';';
    os << fmt_double(report.argmax_theta[static_cast<std::size_t>(a)]);
  }
  os << ',' << fmt_double(report.defect_track);
  return os.str();
}

std::string compare_csv(const std::vector<ConvergenceReport>& reports) {
  std::ostringstream os;
  os << compare_csv_header() << '\n';
  for (const ConvergenceReport& report : reports) os << compare_csv_row(report) << '\n';
  return os.str();
}

namespace {

json report_to_json(const ConvergenceReport& r) {
  json results;
  results["rho_lfa"] = r.rho_lfa;
  json argmax = json::array();
  for (int a = 0; a < r.problem.d; ++a) argmax.push_back(r.argmax_theta[static_cast<std::size_t>(a)]);
  results["argmax_freq"] = argmax;
  json table = json::array();
  for (const auto& [theta, rho] : r.lfa_table) {
    json row = json::array();
    for (int a = 0; a < r.problem.d; ++a) row.push_back(theta[static_cast<std::size_t>(a)]);
    row.push_back(rho);
    table.push_back(std::move(row));
  }
  results["lfa_table"] = std::move(table);
  results["dense_within_guard"] =
      json{{"bc", r.rho_dense_bc.has_value()}, {"periodic", r.rho_dense_periodic.has_value()}};
  results["rho_dense_periodic"] = r.rho_dense_periodic ? json(*r.rho_dense_periodic) : json(nullptr);
  results["rho_dense_bc"] = r.rho_dense_bc ? json(*r.rho_dense_bc) : json(nullptr);
  results["gap_bc"] = r.gap_bc;
  results["near_degenerate"] = r.near_degenerate;
  results["rho_observed"] = r.rho_observed;
  results["diverged"] = r.diverged;
  results["residual_history"] = r.residual_history;
  results["defect_track"] = r.defect_track;
  results["rho_dense_bc_equals_rho_lfa"] = r.equality_with_lfa;
  results["assertions"] = json{{"lfa_vs_dense_periodic", r.lfa_matches_dense_periodic},
                               {"bc_bounded_by_lfa", r.bc_bounded_by_lfa},
                               {"observed_vs_dense", r.observed_matches_dense},
                               {"track", r.track_ok},
                               {"all", r.assertions_ok()}};
  return json{{"problem", problem_to_json(r.problem)},
              {"cycle", cycle_to_json(r.cycle)},
              {"run", run_to_json(r.run)},
              {"results", results}};
}

json reports_payload(const std::vector<ConvergenceReport>& reports) {
  json payload = json::array();
  for (const ConvergenceReport& report : reports) payload.push_back(report_to_json(report));
  return payload;
}

}  // namespace

std::string compare_payload_json(const std::vector<ConvergenceReport>& reports) {
  return reports_payload(reports).dump(2) + "\n";
}

std::string compare_report_json(const std::vector<ConvergenceReport>& reports) {
  json document;
  document["metadata"] = json{{"tool", "lfamg"}, {"generated_at", iso_utc_now()}};
  document["experiments"] = reports_payload(reports);
  return document.dump(2) + "\n";
}

std::string compat_report_json(const CompatSuiteResult& result) {
  json entries = json::array();
  for (const CompatReport& report : result.entries) {
    json entry;
    entry["pair"] = json::array({report.name_bc, report.name_periodic});
    entry["operator_defect"] = report.operator_defect;
    entry["range_defect"] = report.range_defect;
    entry["tol"] = report.tol;
    entry["verdict"] = report.verdict;
    entry["probe"] = report.probe;
    entry["counterexample_basis_index"] =
        report.counterexample ? json(static_cast<std::int64_t>(*report.counterexample)) : json(nullptr);
    entries.push_back(std::move(entry));
  }
  json document;
  document["metadata"] = json{{"tool", "lfamg"}, {"generated_at", iso_utc_now()}};
  document["entries"] = std::move(entries);
  document["all_ok"] = result.all_ok;
  document["first_failure"] = result.first_failure;
  return document.dump(2) + "\n";
}

std::string track_report_json(const TrackResult& result) {
  json entries = json::array();
  for (const TrackEntry& entry : result.entries)
    entries.push_back(json{{"iterator", entry.iterator_name}, {"max_defect", entry.max_defect}});
  json document;
  document["metadata"] = json{{"tool", "lfamg"}, {"generated_at", iso_utc_now()}};
  document["entries"] = std::move(entries);
  document["worst"] = result.worst;
  document["asserted"] = result.asserted;
  document["ok"] = result.ok;
  return document.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace lfamg
