#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "gravnoise/bell_correlation.hpp"
#include "gravnoise/deviation_dynamics.hpp"
#include "gravnoise/errors.hpp"
#include "gravnoise/io.hpp"
#include "gravnoise/metric_background.hpp"
#include "gravnoise/stochastic_probability.hpp"

namespace gravnoise::cli {

using nlohmann::json;

namespace {

constexpr double kGaugeTolerance = 1e-12;
constexpr double kCalibrationTolerance = 1e-12;
constexpr double kBoundSlack = 1e-9;
constexpr double kStepGuardFraction = 1.0 / 20.0;
constexpr double kSchrodingerTolerance = 1e-8;
constexpr double kDiagnosticTolerance = 0.1;

json base_report(const char* command, const RunConfig& config, const json& extra_inputs = {}) {
  json inputs = {{"config", to_json(config)}};
  if (!extra_inputs.is_null()) inputs["files"] = extra_inputs;
  return {{"command", command},
          {"tool_version", kToolVersion},
          {"seed", config.seed},
          {"input_hash", io::hex64(io::fnv1a64(inputs.dump()))}};
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericalError(std::string(what) + " is not finite");
}

BackgroundEnsemble load_ensemble(const std::string& path, json& files) {
  const std::string text = io::read_file(path);
  files["mode_file_hash"] = io::hex64(io::fnv1a64(text));
  return io::ensemble_from_json(text);
}

json gauge_summary(const BackgroundEnsemble& ens) {
  double harmonic = 0.0, field = 0.0;
  for (const GwMode& m : ens.modes) {
    const auto r = gauge_residuals(m);
    harmonic = std::fmax(harmonic, r.harmonic);
    field = std::fmax(field, r.field_equation);
  }
  return {{"max_harmonic_residual", harmonic}, {"max_field_eq_residual", field}};
}

}  // namespace

json to_json(const RunConfig& c) {
  json j = {{"seed", c.seed},
            {"out", c.out},
            {"ensemble", c.ensemble},
            {"n_modes", c.n_modes},
            {"sigma", c.sigma},
            {"omega_min", c.omega_min},
            {"omega_max", c.omega_max},
            {"h_max", c.h_max},
            {"target", c.target},
            {"position", c.position},
            {"ell0", c.ell0},
            {"elldot0", c.elldot0},
            {"tau_end", c.tau_end},
            {"c", c.c},
            {"angles", c.angles},
            {"trials", c.trials},
            {"analytic", c.analytic},
            {"scan", c.scan},
            {"coarse_steps", c.coarse_steps},
            {"refine_iters", c.refine_iters},
            {"duration", c.duration},
            {"extent", c.extent},
            {"variant", c.variant},
            {"field_case", c.field_case},
            {"grid_n", c.grid_n},
            {"x_min", c.x_min},
            {"x_max", c.x_max},
            {"mass", c.mass},
            {"s0", c.s0},
            {"p", c.p}};
  j["calibrate"] = c.calibrate ? json(*c.calibrate) : json(nullptr);
  j["r1010"] = c.r1010 ? json(*c.r1010) : json(nullptr);
  j["dt"] = c.dt ? json(*c.dt) : json(nullptr);
  // workers is deliberately absent: results do not depend on it.
  return j;
}

void apply_config_json(const json& doc, RunConfig& c) {
  if (!doc.is_object()) throw InputError("config file must contain a JSON object");
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "out") c.out = value.get<std::string>();
      else if (key == "ensemble") c.ensemble = value.get<std::string>();
      else if (key == "n_modes") c.n_modes = value.get<std::int64_t>();
      else if (key == "sigma") c.sigma = value.get<double>();
      else if (key == "omega_min") c.omega_min = value.get<double>();
      else if (key == "omega_max") c.omega_max = value.get<double>();
      else if (key == "h_max") c.h_max = value.get<double>();
      else if (key == "calibrate") c.calibrate = value.is_null() ? std::nullopt : std::optional(value.get<double>());
      else if (key == "target") c.target = value.get<double>();
      else if (key == "r1010") c.r1010 = value.is_null() ? std::nullopt : std::optional(value.get<double>());
      else if (key == "position") c.position = value.get<std::array<double, 3>>();
      else if (key == "ell0") c.ell0 = value.get<std::array<double, 3>>();
      else if (key == "elldot0") c.elldot0 = value.get<std::array<double, 3>>();
      else if (key == "tau_end") c.tau_end = value.get<double>();
      else if (key == "dt") c.dt = value.is_null() ? std::nullopt : std::optional(value.get<double>());
      else if (key == "c") c.c = value.get<double>();
      else if (key == "angles") c.angles = value.get<std::array<double, 4>>();
      else if (key == "trials") c.trials = value.get<std::uint64_t>();
      else if (key == "analytic") c.analytic = value.get<bool>();
      else if (key == "scan") c.scan = value.get<bool>();
      else if (key == "coarse_steps") c.coarse_steps = value.get<int>();
      else if (key == "refine_iters") c.refine_iters = value.get<int>();
      else if (key == "duration") c.duration = value.get<double>();
      else if (key == "extent") c.extent = value.get<double>();
      else if (key == "workers") c.workers = value.get<unsigned>();
      else if (key == "variant") c.variant = value.get<std::string>();
      else if (key == "field_case") c.field_case = value.get<std::string>();
      else if (key == "grid_n") c.grid_n = value.get<std::uint64_t>();
      else if (key == "x_min") c.x_min = value.get<double>();
      else if (key == "x_max") c.x_max = value.get<double>();
      else if (key == "mass") c.mass = value.get<double>();
      else if (key == "s0") c.s0 = value.get<double>();
      else if (key == "p") c.p = value.get<double>();
      else throw InputError("unknown config key '" + key + "'");
    } catch (const json::exception& e) {
      throw InputError("config key '" + key + "': " + e.what());
    }
  }
}

CommandOutput run_background(const RunConfig& config) {
  EnsembleParams params;
  params.n_modes = config.n_modes;
  params.sigma = config.sigma;
  params.omega_min = config.omega_min;
  params.omega_max = config.omega_max;
  params.h_max = config.h_max;
  params.seed = config.seed;
  BackgroundEnsemble ens = sample_ensemble(params);

  json result = gauge_summary(ens);
  json warnings = json::array();
  result["n_modes"] = ens.modes.size();
  result["max_strain"] = max_strain(ens);

  const double action = total_action(ens);
  if (config.calibrate) {
    if (action > 0.0) {
      const auto cal = calibrate_action(ens, *config.calibrate);
      ens = cal.ensemble;
      result["calibration_scale"] = cal.scale;
      if (ens.h_max > config.h_max) {
        warnings.push_back("calibrated amplitudes exceed the requested h_max; h_max raised");
      }
    } else {
      warnings.push_back("calibration impossible: all amplitudes are zero");
    }
  } else if (!(action > 0.0)) {
    warnings.push_back("calibration impossible: all amplitudes are zero");
  }
  result["total_action"] = total_action(ens);
  result["h_max"] = ens.h_max;
  result["warnings"] = warnings;
  require_finite(result["total_action"].get<double>(), "total action");

  CommandOutput out;
  out.report = base_report("background", config);
  out.report["tolerances"] = {{"gauge_residual", kGaugeTolerance},
                              {"calibration_relative", kCalibrationTolerance}};
  out.report["result"] = result;
  out.artifact = io::ensemble_to_json(ens);
  out.artifact_to_stdout = config.out.empty();
  return out;
}

CommandOutput run_calibrate(const RunConfig& config) {
  if (config.ensemble.empty()) throw ParameterError("calibrate needs --ensemble <file>");
  json files;
  const BackgroundEnsemble ens = load_ensemble(config.ensemble, files);
  const double before = total_action(ens);
  const auto cal = calibrate_action(ens, config.target);
  const double after = total_action(cal.ensemble);
  require_finite(after, "calibrated action");

  json warnings = json::array();
  if (cal.ensemble.h_max > ens.h_max) {
    warnings.push_back("calibrated amplitudes exceed the input h_max; h_max raised");
  }
  CommandOutput out;
  out.report = base_report("calibrate", config, files);
  out.report["tolerances"] = {{"calibration_relative", kCalibrationTolerance}};
  out.report["result"] = {{"target", config.target},
                          {"total_action_before", before},
                          {"total_action", after},
                          {"relative_error", std::fabs(after - config.target) / config.target},
                          {"scale", cal.scale},
                          {"h_max", cal.ensemble.h_max},
                          {"warnings", warnings}};
  out.artifact = io::ensemble_to_json(cal.ensemble);
  out.artifact_to_stdout = config.out.empty();
  return out;
}

CommandOutput run_deviation(const RunConfig& config) {
  json files;
  CurvatureSource source;
  if (!config.ensemble.empty()) {
    const BackgroundEnsemble ens = load_ensemble(config.ensemble, files);
    source = ensemble_curvature(ens, config.position, config.c);
  } else {
    source = constant_curvature(config.r1010.value_or(1.0), config.c);
  }
  const double dt = config.dt.value_or(2.0 * std::numbers::pi / 1000.0);
  const DeviationState start{config.ell0, config.elldot0, 0.0};
  const Trajectory traj = integrate_deviation(start, source, config.tau_end, dt, config.c);

  const DeviationState& last = traj.samples.back();
  CommandOutput out;
  out.report = base_report("deviation", config, files.is_null() ? json() : files);
  out.report["tolerances"] = {{"step_guard_fraction", kStepGuardFraction}};
  out.report["result"] = {{"steps", traj.samples.size() - 1},
                          {"dt", traj.dt},
                          {"omega_max", source.omega_max},
                          {"unstable", traj.unstable},
                          {"final_ell", last.ell},
                          {"final_elldot", last.ell_dot}};
  out.artifact = io::trajectory_csv(traj);
  out.artifact_to_stdout = config.out.empty();
  return out;
}

CommandOutput run_bell(const RunConfig& config) {
  json files;
  BackgroundEnsemble ens;  // flat unless a file is given
  if (!config.ensemble.empty()) ens = load_ensemble(config.ensemble, files);

  BellSettings settings{{config.angles[0]}, {config.angles[1]}, {config.angles[2]}, {config.angles[3]}};
  json bell;
  ObservableTerms terms;
  double metric_factor = 1.0;
  std::uint64_t n_trials = 0;
  json stderrs;
  std::string mode;

  if (config.scan) {
    mode = "scan";
    const Maximum best = maximize_observable(cosine_correlator(), config.coarse_steps, config.refine_iters);
    settings = best.settings;
    terms = bell_terms(settings, cosine_correlator());
  } else if (config.analytic) {
    mode = "analytic";
    terms = bell_terms(settings, cosine_correlator());
  } else {
    mode = "monte_carlo";
    n_trials = config.trials;
    MonteCarloOptions opts;
    opts.duration = config.duration;
    opts.extent = config.extent;
    opts.workers = config.workers;
    const auto est = [&](const PolarizerSetting& x, const PolarizerSetting& y) {
      return correlation_mc(ens, x, y, config.trials, config.seed, opts);
    };
    const auto ab = est(settings.a, settings.b);
    const auto apb = est(settings.a_prime, settings.b);
    const auto abp = est(settings.a, settings.b_prime);
    const auto apbp = est(settings.a_prime, settings.b_prime);
    terms.ab = ab.mean;
    terms.a_prime_b = apb.mean;
    terms.a_b_prime = abp.mean;
    terms.a_prime_b_prime = apbp.mean;
    terms.value = std::fabs(0.5 * (ab.mean + apb.mean + abp.mean - apbp.mean));
    metric_factor = 0.25 * (ab.metric_factor_mean + apb.metric_factor_mean +
                            abp.metric_factor_mean + apbp.metric_factor_mean);
    stderrs = {{"AB", ab.stderr_}, {"A'B", apb.stderr_}, {"AB'", abp.stderr_}, {"A'B'", apbp.stderr_}};
  }
  require_finite(terms.value, "Bell observable");

  const BoundCheck bound = check_bound(terms.value);
  bell = {{"angles", {settings.a.angle, settings.a_prime.angle, settings.b.angle, settings.b_prime.angle}},
          {"M", {{"AB", terms.ab}, {"A'B", terms.a_prime_b}, {"AB'", terms.a_b_prime}, {"A'B'", terms.a_prime_b_prime}}},
          {"S", terms.value},
          {"bound", kBellBound},
          {"within_bound", bound.within_bound},
          {"margin", bound.margin},
          {"n_trials", n_trials},
          {"seed", config.seed},
          {"metric_factor_mean", metric_factor},
          {"mode", mode}};
  if (!stderrs.is_null()) bell["M_stderr"] = stderrs;

  CommandOutput out;
  out.report = base_report("bell", config, files.is_null() ? json() : files);
  out.report["tolerances"] = {{"bound_slack", kBoundSlack}};
  out.report["result"] = bell;
  if (!config.out.empty()) out.artifact = bell.dump(2) + "\n";
  return out;
}

CommandOutput run_schrodinger(const RunConfig& config) {
  const PhaseDivisor divisor = parse_phase_divisor(config.variant);
  if (config.field_case != "plane" && config.field_case != "constant") {
    throw ParameterError("field_case must be 'plane' or 'constant'");
  }
  Grid1D grid{config.x_min, config.x_max, static_cast<std::size_t>(config.grid_n)};
  validate(grid);
  const double dt = config.dt.value_or(grid.dx() * grid.dx());
  const double energy = config.p * config.p / (2.0 * config.mass);
  const bool plane = config.field_case == "plane";

  ClassicalField cf;
  cf.grid = grid;
  cf.dt = dt;
  cf.mass = config.mass;
  cf.potential.assign(grid.n, 0.0);
  cf.amplitude_t0.assign(grid.n, 1.0);
  cf.amplitude_t1.assign(grid.n, 1.0);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    cf.action_t0.push_back(plane ? config.p * x : 0.0);
    cf.action_t1.push_back(plane ? config.p * x - energy * dt : 0.0);
  }
  const auto psi0 = wkb_field(cf.amplitude_t0, cf.action_t0, config.s0, divisor);
  const auto psi1 = wkb_field(cf.amplitude_t1, cf.action_t1, config.s0, divisor);
  const double residual =
      schrodinger_residual(psi0, psi1, cf.potential, grid, dt, config.mass, config.s0);
  require_finite(residual, "Schroedinger residual");

  // With divisor S0 a plane wave leaves |2E - 4E| = 2E at leading order.
  const double predicted = (plane && divisor == PhaseDivisor::kS0) ? 2.0 * energy : 0.0;

  json report = {{"residual_max", residual},
                 {"grid_n", grid.n},
                 {"dt", dt},
                 {"variant", to_string(divisor)},
                 {"field_case", config.field_case},
                 {"energy", plane ? energy : 0.0},
                 {"predicted_residual", predicted},
                 {"hj_residual", hamilton_jacobi_residual(cf)},
                 {"continuity_residual", continuity_residual(cf)}};

  CommandOutput out;
  out.report = base_report("schrodinger", config);
  out.report["tolerances"] = {{"residual_2S0", kSchrodingerTolerance},
                              {"diagnostic_relative", kDiagnosticTolerance}};
  out.report["result"] = report;
  if (!config.out.empty()) out.artifact = report.dump(2) + "\n";
  return out;
}

}  // namespace gravnoise::cli
