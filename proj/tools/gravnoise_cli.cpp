// gravnoise: command-line front end.
//
//   gravnoise background  --n-modes 64 --sigma 1e-4 --seed 7 --out modes.json
//   gravnoise calibrate   --ensemble modes.json --target 1.0 --out calibrated.json
//   gravnoise deviation   --r1010 1 --tau-end 62.83 --out traj.csv
//   gravnoise bell        --analytic --angles=0,-1.5707963267948966,-0.7853981633974483,0.7853981633974483
//   gravnoise schrodinger --variant S0
//
// Exit codes: 0 success, 1 validation error, 2 I/O error, 3 numerical failure.

#include <chrono>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "gravnoise/errors.hpp"
#include "gravnoise/io.hpp"

namespace {

using gravnoise::cli::CommandOutput;
using gravnoise::cli::RunConfig;

template <std::size_t N>
void add_vector_option(CLI::App* app, const std::string& name, std::array<double, N>& target,
                       const std::string& help) {
  app->add_option_function<std::vector<double>>(
         name, [&target](const std::vector<double>& v) {
           for (std::size_t i = 0; i < N; ++i) target[i] = v[i];
         },
         help)
      ->delimiter(',')
      ->expected(static_cast<int>(N));
}

// --config is applied before flag parsing so explicit flags win.
std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) return argv[i + 1];
    if (std::strncmp(argv[i], "--config=", 9) == 0) return argv[i] + 9;
  }
  return {};
}

void emit(const CommandOutput& out, const RunConfig& config, double elapsed) {
  nlohmann::json report = out.report;
  report["elapsed_seconds"] = elapsed;
  if (!config.out.empty() && !out.artifact.empty()) {
    gravnoise::io::write_file(config.out, out.artifact);
  }
  if (out.artifact_to_stdout) {
    std::cout << out.artifact;
    std::cerr << report.dump(2) << "\n";
  } else {
    std::cout << report.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = gravnoise::cli;
  RunConfig config;
  std::string config_path;

  try {
    config_path = find_config_path(argc, argv);
    if (!config_path.empty()) {
      cli::apply_config_json(nlohmann::json::parse(gravnoise::io::read_file(config_path)), config);
    }
  } catch (const gravnoise::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kValidation;
  }

  CLI::App app{"Stochastic gravitational background simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cli::kToolVersion);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "64-bit RNG seed");
    sub->add_option("--out", config.out, "output file");
    sub->add_option("--config", config_path, "JSON config; keys match RunConfig field names");
  };

  CLI::App* background = app.add_subcommand("background", "sample a mode ensemble");
  common(background);
  background->add_option("--n-modes", config.n_modes);
  background->add_option("--sigma", config.sigma);
  background->add_option("--omega-min", config.omega_min);
  background->add_option("--omega-max", config.omega_max);
  background->add_option("--h-max", config.h_max);
  background->add_option_function<double>("--calibrate", [&](double v) { config.calibrate = v; },
                                          "rescale to this total action");

  CLI::App* calibrate = app.add_subcommand("calibrate", "rescale an ensemble to a total action");
  common(calibrate);
  calibrate->add_option("--ensemble,--in", config.ensemble, "mode-ensemble JSON")->check(CLI::ExistingFile);
  calibrate->add_option("--target", config.target);

  CLI::App* deviation = app.add_subcommand("deviation", "integrate the deviation of a particle pair");
  common(deviation);
  deviation->add_option("--ensemble", config.ensemble, "mode-ensemble JSON (else constant curvature)");
  deviation->add_option_function<double>("--r1010", [&](double v) { config.r1010 = v; });
  add_vector_option(deviation, "--position", config.position, "x,y,z of the pair");
  add_vector_option(deviation, "--ell0", config.ell0, "initial separation");
  add_vector_option(deviation, "--elldot0", config.elldot0, "initial separation rate");
  deviation->add_option("--tau-end", config.tau_end);
  deviation->add_option_function<double>("--dt", [&](double v) { config.dt = v; });
  deviation->add_option("--c", config.c);

  CLI::App* bell = app.add_subcommand("bell", "evaluate the Bell observable");
  common(bell);
  add_vector_option(bell, "--angles", config.angles, "a,a',b,b' in radians");
  bell->add_option("--trials", config.trials);
  bell->add_flag("--analytic", config.analytic, "use the analytic correlator");
  bell->add_flag("--scan", config.scan, "maximize over settings");
  bell->add_option("--coarse-steps", config.coarse_steps);
  bell->add_option("--refine-iters", config.refine_iters);
  bell->add_option("--ensemble", config.ensemble, "mode-ensemble JSON (else flat metric)");
  bell->add_option("--duration", config.duration);
  bell->add_option("--extent", config.extent);
  bell->add_option("--workers", config.workers);

  CLI::App* schrodinger = app.add_subcommand("schrodinger", "Schroedinger/WKB residual checks");
  common(schrodinger);
  schrodinger->add_option("--variant", config.variant, "phase divisor: 2S0 or S0");
  schrodinger->add_option("--case", config.field_case, "plane or constant");
  schrodinger->add_option("--grid-n", config.grid_n);
  schrodinger->add_option("--x-min", config.x_min);
  schrodinger->add_option("--x-max", config.x_max);
  schrodinger->add_option_function<double>("--dt", [&](double v) { config.dt = v; });
  schrodinger->add_option("--mass", config.mass);
  schrodinger->add_option("--s0", config.s0);
  schrodinger->add_option("--p", config.p);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kValidation;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    CommandOutput out;
    if (*background) out = cli::run_background(config);
    else if (*calibrate) out = cli::run_calibrate(config);
    else if (*deviation) out = cli::run_deviation(config);
    else if (*bell) out = cli::run_bell(config);
    else out = cli::run_schrodinger(config);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(out, config, elapsed);
  } catch (const gravnoise::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return cli::kIo;
  } catch (const gravnoise::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return cli::kNumerical;
  } catch (const gravnoise::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kValidation;
  }
  return cli::kOk;
}
