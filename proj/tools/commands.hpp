#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace gravnoise::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kIo = 2,
  kNumerical = 3,
};

// Every tunable of every subcommand. Field names double as the keys of
// --config files.
struct RunConfig {
  std::uint64_t seed = 0;
  std::string out;
  std::string ensemble;

  // background
  std::int64_t n_modes = 16;
  double sigma = 1e-4;
  double omega_min = 1.0;
  double omega_max = 10.0;
  double h_max = 1e-3;
  std::optional<double> calibrate;

  // calibrate
  double target = 1.0;

  // deviation
  std::optional<double> r1010;
  std::array<double, 3> position{0.0, 0.0, 0.0};
  std::array<double, 3> ell0{1.0, 0.0, 0.0};
  std::array<double, 3> elldot0{0.0, 0.0, 0.0};
  double tau_end = 6.283185307179586;
  // deviation: 2 pi / 1000 when unset; schrodinger: dx^2 when unset.
  std::optional<double> dt;
  double c = 1.0;

  // bell
  std::array<double, 4> angles{0.0, -1.5707963267948966, -0.78539816339744831, 0.78539816339744831};
  std::uint64_t trials = 100000;
  bool analytic = false;
  bool scan = false;
  int coarse_steps = 8;
  int refine_iters = 10;
  double duration = 1.0;
  double extent = 1.0;
  unsigned workers = 1;

  // schrodinger
  std::string variant = "2S0";
  std::string field_case = "plane";  // "plane" or "constant"
  std::uint64_t grid_n = 512;
  double x_min = 0.0;
  double x_max = 0.12;
  double mass = 1.0;
  double s0 = 0.5;
  double p = 1.0;
};

// Canonical JSON of a resolved config (hashed into reports).
nlohmann::json to_json(const RunConfig& config);

// Merge keys from a --config document into config. Unknown keys are errors.
void apply_config_json(const nlohmann::json& doc, RunConfig& config);

struct CommandOutput {
  nlohmann::json report;      // printed on stdout (or stderr if artifact goes there)
  std::string artifact;       // file body for --out (may be empty)
  bool artifact_to_stdout = false;
};

CommandOutput run_background(const RunConfig& config);
CommandOutput run_calibrate(const RunConfig& config);
CommandOutput run_deviation(const RunConfig& config);
CommandOutput run_bell(const RunConfig& config);
CommandOutput run_schrodinger(const RunConfig& config);

}  // namespace gravnoise::cli
