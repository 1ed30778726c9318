#pragma once

// File formats: mode-ensemble JSON (shortest round-trip decimals, so a
// written ensemble reads back bit-identical), trajectory and wavefield CSV
// with 17 significant digits.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "gravnoise/deviation_dynamics.hpp"
#include "gravnoise/metric_background.hpp"
#include "gravnoise/stochastic_probability.hpp"

namespace gravnoise::io {

std::string ensemble_to_json(const BackgroundEnsemble& ensemble);

// Parses and validates; throws InputError on malformed content.
BackgroundEnsemble ensemble_from_json(std::string_view text);

inline constexpr std::string_view kTrajectoryHeader =
    "tau,ell_x,ell_y,ell_z,elldot_x,elldot_y,elldot_z";

std::string trajectory_csv(const Trajectory& trajectory);
std::string wavefield_csv(const WaveField& field);

// 64-bit FNV-1a, used as the input hash in run reports.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string hex64(std::uint64_t value);

// Throw IoError on failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace gravnoise::io
