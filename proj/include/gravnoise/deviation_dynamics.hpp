#pragma once

// Relative oscillation of a pair of slow test particles in the background:
// the deviation equation reduced to  l'' + c^2 R^1_010(tau) l = 0  per
// spatial component.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gravnoise/metric_background.hpp"
#include "gravnoise/tensor.hpp"

namespace gravnoise {

struct DeviationState {
  Vec3 ell{};
  Vec3 ell_dot{};
  double tau = 0.0;
};

struct Trajectory {
  std::vector<DeviationState> samples;
  double dt = 0.0;
  std::optional<std::size_t> mode_ref;
  // Net tidal stretching: the curvature averaged over the steps was negative.
  bool unstable = false;
};

enum class OscillationKind { kOscillatory, kUnstable, kFlat };

struct ModeFrequency {
  OscillationKind kind = OscillationKind::kFlat;
  double omega = 0.0;
};

// omega = c sqrt(|R|); the sign of R picks oscillation or exponential growth.
ModeFrequency mode_frequency(double r1010, double c = 1.0);

// Time-dependent curvature source plus the highest frequency it carries, which
// the step-size guard needs.
struct CurvatureSource {
  std::function<double(double)> r1010;
  double omega_max = 0.0;
};

CurvatureSource constant_curvature(double r1010, double c = 1.0);

// R^1_010 of the ensemble along the worldline of a particle at rest at
// `position`. omega_max covers both the driving frequencies and the
// spring frequency of the peak curvature; modes with zero amplitude are
// ignored.
CurvatureSource ensemble_curvature(const BackgroundEnsemble& ensemble, const Vec3& position,
                                   double c = 1.0);

// Classical fixed-step RK4 from tau0 to tau0 + tau_end. The step count is
// ceil(tau_end / dt) and the step is shrunk to land exactly on tau_end.
// Throws IntegrationError if dt > (2 pi / omega_max) / 20, ParameterError on
// non-positive tau_end or dt.
Trajectory integrate_deviation(const DeviationState& state0, const CurvatureSource& source,
                               double tau_end, double dt, double c = 1.0);

// Real oscillatory solution l0 cos(omega t + phi0).
double closed_form_deviation(double ell0, double omega, double t, double phi0 = 0.0);

// Unwrapped phase omega t.
double accumulated_phase(double omega, double t);

// Phase of one mode's oscillation seen by one particle pair.
struct PhaseRecord {
  std::size_t mode_index = 0;
  double omega = 0.0;
  double offset = 0.0;  // spatial phase of the mode at the pair's location
  double t = 0.0;

  double phi() const { return accumulated_phase(omega, t) + offset; }
};

// One record per mode for a pair at `position`, evaluated at time t. The
// frequency comes from mode_frequency applied to the peak curvature the
// mode produces, omega_j^2 |e11_j|; the offset is phase0_j - omega_j n_j.x.
std::vector<PhaseRecord> phase_records(const BackgroundEnsemble& ensemble, const Vec3& position,
                                       double t, double c = 1.0);

// Pearson correlation of cos(phi) across two record lists that share mode
// indices. Throws InputError on mismatched lists, CorrelationError when
// either side has zero variance.
double phase_correlation(std::span<const PhaseRecord> a, std::span<const PhaseRecord> b);

}  // namespace gravnoise
