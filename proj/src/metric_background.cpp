#include "gravnoise/metric_background.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gravnoise/errors.hpp"
#include "gravnoise/rng.hpp"

namespace gravnoise {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kUnitTolerance = 1e-12;

// e_ab for a <= b in the order 11, 12, 13, 22, 23, 33.
std::array<double, 6> spatial_polarization(const GwMode& m) noexcept {
  const auto [p, q] = transverse_basis(m.direction);
  std::array<double, 6> e{};
  int k = 0;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      e[k++] = m.amp_plus * (p[a] * p[b] - q[a] * q[b]) + m.amp_cross * (p[a] * q[b] + q[a] * p[b]);
    }
  }
  return e;
}

SymTensor2 from_spatial(const double h[6]) noexcept {
  SymTensor2 t;
  int k = 0;
  for (std::size_t a = 1; a <= 3; ++a) {
    for (std::size_t b = a; b <= 3; ++b) t(a, b) = h[k++];
  }
  return t;
}

double strain(const GwMode& m) noexcept { return std::fabs(m.amp_plus) + std::fabs(m.amp_cross); }

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace

TransverseBasis transverse_basis(const Vec3& n) noexcept {
  const double theta = std::acos(std::clamp(n[2], -1.0, 1.0));
  const double phi = std::atan2(n[1], n[0]);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  return {{ct * cp, ct * sp, -st}, {-sp, cp, 0.0}};
}

FourVector GwMode::wave_vector() const noexcept {
  return {{omega, omega * direction[0], omega * direction[1], omega * direction[2]}};
}

SymTensor2 GwMode::polarization() const noexcept {
  const auto e = spatial_polarization(*this);
  return from_spatial(e.data());
}

BackgroundEnsemble sample_ensemble(const EnsembleParams& params) {
  require(params.n_modes >= 1, "n_modes must be >= 1");
  require(std::isfinite(params.sigma) && params.sigma >= 0.0, "sigma must be finite and >= 0");
  require(std::isfinite(params.omega_min) && params.omega_min > 0.0, "omega_min must be > 0");
  require(std::isfinite(params.omega_max) && params.omega_max >= params.omega_min,
          "omega_max must be >= omega_min");
  require(std::isfinite(params.h_max) && params.h_max > 0.0, "h_max must be > 0");

  BackgroundEnsemble ens;
  ens.sigma = params.sigma;
  ens.seed = params.seed;
  ens.h_max = params.h_max;
  ens.modes.resize(static_cast<std::size_t>(params.n_modes));

  const double log_ratio = std::log(params.omega_max / params.omega_min);
  for (std::size_t j = 0; j < ens.modes.size(); ++j) {
    CounterRng rng(params.seed, j);
    GwMode& m = ens.modes[j];
    const auto dir = rng.unit_vector();
    // Renormalize so the unit-norm invariant holds to rounding.
    const double len = norm(dir);
    m.direction = {dir[0] / len, dir[1] / len, dir[2] / len};
    m.omega = params.omega_min * std::exp(log_ratio * rng.uniform());
    m.omega = std::clamp(m.omega, params.omega_min, params.omega_max);
    m.amp_plus = params.sigma * rng.normal();
    m.amp_cross = params.sigma * rng.normal();
    m.phase0 = kTwoPi * rng.uniform();
    if (m.phase0 >= kTwoPi) m.phase0 = 0.0;
  }

  const double peak = max_strain(ens);
  if (peak > params.h_max) {
    double scale = params.h_max / peak;
    auto fits = [&] {
      return std::all_of(ens.modes.begin(), ens.modes.end(), [&](const GwMode& m) {
        return std::fabs(m.amp_plus * scale) + std::fabs(m.amp_cross * scale) <= params.h_max;
      });
    };
    while (!fits()) scale = std::nextafter(scale, 0.0);
    for (GwMode& m : ens.modes) {
      m.amp_plus *= scale;
      m.amp_cross *= scale;
    }
  }
  return ens;
}

void validate(const BackgroundEnsemble& ensemble) {
  auto fail = [](std::size_t j, const std::string& what) {
    throw InputError("mode " + std::to_string(j) + ": " + what);
  };
  if (!(std::isfinite(ensemble.h_max) && ensemble.h_max > 0.0)) {
    throw InputError("h_max must be finite and > 0");
  }
  if (!(std::isfinite(ensemble.sigma) && ensemble.sigma >= 0.0)) {
    throw InputError("sigma must be finite and >= 0");
  }
  for (std::size_t j = 0; j < ensemble.modes.size(); ++j) {
    const GwMode& m = ensemble.modes[j];
    for (double c : m.direction) {
      if (!std::isfinite(c)) fail(j, "non-finite direction");
    }
    if (std::fabs(norm(m.direction) - 1.0) > kUnitTolerance) fail(j, "direction is not unit length");
    if (!(std::isfinite(m.omega) && m.omega > 0.0)) fail(j, "omega must be > 0");
    if (!std::isfinite(m.amp_plus) || !std::isfinite(m.amp_cross)) fail(j, "non-finite amplitude");
    if (!(m.phase0 >= 0.0 && m.phase0 < kTwoPi)) fail(j, "phase0 outside [0, 2pi)");
    if (strain(m) > ensemble.h_max) fail(j, "|amp_plus| + |amp_cross| exceeds h_max");
  }
}

kernels::ModeTable mode_table(const BackgroundEnsemble& ensemble) {
  kernels::ModeTable table;
  table.reserve(ensemble.modes.size());
  for (const GwMode& m : ensemble.modes) {
    const auto e = spatial_polarization(m);
    table.push_back(m.omega, m.direction.data(), m.phase0, e.data());
  }
  return table;
}

SymTensor2 evaluate_h(const kernels::ModeTable& table, const FourVector& x) {
  double h[6];
  kernels::active().superpose_h(table, x.components.data(), h);
  return from_spatial(h);
}

SymTensor2 evaluate_h(const BackgroundEnsemble& ensemble, const FourVector& x) {
  return evaluate_h(mode_table(ensemble), x);
}

SymTensor2 metric_at(const kernels::ModeTable& table, const FourVector& x) {
  return minkowski() + evaluate_h(table, x);
}

SymTensor2 metric_at(const BackgroundEnsemble& ensemble, const FourVector& x) {
  return metric_at(mode_table(ensemble), x);
}

GaugeResiduals gauge_residuals(const GwMode& mode) {
  return gauge_residuals(mode.wave_vector(), mode.polarization());
}

GaugeResiduals gauge_residuals(const FourVector& k, const SymTensor2& e) {
  // Plane wave: d/dx^m -> i k_m, so the harmonic condition becomes
  // k_m e^m_n = k_n e^m_m / 2 with k_m = eta_mm k^m.
  const double trace = e.minkowski_trace();
  GaugeResiduals r;
  for (std::size_t n = 0; n < 4; ++n) {
    double contraction = 0.0;  // k_m e^m_n = k^m e_mn
    for (std::size_t m = 0; m < 4; ++m) contraction += k[m] * e(m, n);
    const double k_lower = kMinkowskiDiag[n] * k[n];
    r.harmonic = std::fmax(r.harmonic, std::fabs(contraction - 0.5 * k_lower * trace));
  }
  double kk = 0.0;
  for (std::size_t m = 0; m < 4; ++m) kk += kMinkowskiDiag[m] * k[m] * k[m];
  r.field_equation = std::fabs(kk) * e.max_abs();
  return r;
}

double riemann_R1010(const kernels::ModeTable& table, const FourVector& x) {
  return kernels::active().superpose_r1010(table, x.components.data());
}

double riemann_R1010(const BackgroundEnsemble& ensemble, const FourVector& x) {
  return riemann_R1010(mode_table(ensemble), x);
}

double mode_action(const GwMode& mode) noexcept {
  constexpr double kVolume = 1.0;
  constexpr double kG = 1.0;
  const double period = kTwoPi / mode.omega;
  return kVolume * period / (32.0 * std::numbers::pi * kG) * mode.omega * mode.omega *
         (mode.amp_plus * mode.amp_plus + mode.amp_cross * mode.amp_cross);
}

double total_action(const BackgroundEnsemble& ensemble) noexcept {
  double sum = 0.0;
  for (const GwMode& m : ensemble.modes) sum += mode_action(m);
  return sum;
}

CalibrationResult calibrate_action(const BackgroundEnsemble& ensemble, double target_action) {
  if (!(std::isfinite(target_action) && target_action > 0.0)) {
    throw ParameterError("target action must be finite and > 0");
  }
  const double current = total_action(ensemble);
  if (!(current > 0.0)) {
    throw CalibrationError("cannot calibrate an ensemble whose amplitudes are all zero");
  }
  if (!std::isfinite(current)) throw NumericalError("ensemble action is not finite");

  CalibrationResult out{ensemble, std::sqrt(target_action / current)};
  for (GwMode& m : out.ensemble.modes) {
    m.amp_plus *= out.scale;
    m.amp_cross *= out.scale;
  }
  out.ensemble.h_max = std::max(out.ensemble.h_max, max_strain(out.ensemble));
  return out;
}

double max_strain(const BackgroundEnsemble& ensemble) noexcept {
  double peak = 0.0;
  for (const GwMode& m : ensemble.modes) peak = std::max(peak, strain(m));
  return peak;
}

}  // namespace gravnoise
