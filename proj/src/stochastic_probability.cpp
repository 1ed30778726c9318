#include "gravnoise/stochastic_probability.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gravnoise/errors.hpp"
#include "gravnoise/kernels.hpp"

namespace gravnoise {
namespace {

const double kSqrtTwoPi = std::sqrt(2.0 * std::numbers::pi);

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw InputError(std::string(what) + " has " + std::to_string(got) + " points, expected " +
                     std::to_string(want));
  }
}

void require_step(double dt) {
  if (!(std::isfinite(dt) && dt > 0.0)) throw InputError("time step must be finite and > 0");
}

double checked_norm(double value) {
  if (!std::isfinite(value)) throw NormalizationError("wavefield norm is not finite");
  if (!(value > 0.0)) throw NormalizationError("wavefield norm is zero");
  return value;
}

WaveField rescaled(const WaveField& field, double norm_value) {
  const double scale = 1.0 / std::sqrt(checked_norm(norm_value));
  WaveField out = field;
  for (auto& v : out.psi) v *= scale;
  for (auto& comp : out.components) {
    for (auto& v : comp) v *= scale;
  }
  return out;
}

}  // namespace

IntervalModel::IntervalModel(double sigma, double mass) : sigma_(sigma), mass_(mass) {
  if (!(std::isfinite(sigma) && sigma > 0.0)) throw ParameterError("sigma must be > 0");
  if (!(std::isfinite(mass) && mass > 0.0)) throw ParameterError("mass must be > 0");
  a_sq_ = 1.0 / (sigma * kSqrtTwoPi);
  s0_ = mass * sigma * sigma / 2.0;
}

double interval_probability(double delta_ell, double sigma) {
  if (!(std::isfinite(sigma) && sigma > 0.0)) throw ParameterError("sigma must be > 0");
  return std::exp(-(delta_ell * delta_ell) / (2.0 * sigma * sigma)) / (sigma * kSqrtTwoPi);
}

double action_probability(double action, const IntervalModel& model) {
  return model.a_sq() * std::exp(-action / model.s0());
}

double energy_probability(double energy, const IntervalModel& model) {
  return action_probability(0.5 * energy, model);
}

std::complex<double> amplitude(double action, const IntervalModel& model) {
  return std::sqrt(model.a_sq()) * std::polar(1.0, action / model.s0());
}

const char* to_string(PhaseDivisor d) noexcept { return d == PhaseDivisor::kTwoS0 ? "2S0" : "S0"; }

PhaseDivisor parse_phase_divisor(std::string_view text) {
  if (text == "2S0") return PhaseDivisor::kTwoS0;
  if (text == "S0") return PhaseDivisor::kS0;
  throw ParameterError("phase divisor must be 2S0 or S0, got '" + std::string(text) + "'");
}

void validate(const Grid1D& grid) {
  if (grid.n < 16) throw InputError("grid needs at least 16 points");
  if (!(std::isfinite(grid.x_min) && std::isfinite(grid.x_max) && grid.x_max > grid.x_min)) {
    throw InputError("grid bounds must be finite with x_max > x_min");
  }
}

double wavefield_norm(const WaveField& field, std::span<const double> weight) {
  validate(field.grid);
  require_size(field.psi.size(), field.grid.n, "psi");
  require_size(weight.size(), field.grid.n, "metric weight");
  return field.grid.dx() *
         kernels::active().weighted_density(field.psi.data(), weight.data(), field.psi.size());
}

double wavefield_norm(const WaveField& field, std::span<const SymTensor2> metric) {
  validate(field.grid);
  const std::size_t n = field.grid.n;
  require_size(metric.size(), n, "metric");
  const std::size_t k = field.components.size();
  if (k == 0) {
    // Single component: weight by gamma_11.
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = -metric[i](1, 1);
    return wavefield_norm(field, w);
  }
  if (k > 3) throw InputError("at most three spatial basis components are supported");
  for (const auto& comp : field.components) require_size(comp.size(), n, "component");

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double density = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        const double gamma = -metric[i](a + 1, b + 1);
        density += gamma * std::real(std::conj(field.components[a][i]) * field.components[b][i]);
      }
    }
    sum += (i == 0 || i + 1 == n) ? 0.5 * density : density;
  }
  return field.grid.dx() * sum;
}

WaveField normalize_wavefield(const WaveField& field, std::span<const double> weight) {
  return rescaled(field, wavefield_norm(field, weight));
}

WaveField normalize_wavefield(const WaveField& field, std::span<const SymTensor2> metric) {
  return rescaled(field, wavefield_norm(field, metric));
}

double hamilton_jacobi_residual(const ClassicalField& cf) {
  validate(cf.grid);
  require_step(cf.dt);
  const std::size_t n = cf.grid.n;
  require_size(cf.action_t0.size(), n, "action_t0");
  require_size(cf.action_t1.size(), n, "action_t1");
  require_size(cf.potential.size(), n, "potential");
  if (!(cf.mass > 0.0)) throw InputError("mass must be > 0");
  return kernels::active().hamilton_jacobi(cf.action_t0.data(), cf.action_t1.data(),
                                           cf.potential.data(), n, cf.grid.dx(), cf.dt, cf.mass);
}

double continuity_residual(const ClassicalField& cf) {
  validate(cf.grid);
  require_step(cf.dt);
  const std::size_t n = cf.grid.n;
  require_size(cf.action_t0.size(), n, "action_t0");
  require_size(cf.action_t1.size(), n, "action_t1");
  require_size(cf.amplitude_t0.size(), n, "amplitude_t0");
  require_size(cf.amplitude_t1.size(), n, "amplitude_t1");
  if (!(cf.mass > 0.0)) throw InputError("mass must be > 0");
  std::vector<double> rho0(n), rho1(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (cf.amplitude_t0[i] < 0.0 || cf.amplitude_t1[i] < 0.0) {
      throw InputError("amplitude must be non-negative");
    }
    rho0[i] = cf.amplitude_t0[i] * cf.amplitude_t0[i];
    rho1[i] = cf.amplitude_t1[i] * cf.amplitude_t1[i];
  }
  return kernels::active().continuity(rho0.data(), rho1.data(), cf.action_t0.data(),
                                      cf.action_t1.data(), n, cf.grid.dx(), cf.dt, cf.mass);
}

double schrodinger_residual(std::span<const std::complex<double>> psi_t0,
                            std::span<const std::complex<double>> psi_t1,
                            std::span<const double> potential, const Grid1D& grid, double dt,
                            double mass, double s0) {
  validate(grid);
  require_step(dt);
  require_size(psi_t0.size(), grid.n, "psi_t0");
  require_size(psi_t1.size(), grid.n, "psi_t1");
  require_size(potential.size(), grid.n, "potential");
  if (!(mass > 0.0)) throw InputError("mass must be > 0");
  if (!(s0 > 0.0)) throw InputError("S0 must be > 0");
  const double c_t = 2.0 * s0;
  const double c_x = 4.0 * s0 * s0 / (2.0 * mass);
  return kernels::active().schrodinger(psi_t0.data(), psi_t1.data(), potential.data(), grid.n,
                                       grid.dx(), dt, c_t, c_x);
}

std::vector<std::complex<double>> wkb_field(std::span<const double> amplitude,
                                            std::span<const double> action, double s0,
                                            PhaseDivisor divisor) {
  require_size(action.size(), amplitude.size(), "action");
  if (!(s0 > 0.0)) throw ParameterError("S0 must be > 0");
  const double div = divisor == PhaseDivisor::kTwoS0 ? 2.0 * s0 : s0;
  std::vector<std::complex<double>> psi(amplitude.size());
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = amplitude[i] * std::polar(1.0, action[i] / div);
  return psi;
}

AxiomReport check_probability_axioms(double sigma, std::span<const IntervalTriple> triples,
                                     std::size_t scan_points) {
  if (!(std::isfinite(sigma) && sigma > 0.0)) throw ParameterError("sigma must be > 0");
  if (scan_points < 2) throw ParameterError("scan needs at least two points");
  for (const auto& t : triples) {
    const bool finite = std::isfinite(t.d21) && std::isfinite(t.d32) && std::isfinite(t.d31);
    if (!finite || t.d21 < 0.0 || t.d32 < 0.0 || t.d31 < 0.0) {
      throw InputError("interval triple entries must be finite and non-negative");
    }
    if (t.d21 + t.d32 < t.d31) throw InputError("interval triple violates d21 + d32 >= d31");
  }

  AxiomReport report;
  report.sigma = sigma;
  report.scan_points = scan_points;
  report.p_at_zero = interval_probability(0.0, sigma);

  // |dl| from 0 to 40 sigma; the tail underflows to exactly zero.
  const double span = 40.0 * sigma;
  bool monotone = true;
  bool max_at_zero = true;
  double prev = report.p_at_zero;
  for (std::size_t i = 1; i < scan_points; ++i) {
    const double dl = span * static_cast<double>(i) / static_cast<double>(scan_points - 1);
    const double p = interval_probability(dl, sigma);
    monotone &= p <= prev;
    max_at_zero &= p <= report.p_at_zero && interval_probability(-dl, sigma) == p;
    prev = p;
  }
  report.monotone_non_increasing = monotone;
  report.maximal_at_zero = max_at_zero;
  report.decays_to_zero = interval_probability(1e3 * sigma, sigma) == 0.0;

  for (const auto& t : triples) {
    TripleReport r{t, interval_probability(t.d21, sigma), interval_probability(t.d32, sigma),
                   interval_probability(t.d31, sigma)};
    r.slack_reading_holds = r.p21 + r.p32 <= r.p31 + 1.0;
    r.literal_reading_holds = r.p21 + r.p32 <= r.p31;
    report.triples.push_back(r);
  }
  return report;
}

}  // namespace gravnoise
