#include "gravnoise/deviation_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "gravnoise/errors.hpp"

namespace gravnoise {

ModeFrequency mode_frequency(double r1010, double c) {
  if (r1010 > 0.0) return {OscillationKind::kOscillatory, c * std::sqrt(r1010)};
  if (r1010 < 0.0) return {OscillationKind::kUnstable, c * std::sqrt(-r1010)};
  return {OscillationKind::kFlat, 0.0};
}

CurvatureSource constant_curvature(double r1010, double c) {
  return {[r1010](double) { return r1010; }, mode_frequency(r1010, c).omega};
}

CurvatureSource ensemble_curvature(const BackgroundEnsemble& ensemble, const Vec3& position,
                                   double c) {
  auto table = std::make_shared<const kernels::ModeTable>(mode_table(ensemble));
  double driving = 0.0;
  double peak_r = 0.0;
  for (std::size_t j = 0; j < table->size(); ++j) {
    const bool silent = table->e11[j] == 0.0 && table->e12[j] == 0.0 && table->e13[j] == 0.0 &&
                        table->e22[j] == 0.0 && table->e23[j] == 0.0 && table->e33[j] == 0.0;
    if (silent) continue;
    driving = std::max(driving, table->omega[j]);
    peak_r += table->omega[j] * table->omega[j] * std::fabs(table->e11[j]);
  }
  const double spring = c * std::sqrt(peak_r);
  return {[table, position](double tau) {
            return riemann_R1010(*table, FourVector{{tau, position[0], position[1], position[2]}});
          },
          std::max(driving, spring)};
}

namespace {

struct Derivative {
  Vec3 dl;
  Vec3 dv;
};

Derivative rhs(const Vec3& l, const Vec3& v, double spring) noexcept {
  return {v, {-spring * l[0], -spring * l[1], -spring * l[2]}};
}

Vec3 axpy(const Vec3& x, double a, const Vec3& y) noexcept {
  return {x[0] + a * y[0], x[1] + a * y[1], x[2] + a * y[2]};
}

bool finite(const DeviationState& s) noexcept {
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(s.ell[i]) || !std::isfinite(s.ell_dot[i])) return false;
  }
  return std::isfinite(s.tau);
}

}  // namespace

Trajectory integrate_deviation(const DeviationState& state0, const CurvatureSource& source,
                               double tau_end, double dt, double c) {
  if (!(std::isfinite(tau_end) && tau_end > 0.0)) throw ParameterError("tau_end must be > 0");
  if (!(std::isfinite(dt) && dt > 0.0)) throw ParameterError("dt must be > 0");
  if (!source.r1010) throw ParameterError("curvature source is empty");
  if (source.omega_max > 0.0) {
    const double limit = (2.0 * std::numbers::pi / source.omega_max) / 20.0;
    if (dt > limit) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "step dt=" << dt << " exceeds 1/20 of the period of omega=" << source.omega_max
          << " (limit " << limit << ")";
      throw IntegrationError(msg.str());
    }
  }
  if (!finite(state0)) throw ParameterError("initial state is not finite");

  const auto steps = static_cast<std::size_t>(std::ceil(tau_end / dt - 1e-9));
  const std::size_t n = std::max<std::size_t>(steps, 1);
  const double h = tau_end / static_cast<double>(n);
  const double c2 = c * c;

  Trajectory traj;
  traj.dt = h;
  traj.samples.reserve(n + 1);
  traj.samples.push_back(state0);

  Vec3 l = state0.ell;
  Vec3 v = state0.ell_dot;
  double r_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = state0.tau + static_cast<double>(i) * h;
    const double r_start = c2 * source.r1010(tau);
    const double r_mid = c2 * source.r1010(tau + 0.5 * h);
    const double r_end = c2 * source.r1010(tau + h);
    r_sum += r_start;

    const Derivative k1 = rhs(l, v, r_start);
    const Derivative k2 = rhs(axpy(l, 0.5 * h, k1.dl), axpy(v, 0.5 * h, k1.dv), r_mid);
    const Derivative k3 = rhs(axpy(l, 0.5 * h, k2.dl), axpy(v, 0.5 * h, k2.dv), r_mid);
    const Derivative k4 = rhs(axpy(l, h, k3.dl), axpy(v, h, k3.dv), r_end);
    for (int a = 0; a < 3; ++a) {
      l[a] += h / 6.0 * (k1.dl[a] + 2.0 * k2.dl[a] + 2.0 * k3.dl[a] + k4.dl[a]);
      v[a] += h / 6.0 * (k1.dv[a] + 2.0 * k2.dv[a] + 2.0 * k3.dv[a] + k4.dv[a]);
    }
    DeviationState next{l, v, state0.tau + static_cast<double>(i + 1) * h};
    if (!finite(next)) throw NumericalError("deviation integration produced a non-finite state");
    traj.samples.push_back(next);
  }
  traj.unstable = r_sum < 0.0;
  return traj;
}

double closed_form_deviation(double ell0, double omega, double t, double phi0) {
  return ell0 * std::cos(omega * t + phi0);
}

double accumulated_phase(double omega, double t) {
  if (t < 0.0) throw ParameterError("accumulated_phase requires t >= 0");
  return omega * t;
}

std::vector<PhaseRecord> phase_records(const BackgroundEnsemble& ensemble, const Vec3& position,
                                       double t, double c) {
  const auto table = mode_table(ensemble);
  std::vector<PhaseRecord> out;
  out.reserve(table.size());
  for (std::size_t j = 0; j < table.size(); ++j) {
    const double peak = table.omega[j] * table.omega[j] * std::fabs(table.e11[j]);
    const double n_dot_x =
        table.nx[j] * position[0] + table.ny[j] * position[1] + table.nz[j] * position[2];
    out.push_back({j, mode_frequency(peak, c).omega, table.phase0[j] - table.omega[j] * n_dot_x, t});
  }
  return out;
}

double phase_correlation(std::span<const PhaseRecord> a, std::span<const PhaseRecord> b) {
  if (a.size() != b.size()) throw InputError("phase lists differ in length");
  if (a.size() < 2) throw InputError("phase correlation needs at least two modes");
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].mode_index != b[j].mode_index) throw InputError("phase lists have mismatched mode indices");
  }
  const std::size_t n = a.size();
  std::vector<double> x(n), y(n);
  double mx = 0.0, my = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = std::cos(a[j].phi());
    y[j] = std::cos(b[j].phi());
    mx += x[j];
    my += y[j];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sxy += (x[j] - mx) * (y[j] - my);
    sxx += (x[j] - mx) * (x[j] - mx);
    syy += (y[j] - my) * (y[j] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw CorrelationError("zero variance: correlation undefined");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace gravnoise
