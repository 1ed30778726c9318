#include "gravnoise/bell_correlation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "gravnoise/errors.hpp"
#include "gravnoise/rng.hpp"

namespace gravnoise {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Pairwise summation in index order; the split points depend only on n.
double pairwise_sum(const double* v, std::size_t n) noexcept {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

// lambda . gamma . u with gamma_ij = delta_ij - h_ij.
double metric_projection(const Vec3& lambda, const SymTensor2& h, const Vec3& u) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double gamma = (i == j ? 1.0 : 0.0) - h(i + 1, j + 1);
      s += lambda[i] * gamma * u[j];
    }
  }
  return s;
}

}  // namespace

Vec3 PolarizerSetting::direction() const noexcept {
  return {std::cos(angle), std::sin(angle), 0.0};
}

double correlation_analytic(double theta) noexcept { return std::fabs(std::cos(theta)); }

CorrelationEstimate correlation_mc(const BackgroundEnsemble& ensemble, const PolarizerSetting& a,
                                   const PolarizerSetting& b, std::size_t n_trials,
                                   std::uint64_t seed, const MonteCarloOptions& options) {
  if (n_trials < 100) throw ParameterError("correlation_mc needs at least 100 trials");
  if (!(options.duration >= 0.0 && options.extent >= 0.0)) {
    throw ParameterError("Monte Carlo box must have non-negative size");
  }
  const auto table = mode_table(ensemble);
  const Vec3 ua = a.direction();
  const Vec3 ub = b.direction();

  std::vector<double> corr(n_trials), metric(n_trials);
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(seed, i);
      const Vec3 lambda = rng.unit_vector();
      FourVector x;
      x[0] = options.duration * rng.uniform();
      for (std::size_t k = 1; k < 4; ++k) x[k] = options.extent * (rng.uniform() - 0.5);
      const SymTensor2 h = evaluate_h(table, x);
      const double pa = metric_projection(lambda, h, ua);
      const double pb = metric_projection(lambda, h, ub);
      corr[i] = 3.0 * pa * pb;
      metric[i] = 3.0 * pa * pa;
    }
  };

  unsigned workers = options.workers == 0 ? std::thread::hardware_concurrency() : options.workers;
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<std::size_t>(n_trials, 256)));
  if (workers == 1) {
    run(0, n_trials);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n_trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n_trials, begin + chunk);
      if (begin < end) pool.emplace_back(run, begin, end);
    }
  }

  const double n = static_cast<double>(n_trials);
  CorrelationEstimate est;
  est.n_samples = n_trials;
  est.mean = pairwise_sum(corr.data(), n_trials) / n;
  for (double& v : corr) v = (v - est.mean) * (v - est.mean);
  const double variance = pairwise_sum(corr.data(), n_trials) / (n - 1.0);
  est.stderr_ = std::sqrt(variance / n);
  est.metric_factor_mean = pairwise_sum(metric.data(), n_trials) / n;
  if (!std::isfinite(est.mean) || !std::isfinite(est.stderr_) ||
      !std::isfinite(est.metric_factor_mean)) {
    throw NumericalError("Monte Carlo correlator produced a non-finite value");
  }
  return est;
}

Correlator cosine_correlator(double scale) {
  return [scale](const PolarizerSetting& x, const PolarizerSetting& y) {
    return scale * std::cos(y.angle - x.angle);
  };
}

ObservableTerms bell_terms(const BellSettings& s, const Correlator& correlator) {
  ObservableTerms t;
  t.ab = correlator(s.a, s.b);
  t.a_prime_b = correlator(s.a_prime, s.b);
  t.a_b_prime = correlator(s.a, s.b_prime);
  t.a_prime_b_prime = correlator(s.a_prime, s.b_prime);
  t.value = std::fabs(0.5 * (t.ab + t.a_prime_b + t.a_b_prime - t.a_prime_b_prime));
  return t;
}

double bell_observable(const BellSettings& settings, const Correlator& correlator) {
  return bell_terms(settings, correlator).value;
}

BoundCheck check_bound(double value) noexcept {
  return {value <= kBellBound + 1e-9, kBellBound - value};
}

Maximum maximize_observable(const Correlator& correlator, int coarse_steps, int refine_iters) {
  if (coarse_steps < 8) throw ParameterError("coarse_steps must be >= 8");
  if (refine_iters < 10) throw ParameterError("refine_iters must be >= 10");

  auto objective = [&](const std::array<double, 4>& v) {
    return bell_observable({{v[0]}, {v[1]}, {v[2]}, {v[3]}}, correlator);
  };

  const double step = kTwoPi / coarse_steps;
  std::array<double, 4> best{};
  double best_value = -1.0;
  std::array<int, 4> idx{};
  for (idx[0] = 0; idx[0] < coarse_steps; ++idx[0]) {
    for (idx[1] = 0; idx[1] < coarse_steps; ++idx[1]) {
      for (idx[2] = 0; idx[2] < coarse_steps; ++idx[2]) {
        for (idx[3] = 0; idx[3] < coarse_steps; ++idx[3]) {
          const std::array<double, 4> v{idx[0] * step, idx[1] * step, idx[2] * step, idx[3] * step};
          const double f = objective(v);
          if (f > best_value) {
            best_value = f;
            best = v;
          }
        }
      }
    }
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double bracket = step;
  for (int round = 0; round < refine_iters; ++round) {
    for (std::size_t axis = 0; axis < 4; ++axis) {
      auto along = [&](double angle) {
        auto v = best;
        v[axis] = angle;
        return objective(v);
      };
      double lo = best[axis] - bracket;
      double hi = best[axis] + bracket;
      double x1 = hi - inv_phi * (hi - lo);
      double x2 = lo + inv_phi * (hi - lo);
      double f1 = along(x1), f2 = along(x2);
      for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        if (f1 < f2) {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + inv_phi * (hi - lo);
          f2 = along(x2);
        } else {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - inv_phi * (hi - lo);
          f1 = along(x1);
        }
      }
      const double candidate = 0.5 * (lo + hi);
      const double f = along(candidate);
      if (f > best_value) {
        best_value = f;
        best[axis] = candidate;
      }
    }
    bracket *= 0.5;
  }

  Maximum out;
  for (double& v : best) {
    v = std::fmod(v, kTwoPi);
    if (v < 0.0) v += kTwoPi;
  }
  out.settings = {{best[0]}, {best[1]}, {best[2]}, {best[3]}};
  out.value = objective(best);
  return out;
}

}  // namespace gravnoise
