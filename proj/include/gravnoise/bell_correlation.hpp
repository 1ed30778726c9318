#pragma once

// Metric-weighted polarization correlator (analytic and Monte Carlo), the
// half-CHSH observable, its sqrt(2) bound and a maximizer over settings.

#include <cstddef>
#include <cstdint>
#include <functional>

#include "gravnoise/metric_background.hpp"
#include "gravnoise/tensor.hpp"

namespace gravnoise {

inline const double kBellBound = 1.4142135623730951;

// Polarizer direction in the fixed transverse (x, y) plane.
struct PolarizerSetting {
  double angle = 0.0;

  Vec3 direction() const noexcept;
};

struct BellSettings {
  PolarizerSetting a, a_prime, b, b_prime;
};

struct CorrelationEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t n_samples = 0;
  double metric_factor_mean = 0.0;  // <g>, 1 in flat space
};

// |cos theta|.
double correlation_analytic(double theta) noexcept;

struct MonteCarloOptions {
  // Spacetime box the evaluation points are drawn from: t in [0, duration],
  // each spatial coordinate in [-extent/2, extent/2].
  double duration = 1.0;
  double extent = 1.0;
  // 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  unsigned workers = 1;
};

// Per trial i (counter stream (seed, i)): isotropic unit lambda, a random
// point x, gamma = delta - h(x), and the sample 3 (lambda gamma A)(lambda
// gamma B). metric_factor_mean averages 3 (lambda gamma A)^2. Sums are
// pairwise in trial order. Throws ParameterError if n_trials < 100.
CorrelationEstimate correlation_mc(const BackgroundEnsemble& ensemble, const PolarizerSetting& a,
                                   const PolarizerSetting& b, std::size_t n_trials,
                                   std::uint64_t seed, const MonteCarloOptions& options = {});

using Correlator = std::function<double(const PolarizerSetting&, const PolarizerSetting&)>;

// Signed M(a, b) = cos(b - a).
Correlator cosine_correlator(double scale = 1.0);

struct ObservableTerms {
  double ab = 0.0, a_prime_b = 0.0, a_b_prime = 0.0, a_prime_b_prime = 0.0;
  double value = 0.0;  // |(ab + a'b + ab' - a'b') / 2|
};

ObservableTerms bell_terms(const BellSettings& settings, const Correlator& correlator);
double bell_observable(const BellSettings& settings, const Correlator& correlator);

struct BoundCheck {
  bool within_bound = false;
  double margin = 0.0;  // sqrt(2) - value
};

BoundCheck check_bound(double value) noexcept;

struct Maximum {
  BellSettings settings;
  double value = 0.0;
};

// Grid search over [0, 2pi)^4 with coarse_steps per axis, then refine_iters
// rounds of coordinate ascent, each axis maximized by golden-section search
// in a bracket that halves every round. Throws ParameterError if
// coarse_steps < 8 or refine_iters < 10.
Maximum maximize_observable(const Correlator& correlator, int coarse_steps = 8,
                            int refine_iters = 10);

}  // namespace gravnoise
