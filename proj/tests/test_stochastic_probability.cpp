#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "gravnoise/errors.hpp"
#include "gravnoise/metric_background.hpp"
#include "gravnoise/rng.hpp"
#include "gravnoise/stochastic_probability.hpp"

namespace gravnoise {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
using cplx = std::complex<double>;

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::fabs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
  template <class F>
  double integrate(F f, double a, double b) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(0.5 * (b - a) * x[i] + 0.5 * (a + b));
    return 0.5 * (b - a) * s;
  }
};

std::vector<double> sample(const Grid1D& g, auto f) {
  std::vector<double> v(g.n);
  for (std::size_t i = 0; i < g.n; ++i) v[i] = f(g.x(i));
  return v;
}

std::vector<cplx> sample_c(const Grid1D& g, auto f) {
  std::vector<cplx> v(g.n);
  for (std::size_t i = 0; i < g.n; ++i) v[i] = f(g.x(i));
  return v;
}

TEST(IntervalModel, DerivedQuantities) {
  const IntervalModel m(0.3, 2.0);
  EXPECT_NEAR(m.a_sq() * 0.3 * std::sqrt(2 * kPi), 1.0, 1e-12);
  EXPECT_EQ(m.s0(), 2.0 * 0.3 * 0.3 / 2.0);
  EXPECT_THROW(IntervalModel(0.0, 1.0), ParameterError);
  EXPECT_THROW(IntervalModel(1.0, -1.0), ParameterError);
}

TEST(IntervalProbability, Examples) {
  EXPECT_NEAR(interval_probability(0.0, 1.0 / std::sqrt(2 * kPi)), 1.0, 1e-15);
  EXPECT_NEAR(interval_probability(1.0, 1.0), 0.24197072451914337, 1e-15);
  EXPECT_EQ(interval_probability(1e3, 1.0), 0.0);
  EXPECT_THROW(interval_probability(1.0, 0.0), ParameterError);
}

TEST(IntervalProbability, EvenDecreasingLogConcave) {
  CounterRng rng(31, 0);
  for (int i = 0; i < 1000; ++i) {
    const double sigma = 0.1 + 3.0 * rng.uniform();
    const double x = 4.0 * sigma * rng.uniform();
    const double step = 0.05 * sigma;
    EXPECT_EQ(interval_probability(x, sigma), interval_probability(-x, sigma));
    EXPECT_GT(interval_probability(x, sigma), interval_probability(x + step, sigma));
    const double l0 = std::log(interval_probability(x - step, sigma));
    const double l1 = std::log(interval_probability(x, sigma));
    const double l2 = std::log(interval_probability(x + step, sigma));
    // log P is quadratic with curvature -1/sigma^2.
    EXPECT_LT(l0 + l2 - 2 * l1, 0.0);
    EXPECT_NEAR(l0 + l2 - 2 * l1, -step * step / (sigma * sigma), 1e-10);
  }
}

TEST(ActionProbability, Examples) {
  const IntervalModel m(1.0, 2.0);
  EXPECT_EQ(action_probability(0.0, m), m.a_sq());
  EXPECT_NEAR(action_probability(m.s0(), m), m.a_sq() * std::exp(-1.0), 1e-16);
  EXPECT_NEAR(action_probability(3 * m.s0(), m), 0.0198621665891777, 1e-15);
  EXPECT_NEAR(action_probability(3 * m.s0(), m), std::exp(-3.0) / std::sqrt(2 * kPi), 1e-16);
}

TEST(EnergyProbability, MatchesDirectEnergyForm) {
  const IntervalModel m(0.7, 1.3);
  for (double w : {0.0, 0.1, 1.0, 2.5}) {
    EXPECT_NEAR(energy_probability(w, m), m.a_sq() * std::exp(-w / (m.mass() * m.sigma() * m.sigma())), 1e-15);
  }
}

TEST(Amplitude, ExamplesAndConstantModulus) {
  const IntervalModel m(0.5, 1.0);
  const cplx a0 = amplitude(0.0, m);
  EXPECT_EQ(a0.real(), std::sqrt(m.a_sq()));
  EXPECT_EQ(a0.imag(), 0.0);
  const cplx half = amplitude(kPi * m.s0(), m);
  EXPECT_NEAR(half.real(), -std::sqrt(m.a_sq()), 1e-15);
  EXPECT_NEAR(half.imag(), 0.0, 1e-15);
  EXPECT_NEAR(std::norm(a0), action_probability(0.0, m), 1e-15);
  CounterRng rng(3, 1);
  for (int i = 0; i < 1000; ++i) {
    const double s = 200.0 * (rng.uniform() - 0.5);
    EXPECT_LE(std::fabs(std::abs(amplitude(s, m)) - std::sqrt(m.a_sq())), 1e-15);
  }
}

TEST(PhaseDivisor, ParseAndPrint) {
  EXPECT_EQ(parse_phase_divisor("2S0"), PhaseDivisor::kTwoS0);
  EXPECT_EQ(parse_phase_divisor("S0"), PhaseDivisor::kS0);
  EXPECT_STREQ(to_string(PhaseDivisor::kTwoS0), "2S0");
  EXPECT_STREQ(to_string(PhaseDivisor::kS0), "S0");
  EXPECT_THROW(parse_phase_divisor("s0"), ParameterError);
}

TEST(Normalize, ConstantFieldOnUnitInterval) {
  WaveField f{{0.0, 1.0, 101}, std::vector<cplx>(101, cplx(3.0, 4.0)), {}, 1.0};
  const std::vector<double> w(101, 1.0);
  const auto out = normalize_wavefield(f, w);
  for (const auto& v : out.psi) EXPECT_NEAR(std::abs(v), 1.0, 1e-14);
  EXPECT_NEAR(wavefield_norm(out, w), 1.0, 1e-12);
}

TEST(Normalize, GaussianPacketIsAlreadyNormalized) {
  const Grid1D g{-12.0, 12.0, 2401};
  const double s = 1.1, k = 2.0, x0 = 0.4;
  const double pref = std::pow(2 * kPi * s * s, -0.25);
  WaveField f{g, sample_c(g, [&](double x) {
                return pref * std::exp(-(x - x0) * (x - x0) / (4 * s * s)) * std::polar(1.0, k * x);
              }),
              {}, 1.0};
  const std::vector<double> w(g.n, 1.0);
  const auto out = normalize_wavefield(f, w);
  const std::size_t mid = g.n / 2;
  EXPECT_NEAR(std::abs(out.psi[mid] / f.psi[mid]), 1.0, 1e-10);
  EXPECT_NEAR(wavefield_norm(out, w), 1.0, 1e-10);
}

TEST(Normalize, ProjectiveAndIdempotent) {
  CounterRng rng(17, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const Grid1D g{-1.0, 2.0, 64 + static_cast<std::size_t>(trial)};
    WaveField f{g, {}, {}, 1.0};
    std::vector<double> w(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
      f.psi.push_back({rng.normal(), rng.normal()});
      w[i] = 0.5 + rng.uniform();
    }
    const auto once = normalize_wavefield(f, w);
    EXPECT_NEAR(wavefield_norm(once, w), 1.0, 1e-10);
    const auto twice = normalize_wavefield(once, w);
    WaveField doubled = f;
    for (auto& v : doubled.psi) v *= 2.0;
    const auto from_doubled = normalize_wavefield(doubled, w);
    for (std::size_t i = 0; i < g.n; ++i) {
      EXPECT_LE(std::abs(twice.psi[i] - once.psi[i]), 1e-12 * std::abs(once.psi[i]) + 1e-300);
      EXPECT_LE(std::abs(from_doubled.psi[i] - once.psi[i]), 1e-12 * std::abs(once.psi[i]) + 1e-300);
    }
  }
}

TEST(Normalize, MetricWeightedComponents) {
  GwMode m;
  m.direction = {0.0, 0.0, 1.0};
  m.omega = 5.0;
  m.amp_plus = 4e-4;
  m.amp_cross = 3e-4;
  BackgroundEnsemble ens;
  ens.modes = {m};
  const Grid1D g{0.0, 3.0, 301};
  std::vector<SymTensor2> metric(g.n);
  for (std::size_t i = 0; i < g.n; ++i) metric[i] = metric_at(ens, FourVector{{g.x(i), 0.0, 0.0, 0.2 * g.x(i)}});

  WaveField f{g, std::vector<cplx>(g.n, 1.0), {}, 1.0};
  f.components.push_back(sample_c(g, [](double x) { return std::polar(1.0 + x, 0.3 * x); }));
  f.components.push_back(sample_c(g, [](double x) { return cplx(std::sin(x), 0.5); }));

  // Oracle: trapezoid of sum_ab (delta_ab - h_ab) Re(conj(psi_a) psi_b).
  auto oracle = [&](const WaveField& w) {
    double sum = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
      const SymTensor2 h = evaluate_h(ens, FourVector{{g.x(i), 0.0, 0.0, 0.2 * g.x(i)}});
      double d = 0.0;
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
          const double gamma = (a == b ? 1.0 : 0.0) - h(a + 1, b + 1);
          d += gamma * std::real(std::conj(w.components[a][i]) * w.components[b][i]);
        }
      }
      sum += (i == 0 || i + 1 == g.n) ? 0.5 * d : d;
    }
    return sum * g.dx();
  };
  EXPECT_NEAR(wavefield_norm(f, metric), oracle(f), 1e-12 * oracle(f));
  const auto out = normalize_wavefield(f, metric);
  EXPECT_NEAR(oracle(out), 1.0, 1e-10);
  EXPECT_NEAR(wavefield_norm(normalize_wavefield(out, metric), metric), 1.0, 1e-12);

  // Single component under a flat metric is the plain L2 norm.
  WaveField single{g, std::vector<cplx>(g.n, cplx(0.0, 2.0)), {}, 1.0};
  const std::vector<SymTensor2> flat(g.n, minkowski());
  EXPECT_NEAR(wavefield_norm(single, flat), 4.0 * 3.0, 1e-12);
}

TEST(Normalize, Errors) {
  const Grid1D g{0.0, 1.0, 32};
  const std::vector<double> w(32, 1.0);
  WaveField zero{g, std::vector<cplx>(32, 0.0), {}, 1.0};
  EXPECT_THROW(normalize_wavefield(zero, w), NormalizationError);
  WaveField nan = zero;
  nan.psi[3] = std::nan("");
  EXPECT_THROW(normalize_wavefield(nan, w), NormalizationError);
  WaveField ok{g, std::vector<cplx>(32, 1.0), {}, 1.0};
  EXPECT_THROW(normalize_wavefield(ok, std::vector<double>(31, 1.0)), InputError);
  WaveField coarse{{0.0, 1.0, 15}, std::vector<cplx>(15, 1.0), {}, 1.0};
  EXPECT_THROW(normalize_wavefield(coarse, std::vector<double>(15, 1.0)), InputError);
}

ClassicalField free_particle(const Grid1D& g, double p, double m, double t0, double dt) {
  const double e = p * p / (2 * m);
  ClassicalField cf;
  cf.grid = g;
  cf.dt = dt;
  cf.mass = m;
  cf.action_t0 = sample(g, [&](double x) { return p * x - e * t0; });
  cf.action_t1 = sample(g, [&](double x) { return p * x - e * (t0 + dt); });
  cf.amplitude_t0.assign(g.n, 1.0);
  cf.amplitude_t1.assign(g.n, 1.0);
  cf.potential.assign(g.n, 0.0);
  return cf;
}

TEST(HamiltonJacobi, FreeParticle) {
  for (double p : {0.3, 1.0, 2.0}) {
    const auto cf = free_particle({-1.0, 1.0, 257}, p, 1.5, 0.2, 1e-3);
    EXPECT_LE(hamilton_jacobi_residual(cf), 1e-10);
  }
}

TEST(HamiltonJacobi, PotentialOnly) {
  const Grid1D g{0.0, 1.0, 64};
  ClassicalField cf;
  cf.grid = g;
  cf.dt = 0.01;
  cf.action_t0.assign(g.n, 0.0);
  cf.action_t1.assign(g.n, 0.0);
  cf.potential.assign(g.n, 1.0);
  EXPECT_EQ(hamilton_jacobi_residual(cf), 1.0);
}

TEST(HamiltonJacobi, HarmonicOscillatorReducedAction) {
  const double m = 1.0, w = 1.0, e = 1.0, dt = 1e-3;
  const Grid1D g{-1.0, 1.0, 4097};
  const GaussLegendre gl(24);
  auto momentum = [&](double x) { return std::sqrt(2 * m * (e - 0.5 * m * w * w * x * x)); };
  const auto reduced = sample(g, [&](double x) { return gl.integrate(momentum, 0.0, x); });
  ClassicalField cf;
  cf.grid = g;
  cf.dt = dt;
  cf.mass = m;
  cf.potential = sample(g, [&](double x) { return 0.5 * m * w * w * x * x; });
  for (std::size_t i = 0; i < g.n; ++i) {
    cf.action_t0.push_back(reduced[i] - e * 0.0);
    cf.action_t1.push_back(reduced[i] - e * dt);
  }
  EXPECT_LE(hamilton_jacobi_residual(cf), 1e-6);
  // A mismatched energy leaves the offset as residual.
  for (auto& s : cf.action_t1) s -= 0.1 * dt;
  EXPECT_NEAR(hamilton_jacobi_residual(cf), 0.1, 1e-6);
}

TEST(Continuity, ConstantAmplitudeLinearAction) {
  // Dyadic grid and momentum: S = p x is exact on every node, so the
  // second difference of S carries no rounding.
  auto cf = free_particle({0.0, 2.0, 257}, 1.25, 1.0, 0.0, 1.0 / 1024);
  for (auto& a : cf.amplitude_t0) a = 0.7;
  for (auto& a : cf.amplitude_t1) a = 0.7;
  EXPECT_LE(continuity_residual(cf), 1e-12);
}

ClassicalField advected(const Grid1D& g, double p, double m, double dt, auto rho) {
  const double v = p / m;
  ClassicalField cf = free_particle(g, p, m, 0.0, dt);
  for (std::size_t i = 0; i < g.n; ++i) {
    cf.amplitude_t0[i] = std::sqrt(rho(g.x(i)));
    cf.amplitude_t1[i] = std::sqrt(rho(g.x(i) - v * dt));
  }
  return cf;
}

TEST(Continuity, RigidAdvection) {
  auto rho = [](double x) { return 1.0 + 0.4 * x + 0.3 * x * x; };
  for (double p : {0.5, 1.0, 3.0}) {
    const auto cf = advected({-1.0, 1.0, 301}, p, 1.2, 1e-4, rho);
    EXPECT_LE(continuity_residual(cf), 1e-8) << "p " << p;
  }
}

TEST(Continuity, GaussianAdvectionConvergesSecondOrder) {
  auto rho = [](double x) { return std::exp(-x * x / 0.08); };
  const Grid1D coarse{-1.0, 1.0, 201}, fine{-1.0, 1.0, 401};
  const double r1 = continuity_residual(advected(coarse, 1.0, 1.0, coarse.dx(), rho));
  const double r2 = continuity_residual(advected(fine, 1.0, 1.0, fine.dx(), rho));
  EXPECT_NEAR(r1 / r2, 4.0, 0.4);
}

TEST(Continuity, QuadraticActionGivesUnitDivergence) {
  const Grid1D g{-2.0, 2.0, 101};
  ClassicalField cf;
  cf.grid = g;
  cf.dt = 0.01;
  cf.mass = 1.0;
  cf.action_t0 = sample(g, [](double x) { return 0.5 * x * x; });
  cf.action_t1 = cf.action_t0;
  cf.amplitude_t0.assign(g.n, 1.0);
  cf.amplitude_t1.assign(g.n, 1.0);
  EXPECT_NEAR(continuity_residual(cf), 1.0, 1e-10);
}

TEST(Continuity, RejectsNegativeAmplitude) {
  auto cf = free_particle({0.0, 1.0, 32}, 1.0, 1.0, 0.0, 0.01);
  cf.amplitude_t1[4] = -0.1;
  EXPECT_THROW(continuity_residual(cf), InputError);
}

struct PlaneWave {
  Grid1D grid;
  double dt;
  std::vector<cplx> psi0, psi1;
};

PlaneWave plane_wave(const Grid1D& g, double p, double m, double s0, double divisor) {
  const double e = p * p / (2 * m);
  const double dt = g.dx() * g.dx();
  auto at = [&](double t) {
    return sample_c(g, [&](double x) { return std::polar(1.0, (p * x - e * t) / divisor); });
  };
  (void)s0;
  return {g, dt, at(0.0), at(dt)};
}

TEST(Schrodinger, PlaneWaveWithTwoS0Divisor) {
  const Grid1D g{0.0, 0.12, 512};
  const double m = 1.0, s0 = 0.5, p = 1.0;
  const auto w = plane_wave(g, p, m, s0, 2 * s0);
  const std::vector<double> u(g.n, 0.0);
  EXPECT_LE(schrodinger_residual(w.psi0, w.psi1, u, g, w.dt, m, s0), 1e-8);
}

TEST(Schrodinger, BareS0DivisorLeavesTwiceTheEnergy) {
  const Grid1D g{0.0, 0.12, 512};
  const double m = 1.0, s0 = 0.5;
  for (double p : {1.0, std::sqrt(2.0), 1.7}) {
    const double e = p * p / (2 * m);
    const auto bare = plane_wave(g, p, m, s0, s0);
    const auto good = plane_wave(g, p, m, s0, 2 * s0);
    const std::vector<double> u(g.n, 0.0);
    const double r_bare = schrodinger_residual(bare.psi0, bare.psi1, u, g, bare.dt, m, s0);
    const double r_good = schrodinger_residual(good.psi0, good.psi1, u, g, good.dt, m, s0);
    EXPECT_NEAR(r_bare, 2 * e, 0.1 * 2 * e);
    EXPECT_LT(r_good, 1e-3 * r_bare);
  }
}

TEST(Schrodinger, ConstantSolution) {
  const Grid1D g{0.0, 1.0, 128};
  const std::vector<cplx> one(g.n, 1.0);
  const std::vector<double> u(g.n, 0.0);
  EXPECT_LE(schrodinger_residual(one, one, u, g, 1e-4, 1.0, 0.5), 1e-12);
}

TEST(Schrodinger, PotentialTermAppears) {
  const Grid1D g{0.0, 1.0, 128};
  const std::vector<cplx> one(g.n, 1.0);
  const std::vector<double> u(g.n, 0.25);
  EXPECT_NEAR(schrodinger_residual(one, one, u, g, 1e-4, 1.0, 0.5), 0.25, 1e-14);
}

TEST(Schrodinger, WkbConsistencyOnFreeParticleFamily) {
  const double m = 1.0, s0 = 0.5;
  for (double p : {0.5, 1.0, 1.5}) {
    for (std::size_t n : {256u, 512u}) {
      const Grid1D g{0.0, 0.2, n};
      const double dt = g.dx() * g.dx();
      const auto cf = free_particle(g, p, m, 0.0, dt);
      const double eps = hamilton_jacobi_residual(cf) + continuity_residual(cf);
      const auto psi0 = wkb_field(cf.amplitude_t0, cf.action_t0, s0, PhaseDivisor::kTwoS0);
      const auto psi1 = wkb_field(cf.amplitude_t1, cf.action_t1, s0, PhaseDivisor::kTwoS0);
      const double r = schrodinger_residual(psi0, psi1, cf.potential, g, dt, m, s0);
      // Truncation of both central differences plus the roundoff floor of
      // the second difference and the time difference.
      const double hbar = 2 * s0, k = p / hbar, w = p * p / (2 * m) / hbar;
      const double cx = hbar * hbar / (2 * m);
      const double grid_error = cx * std::pow(k, 4) * g.dx() * g.dx() / 12 + hbar * std::pow(w, 3) * dt * dt / 24 +
                                4 * kEps * (cx * 4 / (g.dx() * g.dx()) + hbar / dt);
      EXPECT_LE(r, 10 * (eps + grid_error)) << "p " << p << " n " << n;
    }
  }
}

TEST(WkbField, DivisorChoice) {
  const std::vector<double> a{2.0, 1.0}, s{0.5, 1.0};
  const auto two = wkb_field(a, s, 0.5, PhaseDivisor::kTwoS0);
  const auto one = wkb_field(a, s, 0.5, PhaseDivisor::kS0);
  EXPECT_NEAR(std::arg(two[0]), 0.5, 1e-15);
  EXPECT_NEAR(std::arg(one[0]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(two[0]), 2.0, 1e-15);
  EXPECT_THROW(wkb_field(a, std::vector<double>{1.0}, 0.5, PhaseDivisor::kS0), InputError);
}

TEST(Residuals, RejectCoarseGrids) {
  const Grid1D g{0.0, 1.0, 15};
  const auto cf = free_particle({0.0, 1.0, 16}, 1.0, 1.0, 0.0, 0.01);
  auto coarse = cf;
  coarse.grid = g;
  EXPECT_THROW(hamilton_jacobi_residual(coarse), InputError);
  EXPECT_THROW(continuity_residual(coarse), InputError);
  const std::vector<cplx> psi(15, 1.0);
  const std::vector<double> u(15, 0.0);
  EXPECT_THROW(schrodinger_residual(psi, psi, u, g, 0.01, 1.0, 0.5), InputError);
  EXPECT_NO_THROW(hamilton_jacobi_residual(cf));
}

TEST(Axioms, GaussianReport) {
  const double sigma = 0.8;
  const std::vector<IntervalTriple> triples{{sigma, sigma, 2 * sigma}, {0.0, 0.0, 0.0}};
  const auto rep = check_probability_axioms(sigma, triples);
  EXPECT_EQ(rep.scan_points, 1000u);
  EXPECT_TRUE(rep.monotone_non_increasing);
  EXPECT_TRUE(rep.maximal_at_zero);
  EXPECT_TRUE(rep.decays_to_zero);
  EXPECT_NEAR(rep.p_at_zero, 1.0 / (sigma * std::sqrt(2 * kPi)), 1e-15);
  ASSERT_EQ(rep.triples.size(), 2u);

  const auto& t0 = rep.triples[0];
  EXPECT_NEAR(t0.p21, interval_probability(sigma, sigma), 1e-15);
  EXPECT_NEAR(t0.p31, interval_probability(2 * sigma, sigma), 1e-15);
  EXPECT_GT(t0.p21 + t0.p32, t0.p31);
  EXPECT_FALSE(t0.literal_reading_holds);
  EXPECT_TRUE(t0.slack_reading_holds);

  const auto& t1 = rep.triples[1];
  EXPECT_EQ(t1.p21 + t1.p32, 2 * t1.p31);
  EXPECT_FALSE(t1.literal_reading_holds);

  EXPECT_GT(interval_probability(0.0, sigma), interval_probability(sigma, sigma));
  EXPECT_GT(interval_probability(sigma, sigma), interval_probability(2 * sigma, sigma));

  const auto unit = check_probability_axioms(1.0 / std::sqrt(2 * kPi), {});
  EXPECT_NEAR(unit.p_at_zero, 1.0, 1e-15);
}

TEST(Axioms, MalformedTriples) {
  const std::vector<IntervalTriple> negative{{-1.0, 1.0, 0.0}};
  EXPECT_THROW(check_probability_axioms(1.0, negative), InputError);
  const std::vector<IntervalTriple> broken{{0.1, 0.1, 1.0}};
  EXPECT_THROW(check_probability_axioms(1.0, broken), InputError);
  const std::vector<IntervalTriple> nan{{std::nan(""), 0.1, 0.1}};
  EXPECT_THROW(check_probability_axioms(1.0, nan), InputError);
  EXPECT_THROW(check_probability_axioms(0.0, {}), ParameterError);
}

}  // namespace
}  // namespace gravnoise
