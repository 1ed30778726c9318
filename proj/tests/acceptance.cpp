// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gravnoise/bell_correlation.hpp"
#include "gravnoise/deviation_dynamics.hpp"
#include "gravnoise/io.hpp"
#include "gravnoise/metric_background.hpp"
#include "gravnoise/rng.hpp"
#include "gravnoise/stochastic_probability.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using namespace gravnoise;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Verdict()>& body) {
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  if (!v.pass) ++failures;
  std::printf("[%s] %2d %s: %s\n", v.pass ? "PASS" : "FAIL", id, name.c_str(), v.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  const std::string cmd = std::string(GRAVNOISE_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json cli_result(const std::string& args) {
  const auto r = cli(args);
  if (r.code != 0) throw std::runtime_error("gravnoise " + args + " exited with " + std::to_string(r.code));
  return json::parse(r.out).at("result");
}

std::string angles_arg(double a, double ap, double b, double bp) {
  return fmt("--angles=%.17g,%.17g,%.17g,%.17g", a, ap, b, bp);
}

// R^1_010 by fourth-order central differences of h (all four terms of the
// linearized formula, index raised with eta_11 = -1).
double riemann_fd(const BackgroundEnsemble& ens, const FourVector& x, double s) {
  auto h = [&](std::size_t mu, std::size_t nu, std::size_t a, double da, std::size_t b, double db) {
    FourVector y = x;
    y[a] += da;
    y[b] += db;
    return evaluate_h(ens, y)(mu, nu);
  };
  auto d2 = [&](std::size_t a, std::size_t b, std::size_t mu, std::size_t nu) {
    if (a == b) {
      return (-h(mu, nu, a, 2 * s, a, 0) + 16 * h(mu, nu, a, s, a, 0) - 30 * h(mu, nu, a, 0, a, 0) +
              16 * h(mu, nu, a, -s, a, 0) - h(mu, nu, a, -2 * s, a, 0)) /
             (12 * s * s);
    }
    auto d1 = [&](double da) {
      return (-h(mu, nu, a, da, b, 2 * s) + 8 * h(mu, nu, a, da, b, s) - 8 * h(mu, nu, a, da, b, -s) +
              h(mu, nu, a, da, b, -2 * s)) /
             (12 * s);
    };
    return (-d1(2 * s) + 8 * d1(s) - 8 * d1(-s) + d1(-2 * s)) / (12 * s);
  };
  return -0.5 * (d2(0, 1, 1, 0) + d2(1, 0, 0, 1) - d2(0, 0, 1, 1) - d2(1, 1, 0, 0));
}

double deviation_error(double omega, double periods, double dt) {
  DeviationState s0;
  s0.ell = {1.0, 0.0, 0.0};
  const auto traj = integrate_deviation(s0, constant_curvature(omega * omega), periods * 2 * kPi / omega, dt);
  double err = 0.0;
  for (const auto& s : traj.samples) err = std::max(err, std::fabs(s.ell[0] - std::cos(omega * s.tau)));
  return err;
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "gravnoise_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  report(1, "Bell value at reference angles (CLI, analytic)", [] {
    const auto t0 = Clock::now();
    const json res = cli_result("bell --analytic " + angles_arg(0.0, -kPi / 2, -kPi / 4, kPi / 4));
    const double elapsed = seconds_since(t0);
    const double s = res.at("S").get<double>();
    const double err = std::fabs(s - std::sqrt(2.0));
    return Verdict{err <= 1e-12 && res.at("within_bound").get<bool>() && elapsed < 0.1,
                   fmt("S=%.17g |S-sqrt2|=%.3g (tol 1e-12), runtime %.3fs (limit 0.1s)", s, err, elapsed)};
  });

  report(2, "Bound holds for 1000 random quadruples", [] {
    const auto t0 = Clock::now();
    CounterRng rng(20261016, 2);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const BellSettings st{{2 * kPi * rng.uniform()}, {2 * kPi * rng.uniform()}, {2 * kPi * rng.uniform()},
                            {2 * kPi * rng.uniform()}};
      worst = std::max(worst, bell_observable(st, cosine_correlator()));
    }
    const double elapsed = seconds_since(t0);
    return Verdict{worst <= kBellBound + 1e-9 && elapsed < 1.0,
                   fmt("max S=%.17g (bound sqrt2+1e-9), runtime %.3fs (limit 1s)", worst, elapsed)};
  });

  report(3, "Flat Monte Carlo correlator matches |cos theta| (CLI, 1e5 trials)", [] {
    CounterRng rng(20261016, 3);
    int hits = 0;
    double slowest = 0.0, total = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double theta = 2 * kPi * rng.uniform();
      const auto t0 = Clock::now();
      const json res = cli_result(fmt("bell --trials 100000 --seed %d ", 100 + i) + angles_arg(0.0, 0.0, theta, theta));
      const double elapsed = seconds_since(t0);
      slowest = std::max(slowest, elapsed);
      total += elapsed;
      const double m = res.at("M").at("AB").get<double>();
      const double se = res.at("M_stderr").at("AB").get<double>();
      if (std::fabs(std::fabs(m) - correlation_analytic(theta)) <= 3 * se) ++hits;
    }
    return Verdict{hits >= 18 && total < 5.0,
                   fmt("%d/20 within 3 stderr (need 18), runtime %.2fs total, %.3fs slowest (limit 5s)", hits, total,
                       slowest)};
  });

  report(4, "Weak-field metric average near unity (h_max=1e-3, 1e5 trials)", [&] {
    const fs::path modes = work / "weak.json";
    cli_result("background --n-modes 64 --sigma 1 --h-max 1e-3 --seed 4 --out " + modes.string());
    const auto ens = io::ensemble_from_json(io::read_file(modes));
    const json res = cli_result("bell --trials 100000 --seed 4 --ensemble " + modes.string() + " " +
                                angles_arg(0.0, -kPi / 2, -kPi / 4, kPi / 4));
    const double mf = res.at("metric_factor_mean").get<double>();
    return Verdict{mf >= 0.99 && mf <= 1.01 && max_strain(ens) <= 1e-3 + 1e-18,
                   fmt("metric_factor_mean=%.6f (range [0.99, 1.01]), max strain %.3g", mf, max_strain(ens))};
  });

  report(5, "Deviation matches l0 cos(omega tau) and converges at fourth order", [] {
    double worst = 0.0, worst_ratio_dev = 0.0;
    for (double omega : {0.5, 1.0, 2.0}) {
      const double period = 2 * kPi / omega;
      worst = std::max(worst, deviation_error(omega, 10, period / 1000));
      const double ratio = deviation_error(omega, 10, period / 50) / deviation_error(omega, 10, period / 100);
      worst_ratio_dev = std::max(worst_ratio_dev, std::fabs(ratio - 16.0));
    }
    return Verdict{worst <= 1e-6 && worst_ratio_dev <= 1.6,
                   fmt("max error %.3g over 10 periods (tol 1e-6), halving-dt ratio within %.3f of 16 (tol 1.6)",
                       worst, worst_ratio_dev)};
  });

  report(6, "Gauge and field-equation residuals of 1e4 sampled modes", [] {
    const auto ens = sample_ensemble({.n_modes = 10000, .sigma = 1e-4, .omega_min = 0.1, .omega_max = 100.0,
                                      .h_max = kDefaultHMax, .seed = 6});
    double harmonic = 0.0, field = 0.0;
    for (const auto& m : ens.modes) {
      const auto r = gauge_residuals(m);
      harmonic = std::max(harmonic, r.harmonic);
      field = std::max(field, r.field_equation);
    }
    return Verdict{harmonic <= 1e-12 && field <= 1e-12,
                   fmt("max harmonic %.3g, max null-k %.3g (tol 1e-12)", harmonic, field)};
  });

  report(7, "Riemann component vs finite-difference oracle at 100 points", [] {
    CounterRng rng(7, 0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto ens = sample_ensemble({.n_modes = 1 + i % 8, .sigma = 1e-3, .omega_min = 0.5, .omega_max = 4.0,
                                        .h_max = kDefaultHMax, .seed = 700u + i});
      const FourVector x{{4 * rng.uniform(), 4 * rng.uniform() - 2, 4 * rng.uniform() - 2, 4 * rng.uniform() - 2}};
      const double analytic = riemann_R1010(ens, x);
      worst = std::max(worst, std::fabs(analytic - riemann_fd(ens, x, 1e-2)) / std::fabs(analytic));
    }
    return Verdict{worst <= 1e-6, fmt("max relative error %.3g (tol 1e-6)", worst)};
  });

  report(8, "Schroedinger consistency and factor-2 diagnostic (n=512)", [] {
    const Grid1D g{0.0, 0.12, 512};
    const double m = 1.0, s0 = 0.5, p = 1.0, e = p * p / (2 * m), dt = g.dx() * g.dx();
    auto wave = [&](double divisor, double t) {
      std::vector<std::complex<double>> psi(g.n);
      for (std::size_t i = 0; i < g.n; ++i) psi[i] = std::polar(1.0, (p * g.x(i) - e * t) / divisor);
      return psi;
    };
    const std::vector<double> u(g.n, 0.0);
    const double good = schrodinger_residual(wave(2 * s0, 0.0), wave(2 * s0, dt), u, g, dt, m, s0);
    const double bare = schrodinger_residual(wave(s0, 0.0), wave(s0, dt), u, g, dt, m, s0);
    const double rel = std::fabs(bare - 2 * e) / (2 * e);
    return Verdict{good <= 1e-8 && rel <= 0.1,
                   fmt("2S0 residual %.3g (tol 1e-8); S0 residual %.6f vs 2E=%.6f, rel diff %.3g (tol 0.1)", good, bare,
                       2 * e, rel)};
  });

  report(9, "Normalization to unit quadrature, idempotent", [] {
    CounterRng rng(9, 0);
    double unit_err = 0.0, idem_err = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Grid1D g{-1.0 - rng.uniform(), 1.0 + rng.uniform(), 16 + static_cast<std::size_t>(rng.uniform() * 1000)};
      WaveField f{g, {}, {}, 1.0};
      std::vector<double> w(g.n);
      const double scale = std::exp(20 * (rng.uniform() - 0.5));
      for (std::size_t i = 0; i < g.n; ++i) {
        f.psi.push_back(scale * std::complex<double>(rng.normal(), rng.normal()));
        w[i] = 0.5 + rng.uniform();
      }
      const auto once = normalize_wavefield(f, w);
      const auto twice = normalize_wavefield(once, w);
      double direct = 0.0;
      for (std::size_t i = 0; i < g.n; ++i) {
        const double d = w[i] * std::norm(once.psi[i]);
        direct += (i == 0 || i + 1 == g.n) ? 0.5 * d : d;
        idem_err = std::max(idem_err, std::abs(twice.psi[i] - once.psi[i]) / std::abs(once.psi[i]));
      }
      unit_err = std::max(unit_err, std::fabs(direct * g.dx() - 1.0));
    }
    return Verdict{unit_err <= 1e-10 && idem_err <= 1e-12,
                   fmt("max |norm-1| %.3g (tol 1e-10), max idempotence drift %.3g (tol 1e-12)", unit_err, idem_err)};
  });

  report(10, "Action calibration to target 1.0 (CLI)", [&] {
    const fs::path in = work / "cal_in.json", out = work / "cal_out.json";
    cli_result("background --n-modes 64 --sigma 1e-4 --seed 10 --out " + in.string());
    cli_result("calibrate --ensemble " + in.string() + " --target 1.0 --out " + out.string());
    const auto ens = io::ensemble_from_json(io::read_file(out));
    double sum = 0.0;
    for (const auto& m : ens.modes) {
      const double period = 2 * kPi / m.omega;
      sum += period / (32 * kPi) * m.omega * m.omega * (m.amp_plus * m.amp_plus + m.amp_cross * m.amp_cross);
    }
    const double rel = std::fabs(sum - 1.0);
    return Verdict{rel <= 1e-12, fmt("sum S_j recomputed from file = %.17g, rel error %.3g (tol 1e-12)", sum, rel)};
  });

  report(11, "Probability-axiom report", [] {
    const double sigma = 1.0;
    const std::vector<IntervalTriple> triples{{sigma, sigma, 2 * sigma}, {0.0, 0.0, 0.0}};
    const auto rep = check_probability_axioms(sigma, triples, 1000);
    bool literal_fails = true;
    for (const auto& t : rep.triples) literal_fails = literal_fails && !t.literal_reading_holds;
    return Verdict{rep.monotone_non_increasing && rep.maximal_at_zero && rep.decays_to_zero && literal_fails &&
                       rep.scan_points == 1000,
                   fmt("monotone on %zu-point scan: %s; literal P21+P32<=P31 fails on (s,s,2s) and (0,0,0): %s",
                       rep.scan_points, rep.monotone_non_increasing ? "yes" : "no", literal_fails ? "yes" : "no")};
  });

  fs::remove_all(work);
  std::printf("%s: %d of 11 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
