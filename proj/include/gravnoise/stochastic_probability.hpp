#pragma once

// Gaussian interval probabilities on the stochastic Riemann space, the
// amplitude psi = a exp(i S / divisor), wavefield normalization, and the
// residual checks linking Hamilton-Jacobi + continuity to the Schroedinger
// equation with hbar_eff = 2 S0.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "gravnoise/tensor.hpp"

namespace gravnoise {

// sigma and mass; a^2 = 1/(sigma sqrt(2 pi)), S0 = m sigma^2 / 2.
class IntervalModel {
 public:
  // Throws ParameterError unless sigma > 0 and mass > 0.
  IntervalModel(double sigma, double mass);

  double sigma() const noexcept { return sigma_; }
  double mass() const noexcept { return mass_; }
  double a_sq() const noexcept { return a_sq_; }
  double s0() const noexcept { return s0_; }

 private:
  double sigma_;
  double mass_;
  double a_sq_;
  double s0_;
};

// (1/(sigma sqrt(2 pi))) exp(-dl^2 / (2 sigma^2)).
double interval_probability(double delta_ell, double sigma);

// a^2 exp(-S / S0).
double action_probability(double action, const IntervalModel& model);

// a^2 exp(-W / (m sigma^2)), i.e. action_probability at S = W / 2.
double energy_probability(double energy, const IntervalModel& model);

// sqrt(a^2) exp(i S / S0); |psi|^2 = a^2 for every S.
std::complex<double> amplitude(double action, const IntervalModel& model);

// Phase divisor used when building psi from an action: 2 S0 (consistent
// with the Schroedinger equation) or S0 (the bare amplitude form).
enum class PhaseDivisor { kTwoS0, kS0 };

const char* to_string(PhaseDivisor d) noexcept;
// Accepts "2S0" or "S0"; throws ParameterError otherwise.
PhaseDivisor parse_phase_divisor(std::string_view text);

struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t n = 16;

  double dx() const noexcept { return (x_max - x_min) / static_cast<double>(n - 1); }
  double x(std::size_t i) const noexcept { return x_min + static_cast<double>(i) * dx(); }
};

// Throws InputError if n < 16 or the bounds are not finite and increasing.
void validate(const Grid1D& grid);

struct WaveField {
  Grid1D grid;
  std::vector<std::complex<double>> psi;
  // Optional basis decomposition psi = e^m psi_m: components[m][i].
  std::vector<std::vector<std::complex<double>>> components;
  double hbar_eff = 1.0;
};

// Trapezoid integral of w |psi|^2 (single component).
double wavefield_norm(const WaveField& field, std::span<const double> weight);

// Trapezoid integral of sum_ab gamma_ab conj(psi_a) psi_b with the spatial
// metric gamma_ab = -g_ab taken from each point's full metric.
double wavefield_norm(const WaveField& field, std::span<const SymTensor2> metric);

// Rescale psi (and components) by one positive constant to unit norm.
// Throws NormalizationError for zero or non-finite norms, InputError for
// size mismatches.
WaveField normalize_wavefield(const WaveField& field, std::span<const double> weight);
WaveField normalize_wavefield(const WaveField& field, std::span<const SymTensor2> metric);

// Action, amplitude and potential on two adjacent time slices t and t + dt.
struct ClassicalField {
  Grid1D grid;
  double dt = 0.0;
  double mass = 1.0;
  std::vector<double> action_t0, action_t1;
  std::vector<double> amplitude_t0, amplitude_t1;
  std::vector<double> potential;
};

// Max-norm of dS/dt + (dS/dx)^2/(2m) + U over interior points, time
// derivative centred between the slices.
double hamilton_jacobi_residual(const ClassicalField& cf);

// Max-norm of d(a^2)/dt + d/dx(a^2 (dS/dx) / m) over interior points.
double continuity_residual(const ClassicalField& cf);

// Max-norm of i 2S0 dpsi/dt + (4 S0^2 / 2m) psi'' - U psi over interior
// points, psi given on two slices dt apart.
double schrodinger_residual(std::span<const std::complex<double>> psi_t0,
                            std::span<const std::complex<double>> psi_t1,
                            std::span<const double> potential, const Grid1D& grid, double dt,
                            double mass, double s0);

// psi = a exp(i S / divisor) pointwise.
std::vector<std::complex<double>> wkb_field(std::span<const double> amplitude,
                                            std::span<const double> action, double s0,
                                            PhaseDivisor divisor);

struct IntervalTriple {
  double d21 = 0.0;
  double d32 = 0.0;
  double d31 = 0.0;
};

struct TripleReport {
  IntervalTriple triple;
  double p21 = 0.0, p32 = 0.0, p31 = 0.0;
  bool slack_reading_holds = false;    // P21 + P32 <= P31 + 1
  bool literal_reading_holds = false;  // P21 + P32 <= P31
};

struct AxiomReport {
  double sigma = 0.0;
  std::size_t scan_points = 0;
  bool monotone_non_increasing = false;  // in |dl| over the scan
  bool maximal_at_zero = false;
  bool decays_to_zero = false;
  double p_at_zero = 0.0;  // equals 1 only when sigma = 1/sqrt(2 pi)
  std::vector<TripleReport> triples;
};

// Evaluates the three probability requirements for the Gaussian form. The
// literal third requirement is reported per triple, never enforced. Throws
// InputError for triples with negative or non-finite entries or
// d21 + d32 < d31.
AxiomReport check_probability_axioms(double sigma, std::span<const IntervalTriple> triples,
                                     std::size_t scan_points = 1000);

}  // namespace gravnoise
