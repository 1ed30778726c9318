#pragma once

// Stochastic ensembles of weak-field gravitational plane waves and the
// linearized metric they produce. Signature (+,-,-,-), c = G = 1.

#include <cstdint>
#include <vector>

#include "gravnoise/kernels.hpp"
#include "gravnoise/tensor.hpp"

namespace gravnoise {

inline constexpr double kDefaultHMax = 1e-3;

// One plane-wave perturbation h = 2 Re(e exp(i k.x)).
struct GwMode {
  Vec3 direction{0.0, 0.0, 1.0};  // unit propagation direction
  double omega = 1.0;
  double amp_plus = 0.0;
  double amp_cross = 0.0;
  double phase0 = 0.0;  // [0, 2pi)

  // Contravariant k^mu = (omega, omega * direction); null under eta.
  FourVector wave_vector() const noexcept;

  // Transverse-traceless e_mu_nu = A+ (p p - q q) + Ax (p q + q p), with p, q
  // the basis from transverse_basis(direction). Row and column 0 are zero.
  SymTensor2 polarization() const noexcept;

  bool operator==(const GwMode&) const = default;
};

// Orthonormal pair spanning the plane transverse to a unit vector n, built
// from the spherical angles of n: p = e_theta, q = e_phi. For n = +z this is
// p = x, q = y.
struct TransverseBasis {
  Vec3 p;
  Vec3 q;
};
TransverseBasis transverse_basis(const Vec3& n) noexcept;

struct BackgroundEnsemble {
  std::vector<GwMode> modes;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  double h_max = kDefaultHMax;

  bool operator==(const BackgroundEnsemble&) const = default;
};

struct EnsembleParams {
  std::int64_t n_modes = 1;
  double sigma = 0.0;
  double omega_min = 1.0;
  double omega_max = 1.0;
  double h_max = kDefaultHMax;
  std::uint64_t seed = 0;
};

// Directions uniform on the sphere, omega log-uniform on
// [omega_min, omega_max], amplitudes N(0, sigma^2), phase0 uniform. Mode j
// draws only from counter stream (seed, j). If any mode exceeds the
// linearization budget all amplitudes are scaled by one common factor.
// Throws ParameterError on invalid parameters.
BackgroundEnsemble sample_ensemble(const EnsembleParams& params);

// Throws InputError if any mode or ensemble field breaks an invariant.
void validate(const BackgroundEnsemble& ensemble);

kernels::ModeTable mode_table(const BackgroundEnsemble& ensemble);

// Real superposition sum_j 2 e_j cos(k_j.x + phase0_j). Symmetric, traceless
// and purely spatial.
SymTensor2 evaluate_h(const kernels::ModeTable& table, const FourVector& x);
SymTensor2 evaluate_h(const BackgroundEnsemble& ensemble, const FourVector& x);

// g = eta + h.
SymTensor2 metric_at(const kernels::ModeTable& table, const FourVector& x);
SymTensor2 metric_at(const BackgroundEnsemble& ensemble, const FourVector& x);

struct GaugeResiduals {
  double harmonic = 0.0;        // max_n |k_m e^m_n - k_n e^m_m / 2|
  double field_equation = 0.0;  // |k.k| * max|e|
};

GaugeResiduals gauge_residuals(const GwMode& mode);
// Same residuals for an arbitrary (possibly broken) wave vector and
// polarization, k contravariant.
GaugeResiduals gauge_residuals(const FourVector& k, const SymTensor2& e);

// Linearized R^1_010 from exact second derivatives of the superposition,
// with R_{mu nu rho sigma} = (1/2)(h_{mu sigma,nu rho} + h_{nu rho,mu sigma}
// - h_{mu rho,nu sigma} - h_{nu sigma,mu rho}) and the first index raised
// by eta. For TT waves this is (1/2) d^2 h_11 / dt^2.
double riemann_R1010(const kernels::ModeTable& table, const FourVector& x);
double riemann_R1010(const BackgroundEnsemble& ensemble, const FourVector& x);

// Quadratic (Isaacson-type) action proxy of a mode over a unit box and one
// period: S = (V T / (32 pi G)) omega^2 (A+^2 + Ax^2), T = 2 pi / omega.
double mode_action(const GwMode& mode) noexcept;
double total_action(const BackgroundEnsemble& ensemble) noexcept;

struct CalibrationResult {
  BackgroundEnsemble ensemble;
  double scale = 1.0;  // common amplitude factor applied
};

// Rescales every amplitude by one positive factor so the summed action
// equals target_action. If the calibrated amplitudes exceed the ensemble's
// h_max, h_max is raised to the new maximum. Throws CalibrationError for an
// all-zero ensemble and ParameterError for a non-positive target.
CalibrationResult calibrate_action(const BackgroundEnsemble& ensemble, double target_action);

// Largest |A+| + |Ax| over the modes.
double max_strain(const BackgroundEnsemble& ensemble) noexcept;

}  // namespace gravnoise
