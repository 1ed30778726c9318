#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference
// implementation and, where the target supports it, an AVX2+FMA variant.
// The active variant is chosen once at runtime from the CPU features and can
// be overridden with GRAVNOISE_SIMD=scalar|avx2 or set_backend().

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gravnoise::kernels {

// Structure-of-arrays copy of an ensemble's modes: the wave frequency,
// propagation direction, initial phase and the six spatial polarization
// entries e_ab (a <= b) of every mode.
struct ModeTable {
  std::vector<double> omega, nx, ny, nz, phase0;
  std::vector<double> e11, e12, e13, e22, e23, e33;

  std::size_t size() const noexcept { return omega.size(); }
  void reserve(std::size_t n);
  void push_back(double w, const double n[3], double phi0, const double e[6]);
};

// Spatial components of h at x: out = {h11, h12, h13, h22, h23, h33}, each
// the sum over modes of 2 e_ab cos(omega (t - n.x) + phase0).
using SuperposeHFn = void (*)(const ModeTable&, const double x[4], double out[6]) noexcept;

// R^1_010 at x: -sum over modes of omega^2 e11 cos(omega (t - n.x) + phase0).
using SuperposeR1010Fn = double (*)(const ModeTable&, const double x[4]) noexcept;

// Trapezoid-weighted sum of w_i |psi_i|^2 (end points at half weight,
// without the grid spacing factor).
using WeightedDensityFn = double (*)(const std::complex<double>* psi, const double* w,
                                     std::size_t n) noexcept;

// Max over interior points of the two-slice Hamilton-Jacobi residual
//   (S1 - S0)/dt + ((dS0/dx)^2 + (dS1/dx)^2) / (4m) + U.
using HamiltonJacobiFn = double (*)(const double* s0, const double* s1, const double* u,
                                    std::size_t n, double dx, double dt, double mass) noexcept;

// Max over interior points of the two-slice continuity residual
//   (rho1 - rho0)/dt + (1/2) sum_k [rho_k' S_k' + rho_k S_k''] / m, rho = a^2.
using ContinuityFn = double (*)(const double* rho0, const double* rho1, const double* s0,
                                const double* s1, std::size_t n, double dx, double dt,
                                double mass) noexcept;

// Max over interior points of the two-slice Schroedinger residual
//   | i c_t (psi1 - psi0)/dt + c_x (L psi0 + L psi1)/2 - U (psi0 + psi1)/2 |,
// L the 3-point Laplacian.
using SchrodingerFn = double (*)(const std::complex<double>* psi0,
                                 const std::complex<double>* psi1, const double* u,
                                 std::size_t n, double dx, double dt, double c_t,
                                 double c_x) noexcept;

struct KernelSet {
  std::string_view name;
  SuperposeHFn superpose_h;
  SuperposeR1010Fn superpose_r1010;
  WeightedDensityFn weighted_density;
  HamiltonJacobiFn hamilton_jacobi;
  ContinuityFn continuity;
  SchrodingerFn schrodinger;
};

enum class Backend { kScalar, kAvx2 };

const KernelSet& scalar_kernels() noexcept;

// nullptr when the build or the CPU lacks AVX2+FMA.
const KernelSet* avx2_kernels() noexcept;

bool backend_available(Backend b) noexcept;

// The kernel set used by the library.
const KernelSet& active() noexcept;
Backend active_backend() noexcept;

// Returns false (and leaves the selection unchanged) if unavailable.
bool set_backend(Backend b) noexcept;

}  // namespace gravnoise::kernels
