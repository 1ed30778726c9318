// Scalar reference kernels. These define the semantics the SIMD variants are
// tested against.

#include <cmath>
#include <complex>

#include "gravnoise/kernels.hpp"

namespace gravnoise::kernels {
namespace {

// Max of |r| over a loop that turns NaN sticky instead of skipping it.
struct MaxAbs {
  double worst = 0.0;
  bool nan_seen = false;

  void update(double r) noexcept {
    nan_seen |= std::isnan(r);
    worst = std::fmax(worst, std::fabs(r));
  }
  double value() const noexcept { return nan_seen ? std::nan("") : worst; }
};

inline double mode_phase(const ModeTable& m, std::size_t j, const double x[4]) noexcept {
  const double n_dot_x = m.nx[j] * x[1] + m.ny[j] * x[2] + m.nz[j] * x[3];
  return m.omega[j] * (x[0] - n_dot_x) + m.phase0[j];
}

void superpose_h(const ModeTable& m, const double x[4], double out[6]) noexcept {
  double acc[6] = {0, 0, 0, 0, 0, 0};
  for (std::size_t j = 0; j < m.size(); ++j) {
    const double c = 2.0 * std::cos(mode_phase(m, j, x));
    acc[0] += c * m.e11[j];
    acc[1] += c * m.e12[j];
    acc[2] += c * m.e13[j];
    acc[3] += c * m.e22[j];
    acc[4] += c * m.e23[j];
    acc[5] += c * m.e33[j];
  }
  for (int k = 0; k < 6; ++k) out[k] = acc[k];
}

double superpose_r1010(const ModeTable& m, const double x[4]) noexcept {
  double acc = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    acc -= m.omega[j] * m.omega[j] * m.e11[j] * std::cos(mode_phase(m, j, x));
  }
  return acc;
}

double weighted_density(const std::complex<double>* psi, const double* w,
                        std::size_t n) noexcept {
  if (n == 0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::norm(psi[i]);
  return acc - 0.5 * (w[0] * std::norm(psi[0]) + w[n - 1] * std::norm(psi[n - 1]));
}

double hamilton_jacobi(const double* s0, const double* s1, const double* u, std::size_t n,
                       double dx, double dt, double mass) noexcept {
  MaxAbs worst;
  const double inv_2dx = 1.0 / (2.0 * dx);
  const double inv_4m = 1.0 / (4.0 * mass);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double g0 = (s0[i + 1] - s0[i - 1]) * inv_2dx;
    const double g1 = (s1[i + 1] - s1[i - 1]) * inv_2dx;
    worst.update((s1[i] - s0[i]) / dt + (g0 * g0 + g1 * g1) * inv_4m + u[i]);
  }
  return worst.value();
}

double continuity(const double* rho0, const double* rho1, const double* s0, const double* s1,
                  std::size_t n, double dx, double dt, double mass) noexcept {
  MaxAbs worst;
  const double inv_2dx = 1.0 / (2.0 * dx);
  const double inv_dx2 = 1.0 / (dx * dx);
  const double half_inv_m = 0.5 / mass;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double div0 = (rho0[i + 1] - rho0[i - 1]) * inv_2dx * (s0[i + 1] - s0[i - 1]) * inv_2dx +
                        rho0[i] * (s0[i + 1] - 2.0 * s0[i] + s0[i - 1]) * inv_dx2;
    const double div1 = (rho1[i + 1] - rho1[i - 1]) * inv_2dx * (s1[i + 1] - s1[i - 1]) * inv_2dx +
                        rho1[i] * (s1[i + 1] - 2.0 * s1[i] + s1[i - 1]) * inv_dx2;
    worst.update((rho1[i] - rho0[i]) / dt + (div0 + div1) * half_inv_m);
  }
  return worst.value();
}

double schrodinger(const std::complex<double>* psi0, const std::complex<double>* psi1,
                   const double* u, std::size_t n, double dx, double dt, double c_t,
                   double c_x) noexcept {
  MaxAbs worst_sq;
  const double inv_dx2 = 1.0 / (dx * dx);
  const double inv_dt = 1.0 / dt;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::complex<double> lap0 = (psi0[i + 1] - 2.0 * psi0[i] + psi0[i - 1]) * inv_dx2;
    const std::complex<double> lap1 = (psi1[i + 1] - 2.0 * psi1[i] + psi1[i - 1]) * inv_dx2;
    const std::complex<double> dpsi = (psi1[i] - psi0[i]) * inv_dt;
    // i * c_t * dpsi  ==  (-c_t Im, c_t Re)
    const double re = -c_t * dpsi.imag() + 0.5 * c_x * (lap0.real() + lap1.real()) -
                      0.5 * u[i] * (psi0[i].real() + psi1[i].real());
    const double im = c_t * dpsi.real() + 0.5 * c_x * (lap0.imag() + lap1.imag()) -
                      0.5 * u[i] * (psi0[i].imag() + psi1[i].imag());
    worst_sq.update(re * re + im * im);
  }
  return std::sqrt(worst_sq.value());
}

}  // namespace

const KernelSet& scalar_kernels() noexcept {
  static constexpr KernelSet set{"scalar",     &superpose_h, &superpose_r1010, &weighted_density,
                                 &hamilton_jacobi, &continuity,  &schrodinger};
  return set;
}

}  // namespace gravnoise::kernels
