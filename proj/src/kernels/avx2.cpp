// AVX2+FMA kernels. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after a runtime CPU check (see dispatch.cpp).

#include <immintrin.h>

#include <cmath>
#include <complex>

#include "gravnoise/kernels.hpp"

namespace gravnoise::kernels {
namespace {

constexpr std::size_t kLanes = 4;

// pi/2 split into three parts for Cody-Waite reduction; the leading part has
// few enough bits that q * kPio2Hi is exact for |q| < 2^29.
constexpr double kPio2Hi = 1.57079625129699707031e+00;
constexpr double kPio2Mid = 7.54978941586159635335e-08;
constexpr double kPio2Lo = 5.39030285815811905290e-15;
constexpr double kTwoOverPi = 6.36619772367581382433e-01;

// Minimax coefficients for sin and cos on [-pi/4, pi/4] (Cephes).
constexpr double kSin[6] = {1.58962301576546568060e-10, -2.50507477628578072866e-08,
                            2.75573136213857245213e-06, -1.98412698295895385996e-04,
                            8.33333333332211858878e-03, -1.66666666666666307295e-01};
constexpr double kCos[6] = {-1.13585365213876817300e-11, 2.08757008419747316778e-09,
                            -2.75573141792967388112e-07, 2.48015872888517045348e-05,
                            -1.38888888888730564116e-03, 4.16666666666665929218e-02};

inline __m256d polevl(__m256d z, const double (&c)[6]) noexcept {
  __m256d p = _mm256_set1_pd(c[0]);
  for (int k = 1; k < 6; ++k) p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[k]));
  return p;
}

// Valid for |x| < ~1e8; beyond that the reduction loses accuracy.
inline __m256d cos_pd(__m256d x) noexcept {
  const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Hi), x);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Mid), r);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Lo), r);

  const __m256d z = _mm256_mul_pd(r, r);
  const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, z), polevl(z, kSin), r);
  const __m256d cos_r = _mm256_fmadd_pd(
      _mm256_mul_pd(z, z), polevl(z, kCos), _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0)));

  // cos(r + q pi/2): quadrant 0 -> cos, 1 -> -sin, 2 -> -cos, 3 -> sin.
  const __m256i qi = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(q));
  const __m256i odd = _mm256_and_si256(qi, _mm256_set1_epi64x(1));
  const __m256d use_sin =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(odd, _mm256_set1_epi64x(1)));
  const __m256i neg_bits =
      _mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(qi, _mm256_set1_epi64x(1)),
                                         _mm256_set1_epi64x(2)),
                        62);
  const __m256d picked = _mm256_blendv_pd(cos_r, sin_r, use_sin);
  return _mm256_xor_pd(picked, _mm256_castsi256_pd(neg_bits));
}

inline double hsum(__m256d v) noexcept {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) noexcept {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
}

inline __m256d abs_pd(__m256d v) noexcept {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// Lane-wise max that remembers whether a NaN was ever seen.
struct MaxTracker {
  __m256d worst = _mm256_setzero_pd();
  __m256d nan_seen = _mm256_setzero_pd();

  void update(__m256d v) noexcept {
    nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(v, v, _CMP_UNORD_Q));
    worst = _mm256_max_pd(worst, v);
  }
  double finish(double tail_worst, bool tail_nan) const noexcept {
    if (tail_nan || _mm256_movemask_pd(nan_seen) != 0) return std::nan("");
    return std::fmax(hmax(worst), tail_worst);
  }
};

// Gather up to four modes starting at j into zero-padded lane buffers.
struct ModeBlock {
  alignas(32) double omega[kLanes] = {}, nx[kLanes] = {}, ny[kLanes] = {}, nz[kLanes] = {},
                     phase0[kLanes] = {};
  alignas(32) double e[6][kLanes] = {};

  ModeBlock(const ModeTable& m, std::size_t j, std::size_t count) noexcept {
    const std::vector<double>* es[6] = {&m.e11, &m.e12, &m.e13, &m.e22, &m.e23, &m.e33};
    for (std::size_t l = 0; l < count; ++l) {
      omega[l] = m.omega[j + l];
      nx[l] = m.nx[j + l];
      ny[l] = m.ny[j + l];
      nz[l] = m.nz[j + l];
      phase0[l] = m.phase0[j + l];
      for (int k = 0; k < 6; ++k) e[k][l] = (*es[k])[j + l];
    }
  }
};

inline __m256d phase_pd(const double* omega, const double* nx, const double* ny, const double* nz,
                        const double* phase0, const double x[4]) noexcept {
  __m256d ndx = _mm256_mul_pd(_mm256_loadu_pd(nx), _mm256_set1_pd(x[1]));
  ndx = _mm256_fmadd_pd(_mm256_loadu_pd(ny), _mm256_set1_pd(x[2]), ndx);
  ndx = _mm256_fmadd_pd(_mm256_loadu_pd(nz), _mm256_set1_pd(x[3]), ndx);
  const __m256d retarded = _mm256_sub_pd(_mm256_set1_pd(x[0]), ndx);
  return _mm256_fmadd_pd(_mm256_loadu_pd(omega), retarded, _mm256_loadu_pd(phase0));
}

void superpose_h(const ModeTable& m, const double x[4], double out[6]) noexcept {
  __m256d acc[6];
  for (auto& a : acc) a = _mm256_setzero_pd();
  const double* es[6] = {m.e11.data(), m.e12.data(), m.e13.data(),
                         m.e22.data(), m.e23.data(), m.e33.data()};
  const __m256d two = _mm256_set1_pd(2.0);

  const std::size_t n = m.size();
  std::size_t j = 0;
  for (; j + kLanes <= n; j += kLanes) {
    const __m256d c = _mm256_mul_pd(
        two, cos_pd(phase_pd(&m.omega[j], &m.nx[j], &m.ny[j], &m.nz[j], &m.phase0[j], x)));
    for (int k = 0; k < 6; ++k) acc[k] = _mm256_fmadd_pd(c, _mm256_loadu_pd(es[k] + j), acc[k]);
  }
  if (j < n) {
    const ModeBlock b(m, j, n - j);
    const __m256d c =
        _mm256_mul_pd(two, cos_pd(phase_pd(b.omega, b.nx, b.ny, b.nz, b.phase0, x)));
    for (int k = 0; k < 6; ++k) acc[k] = _mm256_fmadd_pd(c, _mm256_load_pd(b.e[k]), acc[k]);
  }
  for (int k = 0; k < 6; ++k) out[k] = hsum(acc[k]);
}

double superpose_r1010(const ModeTable& m, const double x[4]) noexcept {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n = m.size();
  std::size_t j = 0;
  auto step = [&](const double* omega, const double* nx, const double* ny, const double* nz,
                  const double* phase0, const double* e11) {
    const __m256d w = _mm256_loadu_pd(omega);
    const __m256d c = cos_pd(phase_pd(omega, nx, ny, nz, phase0, x));
    const __m256d weight = _mm256_mul_pd(_mm256_mul_pd(w, w), _mm256_loadu_pd(e11));
    acc = _mm256_fnmadd_pd(weight, c, acc);
  };
  for (; j + kLanes <= n; j += kLanes) {
    step(&m.omega[j], &m.nx[j], &m.ny[j], &m.nz[j], &m.phase0[j], &m.e11[j]);
  }
  if (j < n) {
    const ModeBlock b(m, j, n - j);
    step(b.omega, b.nx, b.ny, b.nz, b.phase0, b.e[0]);
  }
  return hsum(acc);
}

double weighted_density(const std::complex<double>* psi, const double* w,
                        std::size_t n) noexcept {
  if (n == 0) return 0.0;
  const double* p = reinterpret_cast<const double*>(psi);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d a = _mm256_loadu_pd(p + 2 * i);
    const __m256d b = _mm256_loadu_pd(p + 2 * i + 4);
    // hadd gives |psi_i|^2, |psi_i+2|^2, |psi_i+1|^2, |psi_i+3|^2.
    const __m256d mod2 = _mm256_permute4x64_pd(
        _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b)), 0b11011000);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), mod2, acc);
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += w[i] * std::norm(psi[i]);
  return total - 0.5 * (w[0] * std::norm(psi[0]) + w[n - 1] * std::norm(psi[n - 1]));
}

double hamilton_jacobi(const double* s0, const double* s1, const double* u, std::size_t n,
                       double dx, double dt, double mass) noexcept {
  if (n < 3) return 0.0;
  const double inv_2dx = 1.0 / (2.0 * dx);
  const double inv_4m = 1.0 / (4.0 * mass);
  const __m256d v_inv_2dx = _mm256_set1_pd(inv_2dx);
  const __m256d v_inv_4m = _mm256_set1_pd(inv_4m);
  const __m256d v_dt = _mm256_set1_pd(dt);
  MaxTracker tracker;
  std::size_t i = 1;
  for (; i + kLanes + 1 <= n; i += kLanes) {
    const __m256d g0 = _mm256_mul_pd(
        _mm256_sub_pd(_mm256_loadu_pd(s0 + i + 1), _mm256_loadu_pd(s0 + i - 1)), v_inv_2dx);
    const __m256d g1 = _mm256_mul_pd(
        _mm256_sub_pd(_mm256_loadu_pd(s1 + i + 1), _mm256_loadu_pd(s1 + i - 1)), v_inv_2dx);
    const __m256d ds = _mm256_div_pd(_mm256_sub_pd(_mm256_loadu_pd(s1 + i), _mm256_loadu_pd(s0 + i)), v_dt);
    const __m256d kinetic = _mm256_mul_pd(_mm256_fmadd_pd(g0, g0, _mm256_mul_pd(g1, g1)), v_inv_4m);
    tracker.update(abs_pd(_mm256_add_pd(_mm256_add_pd(ds, kinetic), _mm256_loadu_pd(u + i))));
  }
  double tail = 0.0;
  bool tail_nan = false;
  for (; i + 1 < n; ++i) {
    const double g0 = (s0[i + 1] - s0[i - 1]) * inv_2dx;
    const double g1 = (s1[i + 1] - s1[i - 1]) * inv_2dx;
    const double r = std::fabs((s1[i] - s0[i]) / dt + (g0 * g0 + g1 * g1) * inv_4m + u[i]);
    tail_nan |= std::isnan(r);
    tail = std::fmax(tail, r);
  }
  return tracker.finish(tail, tail_nan);
}

double continuity(const double* rho0, const double* rho1, const double* s0, const double* s1,
                  std::size_t n, double dx, double dt, double mass) noexcept {
  if (n < 3) return 0.0;
  const double inv_2dx = 1.0 / (2.0 * dx);
  const double inv_dx2 = 1.0 / (dx * dx);
  const double half_inv_m = 0.5 / mass;
  const __m256d v_inv_2dx = _mm256_set1_pd(inv_2dx);
  const __m256d v_inv_dx2 = _mm256_set1_pd(inv_dx2);
  const __m256d v_two = _mm256_set1_pd(2.0);

  auto divergence = [&](const double* rho, const double* s, std::size_t k) {
    const __m256d drho = _mm256_mul_pd(
        _mm256_sub_pd(_mm256_loadu_pd(rho + k + 1), _mm256_loadu_pd(rho + k - 1)), v_inv_2dx);
    const __m256d sp = _mm256_loadu_pd(s + k + 1);
    const __m256d sm = _mm256_loadu_pd(s + k - 1);
    const __m256d ds = _mm256_mul_pd(_mm256_sub_pd(sp, sm), v_inv_2dx);
    const __m256d d2s = _mm256_mul_pd(
        _mm256_add_pd(_mm256_fnmadd_pd(v_two, _mm256_loadu_pd(s + k), sp), sm), v_inv_dx2);
    return _mm256_fmadd_pd(drho, ds, _mm256_mul_pd(_mm256_loadu_pd(rho + k), d2s));
  };

  MaxTracker tracker;
  std::size_t i = 1;
  for (; i + kLanes + 1 <= n; i += kLanes) {
    const __m256d drho_dt = _mm256_div_pd(
        _mm256_sub_pd(_mm256_loadu_pd(rho1 + i), _mm256_loadu_pd(rho0 + i)), _mm256_set1_pd(dt));
    const __m256d div = _mm256_add_pd(divergence(rho0, s0, i), divergence(rho1, s1, i));
    tracker.update(abs_pd(_mm256_fmadd_pd(div, _mm256_set1_pd(half_inv_m), drho_dt)));
  }
  double tail = 0.0;
  bool tail_nan = false;
  for (; i + 1 < n; ++i) {
    const double div0 = (rho0[i + 1] - rho0[i - 1]) * inv_2dx * (s0[i + 1] - s0[i - 1]) * inv_2dx +
                        rho0[i] * (s0[i + 1] - 2.0 * s0[i] + s0[i - 1]) * inv_dx2;
    const double div1 = (rho1[i + 1] - rho1[i - 1]) * inv_2dx * (s1[i + 1] - s1[i - 1]) * inv_2dx +
                        rho1[i] * (s1[i + 1] - 2.0 * s1[i] + s1[i - 1]) * inv_dx2;
    const double r = std::fabs((rho1[i] - rho0[i]) / dt + (div0 + div1) * half_inv_m);
    tail_nan |= std::isnan(r);
    tail = std::fmax(tail, r);
  }
  return tracker.finish(tail, tail_nan);
}

double schrodinger(const std::complex<double>* psi0, const std::complex<double>* psi1,
                   const double* u, std::size_t n, double dx, double dt, double c_t,
                   double c_x) noexcept {
  if (n < 3) return 0.0;
  const double* p0 = reinterpret_cast<const double*>(psi0);
  const double* p1 = reinterpret_cast<const double*>(psi1);
  const double inv_dx2 = 1.0 / (dx * dx);
  const double inv_dt = 1.0 / dt;
  const __m256d v_inv_dx2 = _mm256_set1_pd(inv_dx2);
  const __m256d v_inv_dt = _mm256_set1_pd(inv_dt);
  const __m256d v_two = _mm256_set1_pd(2.0);
  const __m256d v_half_cx = _mm256_set1_pd(0.5 * c_x);
  const __m256d v_half = _mm256_set1_pd(0.5);
  // i * c_t * z for z = (re, im) is (-c_t im, c_t re).
  const __m256d v_rot = _mm256_setr_pd(-c_t, c_t, -c_t, c_t);

  auto laplacian = [&](const double* p, std::size_t k) {
    const __m256d c = _mm256_loadu_pd(p + 2 * k);
    const __m256d sum = _mm256_add_pd(_mm256_loadu_pd(p + 2 * (k + 1)), _mm256_loadu_pd(p + 2 * (k - 1)));
    return _mm256_mul_pd(_mm256_fnmadd_pd(v_two, c, sum), v_inv_dx2);
  };

  MaxTracker tracker;
  std::size_t i = 1;
  // Two complex points per vector.
  for (; i + 2 + 1 <= n; i += 2) {
    const __m256d c0 = _mm256_loadu_pd(p0 + 2 * i);
    const __m256d c1 = _mm256_loadu_pd(p1 + 2 * i);
    const __m256d dpsi = _mm256_mul_pd(_mm256_sub_pd(c1, c0), v_inv_dt);
    const __m256d time_term = _mm256_mul_pd(_mm256_permute_pd(dpsi, 0b0101), v_rot);
    const __m256d kinetic = _mm256_mul_pd(_mm256_add_pd(laplacian(p0, i), laplacian(p1, i)), v_half_cx);
    const __m256d uu = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(u + i)), 0b01010000);
    const __m256d potential = _mm256_mul_pd(_mm256_mul_pd(uu, v_half), _mm256_add_pd(c0, c1));
    const __m256d r = _mm256_sub_pd(_mm256_add_pd(time_term, kinetic), potential);
    const __m256d r2 = _mm256_mul_pd(r, r);
    tracker.update(_mm256_hadd_pd(r2, r2));
  }
  double tail = 0.0;
  bool tail_nan = false;
  for (; i + 1 < n; ++i) {
    const std::complex<double> lap0 = (psi0[i + 1] - 2.0 * psi0[i] + psi0[i - 1]) * inv_dx2;
    const std::complex<double> lap1 = (psi1[i + 1] - 2.0 * psi1[i] + psi1[i - 1]) * inv_dx2;
    const std::complex<double> dpsi = (psi1[i] - psi0[i]) * inv_dt;
    const double re = -c_t * dpsi.imag() + 0.5 * c_x * (lap0.real() + lap1.real()) -
                      0.5 * u[i] * (psi0[i].real() + psi1[i].real());
    const double im = c_t * dpsi.real() + 0.5 * c_x * (lap0.imag() + lap1.imag()) -
                      0.5 * u[i] * (psi0[i].imag() + psi1[i].imag());
    const double m2 = re * re + im * im;
    tail_nan |= std::isnan(m2);
    tail = std::fmax(tail, m2);
  }
  return std::sqrt(tracker.finish(tail, tail_nan));
}

}  // namespace

const KernelSet& avx2_kernel_set() noexcept {
  static constexpr KernelSet set{"avx2",          &superpose_h, &superpose_r1010, &weighted_density,
                                 &hamilton_jacobi, &continuity,  &schrodinger};
  return set;
}

}  // namespace gravnoise::kernels
