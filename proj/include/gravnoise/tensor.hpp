#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace gravnoise {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) noexcept {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) noexcept { return std::sqrt(dot(a, a)); }

// Spacetime point or vector, index 0 = time, 1..3 = space, c = 1.
struct FourVector {
  std::array<double, 4> components{};

  double& operator[](std::size_t i) noexcept { return components[i]; }
  double operator[](std::size_t i) const noexcept { return components[i]; }

  bool finite() const noexcept {
    for (double c : components) {
      if (!std::isfinite(c)) return false;
    }
    return true;
  }
};

// Symmetric 4x4 tensor stored as its 10 independent entries, so symmetry
// holds by construction.
class SymTensor2 {
 public:
  SymTensor2() = default;

  static SymTensor2 diagonal(double d0, double d1, double d2, double d3) noexcept {
    SymTensor2 t;
    t(0, 0) = d0;
    t(1, 1) = d1;
    t(2, 2) = d2;
    t(3, 3) = d3;
    return t;
  }

  double& operator()(std::size_t mu, std::size_t nu) noexcept { return entries_[slot(mu, nu)]; }
  double operator()(std::size_t mu, std::size_t nu) const noexcept {
    return entries_[slot(mu, nu)];
  }

  SymTensor2& operator+=(const SymTensor2& other) noexcept {
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
  }
  friend SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) noexcept { return a += b; }

  SymTensor2& operator*=(double s) noexcept {
    for (double& e : entries_) e *= s;
    return *this;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double e : entries_) m = std::fmax(m, std::fabs(e));
    return m;
  }

  // Trace with the index raised by the Minkowski metric diag(+1,-1,-1,-1).
  double minkowski_trace() const noexcept {
    return (*this)(0, 0) - (*this)(1, 1) - (*this)(2, 2) - (*this)(3, 3);
  }

  bool operator==(const SymTensor2&) const = default;

 private:
  static constexpr std::size_t slot(std::size_t mu, std::size_t nu) noexcept {
    if (mu > nu) {
      const std::size_t t = mu;
      mu = nu;
      nu = t;
    }
    // Row-major upper triangle: (0,0..3)=0..3, (1,1..3)=4..6, (2,2..3)=7..8, (3,3)=9.
    return mu * 4 - mu * (mu - 1) / 2 + (nu - mu);
  }

  std::array<double, 10> entries_{};
};

// Minkowski metric with signature (+,-,-,-).
inline SymTensor2 minkowski() noexcept { return SymTensor2::diagonal(1.0, -1.0, -1.0, -1.0); }

inline constexpr std::array<double, 4> kMinkowskiDiag{1.0, -1.0, -1.0, -1.0};

}  // namespace gravnoise
