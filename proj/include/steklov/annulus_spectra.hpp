#pragma once

// Closed-form mixed Steklov-Dirichlet / Steklov-Neumann eigenvalues on the
// annulus A_R = B_R \ closure(B_1) in R^n, counted without multiplicity, and
// the spherical-harmonic multiplicities that both families carry.
//
// Every power R^(2k+n-2) is evaluated in log space as
//   t = exp(-(2k+n-2) * log1p(L/2)),   1 - t = -expm1(-(2k+n-2) * log1p(L/2))
// so the formulas stay finite for very large harmonic indices and keep full
// relative accuracy when the annulus is thin (L -> 0).

#include <cstdint>
#include <string_view>

namespace steklov {

/// Ambient dimension n of the hypersurface; n >= 3.
class Dimension {
 public:
  explicit Dimension(int n);
  [[nodiscard]] int value() const noexcept { return n_; }
  friend bool operator==(Dimension, Dimension) = default;

 private:
  int n_;
};

/// Degree of the spherical harmonic on S^(n-1); non-negative.
using HarmonicIndex = int;

enum class Family : std::uint8_t { Dirichlet, Neumann };

[[nodiscard]] std::string_view family_name(Family family) noexcept;
/// Single-letter tag used in tables: "D" or "N".
[[nodiscard]] char family_tag(Family family) noexcept;

/// Annulus with inner radius 1 and outer radius R = 1 + L/2, parameterised by
/// the meridian length L of the hypersurface it models.
class AnnulusGeometry {
 public:
  /// Throws DomainError unless L is finite and positive.
  static AnnulusGeometry from_length(double meridian_length);
  /// Throws DomainError unless R is finite and R > 1.
  static AnnulusGeometry from_outer_radius(double outer_radius);

  [[nodiscard]] double meridian_length() const noexcept { return length_; }
  [[nodiscard]] double outer_radius() const noexcept { return 1.0 + 0.5 * length_; }
  /// ln R computed as log1p(L/2).
  [[nodiscard]] double log_radius() const noexcept { return log_radius_; }

 private:
  AnnulusGeometry(double length, double log_radius) : length_(length), log_radius_(log_radius) {}
  double length_;
  double log_radius_;
};

/// Dimension m_k of the degree-k spherical harmonics on S^(n-1):
///   m_0 = 1,  m_k = (n+k-3)! (n+2k-2) / ((n-2)! k!).
/// Exact integer arithmetic; throws ArithmeticOverflow past int64.
[[nodiscard]] std::int64_t multiplicity(Dimension n, HarmonicIndex k);

/// sigma_(k)^D(A_R) = ((k+n-2) R^p + k) / (R^p - 1),  p = 2k+n-2.
[[nodiscard]] double steklov_dirichlet(Dimension n, HarmonicIndex k, const AnnulusGeometry& geom);

/// sigma_(k)^N(A_R) = k (k+n-2) (R^p - 1) / (k R^p + k+n-2),  p = 2k+n-2.
/// Exactly 0 for k = 0.
[[nodiscard]] double steklov_neumann(Dimension n, HarmonicIndex k, const AnnulusGeometry& geom);

[[nodiscard]] double steklov_eigenvalue(Family family, Dimension n, HarmonicIndex k,
                                        const AnnulusGeometry& geom);

/// Common L -> infinity limit k+n-2 of both families (0 for Neumann k = 0).
/// Dirichlet curves approach it from above, Neumann curves from below.
[[nodiscard]] double curve_limit(Dimension n, HarmonicIndex k, Family family = Family::Dirichlet);

/// Inverse of L -> sigma_(0)^D. Requires y > n-2.
[[nodiscard]] AnnulusGeometry dirichlet0_inverse(Dimension n, double y);

/// Inverse of L -> sigma_(k)^N for k >= 1. Requires 0 < y < k+n-2.
[[nodiscard]] AnnulusGeometry neumann_inverse(Dimension n, HarmonicIndex k, double y);

}  // namespace steklov
