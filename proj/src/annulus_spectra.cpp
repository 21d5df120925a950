#include "steklov/annulus_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

using u128 = unsigned __int128;
constexpr u128 kInt64Max = static_cast<u128>(std::numeric_limits<std::int64_t>::max());

void require_index(HarmonicIndex k) {
  if (k < 0) throw DomainError("harmonic index must be non-negative, got " + std::to_string(k));
}

// (t, 1 - t) with t = R^-(2k+n-2).
struct DecayPair {
  double t;
  double one_minus_t;
};

DecayPair decay(Dimension n, HarmonicIndex k, const AnnulusGeometry& geom) {
  const double exponent = (2.0 * k + n.value() - 2.0) * geom.log_radius();
  return {std::exp(-exponent), -std::expm1(-exponent)};
}

}  // namespace

Dimension::Dimension(int n) : n_(n) {
  if (n < 3) throw DomainError("dimension must be at least 3, got " + std::to_string(n));
}

std::string_view family_name(Family family) noexcept {
  return family == Family::Dirichlet ? "Dirichlet" : "Neumann";
}

char family_tag(Family family) noexcept { return family == Family::Dirichlet ? 'D' : 'N'; }

AnnulusGeometry AnnulusGeometry::from_length(double meridian_length) {
  if (!std::isfinite(meridian_length) || !(meridian_length > 0.0)) {
    throw DomainError("meridian length must be finite and positive");
  }
  return {meridian_length, std::log1p(0.5 * meridian_length)};
}

AnnulusGeometry AnnulusGeometry::from_outer_radius(double outer_radius) {
  if (!std::isfinite(outer_radius) || !(outer_radius > 1.0)) {
    throw DomainError("outer radius must be finite and greater than 1");
  }
  return from_length(2.0 * (outer_radius - 1.0));
}

std::int64_t multiplicity(Dimension n, HarmonicIndex k) {
  require_index(k);
  if (k == 0) return 1;
  // m_k = C(n+k-3, k) * (n+2k-2) / (n-2); the binomial is built with the
  // shorter of its two symmetric products and every partial quotient is exact.
  const std::int64_t top = static_cast<std::int64_t>(n.value()) + k - 3;
  const std::int64_t steps = std::min<std::int64_t>(k, n.value() - 3);
  u128 binom = 1;
  for (std::int64_t i = 1; i <= steps; ++i) {
    binom = binom * static_cast<u128>(top - steps + i) / static_cast<u128>(i);
    if (binom > kInt64Max) throw ArithmeticOverflow("multiplicity overflows int64");
  }
  const u128 scaled = binom * static_cast<u128>(static_cast<std::int64_t>(n.value()) + 2LL * k - 2);
  const u128 result = scaled / static_cast<u128>(n.value() - 2);
  if (result > kInt64Max) throw ArithmeticOverflow("multiplicity overflows int64");
  return static_cast<std::int64_t>(result);
}

double steklov_dirichlet(Dimension n, HarmonicIndex k, const AnnulusGeometry& geom) {
  require_index(k);
  const auto [t, one_minus_t] = decay(n, k, geom);
  const double kk = k;
  return (kk + n.value() - 2.0 + kk * t) / one_minus_t;
}

double steklov_neumann(Dimension n, HarmonicIndex k, const AnnulusGeometry& geom) {
  require_index(k);
  if (k == 0) return 0.0;
  const auto [t, one_minus_t] = decay(n, k, geom);
  const double kk = k;
  const double shifted = kk + n.value() - 2.0;
  return kk * shifted * one_minus_t / (kk + shifted * t);
}

double steklov_eigenvalue(Family family, Dimension n, HarmonicIndex k, const AnnulusGeometry& geom) {
  return family == Family::Dirichlet ? steklov_dirichlet(n, k, geom) : steklov_neumann(n, k, geom);
}

double curve_limit(Dimension n, HarmonicIndex k, Family family) {
  require_index(k);
  if (family == Family::Neumann && k == 0) return 0.0;
  return static_cast<double>(k) + n.value() - 2.0;
}

AnnulusGeometry dirichlet0_inverse(Dimension n, double y) {
  const double d = n.value() - 2.0;
  if (!std::isfinite(y) || !(y > d)) {
    throw DomainError("sigma_0^D inverse needs y > n-2");
  }
  // R = (1 + d/(y-d))^(1/d)
  const double log_r = std::log1p(d / (y - d)) / d;
  return AnnulusGeometry::from_length(2.0 * std::expm1(log_r));
}

AnnulusGeometry neumann_inverse(Dimension n, HarmonicIndex k, double y) {
  if (k < 1) throw DomainError("Neumann inverse needs k >= 1");
  const double shifted = k + n.value() - 2.0;
  if (!std::isfinite(y) || !(y > 0.0) || !(y < shifted)) {
    throw DomainError("sigma_(k)^N inverse needs 0 < y < k+n-2");
  }
  // R = ((1 + y/k) / (1 - y/(k+n-2)))^(1/(2k+n-2))
  const double log_r =
      (std::log1p(y / k) - std::log1p(-y / shifted)) / (2.0 * k + n.value() - 2.0);
  return AnnulusGeometry::from_length(2.0 * std::expm1(log_r));
}

}  // namespace steklov
