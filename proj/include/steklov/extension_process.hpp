#pragma once

// Sharp upper bound B_n^k(L) on the k-th Steklov eigenvalue of an
// n-dimensional hypersurface of revolution with two unit-sphere boundary
// components and meridian length L.
//
// The bound is read off the mixed spectra of A_{1+L/2}:
//   l0  = max { l : m_0 + ... + m_l <= k }
//   E   = { D_0, ..., D_l0, N_1, ..., N_(l0+1) }       (2 l0 + 2 candidates)
//   nu  = E sorted ascending, mu_i = multiplicity of nu_i
//   l1  = min { l : mu_0 + ... + mu_l >= k }
//   B   = nu_l1
// Ties are ordered Neumann before Dirichlet, then by harmonic index.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "steklov/annulus_spectra.hpp"

namespace steklov {

/// Eigenvalue index, 1-based (sigma_0 = 0 is never bounded).
using EigenIndex = std::int64_t;

struct CandidateEigenvalue {
  double value = 0.0;
  Family family = Family::Dirichlet;
  HarmonicIndex harmonic_index = 0;
  std::int64_t multiplicity = 0;

  friend bool operator==(const CandidateEigenvalue&, const CandidateEigenvalue&) = default;
};

/// Strict total order used to sort E.
[[nodiscard]] bool candidate_less(const CandidateEigenvalue& a, const CandidateEigenvalue& b) noexcept;

struct BoundResult {
  double bound = 0.0;
  int l0 = 0;
  int l1 = 0;
  CandidateEigenvalue achieved_by;
  std::vector<CandidateEigenvalue> candidates;

  friend bool operator==(const BoundResult&, const BoundResult&) = default;
};

[[nodiscard]] int level_l0(Dimension n, EigenIndex k);

[[nodiscard]] std::vector<CandidateEigenvalue> build_candidate_set(Dimension n, EigenIndex k,
                                                                   const AnnulusGeometry& geom);

[[nodiscard]] BoundResult sharp_bound(Dimension n, EigenIndex k, const AnnulusGeometry& geom);

/// B_n^k(L) over a grid of meridian lengths (positive, strictly increasing).
/// Entry i depends only on grid[i]. Evaluated in parallel.
[[nodiscard]] std::vector<std::pair<double, BoundResult>> bound_curve(Dimension n, EigenIndex k,
                                                                      std::span<const double> grid,
                                                                      int workers = 0);

/// Serial reference for bound_curve.
[[nodiscard]] std::vector<std::pair<double, BoundResult>> bound_curve_serial(
    Dimension n, EigenIndex k, std::span<const double> grid);

/// The extension process for a fixed (n, k): l0 and the multiplicities are
/// computed once, then the bound is evaluated at any number of lengths.
/// Evaluation is const and thread-safe.
class ExtensionProcess {
 public:
  ExtensionProcess(Dimension n, EigenIndex k);

  [[nodiscard]] Dimension dimension() const noexcept { return n_; }
  [[nodiscard]] EigenIndex index() const noexcept { return k_; }
  [[nodiscard]] int l0() const noexcept { return l0_; }

  [[nodiscard]] std::vector<CandidateEigenvalue> candidates(const AnnulusGeometry& geom) const;
  [[nodiscard]] BoundResult evaluate(const AnnulusGeometry& geom) const;
  /// Same value as evaluate(geom).bound without the provenance.
  [[nodiscard]] double bound_at(double meridian_length) const;

 private:
  [[nodiscard]] int select_l1(std::span<const CandidateEigenvalue> sorted) const;

  Dimension n_;
  EigenIndex k_;
  int l0_;
  std::vector<std::int64_t> multiplicities_;  // m_0 .. m_(l0+1)
};

}  // namespace steklov
