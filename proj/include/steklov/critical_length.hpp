#pragma once

// Finite vs. infinite critical lengths.
//
// For large L the candidate curves settle into the ladder
//   D_0 < N_1 < D_1 < N_2 < D_2 < ...
// with limits n-2, n-1, n-1, n, n, ... . lim_{L->inf} B_n^k(L) is the limit of
// the first rung whose cumulative multiplicity reaches k. An index k has a
// finite critical length when sup_L B_n^k(L) exceeds that limit.
//
// The scan can only ever report "none found up to the horizon"; it never
// certifies an infinite critical length.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "steklov/annulus_spectra.hpp"
#include "steklov/extension_process.hpp"

namespace steklov {

struct LadderRung {
  Family family = Family::Dirichlet;
  HarmonicIndex harmonic_index = 0;
  double limit_value = 0.0;
  std::int64_t cumulative_multiplicity = 0;

  friend bool operator==(const LadderRung&, const LadderRung&) = default;
};

/// First `depth` rungs D_0, N_1, D_1, N_2, ... of the large-L ordering.
[[nodiscard]] std::vector<LadderRung> asymptotic_ladder(Dimension n, int depth);

struct AsymptoticLimit {
  double value = 0.0;
  LadderRung rung;
};

/// lim_{L->inf} B_n^k(L), from the closed-form ladder.
[[nodiscard]] AsymptoticLimit asymptotic_limit(Dimension n, EigenIndex k);

/// The first `count` diagnosis eigenvalues sum_{j<i} 2 m_j, i = 1..count.
[[nodiscard]] std::vector<EigenIndex> diagnosis_sequence(Dimension n, int count);

/// i-th diagnosis eigenvalue (i >= 1).
[[nodiscard]] EigenIndex diagnosis_eigenvalue(Dimension n, int i);

struct ScanConfig {
  double l_min = 1e-3;
  double l_max = 1e3;
  int grid_points = 512;
  /// Golden-section refinement stops at this relative bracket width.
  double refine_width = 1e-6;
  /// Maximum number of local-maximum brackets refined per scan.
  int refine_budget = 32;
  /// Relative margin for "supremum exceeds the limit".
  double tolerance = 1e-9;
  /// Worker threads for sweeps; 0 = runtime default.
  int workers = 0;

  /// Throws InvalidConfig when an invariant is violated.
  void validate() const;
};

enum class Verdict : std::uint8_t { FiniteCriticalLength, NoFiniteFoundUpToHorizon };

[[nodiscard]] std::string_view verdict_name(Verdict verdict) noexcept;

struct ClassificationReport {
  Verdict verdict = Verdict::NoFiniteFoundUpToHorizon;
  std::optional<double> witness_length;
  /// Estimate of B_n^k = sup over all L, i.e. max(scan_maximum, asymptotic_limit).
  double supremum_estimate = 0.0;
  /// Largest B_n^k(L) actually evaluated, and where.
  double scan_maximum = 0.0;
  double scan_maximum_length = 0.0;
  double asymptotic_limit = 0.0;
  LadderRung limit_rung;
  double scan_horizon = 0.0;
  int samples_used = 0;

  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

[[nodiscard]] ClassificationReport classify(Dimension n, EigenIndex k, const ScanConfig& config = {});

/// max(sup over the scan, asymptotic limit).
[[nodiscard]] double global_bound_estimate(Dimension n, EigenIndex k, const ScanConfig& config = {});

struct SweepEntry {
  int diagnosis_index = 0;
  EigenIndex k = 0;
  /// Last index covered by the entry: k + 2 m_i - 1 for diagnosis entries.
  EigenIndex cover_end = 0;
  ClassificationReport report;

  friend bool operator==(const SweepEntry&, const SweepEntry&) = default;
};

struct SweepReport {
  int dimension = 0;
  double scan_horizon = 0.0;
  std::vector<SweepEntry> entries;

  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

enum class SweepMode : std::uint8_t {
  /// Classify diagnosis eigenvalues only; each entry covers its whole block.
  DiagnosisOnly,
  /// Classify every k from the first diagnosis eigenvalue to the last cover end.
  EveryIndex,
};

/// Classifies diagnosis indices first..last (inclusive, 1 <= first <= last)
/// in parallel; entries are ordered by index.
[[nodiscard]] SweepReport sweep(Dimension n, int first, int last, const ScanConfig& config = {},
                                SweepMode mode = SweepMode::DiagnosisOnly);

/// Serial reference for sweep.
[[nodiscard]] SweepReport sweep_serial(Dimension n, int first, int last, const ScanConfig& config = {},
                                       SweepMode mode = SweepMode::DiagnosisOnly);

/// Work items of a sweep, in output order, before classification.
[[nodiscard]] std::vector<SweepEntry> sweep_plan(Dimension n, int first, int last,
                                                 SweepMode mode = SweepMode::DiagnosisOnly);

}  // namespace steklov
