#pragma once

// Numerical checks of the low-dimension argument for finite critical lengths:
//  * c0, the root of (1+c)/(1-c) = e^(2/c) on (0, 1);
//  * b_kappa, the common value where sigma_(kappa)^N meets sigma_(0)^D, and
//    its growth b_kappa >= c kappa;
//  * the multiplicity-sum inequality
//      m_kappa + ... + m_floor(c kappa) < m_0 + ... + m_(floor(c kappa) - 1)
//    which holds eventually for n in {3, 4} and fails for n >= 5 at c = c0;
//  * the chained check that large blocks k have a finite critical length.
//
// All roots come from bisection on monotone functions.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "steklov/annulus_spectra.hpp"
#include "steklov/critical_length.hpp"

namespace steklov {

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
  std::pair<double, double> bracket;
};

/// ln((1+c)/(1-c)) - 2/c, strictly increasing on (0, 1).
[[nodiscard]] double c0_equation(double c);
/// (1+c)/(1-c) - e^(2/c), the same root in exponential form.
[[nodiscard]] double c0_equation_exponential(double c);

/// Bisection for c0 down to a bracket of width `tolerance`.
[[nodiscard]] RootResult solve_c0(double tolerance = 1e-15);

struct CrossingResult {
  HarmonicIndex kappa = 0;
  double crossing_value = 0.0;
  double crossing_length = 0.0;
};

/// Unique L where sigma_(kappa)^N = sigma_(0)^D, kappa >= 1.
/// Throws BracketFailure if no sign change is found within L in (1e-9, 1e9).
[[nodiscard]] CrossingResult crossing_b_kappa(Dimension n, HarmonicIndex kappa);

/// c as an exact fraction with nine decimal places, so floor(c kappa) is
/// computed in integers.
class DecimalRatio {
 public:
  explicit DecimalRatio(double c);
  [[nodiscard]] std::int64_t floor_times(std::int64_t kappa) const;
  [[nodiscard]] double value() const noexcept { return static_cast<double>(numerator_) / denominator_; }

 private:
  std::int64_t numerator_;
  std::int64_t denominator_;
};

struct KappaRange {
  HarmonicIndex first = 1;
  HarmonicIndex last = 1;
};

/// Per-kappa truth values over a range and the tail onset: the smallest kappa
/// from which the property holds through the top of the range.
struct OnsetScan {
  KappaRange range;
  std::vector<bool> holds;
  std::optional<HarmonicIndex> onset;
};

/// b_kappa >= c kappa for kappa in range. Requires 0 < c < c0.
[[nodiscard]] OnsetScan verify_lemma_c_growth(Dimension n, double c, KappaRange range, int workers = 0);

/// Exact-integer test of the multiplicity-sum inequality at a single kappa.
[[nodiscard]] bool multiplicity_inequality_holds(Dimension n, const DecimalRatio& c, HarmonicIndex kappa);

/// Multiplicity-sum inequality for kappa in range. Requires 0 < c < 1.
[[nodiscard]] OnsetScan verify_multiplicity_inequality(Dimension n, double c, KappaRange range);

struct FinalLemmaRow {
  HarmonicIndex kappa = 0;
  EigenIndex k = 0;
  /// B_n^k = sigma_(kappa)^N below the crossing length.
  bool small_length_ok = false;
  double ladder_limit = 0.0;
  /// ladder_limit <= floor(0.8 kappa) + n - 3.
  bool ladder_ok = false;
  double b_kappa = 0.0;
  /// b_kappa > floor(0.8 kappa) + n - 3.
  bool crossing_ok = false;
  Verdict verdict = Verdict::NoFiniteFoundUpToHorizon;

  [[nodiscard]] bool all_pass() const noexcept {
    return small_length_ok && ladder_ok && crossing_ok && verdict == Verdict::FiniteCriticalLength;
  }
};

struct FinalLemmaReport {
  std::vector<FinalLemmaRow> rows;
  std::optional<HarmonicIndex> first_pass;
  std::optional<HarmonicIndex> stable_from;
};

/// For n in {3, 4}: samples k at the middle of each block
/// (m_0+...+m_(kappa-1), m_0+...+m_kappa] and checks the chain of bounds.
[[nodiscard]] FinalLemmaReport verify_final_lemma(Dimension n, KappaRange range, const ScanConfig& config = {});

}  // namespace steklov
