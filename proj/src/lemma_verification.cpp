#include "steklov/lemma_verification.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "steklov/errors.hpp"
#include "steklov/extension_process.hpp"
#include "steklov/parallel.hpp"

namespace steklov {

namespace {

constexpr std::int64_t kDecimalScale = 1'000'000'000;

void require_range(KappaRange range) {
  if (range.first < 1 || range.first > range.last) throw DomainError("kappa range must satisfy 1 <= first <= last");
}

std::optional<HarmonicIndex> tail_onset(KappaRange range, const std::vector<bool>& holds) {
  std::optional<HarmonicIndex> onset;
  for (auto i = static_cast<std::ptrdiff_t>(holds.size()) - 1; i >= 0 && holds[static_cast<std::size_t>(i)]; --i) {
    onset = range.first + static_cast<HarmonicIndex>(i);
  }
  return onset;
}

// prefix[j] = m_0 + ... + m_j, j = 0..last.
std::vector<std::int64_t> multiplicity_prefix(Dimension n, HarmonicIndex last) {
  std::vector<std::int64_t> prefix(static_cast<std::size_t>(last) + 1);
  std::int64_t sum = 0;
  for (HarmonicIndex j = 0; j <= last; ++j) {
    if (__builtin_add_overflow(sum, multiplicity(n, j), &sum)) {
      throw ArithmeticOverflow("multiplicity prefix sum overflows int64");
    }
    prefix[static_cast<std::size_t>(j)] = sum;
  }
  return prefix;
}

bool inequality_from_prefix(const std::vector<std::int64_t>& prefix, std::int64_t floor_ck, HarmonicIndex kappa) {
  const std::int64_t below = floor_ck == 0 ? 0 : prefix[static_cast<std::size_t>(floor_ck - 1)];
  const std::int64_t tail = prefix[static_cast<std::size_t>(kappa)] - below;
  return tail < below;
}

}  // namespace

double c0_equation(double c) { return std::log1p(c) - std::log1p(-c) - 2.0 / c; }

double c0_equation_exponential(double c) { return (1.0 + c) / (1.0 - c) - std::exp(2.0 / c); }

RootResult solve_c0(double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
  double lo = 1e-3;
  double hi = 1.0 - 1e-3;
  int iterations = 0;
  while (hi - lo > tolerance && iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (c0_equation(mid) < 0.0 ? lo : hi) = mid;
    ++iterations;
  }
  const double root = std::abs(c0_equation(lo)) <= std::abs(c0_equation(hi)) ? lo : hi;
  return {root, c0_equation(root), std::max(iterations, 1), {lo, hi}};
}

CrossingResult crossing_b_kappa(Dimension n, HarmonicIndex kappa) {
  if (kappa < 1) throw DomainError("crossing needs kappa >= 1");
  // Neumann increasing minus Dirichlet-0 decreasing: strictly increasing in L.
  const auto gap = [&](double length) {
    const auto geom = AnnulusGeometry::from_length(length);
    return steklov_neumann(n, kappa, geom) - steklov_dirichlet(n, 0, geom);
  };
  double lo = 1.0;
  double hi = 1.0;
  while (gap(lo) >= 0.0) {
    lo *= 0.5;
    if (lo < 1e-9) throw BracketFailure("no crossing bracket below L = 1e-9");
  }
  while (gap(hi) <= 0.0) {
    hi *= 2.0;
    if (hi > 1e9) throw BracketFailure("no crossing bracket above L = 1e9");
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    const double g = gap(mid);
    if (g == 0.0) {
      lo = hi = mid;
      break;
    }
    (g < 0.0 ? lo : hi) = mid;
  }
  const double length = std::abs(gap(lo)) <= std::abs(gap(hi)) ? lo : hi;
  const auto geom = AnnulusGeometry::from_length(length);
  const double value = 0.5 * (steklov_neumann(n, kappa, geom) + steklov_dirichlet(n, 0, geom));
  return {kappa, value, length};
}

DecimalRatio::DecimalRatio(double c) {
  if (!std::isfinite(c) || std::abs(c) > 1e6) throw DomainError("ratio out of range");
  numerator_ = std::llround(c * static_cast<double>(kDecimalScale));
  denominator_ = kDecimalScale;
  const std::int64_t g = std::gcd(numerator_, denominator_);
  numerator_ /= g;
  denominator_ /= g;
}

std::int64_t DecimalRatio::floor_times(std::int64_t kappa) const {
  const __int128 product = static_cast<__int128>(numerator_) * kappa;
  __int128 q = product / denominator_;
  if (product % denominator_ != 0 && product < 0) --q;
  return static_cast<std::int64_t>(q);
}

OnsetScan verify_lemma_c_growth(Dimension n, double c, KappaRange range, int workers) {
  require_range(range);
  static const double c0 = solve_c0().root;
  if (!(c > 0.0) || !(c < c0)) throw DomainError("growth check needs 0 < c < c0");
  OnsetScan scan{range, std::vector<bool>(static_cast<std::size_t>(range.last - range.first + 1)), {}};
  std::vector<char> holds(scan.holds.size());
  parallel_for(holds.size(), workers, [&](std::size_t i) {
    const HarmonicIndex kappa = range.first + static_cast<HarmonicIndex>(i);
    holds[i] = crossing_b_kappa(n, kappa).crossing_value >= c * kappa;
  });
  for (std::size_t i = 0; i < holds.size(); ++i) scan.holds[i] = holds[i] != 0;
  scan.onset = tail_onset(range, scan.holds);
  return scan;
}

bool multiplicity_inequality_holds(Dimension n, const DecimalRatio& c, HarmonicIndex kappa) {
  if (kappa < 1) throw DomainError("kappa must be at least 1");
  const auto prefix = multiplicity_prefix(n, kappa);
  return inequality_from_prefix(prefix, c.floor_times(kappa), kappa);
}

OnsetScan verify_multiplicity_inequality(Dimension n, double c, KappaRange range) {
  require_range(range);
  if (!(c > 0.0) || !(c < 1.0)) throw DomainError("multiplicity inequality needs 0 < c < 1");
  const DecimalRatio ratio(c);
  const auto prefix = multiplicity_prefix(n, range.last);
  OnsetScan scan{range, {}, {}};
  scan.holds.reserve(static_cast<std::size_t>(range.last - range.first + 1));
  for (HarmonicIndex kappa = range.first; kappa <= range.last; ++kappa) {
    scan.holds.push_back(inequality_from_prefix(prefix, ratio.floor_times(kappa), kappa));
  }
  scan.onset = tail_onset(range, scan.holds);
  return scan;
}

FinalLemmaReport verify_final_lemma(Dimension n, KappaRange range, const ScanConfig& config) {
  if (n.value() != 3 && n.value() != 4) throw DomainError("final lemma check is only stated for n = 3 or n = 4");
  require_range(range);
  config.validate();
  const auto prefix = multiplicity_prefix(n, range.last);
  const DecimalRatio ratio(0.8);

  FinalLemmaReport report;
  report.rows.resize(static_cast<std::size_t>(range.last - range.first + 1));
  parallel_for(report.rows.size(), config.workers, [&](std::size_t i) {
    FinalLemmaRow& row = report.rows[i];
    row.kappa = range.first + static_cast<HarmonicIndex>(i);
    const std::int64_t block_lo = prefix[static_cast<std::size_t>(row.kappa - 1)] + 1;
    const std::int64_t block_hi = prefix[static_cast<std::size_t>(row.kappa)];
    row.k = block_lo + (block_hi - block_lo) / 2;

    const CrossingResult crossing = crossing_b_kappa(n, row.kappa);
    row.b_kappa = crossing.crossing_value;
    const double threshold = static_cast<double>(ratio.floor_times(row.kappa) + n.value() - 3);

    const BoundResult small = sharp_bound(n, row.k, AnnulusGeometry::from_length(0.5 * crossing.crossing_length));
    row.small_length_ok =
        small.achieved_by.family == Family::Neumann && small.achieved_by.harmonic_index == row.kappa;
    row.ladder_limit = asymptotic_limit(n, row.k).value;
    row.ladder_ok = row.ladder_limit <= threshold;
    row.crossing_ok = row.b_kappa > threshold;
    row.verdict = classify(n, row.k, config).verdict;
  });

  std::vector<bool> pass(report.rows.size());
  for (std::size_t i = 0; i < pass.size(); ++i) {
    pass[i] = report.rows[i].all_pass();
    if (pass[i] && !report.first_pass) report.first_pass = report.rows[i].kappa;
  }
  report.stable_from = tail_onset(range, pass);
  return report;
}

}  // namespace steklov
