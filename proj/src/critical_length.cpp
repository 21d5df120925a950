#include "steklov/critical_length.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "steklov/errors.hpp"
#include "steklov/parallel.hpp"

namespace steklov {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw ArithmeticOverflow("cumulative multiplicity overflows int64");
  return out;
}

std::int64_t checked_twice(std::int64_t a) { return checked_add(a, a); }

// Walks the ladder D_0, N_1, D_1, N_2, ... and hands each rung to `visit`
// until it returns true.
template <class Visit>
void walk_ladder(Dimension n, Visit&& visit) {
  LadderRung rung{Family::Dirichlet, 0, curve_limit(n, 0), 1};
  if (visit(rung)) return;
  for (HarmonicIndex j = 1;; ++j) {
    const std::int64_t m = multiplicity(n, j);
    const double limit = curve_limit(n, j);
    rung = {Family::Neumann, j, limit, checked_add(rung.cumulative_multiplicity, m)};
    if (visit(rung)) return;
    rung = {Family::Dirichlet, j, limit, checked_add(rung.cumulative_multiplicity, m)};
    if (visit(rung)) return;
  }
}

// Maximises f(exp(x)) over x in [lo, hi] by golden-section search. Returns
// the best (value, length) seen, including the interior probes.
struct Probe {
  double value;
  double length;
};

template <class F>
Probe golden_section_max(F&& f, double lo, double hi, double log_width, int& evaluations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(std::exp(c));
  double fd = f(std::exp(d));
  evaluations += 2;
  Probe best = fc >= fd ? Probe{fc, std::exp(c)} : Probe{fd, std::exp(d)};
  while (hi - lo > log_width) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(std::exp(c));
      if (fc > best.value) best = {fc, std::exp(c)};
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(std::exp(d));
      if (fd > best.value) best = {fd, std::exp(d)};
    }
    ++evaluations;
  }
  return best;
}

void require_range(int first, int last) {
  if (first < 1) throw InvalidConfig("diagnosis index range must start at 1 or later");
  if (first > last) throw InvalidConfig("diagnosis index range is empty");
}

}  // namespace

std::vector<LadderRung> asymptotic_ladder(Dimension n, int depth) {
  std::vector<LadderRung> rungs;
  if (depth <= 0) return rungs;
  rungs.reserve(static_cast<std::size_t>(depth));
  walk_ladder(n, [&](const LadderRung& r) {
    rungs.push_back(r);
    return static_cast<int>(rungs.size()) >= depth;
  });
  return rungs;
}

AsymptoticLimit asymptotic_limit(Dimension n, EigenIndex k) {
  if (k < 1) throw DomainError("eigenvalue index k must be at least 1");
  AsymptoticLimit out;
  walk_ladder(n, [&](const LadderRung& r) {
    if (r.cumulative_multiplicity < k) return false;
    out = {r.limit_value, r};
    return true;
  });
  return out;
}

EigenIndex diagnosis_eigenvalue(Dimension n, int i) {
  if (i < 1) throw DomainError("diagnosis index must be at least 1");
  std::int64_t sum = 0;
  for (int j = 0; j < i; ++j) sum = checked_add(sum, multiplicity(n, j));
  return checked_twice(sum);
}

std::vector<EigenIndex> diagnosis_sequence(Dimension n, int count) {
  if (count < 1) throw DomainError("diagnosis sequence length must be at least 1");
  std::vector<EigenIndex> out;
  out.reserve(static_cast<std::size_t>(count));
  std::int64_t sum = 0;
  for (int j = 0; j < count; ++j) {
    sum = checked_add(sum, multiplicity(n, j));
    out.push_back(checked_twice(sum));
  }
  return out;
}

void ScanConfig::validate() const {
  if (!(l_min > 0.0) || !std::isfinite(l_min)) throw InvalidConfig("L_min must be positive");
  if (!(l_max > l_min) || !std::isfinite(l_max)) throw InvalidConfig("L_min must be smaller than L_max");
  if (grid_points < 2) throw InvalidConfig("grid needs at least 2 points");
  if (!(refine_width > 0.0)) throw InvalidConfig("refinement width must be positive");
  if (refine_budget < 0) throw InvalidConfig("refinement budget must be non-negative");
  if (!(tolerance > 0.0)) throw InvalidConfig("tolerance must be positive");
  if (workers < 0) throw InvalidConfig("worker count must be non-negative");
}

std::string_view verdict_name(Verdict verdict) noexcept {
  return verdict == Verdict::FiniteCriticalLength ? "FiniteCriticalLength" : "NoFiniteFoundUpToHorizon";
}

ClassificationReport classify(Dimension n, EigenIndex k, const ScanConfig& config) {
  config.validate();
  const ExtensionProcess process(n, k);
  const AsymptoticLimit limit = asymptotic_limit(n, k);

  const auto points = static_cast<std::size_t>(config.grid_points);
  const double log_lo = std::log(config.l_min);
  const double log_hi = std::log(config.l_max);
  const double step = (log_hi - log_lo) / static_cast<double>(points - 1);
  std::vector<double> log_grid(points);
  std::vector<double> values(points);
  for (std::size_t i = 0; i < points; ++i) {
    log_grid[i] = i + 1 == points ? log_hi : log_lo + step * static_cast<double>(i);
    const double length = i + 1 == points ? config.l_max : std::exp(log_grid[i]);
    values[i] = process.bound_at(length);
  }
  int evaluations = static_cast<int>(points);

  std::size_t arg = 0;
  for (std::size_t i = 1; i < points; ++i) {
    if (values[i] > values[arg]) arg = i;
  }
  Probe best{values[arg], arg + 1 == points ? config.l_max : std::exp(log_grid[arg])};

  // Sampled local maxima, highest first; ties keep grid order.
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < points; ++i) {
    const bool left = i == 0 || values[i] >= values[i - 1];
    const bool right = i + 1 == points || values[i] >= values[i + 1];
    if (left && right) peaks.push_back(i);
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  if (peaks.size() > static_cast<std::size_t>(config.refine_budget)) {
    peaks.resize(static_cast<std::size_t>(config.refine_budget));
  }

  const double log_width = std::log1p(config.refine_width);
  const auto objective = [&](double length) { return process.bound_at(length); };
  for (const std::size_t i : peaks) {
    const double lo = log_grid[i == 0 ? 0 : i - 1];
    const double hi = log_grid[i + 1 == points ? i : i + 1];
    const Probe p = golden_section_max(objective, lo, hi, log_width, evaluations);
    if (p.value > best.value) best = p;
  }

  ClassificationReport report;
  report.asymptotic_limit = limit.value;
  report.limit_rung = limit.rung;
  report.scan_horizon = config.l_max;
  report.samples_used = evaluations;
  report.scan_maximum = best.value;
  report.scan_maximum_length = best.length;
  report.supremum_estimate = std::max(best.value, limit.value);
  if (best.value > limit.value * (1.0 + config.tolerance)) {
    report.verdict = Verdict::FiniteCriticalLength;
    report.witness_length = best.length;
  } else {
    report.verdict = Verdict::NoFiniteFoundUpToHorizon;
  }
  return report;
}

double global_bound_estimate(Dimension n, EigenIndex k, const ScanConfig& config) {
  return classify(n, k, config).supremum_estimate;
}

std::vector<SweepEntry> sweep_plan(Dimension n, int first, int last, SweepMode mode) {
  require_range(first, last);
  std::vector<SweepEntry> plan;
  EigenIndex k = diagnosis_eigenvalue(n, first);
  for (int i = first; i <= last; ++i) {
    const std::int64_t block = checked_twice(multiplicity(n, i));
    const EigenIndex end = checked_add(k, block) - 1;
    if (mode == SweepMode::DiagnosisOnly) {
      plan.push_back({i, k, end, {}});
    } else {
      for (EigenIndex kk = k; kk <= end; ++kk) plan.push_back({i, kk, kk, {}});
    }
    k = end + 1;
  }
  return plan;
}

SweepReport sweep(Dimension n, int first, int last, const ScanConfig& config, SweepMode mode) {
  config.validate();
  SweepReport out{n.value(), config.l_max, sweep_plan(n, first, last, mode)};
  parallel_for(out.entries.size(), config.workers, [&](std::size_t i) {
    out.entries[i].report = classify(n, out.entries[i].k, config);
  });
  return out;
}

SweepReport sweep_serial(Dimension n, int first, int last, const ScanConfig& config, SweepMode mode) {
  config.validate();
  SweepReport out{n.value(), config.l_max, sweep_plan(n, first, last, mode)};
  serial_for(out.entries.size(), [&](std::size_t i) {
    out.entries[i].report = classify(n, out.entries[i].k, config);
  });
  return out;
}

}  // namespace steklov
