#include "steklov/extension_process.hpp"

#include <algorithm>
#include <string>

#include "steklov/errors.hpp"
#include "steklov/parallel.hpp"

namespace steklov {

namespace {

void require_positive_index(EigenIndex k) {
  if (k < 1) throw DomainError("eigenvalue index k must be at least 1, got " + std::to_string(k));
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw ArithmeticOverflow("cumulative multiplicity overflows int64");
  return out;
}

}  // namespace

bool candidate_less(const CandidateEigenvalue& a, const CandidateEigenvalue& b) noexcept {
  if (a.value != b.value) return a.value < b.value;
  if (a.family != b.family) return a.family == Family::Neumann;
  return a.harmonic_index < b.harmonic_index;
}

int level_l0(Dimension n, EigenIndex k) {
  require_positive_index(k);
  // m_0 = 1 <= k, so l0 >= 0.
  std::int64_t cumulative = 1;
  int l = 0;
  for (;;) {
    const std::int64_t next = checked_add(cumulative, multiplicity(n, l + 1));
    if (next > k) return l;
    cumulative = next;
    ++l;
  }
}

ExtensionProcess::ExtensionProcess(Dimension n, EigenIndex k) : n_(n), k_(k), l0_(level_l0(n, k)) {
  multiplicities_.reserve(static_cast<std::size_t>(l0_) + 2);
  for (int i = 0; i <= l0_ + 1; ++i) multiplicities_.push_back(multiplicity(n, i));
}

std::vector<CandidateEigenvalue> ExtensionProcess::candidates(const AnnulusGeometry& geom) const {
  std::vector<CandidateEigenvalue> out;
  out.reserve(2 * static_cast<std::size_t>(l0_) + 2);
  for (int i = 0; i <= l0_; ++i) {
    out.push_back({steklov_dirichlet(n_, i, geom), Family::Dirichlet, i, multiplicities_[i]});
  }
  for (int i = 1; i <= l0_ + 1; ++i) {
    out.push_back({steklov_neumann(n_, i, geom), Family::Neumann, i, multiplicities_[i]});
  }
  std::sort(out.begin(), out.end(), candidate_less);
  return out;
}

int ExtensionProcess::select_l1(std::span<const CandidateEigenvalue> sorted) const {
  std::int64_t cumulative = 0;
  for (std::size_t l = 0; l < sorted.size(); ++l) {
    cumulative = checked_add(cumulative, sorted[l].multiplicity);
    if (cumulative >= k_) return static_cast<int>(l);
  }
  // Unreachable: N_1..N_(l0+1) alone carry m_1 + ... + m_(l0+1) >= k.
  throw std::logic_error("extension process exhausted the candidate set");
}

BoundResult ExtensionProcess::evaluate(const AnnulusGeometry& geom) const {
  BoundResult result;
  result.candidates = candidates(geom);
  result.l0 = l0_;
  result.l1 = select_l1(result.candidates);
  result.achieved_by = result.candidates[static_cast<std::size_t>(result.l1)];
  result.bound = result.achieved_by.value;
  return result;
}

double ExtensionProcess::bound_at(double meridian_length) const {
  const auto sorted = candidates(AnnulusGeometry::from_length(meridian_length));
  return sorted[static_cast<std::size_t>(select_l1(sorted))].value;
}

std::vector<CandidateEigenvalue> build_candidate_set(Dimension n, EigenIndex k, const AnnulusGeometry& geom) {
  return ExtensionProcess(n, k).candidates(geom);
}

BoundResult sharp_bound(Dimension n, EigenIndex k, const AnnulusGeometry& geom) {
  return ExtensionProcess(n, k).evaluate(geom);
}

namespace {

void require_grid(std::span<const double> grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw DomainError("curve grid values must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("curve grid must be strictly increasing");
  }
}

}  // namespace

std::vector<std::pair<double, BoundResult>> bound_curve(Dimension n, EigenIndex k,
                                                        std::span<const double> grid, int workers) {
  require_grid(grid);
  const ExtensionProcess process(n, k);
  std::vector<std::pair<double, BoundResult>> out(grid.size());
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    out[i] = {grid[i], process.evaluate(AnnulusGeometry::from_length(grid[i]))};
  });
  return out;
}

std::vector<std::pair<double, BoundResult>> bound_curve_serial(Dimension n, EigenIndex k,
                                                               std::span<const double> grid) {
  require_grid(grid);
  const ExtensionProcess process(n, k);
  std::vector<std::pair<double, BoundResult>> out(grid.size());
  serial_for(grid.size(), [&](std::size_t i) {
    out[i] = {grid[i], process.evaluate(AnnulusGeometry::from_length(grid[i]))};
  });
  return out;
}

}  // namespace steklov
