#pragma once

// Table, JSON and SVG emission for the command-line tool.
//
// CSV numbers use 15 significant digits and '.' as decimal separator,
// independent of the process locale.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "steklov/critical_length.hpp"
#include "steklov/extension_process.hpp"
#include "steklov/lemma_verification.hpp"

namespace steklov::report {

using CurvePoint = std::pair<double, BoundResult>;

[[nodiscard]] std::string format_number(double value);

// --- bound --------------------------------------------------------------
void write_bound_csv(std::ostream& out, const BoundResult& result);
[[nodiscard]] nlohmann::json bound_json(Dimension n, EigenIndex k, double length, const BoundResult& result);

// --- curve --------------------------------------------------------------
inline constexpr const char* kCurveHeader = "L,bound,family,harmonic_index";

/// With `with_mixed`, every candidate curve is appended as a column named
/// D<i> / N<i>.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve, bool with_mixed);
[[nodiscard]] nlohmann::json curve_json(Dimension n, EigenIndex k, const std::vector<CurvePoint>& curve,
                                        bool with_mixed);

struct SvgOptions {
  bool with_mixed = false;
  std::optional<ClassificationReport> annotation;
};
void write_curve_svg(std::ostream& out, Dimension n, EigenIndex k, const std::vector<CurvePoint>& curve,
                     const SvgOptions& options);

// --- classify / sweep ------------------------------------------------------
inline constexpr const char* kSweepHeader = "i,k,k_cover_end,verdict,witness_L,sup_estimate,asymptotic_limit";

[[nodiscard]] std::string sweep_csv_row(const SweepEntry& entry);
void write_sweep_csv(std::ostream& out, const SweepReport& report);
[[nodiscard]] nlohmann::json classification_json(const ClassificationReport& report);
[[nodiscard]] nlohmann::json sweep_json(const SweepReport& report);

/// Diagnosis block containing k: the largest i with diagnosis_eigenvalue(i) <= k
/// (0 for k = 1).
[[nodiscard]] int diagnosis_block_of(Dimension n, EigenIndex k);

// --- diagnosis -------------------------------------------------------------
void write_diagnosis_csv(std::ostream& out, Dimension n, const std::vector<EigenIndex>& sequence);
[[nodiscard]] nlohmann::json diagnosis_json(Dimension n, const std::vector<EigenIndex>& sequence);

// --- lemma verification ----------------------------------------------------
void write_root_csv(std::ostream& out, const RootResult& root);
[[nodiscard]] nlohmann::json root_json(const RootResult& root);

void write_crossings_csv(std::ostream& out, const std::vector<CrossingResult>& crossings);
[[nodiscard]] nlohmann::json crossings_json(Dimension n, const std::vector<CrossingResult>& crossings);

void write_growth_csv(std::ostream& out, double c, const std::vector<CrossingResult>& crossings,
                      const OnsetScan& scan);
[[nodiscard]] nlohmann::json growth_json(Dimension n, double c, const std::vector<CrossingResult>& crossings,
                                         const OnsetScan& scan);

void write_multiplicity_csv(std::ostream& out, double c, const OnsetScan& scan);
[[nodiscard]] nlohmann::json multiplicity_json(Dimension n, double c, const OnsetScan& scan);

void write_final_csv(std::ostream& out, const FinalLemmaReport& report);
[[nodiscard]] nlohmann::json final_json(Dimension n, const FinalLemmaReport& report);

}  // namespace steklov::report
