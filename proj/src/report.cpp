#include "steklov/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

namespace steklov::report {

using nlohmann::json;

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 15);
  return {buf.data(), res.ptr};
}

namespace {

std::string tag(Family family) { return std::string(1, family_tag(family)); }

std::string curve_name(Family family, HarmonicIndex index) { return tag(family) + std::to_string(index); }

json candidate_json(const CandidateEigenvalue& c) {
  return {{"value", c.value},
          {"family", family_name(c.family)},
          {"harmonic_index", c.harmonic_index},
          {"multiplicity", c.multiplicity}};
}

json rung_json(const LadderRung& r) {
  return {{"family", family_name(r.family)},
          {"harmonic_index", r.harmonic_index},
          {"limit_value", r.limit_value},
          {"cumulative_multiplicity", r.cumulative_multiplicity}};
}

// Candidate values of one curve point, in the fixed column order
// D0..D_l0, N1..N_(l0+1).
std::vector<double> mixed_columns(const BoundResult& result) {
  const auto l0 = static_cast<std::size_t>(result.l0);
  std::vector<double> columns(2 * l0 + 2);
  for (const auto& c : result.candidates) {
    const auto i = static_cast<std::size_t>(c.harmonic_index);
    columns[c.family == Family::Dirichlet ? i : l0 + i] = c.value;
  }
  return columns;
}

std::vector<std::string> mixed_names(int l0) {
  std::vector<std::string> names;
  for (int i = 0; i <= l0; ++i) names.push_back(curve_name(Family::Dirichlet, i));
  for (int i = 1; i <= l0 + 1; ++i) names.push_back(curve_name(Family::Neumann, i));
  return names;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (const char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

// 1, 2, 5 x 10^e tick spacing giving roughly `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (const double f : {1.0, 2.0, 5.0}) {
    if (raw <= f * mag) return f * mag;
  }
  return 10.0 * mag;
}

}  // namespace

// --- bound ---------------------------------------------------------------------

void write_bound_csv(std::ostream& out, const BoundResult& result) {
  out << "nu_index,value,family,harmonic_index,multiplicity,cumulative_multiplicity,selected\n";
  std::int64_t cumulative = 0;
  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    const auto& c = result.candidates[i];
    cumulative += c.multiplicity;
    out << i << ',' << format_number(c.value) << ',' << tag(c.family) << ',' << c.harmonic_index << ','
        << c.multiplicity << ',' << cumulative << ',' << (static_cast<int>(i) == result.l1 ? 1 : 0) << '\n';
  }
}

json bound_json(Dimension n, EigenIndex k, double length, const BoundResult& result) {
  json candidates = json::array();
  for (const auto& c : result.candidates) candidates.push_back(candidate_json(c));
  return {{"command", "bound"},
          {"n", n.value()},
          {"k", k},
          {"L", length},
          {"R", 1.0 + 0.5 * length},
          {"bound", result.bound},
          {"l0", result.l0},
          {"l1", result.l1},
          {"achieved_by", candidate_json(result.achieved_by)},
          {"candidates", std::move(candidates)}};
}

// --- curve ---------------------------------------------------------------------

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve, bool with_mixed) {
  out << kCurveHeader;
  if (with_mixed && !curve.empty()) {
    for (const auto& name : mixed_names(curve.front().second.l0)) out << ',' << name;
  }
  out << '\n';
  for (const auto& [length, result] : curve) {
    out << format_number(length) << ',' << format_number(result.bound) << ',' << tag(result.achieved_by.family)
        << ',' << result.achieved_by.harmonic_index;
    if (with_mixed) {
      for (const double v : mixed_columns(result)) out << ',' << format_number(v);
    }
    out << '\n';
  }
}

json curve_json(Dimension n, EigenIndex k, const std::vector<CurvePoint>& curve, bool with_mixed) {
  json points = json::array();
  for (const auto& [length, result] : curve) {
    json p = {{"L", length},
              {"bound", result.bound},
              {"family", family_name(result.achieved_by.family)},
              {"harmonic_index", result.achieved_by.harmonic_index}};
    if (with_mixed) {
      json mixed = json::object();
      const auto names = mixed_names(result.l0);
      const auto values = mixed_columns(result);
      for (std::size_t i = 0; i < names.size(); ++i) mixed[names[i]] = values[i];
      p["mixed"] = std::move(mixed);
    }
    points.push_back(std::move(p));
  }
  return {{"command", "curve"}, {"n", n.value()}, {"k", k}, {"points", std::move(points)}};
}

void write_curve_svg(std::ostream& out, Dimension n, EigenIndex k, const std::vector<CurvePoint>& curve,
                     const SvgOptions& options) {
  constexpr double width = 900, height = 600;
  constexpr double left = 70, right = 30, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_min = curve.empty() ? 0.0 : curve.front().first;
  double x_max = curve.empty() ? 1.0 : curve.back().first;
  if (!(x_max > x_min)) x_max = x_min + 1.0;

  // y range: the bound and the limits of every candidate curve.
  double y_max = 0.0;
  for (const auto& [length, result] : curve) {
    y_max = std::max(y_max, result.bound);
    if (options.with_mixed) y_max = std::max(y_max, static_cast<double>(result.l0 + 1) + n.value() - 2.0);
  }
  if (options.annotation) y_max = std::max(y_max, options.annotation->supremum_estimate);
  y_max = y_max > 0.0 ? 1.15 * y_max : 1.0;

  const auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
  const auto sy = [&](double y) { return top + plot_h - std::clamp(y, -0.05 * y_max, 1.5 * y_max) / y_max * plot_h; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<defs><clipPath id=\"plot\"><rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\"/></clipPath></defs>\n";

  // Axes and ticks.
  out << "<g stroke=\"black\" fill=\"none\">\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
      << top + plot_h << "\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h << "\"/>\n";
  out << "</g>\n<g fill=\"black\">\n";
  const double xs = nice_step(x_max - x_min, 10);
  for (double x = std::ceil(x_min / xs) * xs; x <= x_max + 1e-9 * xs; x += xs) {
    out << "<line x1=\"" << format_number(sx(x)) << "\" y1=\"" << top + plot_h << "\" x2=\"" << format_number(sx(x))
        << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>";
    out << "<text x=\"" << format_number(sx(x)) << "\" y=\"" << top + plot_h + 20 << "\" text-anchor=\"middle\">"
        << format_number(x) << "</text>\n";
  }
  const double ys = nice_step(y_max, 8);
  for (double y = 0.0; y <= y_max + 1e-9 * ys; y += ys) {
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << format_number(sy(y)) << "\" x2=\"" << left << "\" y2=\""
        << format_number(sy(y)) << "\" stroke=\"black\"/>";
    out << "<text x=\"" << left - 8 << "\" y=\"" << format_number(sy(y) + 4) << "\" text-anchor=\"end\">"
        << format_number(y) << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">L</text>\n";
  out << "<text x=\"20\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << top + plot_h / 2 << ")\">eigenvalue</text>\n";
  out << "</g>\n";

  const auto polyline = [&](const std::vector<std::pair<double, double>>& pts, std::string_view style,
                            std::string_view cls) {
    out << "<polyline class=\"" << cls << "\" fill=\"none\" " << style << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out << ' ';
      out << format_number(sx(pts[i].first)) << ',' << format_number(sy(pts[i].second));
    }
    out << "\"/>\n";
  };

  out << "<g clip-path=\"url(#plot)\">\n";
  if (options.with_mixed && !curve.empty()) {
    const auto names = mixed_names(curve.front().second.l0);
    for (std::size_t c = 0; c < names.size(); ++c) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& [length, result] : curve) pts.emplace_back(length, mixed_columns(result)[c]);
      const bool dirichlet = names[c].front() == 'D';
      polyline(pts,
               dirichlet ? "stroke=\"#1f4fd1\" stroke-width=\"1.2\""
                         : "stroke=\"#1e9a3c\" stroke-width=\"1.2\" stroke-dasharray=\"6 3\"",
               dirichlet ? "dirichlet" : "neumann");
    }
  }
  std::vector<std::pair<double, double>> bound_pts;
  for (const auto& [length, result] : curve) bound_pts.emplace_back(length, result.bound);
  polyline(bound_pts, "stroke=\"#d11f1f\" stroke-width=\"2.5\"", "bound");
  out << "</g>\n";

  // Legend.
  double ly = top + 10;
  const auto legend = [&](std::string_view style, std::string_view label) {
    out << "<line x1=\"" << left + plot_w - 190 << "\" y1=\"" << ly << "\" x2=\"" << left + plot_w - 160 << "\" y2=\""
        << ly << "\" " << style << "/>";
    out << "<text x=\"" << left + plot_w - 152 << "\" y=\"" << ly + 4 << "\">" << xml_escape(label) << "</text>\n";
    ly += 18;
  };
  legend("stroke=\"#d11f1f\" stroke-width=\"2.5\"", "bound B(L)");
  if (options.with_mixed) {
    legend("stroke=\"#1f4fd1\" stroke-width=\"1.2\"", "D: Steklov-Dirichlet");
    legend("stroke=\"#1e9a3c\" stroke-width=\"1.2\" stroke-dasharray=\"6 3\"", "N: Steklov-Neumann");
  }

  std::ostringstream label;
  label << "B_" << n.value() << "^" << k;
  out << "<text x=\"" << left + plot_w - 10 << "\" y=\"" << top + plot_h - 30 << "\" text-anchor=\"end\">"
      << xml_escape(label.str()) << "</text>\n";
  if (options.annotation) {
    const auto& a = *options.annotation;
    std::ostringstream note;
    if (a.verdict == Verdict::FiniteCriticalLength) {
      note << "finite critical length L ~ " << format_number(*a.witness_length) << ", B ~ "
           << format_number(a.supremum_estimate);
    } else {
      note << "no finite critical length found up to L = " << format_number(a.scan_horizon) << ", B ~ "
           << format_number(a.supremum_estimate);
    }
    out << "<text x=\"" << left + plot_w - 10 << "\" y=\"" << top + plot_h - 12 << "\" text-anchor=\"end\">"
        << xml_escape(note.str()) << "</text>\n";
  }
  out << "</svg>\n";
}

// --- classify / sweep ---------------------------------------------------------------

std::string sweep_csv_row(const SweepEntry& entry) {
  const auto& r = entry.report;
  std::string row = std::to_string(entry.diagnosis_index) + ',' + std::to_string(entry.k) + ',' +
                    std::to_string(entry.cover_end) + ',' + std::string(verdict_name(r.verdict)) + ',';
  if (r.witness_length) row += format_number(*r.witness_length);
  row += ',' + format_number(r.supremum_estimate) + ',' + format_number(r.asymptotic_limit);
  return row;
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << kSweepHeader << '\n';
  for (const auto& e : report.entries) out << sweep_csv_row(e) << '\n';
}

json classification_json(const ClassificationReport& r) {
  return {{"verdict", verdict_name(r.verdict)},
          {"witness_L", r.witness_length ? json(*r.witness_length) : json(nullptr)},
          {"sup_estimate", r.supremum_estimate},
          {"scan_maximum", r.scan_maximum},
          {"scan_maximum_L", r.scan_maximum_length},
          {"asymptotic_limit", r.asymptotic_limit},
          {"limit_rung", rung_json(r.limit_rung)},
          {"scan_horizon", r.scan_horizon},
          {"samples_used", r.samples_used}};
}

json sweep_json(const SweepReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"i", e.diagnosis_index},
                       {"k", e.k},
                       {"k_cover_end", e.cover_end},
                       {"report", classification_json(e.report)}});
  }
  return {{"command", "sweep"},
          {"n", report.dimension},
          {"scan_horizon", report.scan_horizon},
          {"entries", std::move(entries)}};
}

int diagnosis_block_of(Dimension n, EigenIndex k) {
  // next = diagnosis_eigenvalue(i + 1); 0 when k precedes the first one.
  int i = 0;
  EigenIndex next = 2;
  while (next <= k) {
    ++i;
    next += 2 * multiplicity(n, i);
  }
  return i;
}

// --- diagnosis ------------------------------------------------------------------------

void write_diagnosis_csv(std::ostream& out, Dimension n, const std::vector<EigenIndex>& sequence) {
  out << "i,k,k_cover_end\n";
  for (std::size_t j = 0; j < sequence.size(); ++j) {
    const int i = static_cast<int>(j) + 1;
    out << i << ',' << sequence[j] << ',' << sequence[j] + 2 * multiplicity(n, i) - 1 << '\n';
  }
}

json diagnosis_json(Dimension n, const std::vector<EigenIndex>& sequence) {
  json entries = json::array();
  for (std::size_t j = 0; j < sequence.size(); ++j) {
    const int i = static_cast<int>(j) + 1;
    entries.push_back({{"i", i}, {"k", sequence[j]}, {"k_cover_end", sequence[j] + 2 * multiplicity(n, i) - 1}});
  }
  return {{"command", "diagnosis"}, {"n", n.value()}, {"entries", std::move(entries)}};
}

// --- lemma verification -----------------------------------------------------------

namespace {

json onset_json(const std::optional<HarmonicIndex>& onset) { return onset ? json(*onset) : json(nullptr); }

}  // namespace

void write_root_csv(std::ostream& out, const RootResult& root) {
  out << "root,residual,iterations,bracket_lo,bracket_hi\n"
      << format_number(root.root) << ',' << format_number(root.residual) << ',' << root.iterations << ','
      << format_number(root.bracket.first) << ',' << format_number(root.bracket.second) << '\n';
}

json root_json(const RootResult& root) {
  return {{"command", "verify"},
          {"lemma", "c0"},
          {"root", root.root},
          {"residual", root.residual},
          {"iterations", root.iterations},
          {"bracket", {root.bracket.first, root.bracket.second}}};
}

void write_crossings_csv(std::ostream& out, const std::vector<CrossingResult>& crossings) {
  out << "kappa,b_kappa,crossing_L\n";
  for (const auto& c : crossings) {
    out << c.kappa << ',' << format_number(c.crossing_value) << ',' << format_number(c.crossing_length) << '\n';
  }
}

json crossings_json(Dimension n, const std::vector<CrossingResult>& crossings) {
  json rows = json::array();
  for (const auto& c : crossings) {
    rows.push_back({{"kappa", c.kappa}, {"b_kappa", c.crossing_value}, {"crossing_L", c.crossing_length}});
  }
  return {{"command", "verify"}, {"lemma", "crossing"}, {"n", n.value()}, {"rows", std::move(rows)}};
}

void write_growth_csv(std::ostream& out, double c, const std::vector<CrossingResult>& crossings,
                      const OnsetScan& scan) {
  out << "kappa,b_kappa,c_kappa,holds\n";
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    out << crossings[i].kappa << ',' << format_number(crossings[i].crossing_value) << ','
        << format_number(c * crossings[i].kappa) << ',' << (scan.holds[i] ? 1 : 0) << '\n';
  }
}

json growth_json(Dimension n, double c, const std::vector<CrossingResult>& crossings, const OnsetScan& scan) {
  json rows = json::array();
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    rows.push_back({{"kappa", crossings[i].kappa},
                    {"b_kappa", crossings[i].crossing_value},
                    {"c_kappa", c * crossings[i].kappa},
                    {"holds", static_cast<bool>(scan.holds[i])}});
  }
  return {{"command", "verify"}, {"lemma", "growth"}, {"n", n.value()}, {"c", c},
          {"onset", onset_json(scan.onset)}, {"rows", std::move(rows)}};
}

void write_multiplicity_csv(std::ostream& out, double c, const OnsetScan& scan) {
  const DecimalRatio ratio(c);
  out << "kappa,floor_c_kappa,holds\n";
  for (std::size_t i = 0; i < scan.holds.size(); ++i) {
    const HarmonicIndex kappa = scan.range.first + static_cast<HarmonicIndex>(i);
    out << kappa << ',' << ratio.floor_times(kappa) << ',' << (scan.holds[i] ? 1 : 0) << '\n';
  }
}

json multiplicity_json(Dimension n, double c, const OnsetScan& scan) {
  json holds = json::array();
  for (const bool h : scan.holds) holds.push_back(h);
  return {{"command", "verify"},
          {"lemma", "multiplicity"},
          {"n", n.value()},
          {"c", c},
          {"kappa_first", scan.range.first},
          {"kappa_last", scan.range.last},
          {"onset", onset_json(scan.onset)},
          {"holds", std::move(holds)}};
}

void write_final_csv(std::ostream& out, const FinalLemmaReport& report) {
  out << "kappa,k,small_length_ok,ladder_limit,ladder_ok,b_kappa,crossing_ok,verdict\n";
  for (const auto& r : report.rows) {
    out << r.kappa << ',' << r.k << ',' << (r.small_length_ok ? 1 : 0) << ',' << format_number(r.ladder_limit)
        << ',' << (r.ladder_ok ? 1 : 0) << ',' << format_number(r.b_kappa) << ',' << (r.crossing_ok ? 1 : 0) << ','
        << verdict_name(r.verdict) << '\n';
  }
}

json final_json(Dimension n, const FinalLemmaReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"kappa", r.kappa},
                    {"k", r.k},
                    {"small_length_ok", r.small_length_ok},
                    {"ladder_limit", r.ladder_limit},
                    {"ladder_ok", r.ladder_ok},
                    {"b_kappa", r.b_kappa},
                    {"crossing_ok", r.crossing_ok},
                    {"verdict", verdict_name(r.verdict)}});
  }
  return {{"command", "verify"},
          {"lemma", "final"},
          {"n", n.value()},
          {"first_pass", onset_json(report.first_pass)},
          {"stable_from", onset_json(report.stable_from)},
          {"rows", std::move(rows)}};
}

}  // namespace steklov::report
