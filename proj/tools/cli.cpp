#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "steklov/critical_length.hpp"
#include "steklov/errors.hpp"
#include "steklov/extension_process.hpp"
#include "steklov/lemma_verification.hpp"
#include "steklov/parallel.hpp"
#include "steklov/report.hpp"

namespace steklov::cli {

namespace {

namespace fs = std::filesystem;

const std::set<std::string> kConfigFlags = {"resume", "with-mixed", "expect-fail", "every-k"};

struct Options {
  int n = 3;
  EigenIndex k = 1;
  double length = 1.0;
  std::optional<double> l_min;
  std::optional<double> l_max;
  std::optional<int> samples;
  std::optional<int> from;
  std::optional<int> to;
  std::optional<double> c;
  int count = 15;
  double tolerance = ScanConfig{}.tolerance;
  int refine_budget = ScanConfig{}.refine_budget;
  int workers = 0;
  std::string format = "csv";
  std::string out_path;
  std::string config_path;
  std::string lemma;
  bool resume = false;
  bool with_mixed = false;
  bool expect_fail = false;
  bool every_k = false;
};

ScanConfig scan_config(const Options& o) {
  ScanConfig config;
  config.l_min = o.l_min.value_or(config.l_min);
  config.l_max = o.l_max.value_or(config.l_max);
  config.grid_points = o.samples.value_or(config.grid_points);
  config.tolerance = o.tolerance;
  config.refine_budget = o.refine_budget;
  config.workers = o.workers;
  return config;
}

// Output sink: the named file, or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw InvalidConfig("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

std::string trim(std::string s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// key=value lines become flags inserted right after the subcommand name, so
// any flag given on the command line (parsed later, last one wins) overrides
// them. Keys owned only by other subcommands are skipped.
std::vector<std::string> inject_config(const std::vector<std::string>& args, const CLI::App& app) {
  const auto path = find_config_path(args);
  if (!path) return args;
  std::ifstream in(*path);
  if (!in) throw InvalidConfig("cannot read config file " + *path);

  auto sub_pos = args.end();
  const CLI::App* sub = nullptr;
  for (auto it = args.begin() + 1; it != args.end(); ++it) {
    for (const auto* candidate : app.get_subcommands({})) {
      if (candidate->get_name() == *it) {
        sub = candidate;
        sub_pos = it;
        break;
      }
    }
    if (sub) break;
  }
  if (!sub) return args;

  std::vector<std::string> injected;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidConfig(*path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "config") continue;
    bool known_anywhere = false;
    for (const auto* s : app.get_subcommands({})) {
      if (s->get_option_no_throw("--" + key) != nullptr) known_anywhere = true;
    }
    if (!known_anywhere) throw InvalidConfig(*path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (sub->get_option_no_throw("--" + key) == nullptr) continue;
    if (kConfigFlags.count(key)) {
      if (value == "1" || value == "true" || value == "yes" || value == "on") injected.push_back("--" + key);
    } else {
      injected.push_back("--" + key);
      injected.push_back(value);
    }
  }
  std::vector<std::string> out(args.begin(), sub_pos + 1);
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), sub_pos + 1, args.end());
  return out;
}

void require_no_svg(const Options& o, std::string_view command) {
  if (o.format == "svg") throw InvalidConfig(std::string(command) + " does not produce a curve; svg is not available");
}

void write_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

// --- commands ---------------------------------------------------------------------

int cmd_bound(const Options& o, std::ostream& out) {
  require_no_svg(o, "bound");
  const Dimension n(o.n);
  const auto result = sharp_bound(n, o.k, AnnulusGeometry::from_length(o.length));
  Sink sink(o.out_path, out);
  if (o.format == "json") {
    write_json(sink.stream(), report::bound_json(n, o.k, o.length, result));
  } else {
    report::write_bound_csv(sink.stream(), result);
  }
  return kSuccess;
}

int cmd_curve(const Options& o, std::ostream& out) {
  const Dimension n(o.n);
  const double lo = o.l_min.value_or(0.01);
  const double hi = o.l_max.value_or(20.0);
  const int samples = o.samples.value_or(500);
  if (!(lo > 0.0) || !(hi > lo)) throw InvalidConfig("curve needs 0 < lmin < lmax");
  if (samples < 2) throw InvalidConfig("curve needs at least 2 samples");
  std::vector<double> grid(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    grid[static_cast<std::size_t>(i)] = i + 1 == samples ? hi : lo + (hi - lo) * i / (samples - 1);
  }
  const auto curve = bound_curve(n, o.k, grid, o.workers);
  Sink sink(o.out_path, out);
  if (o.format == "json") {
    write_json(sink.stream(), report::curve_json(n, o.k, curve, o.with_mixed));
  } else if (o.format == "svg") {
    ScanConfig config;
    config.workers = o.workers;
    report::write_curve_svg(sink.stream(), n, o.k, curve, {o.with_mixed, classify(n, o.k, config)});
  } else {
    report::write_curve_csv(sink.stream(), curve, o.with_mixed);
  }
  return kSuccess;
}

int cmd_classify(const Options& o, std::ostream& out) {
  require_no_svg(o, "classify");
  const Dimension n(o.n);
  const SweepEntry entry{report::diagnosis_block_of(n, o.k), o.k, o.k, classify(n, o.k, scan_config(o))};
  Sink sink(o.out_path, out);
  if (o.format == "json") {
    write_json(sink.stream(), {{"command", "classify"},
                               {"n", n.value()},
                               {"k", o.k},
                               {"i", entry.diagnosis_index},
                               {"report", report::classification_json(entry.report)}});
  } else {
    sink.stream() << report::kSweepHeader << '\n' << report::sweep_csv_row(entry) << '\n';
  }
  return kSuccess;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

// Completed rows of an earlier run, keyed on (i, k). Malformed (e.g.
// truncated) lines are dropped; a row whose k does not belong to its i under
// this dimension means the file came from another run and is rejected.
std::map<std::pair<int, EigenIndex>, std::string> load_resume_rows(const std::string& path,
                                                                  const std::vector<SweepEntry>& plan,
                                                                  Dimension n, std::ostream& err) {
  std::map<std::pair<int, EigenIndex>, std::string> rows;
  std::ifstream in(path);
  if (!in) return rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  if (line != report::kSweepHeader) throw InvalidConfig("resume file " + path + " is not a sweep CSV");

  std::map<int, std::pair<EigenIndex, EigenIndex>> blocks;  // i -> [k, end] in the plan
  for (const auto& e : plan) {
    auto [it, inserted] = blocks.try_emplace(e.diagnosis_index, e.k, e.cover_end);
    if (!inserted) it->second.second = e.cover_end;
  }
  std::set<std::pair<int, EigenIndex>> wanted;
  for (const auto& e : plan) wanted.emplace(e.diagnosis_index, e.k);

  int dropped = 0;
  while (std::getline(in, line)) {
    const auto fields = split_csv(line);
    if (fields.size() != 7 || (fields[3] != "FiniteCriticalLength" && fields[3] != "NoFiniteFoundUpToHorizon")) {
      ++dropped;
      continue;
    }
    int i = 0;
    EigenIndex k = 0;
    try {
      i = std::stoi(fields[0]);
      k = std::stoll(fields[1]);
    } catch (const std::exception&) {
      ++dropped;
      continue;
    }
    if (wanted.count({i, k})) {
      rows[{i, k}] = line;
      continue;
    }
    const auto block = blocks.find(i);
    if (block != blocks.end()) {
      throw InvalidConfig("resume file row i=" + std::to_string(i) + " k=" + std::to_string(k) +
                          " does not match dimension " + std::to_string(n.value()));
    }
    ++dropped;
  }
  if (dropped > 0) err << "resume: ignored " << dropped << " row(s) outside the requested sweep\n";
  return rows;
}

void write_rows_atomically(const std::string& path, const std::vector<SweepEntry>& plan,
                           const std::map<std::pair<int, EigenIndex>, std::string>& rows) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidConfig("cannot open output file " + tmp);
    f << report::kSweepHeader << '\n';
    for (const auto& e : plan) {
      const auto it = rows.find({e.diagnosis_index, e.k});
      if (it != rows.end()) f << it->second << '\n';
    }
  }
  fs::rename(tmp, path);
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  require_no_svg(o, "sweep");
  const Dimension n(o.n);
  if (!o.from || !o.to) throw InvalidConfig("sweep needs --from and --to");
  const ScanConfig config = scan_config(o);
  config.validate();
  const SweepMode mode = o.every_k ? SweepMode::EveryIndex : SweepMode::DiagnosisOnly;
  const auto plan = sweep_plan(n, *o.from, *o.to, mode);

  if (o.resume && (o.out_path.empty() || o.format != "csv")) {
    throw InvalidConfig("--resume needs --out with csv format");
  }
  if (o.out_path.empty() || o.format != "csv") {
    const SweepReport result = sweep(n, *o.from, *o.to, config, mode);
    Sink sink(o.out_path, out);
    if (o.format == "json") {
      write_json(sink.stream(), report::sweep_json(result));
    } else {
      report::write_sweep_csv(sink.stream(), result);
    }
    return kSuccess;
  }

  // CSV to a file: classify in chunks and rewrite the ordered file after each
  // chunk so an interrupted run can be resumed.
  auto rows = o.resume ? load_resume_rows(o.out_path, plan, n, err)
                       : std::map<std::pair<int, EigenIndex>, std::string>{};
  std::vector<SweepEntry> pending;
  for (const auto& e : plan) {
    if (!rows.count({e.diagnosis_index, e.k})) pending.push_back(e);
  }
  write_rows_atomically(o.out_path, plan, rows);
  const std::size_t chunk = std::max<std::size_t>(16, 4 * static_cast<std::size_t>(resolve_workers(o.workers)));
  for (std::size_t start = 0; start < pending.size(); start += chunk) {
    const std::size_t stop = std::min(pending.size(), start + chunk);
    parallel_for(stop - start, o.workers, [&](std::size_t j) {
      auto& e = pending[start + j];
      e.report = classify(n, e.k, config);
    });
    for (std::size_t j = start; j < stop; ++j) {
      rows[{pending[j].diagnosis_index, pending[j].k}] = report::sweep_csv_row(pending[j]);
    }
    write_rows_atomically(o.out_path, plan, rows);
  }
  return kSuccess;
}

int cmd_diagnosis(const Options& o, std::ostream& out) {
  require_no_svg(o, "diagnosis");
  const Dimension n(o.n);
  const auto sequence = diagnosis_sequence(n, o.count);
  Sink sink(o.out_path, out);
  if (o.format == "json") {
    write_json(sink.stream(), report::diagnosis_json(n, sequence));
  } else {
    report::write_diagnosis_csv(sink.stream(), n, sequence);
  }
  return kSuccess;
}

int discrepancy_status(bool asserted_property_found, const Options& o, std::ostream& err) {
  if (asserted_property_found == !o.expect_fail) return kSuccess;
  err << (o.expect_fail ? "verification passed but --expect-fail was given\n"
                        : "verification found no onset for an asserted property\n");
  return kDiscrepancy;
}

std::vector<CrossingResult> crossings_over(Dimension n, KappaRange range, int workers) {
  std::vector<CrossingResult> out(static_cast<std::size_t>(range.last - range.first + 1));
  parallel_for(out.size(), workers,
               [&](std::size_t i) { out[i] = crossing_b_kappa(n, range.first + static_cast<HarmonicIndex>(i)); });
  return out;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  require_no_svg(o, "verify");
  const Dimension n(o.n);
  Sink sink(o.out_path, out);
  const bool json = o.format == "json";

  if (o.lemma == "c0") {
    const RootResult root = solve_c0();
    if (json) {
      write_json(sink.stream(), report::root_json(root));
    } else {
      report::write_root_csv(sink.stream(), root);
    }
    return discrepancy_status(root.root > 0.0 && root.root < 1.0, o, err);
  }

  std::map<std::string, int> default_top = {{"crossing", 10}, {"growth", 500}, {"multiplicity", 10000}, {"final", 200}};
  const KappaRange range{o.from.value_or(1), o.to.value_or(default_top[o.lemma])};

  if (o.lemma == "crossing") {
    if (range.first < 1 || range.first > range.last) throw DomainError("kappa range must satisfy 1 <= from <= to");
    const auto crossings = crossings_over(n, range, o.workers);
    if (json) {
      write_json(sink.stream(), report::crossings_json(n, crossings));
    } else {
      report::write_crossings_csv(sink.stream(), crossings);
    }
    return kSuccess;
  }
  if (o.lemma == "growth") {
    const double c = o.c.value_or(0.8);
    const OnsetScan scan = verify_lemma_c_growth(n, c, range, o.workers);
    const auto crossings = crossings_over(n, range, o.workers);
    if (json) {
      write_json(sink.stream(), report::growth_json(n, c, crossings, scan));
    } else {
      report::write_growth_csv(sink.stream(), c, crossings, scan);
    }
    err << "growth onset: " << (scan.onset ? std::to_string(*scan.onset) : "none") << '\n';
    return discrepancy_status(scan.onset.has_value(), o, err);
  }
  if (o.lemma == "multiplicity") {
    const double c = o.c.value_or(0.83);
    const OnsetScan scan = verify_multiplicity_inequality(n, c, range);
    if (json) {
      write_json(sink.stream(), report::multiplicity_json(n, c, scan));
    } else {
      report::write_multiplicity_csv(sink.stream(), c, scan);
    }
    err << "multiplicity inequality onset: " << (scan.onset ? std::to_string(*scan.onset) : "none") << '\n';
    return discrepancy_status(scan.onset.has_value(), o, err);
  }
  // final
  ScanConfig config = scan_config(o);
  const FinalLemmaReport result = verify_final_lemma(n, range, config);
  if (json) {
    write_json(sink.stream(), report::final_json(n, result));
  } else {
    report::write_final_csv(sink.stream(), result);
  }
  err << "final lemma: all checks hold from kappa = "
      << (result.stable_from ? std::to_string(*result.stable_from) : "none") << '\n';
  return discrepancy_status(result.stable_from.has_value(), o, err);
}

// svg is accepted everywhere so that non-curve commands reject it with exit 2.
void add_output_options(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "csv | json | svg")->check(CLI::IsMember({"csv", "json", "svg"}));
  sub->add_option("--out", o.out_path, "Output file (default: standard output)");
  sub->add_option("--workers", o.workers, "Worker threads (0 = auto)")->check(CLI::NonNegativeNumber);
  sub->add_option("--config", o.config_path, "key=value file; flags on the command line take precedence");
}

void add_scan_options(CLI::App* sub, Options& o) {
  sub->add_option("--lmin", o.l_min, "Smallest scanned meridian length (default 1e-3)");
  sub->add_option("--lmax", o.l_max, "Scan horizon (default 1e3)");
  sub->add_option("--samples", o.samples, "Log-spaced grid points (default 512)");
  sub->add_option("--tolerance", o.tolerance, "Relative margin over the asymptotic limit");
  sub->add_option("--refine-budget", o.refine_budget, "Local maxima refined per scan");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Sharp Steklov eigenvalue bounds for hypersurfaces of revolution"};
  app.name(args.empty() ? "steklov" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto* bound = app.add_subcommand("bound", "B_n^k(L) with its candidate table");
  bound->add_option("--n", o.n, "Dimension (>= 3)")->required();
  bound->add_option("--k", o.k, "Eigenvalue index (>= 1)")->required();
  bound->add_option("--length", o.length, "Meridian length L > 0")->required();
  add_output_options(bound, o);

  auto* curve = app.add_subcommand("curve", "B_n^k(L) sampled on a linear L grid");
  curve->add_option("--n", o.n, "Dimension (>= 3)")->required();
  curve->add_option("--k", o.k, "Eigenvalue index (>= 1)")->required();
  curve->add_option("--lmin", o.l_min, "First L (default 0.01)");
  curve->add_option("--lmax", o.l_max, "Last L (default 20)");
  curve->add_option("--samples", o.samples, "Number of samples (default 500)");
  curve->add_flag("--with-mixed", o.with_mixed, "Also emit the Dirichlet and Neumann candidate curves");
  add_output_options(curve, o);

  auto* cls = app.add_subcommand("classify", "Finite critical length or none found up to the horizon");
  cls->add_option("--n", o.n, "Dimension (>= 3)")->required();
  cls->add_option("--k", o.k, "Eigenvalue index (>= 1)")->required();
  add_scan_options(cls, o);
  add_output_options(cls, o);

  auto* swp = app.add_subcommand("sweep", "Classify a range of diagnosis eigenvalues");
  swp->add_option("--n", o.n, "Dimension (>= 3)")->required();
  swp->add_option("--from", o.from, "First diagnosis index (>= 1)")->required();
  swp->add_option("--to", o.to, "Last diagnosis index")->required();
  swp->add_flag("--resume", o.resume, "Skip rows already present in --out");
  swp->add_flag("--every-k", o.every_k, "Classify every k instead of diagnosis eigenvalues only");
  add_scan_options(swp, o);
  add_output_options(swp, o);

  auto* diag = app.add_subcommand("diagnosis", "List diagnosis eigenvalues and the blocks they cover");
  diag->add_option("--n", o.n, "Dimension (>= 3)")->required();
  diag->add_option("--count", o.count, "Number of entries")->check(CLI::PositiveNumber);
  add_output_options(diag, o);

  auto* ver = app.add_subcommand("verify", "Numerical checks of the low-dimension lemmas");
  ver->add_option("--lemma", o.lemma, "c0 | crossing | growth | multiplicity | final")
      ->required()
      ->check(CLI::IsMember({"c0", "crossing", "growth", "multiplicity", "final"}));
  ver->add_option("--n", o.n, "Dimension (>= 3, default 3)");
  ver->add_option("--c", o.c, "Ratio c (growth: default 0.8, multiplicity: default 0.83)");
  ver->add_option("--from", o.from, "First kappa (default 1)");
  ver->add_option("--to", o.to, "Last kappa");
  ver->add_flag("--expect-fail", o.expect_fail, "The property is expected to have no onset");
  add_scan_options(ver, o);
  add_output_options(ver, o);

  try {
    const auto expanded = inject_config(args, app);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (bound->parsed()) return cmd_bound(o, out);
    if (curve->parsed()) return cmd_curve(o, out);
    if (cls->parsed()) return cmd_classify(o, out);
    if (swp->parsed()) return cmd_sweep(o, out, err);
    if (diag->parsed()) return cmd_diagnosis(o, out);
    if (ver->parsed()) return cmd_verify(o, out, err);
  } catch (const ArithmeticOverflow& e) {
    err << "error: " << e.what() << '\n';
    return kOverflow;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}

}  // namespace steklov::cli
