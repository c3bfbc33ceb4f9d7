// qcspec: structural checks and spectral scans for suspension potentials.
//
// Exit status: 0 success, 1 a hypothesis check failed (counterexample, no
// cubes, Gordon failure), 2 malformed input, 3 non-finite numerical result.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qc/fdp.hpp"
#include "qc/model.hpp"
#include "qc/simd/kernels.hpp"
#include "qc/spectral.hpp"
#include "qc/subshift.hpp"
#include "qc/suspension.hpp"
#include "qc/transfer.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNumeric = 3;

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw NumericError(std::string("non-finite ") + what);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit_json(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qc::Error("cannot write " + path);
  out << text;
}

void write_csv(const std::string& path, const json& config, const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qc::Error("cannot write " + path);
  out << "# config=" << config.dump() << "\n" << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

json bands_json(const qc::BandSet& bs) {
  auto arr = json::array();
  for (const auto& b : bs.bands) arr.push_back({b.lo, b.hi});
  return arr;
}

json report_json(const qc::SfdpReport& r, std::optional<bool> verified) {
  json j{{"verdict", qc::verdict_name(r.verdict)},
         {"ell", r.ell},
         {"cutoff", r.cutoff},
         {"pasts_checked", r.pasts_checked},
         {"pairs_checked", r.pairs_checked}};
  if (r.counterexample) {
    j["counterexample"] = {{"common", r.counterexample->common},
                           {"continuation", r.counterexample->continuation},
                           {"other", r.counterexample->other},
                           {"reverified", verified.value_or(false)}};
  }
  return j;
}

double default_emin(const qc::ModelConfig& m, std::string_view word) {
  std::vector<qc::Piece> seq;
  for (qc::Symbol a : word) seq.push_back(m.alphabet.at(a));
  return 0.0 - 4.0 * qc::norm_lu(qc::concatenate(seq));
}

struct Common {
  std::string model_path;
  std::string out_path;
};

int run_model(const Common& c) {
  const auto m = qc::load_model(c.model_path);
  const auto stream = m.stream();
  const qc::Word& word = stream.word().symbols;

  std::size_t cutoff = std::min<std::size_t>(50, word.size());
  std::optional<std::size_t> first_deficit;
  for (std::size_t n = 1; n <= cutoff; ++n)
    if (qc::complexity(word, n) < n + 1) {
      first_deficit = n;
      break;
    }
  const auto decomposition = qc::check_fdp(stream);
  const double lu = qc::norm_lu(qc::window(stream, stream.min_position(), stream.max_position() * 0.999999));
  require_finite(lu, "norm");

  json out{{"command", "model"},
           {"config", m.to_json()},
           {"simd", qc::simd::isa_name(qc::simd::active_isa())},
           {"results",
            {{"primitive", qc::is_primitive(m.substitution.substitution)},
             {"word_length", word.size()},
             {"complexity_cutoff", cutoff},
             {"aperiodic_evidence", !first_deficit.has_value()},
             {"first_complexity_deficit", first_deficit ? json(*first_deficit) : json(nullptr)},
             {"norm_lu", lu},
             {"local_pieces", decomposition.pieces.size()},
             {"fdp_anchor", decomposition.anchor},
             {"sufficient_sfdp", qc::sufficient_sfdp(m.alphabet)},
             {"default_ell", qc::default_ell(m.alphabet)}}}};
  emit_json(out, c.out_path);
  std::cerr << "primitive=" << out["results"]["primitive"] << " aperiodic_evidence="
            << out["results"]["aperiodic_evidence"] << " norm_lu=" << lu << "\n";
  return kExitOk;
}

int run_check_sfdp(const Common& c, std::optional<double> ell_opt, std::size_t cutoff,
                   bool use_criterion) {
  const auto m = qc::load_model(c.model_path);
  const double ell = ell_opt.value_or(qc::default_ell(m.alphabet));
  const bool criterion = qc::sufficient_sfdp(m.alphabet);
  const auto stream = m.stream();

  auto check = [&](const qc::PotentialStream& w) {
    if (use_criterion && criterion)
      return std::pair{qc::SfdpReport{qc::SfdpVerdict::kSufficientCriterionPassed, ell, cutoff, 0, 0, std::nullopt},
                       std::optional<bool>{}};
    auto r = qc::check_sfdp(w, ell, cutoff, m.tolerance);
    std::optional<bool> verified;
    if (r.counterexample) verified = qc::verify_counterexample(w, r, m.tolerance);
    return std::pair{r, verified};
  };
  const auto [forward, fv] = check(stream);
  const auto reflected_stream = stream.reflected();
  const auto [backward, bv] = check(reflected_stream);

  const bool failed = forward.verdict == qc::SfdpVerdict::kCounterexample ||
                      backward.verdict == qc::SfdpVerdict::kCounterexample;
  json out{{"command", "check-sfdp"},
           {"config", m.to_json()},
           {"parameters", {{"ell", ell}, {"cutoff", cutoff}, {"use_criterion", use_criterion}}},
           {"results",
            {{"sufficient_criterion", criterion},
             {"forward", report_json(forward, fv)},
             {"reflected", report_json(backward, bv)},
             {"sfdp_holds_to_cutoff", !failed}}}};
  emit_json(out, c.out_path);
  std::cerr << "s.f.d.p. forward: " << qc::verdict_name(forward.verdict)
            << ", reflected: " << qc::verdict_name(backward.verdict) << "\n";
  return failed ? kExitCheckFailed : kExitOk;
}

int run_check_k(const Common& c, std::size_t q_max, std::size_t sample_length, std::size_t samples) {
  const auto m = qc::load_model(c.model_path);
  const auto& s = m.substitution;
  const qc::Word word = qc::generate(s.substitution, s.seed, sample_length);

  auto scales = json::array();
  bool any_positive = false;
  for (std::size_t q = 1; q <= q_max && 3 * q <= word.size(); ++q) {
    const auto f = qc::cube_frequency(word, q);
    if (f.count == 0) continue;
    any_positive = true;
    const auto g = qc::estimate_P_Gn(s, m.alphabet, q, samples, m.rng_seed, 0, m.tolerance);
    scales.push_back({{"q", q},
                      {"cube_count", f.count},
                      {"positions", f.positions},
                      {"cube_frequency", f.frequency},
                      {"p", g.p},
                      {"gn_hits", g.hits},
                      {"gn_samples", g.samples},
                      {"gn_word_length", g.word_length},
                      {"P_Gn_estimate", g.value}});
  }
  json out{{"command", "check-k"},
           {"config", m.to_json()},
           {"parameters", {{"qmax", q_max}, {"sample_length", sample_length}, {"samples", samples}}},
           {"results",
            {{"scales_with_cubes", scales},
             {"positive_cube_frequency", any_positive},
             {"scope", "single orbit, prefix of length " + std::to_string(word.size()) +
                           "; orbit-dependent unless the subshift is uniquely ergodic"}}}};
  emit_json(out, c.out_path);
  std::cerr << "cube scales found: " << scales.size() << " (qmax " << q_max << ")\n";
  return any_positive ? kExitOk : kExitCheckFailed;
}

struct ScanOptions {
  std::optional<double> emin;
  double emax = 20.0;
  std::size_t grid = 4000;
  std::string csv;
};

int run_bands(const Common& c, unsigned level, const ScanOptions& o, double refine, std::size_t periods) {
  const auto m = qc::load_model(c.model_path);
  const qc::Word word = qc::iterate(m.substitution.substitution, m.substitution.seed, level);
  const double emin = o.emin.value_or(default_emin(m, word));
  const auto bands = qc::band_spectrum(word, m.alphabet, emin, o.emax, o.grid, refine);
  for (const auto& b : bands.bands) {
    require_finite(b.lo, "band edge");
    require_finite(b.hi, "band edge");
  }

  json params{{"level", level}, {"emin", emin}, {"emax", o.emax}, {"grid", o.grid},
              {"refine", refine}, {"periods", periods}};
  if (!o.csv.empty()) {
    const auto grid = qc::energy_grid(emin, o.emax, o.grid);
    const auto scan = qc::approximant_scan(word, m.alphabet, grid, periods);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      require_finite(scan.lyapunov[i], "lyapunov exponent");
      rows.push_back({format_double(grid[i]), format_double(scan.trace[i]), scan.in_band[i] ? "1" : "0",
                      format_double(scan.lyapunov[i]), format_double(scan.ids[i])});
    }
    json header_cfg{{"command", "bands"}, {"config", m.to_json()}, {"parameters", params}};
    write_csv(o.csv, header_cfg, "E,trace,in_band,lyapunov,ids", rows);
  }

  json out{{"command", "bands"},
           {"config", m.to_json()},
           {"parameters", params},
           {"results",
            {{"approximant_level", level},
             {"word_length", word.size()},
             {"bands", bands_json(bands)},
             {"band_count", bands.bands.size()},
             {"total_length", bands.total_length()},
             {"grid_missed", bands.grid_missed}}}};
  emit_json(out, c.out_path);
  std::cerr << "level " << level << ": " << bands.bands.size() << " bands, total length "
            << bands.total_length() << "\n";
  return kExitOk;
}

int run_stream_scan(const Common& c, const ScanOptions& o, double length, bool lyap) {
  const auto m = qc::load_model(c.model_path);
  const auto stream = m.stream();
  const double emin = o.emin.value_or(0.0 - 4.0 * qc::norm_lu(qc::window(stream, 0.0, length)));
  const auto grid = qc::energy_grid(emin, o.emax, o.grid);
  std::vector<double> values;
  if (lyap) {
    values = qc::lyapunov_scan(stream, grid, length);
  } else {
    values.reserve(grid.size());
    for (double E : grid) values.push_back(qc::ids(stream, E, length));
  }
  for (double v : values) require_finite(v, lyap ? "lyapunov exponent" : "density of states");

  const char* name = lyap ? "lyapunov" : "ids";
  json params{{"emin", emin}, {"emax", o.emax}, {"grid", o.grid}, {"length", length}};
  if (!o.csv.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back({format_double(grid[i]), format_double(values[i])});
    json header_cfg{{"command", name}, {"config", m.to_json()}, {"parameters", params}};
    write_csv(o.csv, header_cfg, std::string("E,") + name, rows);
  }
  json out{{"command", name},
           {"config", m.to_json()},
           {"parameters", params},
           {"results", {{"energies", grid}, {name, values}}}};
  emit_json(out, c.out_path);
  return kExitOk;
}

int run_gordon(const Common& c, std::optional<double> p_opt, double emin, double emax,
               std::size_t samples, std::size_t states) {
  const auto m = qc::load_model(c.model_path);
  const auto stream = m.stream();
  const qc::Word& word = stream.word().symbols;

  double p = 0.0;
  if (p_opt) {
    p = *p_opt;
  } else {
    const auto cubes = qc::find_cubes(std::string_view(word).substr(0, std::min<std::size_t>(word.size(), 5000)), 50);
    if (cubes.empty()) throw qc::Error("no cube found; pass --p explicitly");
    const auto& cube = cubes.back();
    for (char a : cube.block) p += m.alphabet.length(a);
  }
  if (!(p > 0.0)) throw qc::Error("--p must be positive");

  // Walking outward from the origin, the first cell boundary (or the point a
  // quarter of the shortest piece before it) where the stream repeats three
  // times with period p.
  std::optional<double> found;
  std::ptrdiff_t found_cell = 0;
  const auto half = static_cast<std::ptrdiff_t>(word.size() / 2);
  const auto reach = static_cast<std::ptrdiff_t>(std::ceil(2.0 * p / m.alphabet.min_length())) + 2;
  const double lead = 0.25 * m.alphabet.min_length();
  for (std::ptrdiff_t d = 0; d + reach < half && !found; ++d)
    for (std::ptrdiff_t n : {d, -d})
      for (double y : {stream.cell_start(n), stream.cell_start(n) - lead})
        if (!found && qc::in_G_n(stream.shifted(y), p, m.tolerance)) {
          found = y;
          found_cell = n;
        }

  json params{{"p", p}, {"emin", emin}, {"emax", emax}, {"samples", samples}, {"states", states}};
  if (!found) {
    json out{{"command", "gordon"},
             {"config", m.to_json()},
             {"parameters", params},
             {"results", {{"three_block_found", false}}}};
    emit_json(out, c.out_path);
    std::cerr << "no three-block repetition at p = " << p << "\n";
    return kExitCheckFailed;
  }

  const auto at = stream.shifted(*found);
  std::mt19937_64 rng(m.rng_seed);
  std::normal_distribution<double> gauss;
  double min_ratio = INFINITY;
  std::size_t failures = 0, checks = 0;
  for (double E : qc::energy_grid(emin, emax, std::max<std::size_t>(samples, 2))) {
    for (std::size_t k = 0; k < states; ++k) {
      qc::SolutionState phi{gauss(rng), gauss(rng)};
      const auto r = qc::gordon_check(at, p, E, phi, m.tolerance);
      require_finite(r.ratio, "Gordon ratio");
      min_ratio = std::min(min_ratio, r.ratio);
      failures += r.pass ? 0 : 1;
      ++checks;
    }
  }
  json out{{"command", "gordon"},
           {"config", m.to_json()},
           {"parameters", params},
           {"results",
            {{"three_block_found", true},
             {"cell", found_cell},
             {"position", *found},
             {"checks", checks},
             {"failures", failures},
             {"min_ratio", min_ratio},
             {"bound", qc::kGordonBound}}}};
  emit_json(out, c.out_path);
  std::cerr << "gordon: " << checks << " checks, " << failures << " failures, min ratio " << min_ratio << "\n";
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasicrystal suspension potentials: hypothesis checks and spectral scans"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", common.model_path, "Model JSON file")->required();
    sub->add_option("--out", common.out_path, "Write the JSON report here instead of stdout");
  };

  auto* model = app.add_subcommand("model", "Summarize a model: primitivity, aperiodicity evidence, norms");
  add_common(model);

  std::optional<double> ell;
  std::size_t cutoff = 20;
  bool use_criterion = false;
  auto* sfdp = app.add_subcommand("check-sfdp", "Search for simple finite decomposition counterexamples");
  add_common(sfdp);
  sfdp->add_option("--ell", ell, "Agreement length (default 2 * max piece length)");
  sfdp->add_option("--cutoff", cutoff, "Maximal factor length in symbols");
  sfdp->add_flag("--use-criterion", use_criterion, "Accept the Lebesgue-multiple criterion without searching");

  std::size_t q_max = 50, sample_length = 100000, samples = 2000;
  auto* check_k = app.add_subcommand("check-k", "Cube frequencies and P(G_n) estimates");
  add_common(check_k);
  check_k->add_option("--qmax", q_max, "Largest block length");
  check_k->add_option("--sample-length", sample_length, "Prefix length for cube counting");
  check_k->add_option("--samples", samples, "Monte Carlo samples per scale");

  ScanOptions scan;
  unsigned level = 8;
  double refine = 1e-8;
  std::size_t periods = 20;
  auto* bands = app.add_subcommand("bands", "Band spectrum of a periodic approximant");
  add_common(bands);
  bands->add_option("--level", level, "Approximant level (substitution iterations)");
  bands->add_option("--emin", scan.emin, "Lower energy (default -4 * norm_lu)");
  bands->add_option("--emax", scan.emax, "Upper energy");
  bands->add_option("--grid", scan.grid, "Scan grid points");
  bands->add_option("--refine", refine, "Band edge tolerance");
  bands->add_option("--periods", periods, "Periods used for Lyapunov and IDS columns");
  bands->add_option("--csv", scan.csv, "Write the energy scan as CSV");

  double length = 1000.0;
  auto* lyap = app.add_subcommand("lyapunov", "Finite-scale Lyapunov exponents of the model stream");
  add_common(lyap);
  lyap->add_option("--emin", scan.emin, "Lower energy (default -4 * norm_lu)");
  lyap->add_option("--emax", scan.emax, "Upper energy");
  lyap->add_option("--grid", scan.grid, "Grid points");
  lyap->add_option("--length", length, "Propagation length L");
  lyap->add_option("--csv", scan.csv, "Write E,lyapunov as CSV");

  auto* ids = app.add_subcommand("ids", "Integrated density of states of the model stream");
  add_common(ids);
  ids->add_option("--emin", scan.emin, "Lower energy (default -4 * norm_lu)");
  ids->add_option("--emax", scan.emax, "Upper energy");
  ids->add_option("--grid", scan.grid, "Grid points");
  ids->add_option("--length", length, "Counting length L");
  ids->add_option("--csv", scan.csv, "Write E,ids as CSV");

  std::optional<double> p;
  double g_emin = 0.0, g_emax = 20.0;
  std::size_t g_samples = 100, states = 20;
  auto* gordon = app.add_subcommand("gordon", "Three-block lower bound on solution growth");
  add_common(gordon);
  gordon->add_option("--p", p, "Repetition scale (default: block length of a found cube)");
  gordon->add_option("--emin", g_emin, "Lower energy");
  gordon->add_option("--emax", g_emax, "Upper energy");
  gordon->add_option("--samples", g_samples, "Energies");
  gordon->add_option("--states", states, "Random initial states per energy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  try {
    if (*model) return run_model(common);
    if (*sfdp) return run_check_sfdp(common, ell, cutoff, use_criterion);
    if (*check_k) return run_check_k(common, q_max, sample_length, samples);
    if (*bands) return run_bands(common, level, scan, refine, periods);
    if (*lyap) return run_stream_scan(common, scan, length, true);
    if (*ids) return run_stream_scan(common, scan, length, false);
    if (*gordon) return run_gordon(common, p, g_emin, g_emax, g_samples, states);
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const qc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
