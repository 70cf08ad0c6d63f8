// Command-line front end: reads one JSON config, runs one experiment, writes
// <out>/<experiment>.csv plus <out>/<experiment>.meta.json. Column orders are
// frozen per experiment (see README). Exit codes: 0 success, 1 config or
// usage error, 2 when a checking experiment observes a property violation
// (vdc holds=false, identity passed=false).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wwlab/engine.hpp"
#include "wwlab/gowers.hpp"
#include "wwlab/observable.hpp"
#include "wwlab/poly.hpp"
#include "wwlab/rational.hpp"
#include "wwlab/rng.hpp"
#include "wwlab/skew_identity.hpp"
#include "wwlab/torus.hpp"
#include "wwlab/vdc.hpp"

namespace {

using namespace wwlab;
using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g17(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

const json& need(const json& obj, const char* key, const char* where) {
  if (!obj.contains(key))
    throw ConfigError(std::string("missing key \"") + key + "\" in " + where);
  return obj.at(key);
}

void check_keys(const json& obj, const char* where, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : required) known = known || it.key() == k;
    for (const char* k : optional) known = known || it.key() == k;
    if (!known) throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
  }
  for (const char* k : required) need(obj, k, where);
}

long long get_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ConfigError(std::string(what) + " must be an integer");
  return j.get<long long>();
}

long long get_positive(const json& j, const char* what) {
  long long v = get_int(j, what);
  if (v < 1) throw ConfigError(std::string(what) + " must be >= 1");
  return v;
}

double get_num(const json& j, const char* what) {
  if (!j.is_number()) throw ConfigError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<long long> get_int_list(const json& j, const char* what) {
  if (j.is_number_integer()) return {j.get<long long>()};
  if (!j.is_array() || j.empty())
    throw ConfigError(std::string(what) + " must be an integer or a non-empty array");
  std::vector<long long> out;
  for (const auto& e : j) out.push_back(get_int(e, what));
  return out;
}

PolyReal poly_from(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array of coefficients");
  std::vector<double> c;
  for (const auto& e : j) c.push_back(get_num(e, what));
  return PolyReal(std::move(c));
}

Point point_from(const json& j, int dim, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ConfigError(std::string(what) + " must be an array of " + std::to_string(dim) +
                      " coordinates");
  std::vector<double> v;
  for (const auto& e : j) v.push_back(get_num(e, what));
  return Point::from_values(v);
}

std::complex<double> amp_from(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2)
    return {get_num(j[0], what), get_num(j[1], what)};
  throw ConfigError(std::string(what) + " amp must be a number or [re, im]");
}

Observable obs_from(const json& j, int dim, const char* what) {
  if (!j.is_array() || j.empty())
    throw ConfigError(std::string(what) + " must be a non-empty array of terms");
  std::vector<ObservableTerm> terms;
  for (const auto& t : j) {
    check_keys(t, what, {"freqs", "amp"}, {});
    const json& fj = t.at("freqs");
    if (!fj.is_array() || static_cast<int>(fj.size()) != dim)
      throw ConfigError(std::string(what) + " freqs must be an array of " + std::to_string(dim) +
                        " integers");
    ObservableTerm term;
    for (const auto& f : fj) term.freqs.push_back(static_cast<int>(get_int(f, what)));
    term.amplitude = amp_from(t.at("amp"), what);
    terms.push_back(std::move(term));
  }
  return Observable(std::move(terms));
}

Rational rational_from(const json& j, const char* what) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    long long num = 0, den = 0;
    int used = 0;
    if (std::sscanf(s.c_str(), "%lld/%lld%n", &num, &den, &used) == 2 &&
        used == static_cast<int>(s.size()) && den != 0)
      return Rational(num, den);
  }
  throw ConfigError(std::string(what) + " must be an integer or a \"num/den\" string");
}

std::string rational_str(const Rational& r) {
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

SystemSpec sys_from(const json& cfg) {
  return system_from_json(need(cfg, "system", "config").dump());
}

AverageSpec average_spec_from(const json& cfg) {
  AverageSpec s;
  s.sys = sys_from(cfg);
  const int dim = dimension(s.sys);
  s.f1 = obs_from(need(cfg, "f1", "config"), dim, "f1");
  s.f2 = obs_from(need(cfg, "f2", "config"), dim, "f2");
  s.a = get_int(need(cfg, "a", "config"), "a");
  s.b = get_int(need(cfg, "b", "config"), "b");
  s.p = poly_from(need(cfg, "poly", "config"), "poly");
  s.start = point_from(need(cfg, "start", "config"), dim, "start");
  s.validate();
  return s;
}

struct RunResult {
  long long rows = 0;
  bool violation = false;
};

class Csv {
 public:
  explicit Csv(const std::filesystem::path& path) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open output file " + path.string());
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

// ---- experiment runners -------------------------------------------------

RunResult run_orbit(const json& cfg, Csv& csv, std::uint64_t, int) {
  check_keys(cfg, "config", {"system", "start", "N"}, {"stride", "seed", "workers"});
  SystemSpec sys = sys_from(cfg);
  const int dim = dimension(sys);
  Point start = point_from(cfg.at("start"), dim, "start");
  const long long N = get_positive(cfg.at("N"), "N");
  const long long stride = cfg.contains("stride") ? get_int(cfg.at("stride"), "stride") : 1;
  if (stride == 0) throw ConfigError("stride must be nonzero");

  std::vector<std::string> header{"n"};
  for (int i = 0; i < dim; ++i) header.push_back("x" + std::to_string(i));
  csv.row(header);
  OrbitStream orbit(sys, start, stride);
  for (long long j = 0; j < N; ++j) {
    std::vector<std::string> cells{std::to_string(orbit.index())};
    for (const Angle& a : orbit.current().coords) cells.push_back(g17(a.value()));
    csv.row(cells);
    orbit.advance();
  }
  return {N, false};
}

void average_row(Csv& csv, long long N, double t, std::complex<double> v, double abs_v,
                 const std::string& method, const std::optional<double>& err) {
  csv.row({std::to_string(N), g17(t), g17(v.real()), g17(v.imag()), g17(abs_v), method,
           err ? g17(*err) : ""});
}

const std::vector<std::string> kAverageHeader{"N", "t", "re", "im", "abs", "method",
                                              "guaranteed_error"};

RunResult run_wwavg(const json& cfg, Csv& csv, std::uint64_t, int) {
  check_keys(cfg, "config", {"system", "f1", "f2", "a", "b", "poly", "start", "t", "N"},
             {"seed", "workers"});
  AverageSpec s = average_spec_from(cfg);
  const double t = get_num(cfg.at("t"), "t");
  const long long N = get_positive(cfg.at("N"), "N");
  auto seq = ww_sequence(s, N);
  AverageResult r = ww_average(seq, s.p, t);
  csv.row(kAverageHeader);
  average_row(csv, r.N, r.t, r.value, std::abs(r.value), "direct", std::nullopt);
  return {1, false};
}

RunResult run_trace(const json& cfg, Csv& csv, std::uint64_t, int) {
  check_keys(cfg, "config",
             {"system", "f1", "f2", "a", "b", "poly", "start", "t", "checkpoints"},
             {"seed", "workers"});
  AverageSpec s = average_spec_from(cfg);
  const double t = get_num(cfg.at("t"), "t");
  auto cps = get_int_list(cfg.at("checkpoints"), "checkpoints");
  auto rows = trace(s, t, cps);
  csv.row(kAverageHeader);
  for (const auto& r : rows)
    average_row(csv, r.N, r.t, r.value, std::abs(r.value), "direct", std::nullopt);
  return {static_cast<long long>(rows.size()), false};
}

RunResult run_weyl(const json& cfg, Csv& csv, std::uint64_t, int) {
  check_keys(cfg, "config", {"poly", "t", "checkpoints"}, {"seed", "workers"});
  const PolyReal p = poly_from(cfg.at("poly"), "poly");
  const double t = get_num(cfg.at("t"), "t");
  auto cps = get_int_list(cfg.at("checkpoints"), "checkpoints");
  auto rows = weyl_trace(p, t, cps);
  csv.row(kAverageHeader);
  for (const auto& r : rows)
    average_row(csv, r.N, r.t, r.value, std::abs(r.value), "direct", std::nullopt);
  return {static_cast<long long>(rows.size()), false};
}

RunResult run_sup_trace(const json& cfg, Csv& csv, std::uint64_t, int workers) {
  check_keys(cfg, "config", {"system", "f1", "f2", "a", "b", "poly", "start", "checkpoints"},
             {"oversample", "t_window", "grid_points", "seed", "workers"});
  AverageSpec s = average_spec_from(cfg);
  auto cps = get_int_list(cfg.at("checkpoints"), "checkpoints");
  csv.row(kAverageHeader);

  std::vector<SupScanResult> rows;
  if (cfg.contains("t_window")) {
    const json& w = cfg.at("t_window");
    if (!w.is_array() || w.size() != 2) throw ConfigError("t_window must be [t_lo, t_hi]");
    const double lo = get_num(w[0], "t_window");
    const double hi = get_num(w[1], "t_window");
    const long long grid =
        cfg.contains("grid_points") ? get_positive(cfg.at("grid_points"), "grid_points") : 4096;
    auto seq = ww_sequence(s, cps.back());
    for (long long cp : cps) {
      auto prefix = std::span<const std::complex<double>>(seq).first(static_cast<std::size_t>(cp));
      rows.push_back(sup_scan_grid(prefix, s.p, lo, hi, grid, workers));
    }
  } else {
    const int oversample =
        cfg.contains("oversample")
            ? static_cast<int>(get_positive(cfg.at("oversample"), "oversample"))
            : 4;
    rows = sup_trace(s, cps, oversample, workers);
  }
  for (const auto& r : rows)
    average_row(csv, r.N, r.t_star, r.value_at_t_star, r.sup_value, r.method, r.guaranteed_error);
  return {static_cast<long long>(rows.size()), false};
}

RunResult run_vdc(const json& cfg, Csv& csv, std::uint64_t seed, int) {
  check_keys(cfg, "config", {"cases", "N", "H"}, {"kind", "theta", "seed", "workers"});
  const long long cases = get_positive(cfg.at("cases"), "cases");
  const long long N = get_positive(cfg.at("N"), "N");
  auto spans = get_int_list(cfg.at("H"), "H");
  const std::string kind = cfg.contains("kind") ? cfg.at("kind").get<std::string>() : "random-unit";
  if (kind != "random-unit" && kind != "random-disk" && kind != "quadratic-phase")
    throw ConfigError("kind must be random-unit, random-disk or quadratic-phase");

  auto unit = [](double turns) {
    const double r = 6.283185307179586476925286766559 * turns;
    return std::complex<double>{std::cos(r), std::sin(r)};
  };

  csv.row({"N", "H", "lhs", "rhs", "slack", "holds"});
  bool violation = false;
  for (long long c = 0; c < cases; ++c) {
    SplitMix64 rng(derive_seed(seed, c));
    std::vector<std::complex<double>> seq(static_cast<std::size_t>(N));
    if (kind == "quadratic-phase") {
      const double theta =
          cfg.contains("theta") ? get_num(cfg.at("theta"), "theta") : rng.next_unit();
      for (long long n = 0; n < N; ++n)
        seq[static_cast<std::size_t>(n)] =
            unit(std::fmod(theta * static_cast<double>(n) * static_cast<double>(n), 1.0));
    } else {
      for (auto& z : seq) {
        const double amp = kind == "random-disk" ? rng.next_unit() : 1.0;
        z = amp * unit(rng.next_unit());
      }
    }
    for (long long H : spans) {
      VdcReport r = vdc_check(seq, H);
      violation = violation || !r.holds;
      csv.row({std::to_string(r.N), std::to_string(r.H), g17(r.lhs), g17(r.rhs), g17(r.slack),
               r.holds ? "true" : "false"});
    }
  }
  return {cases * static_cast<long long>(spans.size()), violation};
}

RunResult run_ghk(const json& cfg, Csv& csv, std::uint64_t seed, int) {
  check_keys(cfg, "config", {"system", "f", "k", "N", "H", "samples"}, {"seed", "workers"});
  SystemSpec sys = sys_from(cfg);
  Observable f = obs_from(cfg.at("f"), dimension(sys), "f");
  const int k = static_cast<int>(get_positive(cfg.at("k"), "k"));
  const long long N = get_positive(cfg.at("N"), "N");
  const long long H = get_positive(cfg.at("H"), "H");
  const int samples = static_cast<int>(get_positive(cfg.at("samples"), "samples"));
  SeminormEstimate e = ghk_estimate(sys, f, k, N, H, samples, seed);
  csv.row({"k", "N", "H", "samples", "value"});
  csv.row({std::to_string(e.k), std::to_string(e.N), std::to_string(e.H),
           std::to_string(e.samples), g17(e.value)});
  return {1, false};
}

RunResult run_identity(const json& cfg, Csv& csv, std::uint64_t seed, int) {
  check_keys(cfg, "config", {"m"},
             {"form", "a", "b", "k_freq", "k_freq_p", "N", "draws", "alpha", "y0", "z0", "seed",
              "workers"});
  const int m = static_cast<int>(get_positive(cfg.at("m"), "m"));
  SkewForm form = SkewForm::kGeneric;
  if (cfg.contains("form")) {
    const std::string f = cfg.at("form").get<std::string>();
    if (f == "calibrated")
      form = SkewForm::kExact;
    else if (f != "generic")
      throw ConfigError("form must be \"generic\" or \"calibrated\"");
  }
  const long long N = cfg.contains("N") ? get_positive(cfg.at("N"), "N") : 10000;
  const long long draws = cfg.contains("draws") ? get_positive(cfg.at("draws"), "draws") : 1;
  const bool fixed = cfg.contains("alpha") || cfg.contains("y0") || cfg.contains("z0");
  if (fixed && draws > 1)
    throw ConfigError("draws > 1 conflicts with a fixed alpha/y0/z0");

  csv.row({"m", "a", "b", "k_freq", "alpha", "N", "c_top", "max_abs_gap", "passed"});
  bool violation = false;
  for (long long d = 0; d < draws; ++d) {
    SplitMix64 rng(derive_seed(seed, d));
    ReductionSetup s;
    s.degree = m;
    s.form = form;
    s.a = cfg.contains("a") ? get_int(cfg.at("a"), "a") : 1;
    s.b = cfg.contains("b") ? get_int(cfg.at("b"), "b") : 2;
    s.k_freq = cfg.contains("k_freq") ? get_int(cfg.at("k_freq"), "k_freq") : 1;
    s.k_freq_p = cfg.contains("k_freq_p") ? get_int(cfg.at("k_freq_p"), "k_freq_p") : 0;
    s.alpha = cfg.contains("alpha") ? rational_from(cfg.at("alpha"), "alpha")
                                    : Rational(rng.next_int(1, 65535), 65536);
    s.y0 = cfg.contains("y0") ? rational_from(cfg.at("y0"), "y0")
                              : Rational(rng.next_int(0, 65535), 65536);
    s.z0 = cfg.contains("z0") ? rational_from(cfg.at("z0"), "z0")
                              : Rational(rng.next_int(0, 65535), 65536);
    IdentityReport r = verify_reduction(s, N);
    violation = violation || !r.passed;
    csv.row({std::to_string(m), std::to_string(s.a), std::to_string(s.b),
             std::to_string(s.k_freq), rational_str(s.alpha), std::to_string(r.N),
             rational_str(r.c_top), g17(r.max_abs_gap), r.passed ? "true" : "false"});
  }
  return {draws, violation};
}

RunResult run_estimate_bound(const json& cfg, Csv& csv, std::uint64_t seed, int workers) {
  check_keys(cfg, "config",
             {"system", "f1", "f2", "a", "b", "poly", "start", "N", "H", "samples"},
             {"oversample", "seed", "workers"});
  AverageSpec s = average_spec_from(cfg);
  const long long N = get_positive(cfg.at("N"), "N");
  const long long H = get_positive(cfg.at("H"), "H");
  const int samples = static_cast<int>(get_positive(cfg.at("samples"), "samples"));
  const int oversample =
      cfg.contains("oversample")
          ? static_cast<int>(get_positive(cfg.at("oversample"), "oversample"))
          : 4;
  PairBoundReport r = estimate_pair_bound(s, N, H, samples, seed, oversample, workers);
  csv.row({"k", "N", "H", "samples", "lhs", "rhs", "ratio"});
  csv.row({std::to_string(r.k), std::to_string(r.N), std::to_string(r.H),
           std::to_string(r.samples), g17(r.lhs), g17(r.rhs), g17(r.ratio)});
  return {1, false};
}

// ---- experiment catalogue ------------------------------------------------

struct Experiment {
  const char* name;
  const char* summary;
  const char* schema;
  RunResult (*run)(const json&, Csv&, std::uint64_t, int);
};

const std::vector<Experiment> kExperiments{
    {"orbit", "stream orbit points of a torus system",
     "config keys: system (JSON system), start ([coords]), N, stride?\n"
     "CSV columns: n, x0..x{d-1}",
     run_orbit},
    {"wwavg", "one weighted double-recurrence average W_N(t)",
     "config keys: system, f1, f2 (term arrays), a, b, poly ([c0,c1,..]), start, t, N\n"
     "CSV columns: N, t, re, im, abs, method, guaranteed_error",
     run_wwavg},
    {"trace", "W_N(t) at every checkpoint of an N schedule",
     "config keys: system, f1, f2, a, b, poly, start, t, checkpoints ([N..])\n"
     "CSV columns: N, t, re, im, abs, method, guaranteed_error",
     run_trace},
    {"sup-trace", "sup_t |W_N(t)| at every checkpoint (certified scan)",
     "config keys: system, f1, f2, a, b, poly, start, checkpoints, oversample?,\n"
     "             t_window? ([lo,hi] switches to a plain grid), grid_points?\n"
     "CSV columns: N, t, re, im, abs, method, guaranteed_error (abs = sup)",
     run_sup_trace},
    {"vdc", "differencing-inequality checks over random sequences",
     "config keys: cases, N, H (int or [ints]), kind? (random-unit | random-disk |\n"
     "             quadratic-phase), theta?\n"
     "CSV columns: N, H, lhs, rhs, slack, holds; exit 2 if any row fails",
     run_vdc},
    {"ghk", "orbit-averaged iterated-differencing seminorm estimate",
     "config keys: system, f (term array), k (1..4), N, H, samples\n"
     "CSV columns: k, N, H, samples, value",
     run_ghk},
    {"identity", "character-pair reduction identity over a skew product",
     "config keys: m (1..3), form? (generic | calibrated), a?, b?, k_freq?,\n"
     "             k_freq_p?, N?, draws?, alpha?, y0?, z0? (\"num/den\" on 1/65536)\n"
     "CSV columns: m, a, b, k_freq, alpha, N, c_top, max_abs_gap, passed;\n"
     "exit 2 if any row fails",
     run_identity},
    {"estimate-bound", "side-by-side sup |W_N| vs seminorm report",
     "config keys: system, f1, f2, a, b, poly, start, N, H, samples, oversample?\n"
     "CSV columns: k, N, H, samples, lhs, rhs, ratio",
     run_estimate_bound},
    {"weyl", "pure polynomial exponential-sum trace",
     "config keys: poly, t, checkpoints\n"
     "CSV columns: N, t, re, im, abs, method, guaranteed_error",
     run_weyl},
};

int dispatch(const Experiment& ex, const std::string& config_path, const std::string& out_dir,
             std::optional<long long> seed_flag, std::optional<int> workers_flag) {
  json cfg;
  {
    std::ifstream in(config_path);
    if (!in) {
      std::fprintf(stderr, "error: cannot open config %s\n", config_path.c_str());
      return 1;
    }
    cfg = json::parse(in);  // throws with line/column on malformed input
  }

  std::uint64_t seed = 0;
  if (cfg.is_object() && cfg.contains("seed"))
    seed = static_cast<std::uint64_t>(get_int(cfg.at("seed"), "seed"));
  if (seed_flag) seed = static_cast<std::uint64_t>(*seed_flag);
  int workers = 1;
  if (cfg.is_object() && cfg.contains("workers"))
    workers = static_cast<int>(get_positive(cfg.at("workers"), "workers"));
  if (workers_flag) workers = *workers_flag;
  if (workers < 1) {
    std::fprintf(stderr, "error: workers must be >= 1\n");
    return 1;
  }

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  const auto csv_path = dir / (std::string(ex.name) + ".csv");

  const auto t0 = std::chrono::steady_clock::now();
  Csv csv(csv_path);
  RunResult res = ex.run(cfg, csv, seed, workers);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json meta;
  meta["experiment"] = ex.name;
  meta["version"] = "0.1.0";
  meta["seed"] = seed;
  meta["workers"] = workers;
  meta["wall_seconds"] = wall;
  meta["rows"] = res.rows;
  meta["csv"] = csv_path.string();
  meta["config"] = cfg;
  std::ofstream meta_out(dir / (std::string(ex.name) + ".meta.json"));
  meta_out << meta.dump(2) << '\n';

  if (res.violation) {
    std::fprintf(stderr, "%s: property violation recorded in %s\n", ex.name,
                 csv_path.string().c_str());
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wwlab: orbit, exponential-average and seminorm experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<long long> seed_flag;
  std::optional<int> workers_flag;

  const Experiment* chosen = nullptr;
  for (const Experiment& ex : kExperiments) {
    CLI::App* sub = app.add_subcommand(ex.name, ex.summary);
    sub->footer(ex.schema);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory (default .)");
    sub->add_option("--seed", seed_flag, "determinism seed (overrides config)");
    sub->add_option("--workers", workers_flag, "worker threads (overrides config)");
    sub->callback([&chosen, &ex] { chosen = &ex; });
  }
  CLI::App* list = app.add_subcommand("list-experiments", "print the experiment catalogue");
  bool listing = false;
  list->callback([&listing] { listing = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n\n%s\n", e.what(), app.help().c_str());
    return 1;
  }

  if (listing) {
    std::printf("experiments:\n");
    for (const Experiment& ex : kExperiments)
      std::printf("  %-15s %s\n", ex.name, ex.summary);
    return 0;
  }

  try {
    return dispatch(*chosen, config_path, out_dir, seed_flag, workers_flag);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
