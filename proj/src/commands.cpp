#include "entosc/commands.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "entosc/analytic.hpp"
#include "entosc/sampler.hpp"

namespace entosc {

Params RunConfig::params() const {
  try {
    return Params(omega, coupling);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void RunConfig::validate() const {
  params();
  if (!(t_max > 0) || !std::isfinite(t_max)) throw ConfigError("--t-max must be finite and > 0");
  if (steps < 2) throw ConfigError("--steps must be >= 2");
  if (cutoff < 3) throw ConfigError("--cutoff must be >= 3");
  if (!(tolerance >= 0) || !std::isfinite(tolerance)) throw ConfigError("--tolerance must be finite and >= 0");
  if (format != "csv" && format != "json") throw ConfigError("--format must be csv or json");
}

nlohmann::ordered_json RunConfig::metadata(const std::string& command) const {
  nlohmann::ordered_json m;
  m["command"] = command;
  m["omega"] = omega;
  m["coupling"] = coupling;
  m["state"] = to_string(state);
  m["oscillator"] = to_int(oscillator);
  m["t_max"] = t_max;
  m["steps"] = steps;
  m["cutoff"] = cutoff;
  m["tolerance"] = tolerance;
  m["seed"] = seed;
  m["format"] = format;
  if (!couplings.empty()) m["couplings"] = couplings;
  return m;
}

std::vector<double> parse_couplings(const std::string& text) {
  std::vector<double> out;
  std::string field;
  std::istringstream ss(text);
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t");
    const auto last = field.find_last_not_of(" \t");
    if (first == std::string::npos) throw ConfigError("empty entry in coupling list '" + text + "'");
    field = field.substr(first, last - first + 1);
    double v = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size() || !std::isfinite(v))
      throw ConfigError("malformed coupling '" + field + "'");
    if (v < 0) throw ConfigError("couplings must be >= 0, got " + field);
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("coupling list is empty");
  return out;
}

std::vector<double> default_sweep_couplings() {
  std::vector<double> out;
  for (int k = 0; k <= 100; ++k) out.push_back(0.02 * k);
  return out;
}

Table trace_table(const RunConfig& config) {
  config.validate();
  const FluctuationTrace tr = trace(config.params(), config.state, 0.0, config.t_max, config.steps);
  Table table = to_table(tr);
  const auto one = baseline_nc(config.state, OscillatorIndex::One);
  const auto two = baseline_nc(config.state, OscillatorIndex::Two);
  const std::size_t n = tr.size();
  table.add_column("dx1_nc", std::vector<double>(n, one.amplitude));
  table.add_column("dp1_nc", std::vector<double>(n, one.amplitude));
  table.add_column("up1_nc", std::vector<double>(n, one.product));
  table.add_column("up2_nc", std::vector<double>(n, two.product));
  return table;
}

namespace {

/// Period statistics, with the constant zero-coupling products reported as-is.
PeriodStats sweep_stats(const Params& params, BellState state, OscillatorIndex osc) {
  if (params.coupling_ratio > 0) return period_statistics(params, state, osc, kSweepSamplesPerPeriod);
  PeriodStats s;
  s.nc_baseline = baseline_nc(state, osc).product;
  s.min_product = s.max_product = s.mean_product = uncertainty_product(params, state, osc, 0.0);
  s.fraction_below_nc = s.mean_product < s.nc_baseline ? 1.0 : 0.0;
  return s;
}

double default_figure_span(double omega, double coupling) {
  const double beat = std::abs(beat_frequency(Params(omega, coupling)));
  return beat > 0 ? 2 * (2 * std::numbers::pi / beat) : 100.0 / omega;
}

std::string coupling_label(double g) {
  std::string s = format_number(g);
  return "g" + s;
}

}  // namespace

Table sweep_table(const RunConfig& config, const std::vector<double>& couplings) {
  config.validate();
  if (couplings.empty()) throw ConfigError("coupling list is empty");
  std::vector<double> g_col, eta_col, beat_col;
  std::vector<double> stats[2][4];
  for (double g : couplings) {
    if (!(g >= 0) || !std::isfinite(g)) throw ConfigError("couplings must be finite and >= 0");
    const Params params(config.omega, g);
    g_col.push_back(g);
    eta_col.push_back(eta(params));
    beat_col.push_back(std::abs(beat_frequency(params)) / params.omega);
    int pair = 0;
    for (OscillatorIndex osc : {OscillatorIndex::One, OscillatorIndex::Two}) {
      const PeriodStats s = sweep_stats(params, config.state, osc);
      stats[pair][0].push_back(s.min_product);
      stats[pair][1].push_back(s.max_product);
      stats[pair][2].push_back(s.mean_product);
      stats[pair][3].push_back(s.fraction_below_nc);
      ++pair;
    }
  }
  Table table;
  table.add_column("coupling", std::move(g_col));
  table.add_column("eta", std::move(eta_col));
  table.add_column("abs_beat_over_omega", std::move(beat_col));
  for (int pair = 0; pair < 2; ++pair) {
    const std::string i = std::to_string(pair + 1);
    table.add_column("min_up" + i, std::move(stats[pair][0]));
    table.add_column("max_up" + i, std::move(stats[pair][1]));
    table.add_column("mean_up" + i, std::move(stats[pair][2]));
    table.add_column("fraction_below_nc_" + i, std::move(stats[pair][3]));
  }
  return table;
}

Table sample_table(const RunConfig& config) {
  config.validate();
  RealizationConfig rc;
  rc.seed = config.seed;
  rc.t_max = config.t_max;
  rc.dt = config.t_max / (config.steps - 1);
  try {
    rc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return to_table(sample_realization(config.params(), config.state, config.oscillator, rc));
}

std::vector<FigureFile> write_figures(const RunConfig& config, const std::filesystem::path& dir) {
  config.validate();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());

  auto save = [&](const std::string& name, const Table& table) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + (dir / name).string());
    write_csv(out, table);
    if (!out) throw ConfigError("write failed for " + (dir / name).string());
  };

  std::vector<FigureFile> index;

  RunConfig sweep_cfg = config;
  sweep_cfg.state = BellState::PsiPlus;
  save("fig1.csv", sweep_table(sweep_cfg, config.couplings.empty() ? default_sweep_couplings() : config.couplings));
  index.push_back({"fig1.csv", "1", "relative beat frequency |omega_Psi|/omega and period statistics versus coupling"});

  RunConfig sample_cfg = config;
  sample_cfg.state = BellState::PsiPlus;
  sample_cfg.oscillator = OscillatorIndex::One;
  if (!config.t_max_given) sample_cfg.t_max = default_figure_span(config.omega, config.coupling);
  save("fig2.csv", sample_table(sample_cfg));
  index.push_back({"fig2.csv", "2", "one realization of x1(t) in psi-plus with its +/- standard deviation envelope"});

  // Traces share one grid spanning two beat periods of the weakest nonzero coupling.
  const double span = config.t_max_given ? config.t_max : default_figure_span(config.omega, kFigureCouplings[1]);
  std::vector<FluctuationTrace> traces;
  for (double g : kFigureCouplings) traces.push_back(trace(Params(config.omega, g), BellState::PsiPlus, 0.0, span, config.steps));

  struct Panel {
    const char* file;
    const char* figure;
    const char* quantity;
    std::vector<double> FluctuationTrace::*column;
    OscillatorIndex osc;
    bool product;
    const char* description;
  };
  const Panel panels[] = {
      {"fig3.csv", "3", "dx1", &FluctuationTrace::dx1, OscillatorIndex::One, false, "normalized dx1(t), psi-plus"},
      {"fig4.csv", "4", "dp1", &FluctuationTrace::dp1, OscillatorIndex::One, false, "normalized dp1(t), psi-plus"},
      {"fig5.csv", "5", "up1", &FluctuationTrace::up1, OscillatorIndex::One, true, "uncertainty product dx1 dp1, psi-plus"},
      {"fig6.csv", "6", "up2", &FluctuationTrace::up2, OscillatorIndex::Two, true, "uncertainty product dx2 dp2, psi-plus"},
  };
  for (const Panel& p : panels) {
    Table table;
    table.add_column("t", traces.front().times);
    for (std::size_t k = 0; k < kFigureCouplings.size(); ++k)
      table.add_column(std::string(p.quantity) + "_" + coupling_label(kFigureCouplings[k]), traces[k].*(p.column));
    const auto base = baseline_nc(BellState::PsiPlus, p.osc);
    table.add_column(std::string(p.quantity) + "_nc",
                     std::vector<double>(traces.front().size(), p.product ? base.product : base.amplitude));
    save(p.file, table);
    index.push_back({p.file, p.figure, p.description});
  }

  std::ofstream idx(dir / "index.csv", std::ios::binary);
  if (!idx) throw ConfigError("cannot write " + (dir / "index.csv").string());
  idx << "file,figure,content\n";
  for (const auto& f : index) idx << f.file << ',' << f.figure << ",\"" << f.content << "\"\n";
  return index;
}

namespace {

void emit(const RunConfig& config, const std::string& command, const Table& table, std::ostream& out) {
  if (config.format == "json")
    write_json(out, table, config.metadata(command));
  else
    write_csv(out, table);
}

/// Runs `body` against --output if given, otherwise against `fallback`.
template <typename Body>
int with_output(const RunConfig& config, std::ostream& fallback, Body body) {
  if (config.output.empty()) return body(fallback);
  std::ofstream file(config.output, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file " + config.output);
  const int status = body(file);
  if (!file) throw ConfigError("write failed for " + config.output);
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum fluctuations of coupled oscillators in Bell-like entangled states"};
  app.require_subcommand(1);
  RunConfig config;
  std::string state_name = "psi-plus";
  int oscillator = 1;
  std::string couplings_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--omega", config.omega, "oscillator angular frequency (hbar = 1)")->capture_default_str();
    sub->add_option("--coupling", config.coupling, "coupling ratio Omega/omega")->capture_default_str();
    sub->add_option("--state", state_name, "Bell-like state")->check(CLI::IsMember({"psi-plus", "psi-minus"}))->capture_default_str();
    sub->add_option("--oscillator", oscillator, "bare oscillator 1 or 2")->check(CLI::IsMember({1, 2}))->capture_default_str();
    sub->add_option("--t-max", config.t_max, "end of the time window")->capture_default_str();
    sub->add_option("--steps", config.steps, "number of time points")->capture_default_str();
    sub->add_option("--cutoff", config.cutoff, "Fock cutoff per bare oscillator")->capture_default_str();
    sub->add_option("--tolerance", config.tolerance, "absolute tolerance of oracle comparisons")->capture_default_str();
    sub->add_option("--seed", config.seed, "sampler seed")->capture_default_str();
    sub->add_option("--format", config.format, "data format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--output", config.output, "output file (default: standard output)");
    sub->add_option("--out-dir", config.out_dir, "directory for figure data")->capture_default_str();
    sub->add_option("--couplings", couplings_text, "comma-separated coupling ratios");
  };

  CLI::App* verify = app.add_subcommand("verify", "cross-check closed forms against the Fock-space oracle");
  CLI::App* trace_cmd = app.add_subcommand("trace", "normalized amplitudes and uncertainty products versus time");
  CLI::App* sweep = app.add_subcommand("sweep", "beat frequency and period statistics versus coupling");
  CLI::App* sample = app.add_subcommand("sample", "one stochastic realization of the coordinate fluctuations");
  CLI::App* figures = app.add_subcommand("figures", "write the data behind every figure");
  for (CLI::App* sub : {verify, trace_cmd, sweep, sample, figures}) add_common(sub);

  std::vector<std::string> argv_storage{"entosc"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    config.state = state_name == "psi-minus" ? BellState::PsiMinus : BellState::PsiPlus;
    config.oscillator = oscillator == 2 ? OscillatorIndex::Two : OscillatorIndex::One;
    CLI::App* active = app.get_subcommands().front();
    config.t_max_given = active->count("--t-max") > 0;
    if (active->count("--couplings") > 0) config.couplings = parse_couplings(couplings_text);
    if (verify->parsed() && config.cutoff < 6)
      throw ConfigError("table1_check requires cutoff >= 6 (got " + std::to_string(config.cutoff) + ")");
    config.validate();

    if (verify->parsed()) {
      const VerifyResult result = run_verify(config);
      return with_output(config, out, [&](std::ostream& os) {
        std::size_t checks = 0, passed = 0, info = 0;
        for (const auto& r : result.reports) {
          os << format_report_line(r) << '\n';
          if (r.informational) {
            ++info;
          } else {
            ++checks;
            passed += r.passed ? 1 : 0;
          }
        }
        os << "summary: " << passed << "/" << checks << " checks passed, " << info << " informational\n";
        return result.all_passed ? kExitSuccess : kExitVerificationFailed;
      });
    }
    if (trace_cmd->parsed())
      return with_output(config, out, [&](std::ostream& os) {
        emit(config, "trace", trace_table(config), os);
        return kExitSuccess;
      });
    if (sweep->parsed()) {
      const auto list = config.couplings.empty() ? default_sweep_couplings() : config.couplings;
      return with_output(config, out, [&](std::ostream& os) {
        emit(config, "sweep", sweep_table(config, list), os);
        return kExitSuccess;
      });
    }
    if (sample->parsed())
      return with_output(config, out, [&](std::ostream& os) {
        emit(config, "sample", sample_table(config), os);
        return kExitSuccess;
      });
    if (figures->parsed()) {
      const auto index = write_figures(config, config.out_dir);
      for (const auto& f : index) out << f.file << "  figure " << f.figure << "  " << f.content << '\n';
      return kExitSuccess;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace entosc
