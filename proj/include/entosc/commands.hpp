#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "entosc/core_model.hpp"
#include "entosc/fock_oracle.hpp"
#include "entosc/table_io.hpp"

namespace entosc {

/// Process exit codes of the command-line tool.
enum ExitStatus : int { kExitSuccess = 0, kExitVerificationFailed = 1, kExitUsage = 2 };

/// Raised for configuration problems; maps to kExitUsage.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  double omega = 1.0;
  double coupling = 0.5;
  BellState state = BellState::PsiPlus;
  OscillatorIndex oscillator = OscillatorIndex::One;
  double t_max = 100.0;
  int steps = 1001;
  int cutoff = 12;
  double tolerance = 1e-8;
  std::uint64_t seed = 42;
  std::string format = "csv";
  std::string output;  // empty: standard output
  std::string out_dir = "figures";
  std::vector<double> couplings;
  /// Set when --t-max was given explicitly.
  bool t_max_given = false;

  Params params() const;
  void validate() const;
  nlohmann::ordered_json metadata(const std::string& command) const;
};

/// Resolution used for the per-coupling period statistics of a sweep.
inline constexpr int kSweepSamplesPerPeriod = 4096;

/// Coupling values used for the figure traces.
inline const std::vector<double> kFigureCouplings{0.0, 0.2, 0.8};

/// Parses "0,0.2,0.8"; rejects empty lists, malformed and negative values.
std::vector<double> parse_couplings(const std::string& text);

/// Default sweep list 0, 0.02, ..., 2.
std::vector<double> default_sweep_couplings();

Table trace_table(const RunConfig& config);
Table sweep_table(const RunConfig& config, const std::vector<double>& couplings);
Table sample_table(const RunConfig& config);

struct VerifyResult {
  std::vector<OracleReport> reports;
  bool all_passed = true;
};

/// Commutators, second-moment matrix elements, Heisenberg dynamics and the closed-form
/// versus Schrodinger-evolved amplitudes, at the configured parameters.
VerifyResult run_verify(const RunConfig& config);

/// One line per report: PASS/FAIL/INFO, label, values, |diff|, tolerance.
std::string format_report_line(const OracleReport& report);

struct FigureFile {
  std::string file;
  std::string figure;
  std::string content;
};

/// Writes fig1.csv ... fig6.csv and index.csv into `dir`; returns the index entries.
std::vector<FigureFile> write_figures(const RunConfig& config, const std::filesystem::path& dir);

/// Full command-line entry point; returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entosc
