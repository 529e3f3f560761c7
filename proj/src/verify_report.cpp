#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "entosc/analytic.hpp"
#include "entosc/commands.hpp"
#include "entosc/fock_oracle.hpp"

namespace entosc {

namespace {

std::string format_complex(std::complex<double> z) {
  char buf[96];
  z += std::complex<double>(0.0, 0.0);  // -0 prints as 0
  if (z.imag() == 0.0)
    std::snprintf(buf, sizeof buf, "%.12g", z.real());
  else
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

/// Largest pointwise difference between two columns, as a report.
OracleReport compare_columns(const std::string& label, const std::vector<double>& analytic,
                             const std::vector<double>& numeric, double tol) {
  std::size_t worst = 0;
  double diff = -1;
  for (std::size_t k = 0; k < analytic.size(); ++k) {
    const double d = std::abs(analytic[k] - numeric[k]);
    if (d > diff) {
      diff = d;
      worst = k;
    }
  }
  return make_report(label, analytic[worst], numeric[worst], tol);
}

}  // namespace

std::string format_report_line(const OracleReport& r) {
  const char* status = r.informational ? "INFO" : (r.passed ? "PASS" : "FAIL");
  char tail[128];
  std::snprintf(tail, sizeof tail, "  |diff|=%.3e  tol=%.3e", r.abs_diff, r.tolerance);
  std::string line = std::string(status) + "  " + r.label + "  analytic=" + format_complex(r.analytic_value) +
                     "  oracle=" + format_complex(r.oracle_value) + tail;
  if (!r.note.empty()) line += "  # " + r.note;
  return line;
}

VerifyResult run_verify(const RunConfig& config) {
  if (config.cutoff < 6)
    throw ConfigError("table1_check requires cutoff >= 6 (got " + std::to_string(config.cutoff) + ")");
  config.validate();
  const Params params = config.params();
  const double tol = config.tolerance;
  const auto basis = TwoModeBasis<double>::for_params(params, config.cutoff);
  const FockOracle<double> oracle(params, basis);

  VerifyResult result;
  auto add = [&](OracleReport r) {
    if (!r.informational && !r.passed) result.all_passed = false;
    result.reports.push_back(std::move(r));
  };

  for (auto& r : commutator_check(basis, tol)) add(std::move(r));
  for (auto& r : table1_check(oracle, tol)) add(std::move(r));
  add(table1_printed_momentum_entry(oracle));

  const double t_probe = 1.0 / params.omega;
  add(heisenberg_evolution_check(oracle, t_probe, tol, MomentumForm::Corrected));
  OracleReport printed = heisenberg_evolution_check(oracle, t_probe, 0.1, MomentumForm::Printed);
  printed.informational = true;
  printed.note = printed.abs_diff > 0.1 ? "misprinted momentum update fails the matrix dynamics, as expected"
                                        : "misprinted momentum update unexpectedly agrees at this t";
  add(std::move(printed));

  // Two beat periods on 200 points; a fixed window when there is no beat.
  const double beat = std::abs(beat_frequency(params));
  const double t_end = beat > 0 ? 2 * (2 * std::numbers::pi / beat) : 10.0 / params.omega;
  const auto times = uniform_grid(0.0, t_end, 200);
  for (BellState s : {BellState::PsiPlus, BellState::PsiMinus}) {
    const FluctuationTrace closed = trace(params, s, 0.0, t_end, 200);
    const FluctuationTrace numeric = evolve_expectations(oracle, s, times);
    const std::string prefix = std::string("evolution ") + to_string(s) + " ";
    add(compare_columns(prefix + "dx1", closed.dx1, numeric.dx1, tol));
    add(compare_columns(prefix + "dx2", closed.dx2, numeric.dx2, tol));
    add(compare_columns(prefix + "dp1", closed.dp1, numeric.dp1, tol));
    add(compare_columns(prefix + "dp2", closed.dp2, numeric.dp2, tol));
  }
  return result;
}

}  // namespace entosc
