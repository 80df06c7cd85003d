// Named, reproducible experiment pipelines over the (m,n)-sequential
// scenario, with CSV/JSON report output.
#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "seqwit/qcore.hpp"
#include "seqwit/sequences.hpp"
#include "seqwit/witness.hpp"

namespace seqwit {

struct PanditStrategy {
  double lambda1 = 0.005;
  double epsilon = 4.0;
};

struct ThetaStrategy {
  double epsilon = 4.0;
  std::optional<double> theta;  // empty: run find_theta for the scenario
};

using MeasurementStrategy = std::variant<PanditStrategy, ThetaStrategy>;

enum class OutputFormat { Csv, Json };

struct ScenarioConfig {
  InitialStateSpec initial = InitialStateSpec::bell();
  std::size_t m = 1;  // number of Alices
  std::size_t n = 1;  // number of Bobs
  MeasurementStrategy strategy = PanditStrategy{};
  OutputFormat output_format = OutputFormat::Csv;

  void validate() const;
};

struct Certification {
  bool expectations_agree = false;   // closed form vs matrix evolution, 1e-10
  bool verdicts_consistent = false;  // gap > 0 iff expectation < 0, entrywise

  bool ok() const { return expectations_agree && verdicts_consistent; }
};

struct ExperimentReport {
  ScenarioConfig config;
  std::vector<double> alice_profile;  // lambda_1..lambda_m
  std::vector<double> bob_profile;    // gamma_1..gamma_n
  std::optional<double> resolved_theta;
  std::vector<std::vector<double>> gaps;          // m x n, d_{kl}
  std::vector<std::vector<double>> expectations;  // m x n, matrix-evolved <W_{k,l}>
  std::vector<std::vector<bool>> verdicts;        // expectation < 0
  Certification certification;

  WitnessReport pair(std::size_t k, std::size_t l) const;  // 1-based
};

// Builds the profiles, evolves the initial state through the measurement
// channels for every pair (Alice side first, then Bob side), evaluates the
// witness both by matrix trace and by correlator propagation, and fills the
// report. Pairs are evaluated independently; `max_threads` caps the worker
// count (0 = hardware concurrency), and results do not depend on it.
ExperimentReport run_scenario(const ScenarioConfig& config, unsigned max_threads = 0);

// The printed reference values of 100*D for lambda_1 = 0.005, epsilon = 4
// on the Bell state (4 decimal places).
const std::array<std::array<double, 5>, 5>& golden_100d();

struct DMatrixResult {
  ExperimentReport report;
  bool golden_match = false;
  double max_deviation_100d = 0.0;  // max |100*gap - reference| over the grid
};

// Runs the fixed 5x5 Pandit/Bell scenario and compares against
// golden_100d() at tolerance 5e-5 per 100*D entry.
DMatrixResult reproduce_d_matrix(unsigned max_threads = 0);

struct FrontierRow {
  std::size_t m = 0;
  std::size_t n = 0;
  double theta = 0.0;
  double min_gap = 0.0;
};

// find_theta for every (m,n) up to max_mn; rows ordered m-major.
std::vector<FrontierRow> feasibility_frontier(double epsilon, double big_l,
                                              std::size_t max_mn,
                                              unsigned max_threads = 0);

// header: k,l,lambda_k,gamma_l,gap,expectation,witnessed
// values with 12 significant digits, rows ordered (k major, l minor)
void write_csv(const ExperimentReport& report, std::ostream& out);

// one object: config, profiles, gaps, expectations, verdicts, certified
void write_json(const ExperimentReport& report, std::ostream& out);

}  // namespace seqwit
