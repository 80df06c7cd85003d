#include "seqwit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "seqwit/measurement.hpp"

namespace seqwit {

namespace {

constexpr double kCertificationTol = 1e-10;
constexpr double kGolden100dTol = 5e-5;

std::string format_g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Runs fn(0..count-1) on up to max_threads workers (0 = hardware count).
// Tasks write to disjoint slots, so the schedule never affects results.
void parallel_for(std::size_t count, unsigned max_threads,
                  const std::function<void(std::size_t)>& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned workers = max_threads == 0 ? hw : std::min(max_threads, hw);
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

SharpnessProfile resolve_profile(const ScenarioConfig& config, std::size_t depth,
                                 std::optional<double>& resolved_theta) {
  if (const auto* pandit = std::get_if<PanditStrategy>(&config.strategy)) {
    return pandit_sequence(pandit->lambda1, pandit->epsilon, depth);
  }
  const auto& strat = std::get<ThetaStrategy>(config.strategy);
  const double big_l = config.initial.transverse_sum();
  double theta;
  if (strat.theta.has_value()) {
    theta = *strat.theta;
  } else {
    theta = find_theta(config.m, config.n, strat.epsilon, big_l).theta;
  }
  resolved_theta = theta;
  return theta_sequence(SequenceParams{strat.epsilon, big_l, theta}, depth);
}

TwoQubitState evolve_pair(const TwoQubitState& rho0, const SharpnessProfile& alice,
                          const SharpnessProfile& bob, std::size_t k, std::size_t l) {
  TwoQubitState rho = rho0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    rho = luders_channel(rho, Side::Alice, SideSharpness(alice.value(i)));
  }
  for (std::size_t j = 0; j + 1 < l; ++j) {
    rho = luders_channel(rho, Side::Bob, SideSharpness(bob.value(j)));
  }
  return rho;
}

nlohmann::ordered_json config_json(const ScenarioConfig& config,
                                   const std::optional<double>& resolved_theta) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json initial;
  initial["family"] =
      config.initial.family == InitialStateSpec::Family::Bell ? "bell" : "mixed_alpha";
  initial["alpha"] = config.initial.alpha;
  initial["p1"] = config.initial.p1;
  initial["p2"] = config.initial.p2;
  initial["p3"] = config.initial.p3;
  j["initial"] = initial;
  j["m"] = config.m;
  j["n"] = config.n;
  nlohmann::ordered_json strategy;
  if (const auto* pandit = std::get_if<PanditStrategy>(&config.strategy)) {
    strategy["kind"] = "pandit";
    strategy["lambda1"] = pandit->lambda1;
    strategy["epsilon"] = pandit->epsilon;
  } else {
    const auto& theta = std::get<ThetaStrategy>(config.strategy);
    strategy["kind"] = "theta";
    strategy["epsilon"] = theta.epsilon;
    if (resolved_theta.has_value()) strategy["theta"] = *resolved_theta;
  }
  j["strategy"] = strategy;
  j["output_format"] = config.output_format == OutputFormat::Csv ? "csv" : "json";
  return j;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (m == 0 || n == 0) {
    throw std::invalid_argument("ScenarioConfig: m and n must be >= 1");
  }
  initial.validate();
  if (const auto* pandit = std::get_if<PanditStrategy>(&strategy)) {
    if (!(pandit->lambda1 > 0.0 && pandit->lambda1 < 1.0)) {
      throw std::invalid_argument("ScenarioConfig: lambda1 must lie in (0,1)");
    }
    if (!(pandit->epsilon > 0.0)) {
      throw std::invalid_argument("ScenarioConfig: epsilon must be > 0");
    }
  } else {
    const auto& theta = std::get<ThetaStrategy>(strategy);
    if (!(theta.epsilon > 0.0)) {
      throw std::invalid_argument("ScenarioConfig: epsilon must be > 0");
    }
    if (theta.theta.has_value() && !(*theta.theta > 0.0 && *theta.theta < 1.0)) {
      throw std::invalid_argument("ScenarioConfig: theta must lie in (0,1)");
    }
  }
}

WitnessReport ExperimentReport::pair(std::size_t k, std::size_t l) const {
  if (k == 0 || k > config.m || l == 0 || l > config.n) {
    throw std::out_of_range("ExperimentReport: pair indices are 1-based");
  }
  return make_witness_report(k, l, expectations[k - 1][l - 1], gaps[k - 1][l - 1]);
}

ExperimentReport run_scenario(const ScenarioConfig& config, unsigned max_threads) {
  config.validate();
  const std::size_t depth = std::max(config.m, config.n);

  ExperimentReport report;
  report.config = config;
  const SharpnessProfile profile = resolve_profile(config, depth, report.resolved_theta);
  if (!profile.feasible_to(depth)) {
    throw std::domain_error("run_scenario: sharpness profile saturates at entry " +
                            std::to_string(profile.feasible_count() + 1) +
                            " but the scenario needs " + std::to_string(depth) +
                            " entries");
  }
  const auto& values = profile.feasible_values();
  report.alice_profile.assign(values.begin(), values.begin() + config.m);
  report.bob_profile.assign(values.begin(), values.begin() + config.n);

  const TwoQubitState rho0 = initial_state(config.initial);
  const CorrelatorTriple c0 = correlators(rho0);

  const std::size_t pairs = config.m * config.n;
  std::vector<double> gap_flat(pairs);
  std::vector<double> matrix_flat(pairs);
  std::vector<double> closed_flat(pairs);
  parallel_for(pairs, max_threads, [&](std::size_t index) {
    const std::size_t k = index / config.n + 1;
    const std::size_t l = index % config.n + 1;
    const TwoQubitState rho = evolve_pair(rho0, profile, profile, k, l);
    const WitnessParams params{profile.value(k - 1), profile.value(l - 1)};
    gap_flat[index] = difference_gap(c0, profile, profile, k, l);
    matrix_flat[index] = witness_expectation(rho, params);
    closed_flat[index] = witness_expectation_closed_form(c0, profile, profile, k, l);
  });

  report.gaps.assign(config.m, std::vector<double>(config.n));
  report.expectations.assign(config.m, std::vector<double>(config.n));
  report.verdicts.assign(config.m, std::vector<bool>(config.n));
  bool agree = true;
  bool consistent = true;
  for (std::size_t index = 0; index < pairs; ++index) {
    const std::size_t k = index / config.n;
    const std::size_t l = index % config.n;
    report.gaps[k][l] = gap_flat[index];
    report.expectations[k][l] = matrix_flat[index];
    report.verdicts[k][l] = matrix_flat[index] < 0.0;
    agree = agree && std::abs(matrix_flat[index] - closed_flat[index]) <= kCertificationTol;
    consistent = consistent && ((gap_flat[index] > 0.0) == (matrix_flat[index] < 0.0));
  }
  report.certification = {agree, consistent};
  return report;
}

const std::array<std::array<double, 5>, 5>& golden_100d() {
  // Reference 100*D values for lambda_1 = 0.005, epsilon = 4, Bell initial
  // state, as printed to 4 decimal places.
  static const std::array<std::array<double, 5>, 5> table{{
      {{0.0025, 0.0042, 0.0114, 0.0099, -1.4184}},
      {{0.0042, 0.0075, 0.0226, 0.0446, -1.9159}},
      {{0.0114, 0.0226, 0.0802, 0.3049, -1.2054}},
      {{0.0099, 0.0446, 0.3049, 1.7031, 7.5946}},
      {{-1.4184, -1.9159, -1.2054, 7.5946, 77.5252}},
  }};
  return table;
}

DMatrixResult reproduce_d_matrix(unsigned max_threads) {
  ScenarioConfig config;
  config.initial = InitialStateSpec::bell();
  config.m = 5;
  config.n = 5;
  config.strategy = PanditStrategy{0.005, 4.0};

  DMatrixResult result;
  result.report = run_scenario(config, max_threads);
  const auto& golden = golden_100d();
  double max_dev = 0.0;
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t l = 0; l < 5; ++l) {
      max_dev = std::max(max_dev,
                         std::abs(100.0 * result.report.gaps[k][l] - golden[k][l]));
    }
  }
  result.max_deviation_100d = max_dev;
  result.golden_match = max_dev <= kGolden100dTol && result.report.certification.ok();
  return result;
}

std::vector<FrontierRow> feasibility_frontier(double epsilon, double big_l,
                                              std::size_t max_mn, unsigned max_threads) {
  if (max_mn == 0) throw std::invalid_argument("feasibility_frontier: max_mn must be >= 1");
  std::vector<FrontierRow> rows(max_mn * max_mn);
  parallel_for(rows.size(), max_threads, [&](std::size_t index) {
    const std::size_t m = index / max_mn + 1;
    const std::size_t n = index % max_mn + 1;
    const FindThetaResult found = find_theta(m, n, epsilon, big_l);
    rows[index] = {m, n, found.theta, found.min_gap};
  });
  return rows;
}

void write_csv(const ExperimentReport& report, std::ostream& out) {
  out << "k,l,lambda_k,gamma_l,gap,expectation,witnessed\n";
  for (std::size_t k = 1; k <= report.config.m; ++k) {
    for (std::size_t l = 1; l <= report.config.n; ++l) {
      out << k << ',' << l << ',' << format_g12(report.alice_profile[k - 1]) << ','
          << format_g12(report.bob_profile[l - 1]) << ','
          << format_g12(report.gaps[k - 1][l - 1]) << ','
          << format_g12(report.expectations[k - 1][l - 1]) << ','
          << (report.verdicts[k - 1][l - 1] ? "true" : "false") << '\n';
    }
  }
}

void write_json(const ExperimentReport& report, std::ostream& out) {
  nlohmann::ordered_json j;
  j["config"] = config_json(report.config, report.resolved_theta);
  nlohmann::ordered_json profiles;
  profiles["alice"] = report.alice_profile;
  profiles["bob"] = report.bob_profile;
  j["profiles"] = profiles;
  j["gaps"] = report.gaps;
  j["expectations"] = report.expectations;
  j["verdicts"] = report.verdicts;
  j["certified"] = report.certification.ok();
  out << j.dump(2) << '\n';
}

}  // namespace seqwit
