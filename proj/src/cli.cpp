#include "seqwit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "seqwit/experiments.hpp"
#include "seqwit/measurement.hpp"

namespace seqwit {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;

std::string g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

unsigned thread_cap_from_env() {
  const char* value = std::getenv("SEQWIT_THREADS");
  if (value == nullptr || *value == '\0') return 0;  // 0 = hardware concurrency
  char* end = nullptr;
  const unsigned long parsed = std::strtoul(value, &end, 10);
  if (end == value || *end != '\0') return 0;
  return parsed == 0 ? 1u : static_cast<unsigned>(std::min<unsigned long>(parsed, 1024));
}

double mixed_big_l(double p1, double alpha) {
  return 4.0 * p1 * std::sqrt(alpha * (1.0 - alpha));
}

void print_profile(const SharpnessProfile& profile, std::ostream& out) {
  out << "k,lambda_k\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out << (i + 1) << ',';
    if (profile.is_saturated(i)) {
      out << "SATURATED\n";
    } else {
      out << g12(profile.value(i)) << '\n';
    }
  }
}

int cmd_reproduce_d_matrix(std::ostream& out, unsigned threads) {
  const DMatrixResult result = reproduce_d_matrix(threads);
  out << "100*D for lambda1 = 0.005, epsilon = 4, Bell initial state (m = n = 5)\n";
  for (const auto& row : result.report.gaps) {
    for (double gap : row) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%10.4f", 100.0 * gap);
      out << buf;
    }
    out << '\n';
  }
  out << "max |100*D - reference| = " << g12(result.max_deviation_100d)
      << " (tolerance 5e-05)\n";
  out << "certified: " << (result.report.certification.ok() ? "yes" : "no") << '\n';
  out << (result.golden_match ? "PASS" : "FAIL") << '\n';
  return result.golden_match ? kExitOk : kExitCheckFailed;
}

int cmd_check(std::size_t samples, std::uint64_t seed, std::ostream& out) {
  bool all_ok = true;

  {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double max_dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const TwoQubitState rho = random_state(rng);
      const Side side = (rng() & 1u) != 0 ? Side::Alice : Side::Bob;
      const SideSharpness sharpness(unit(rng));
      const Mat4 diff = luders_channel(rho, side, sharpness).matrix() -
                        luders_channel_bruteforce(rho, side, sharpness).matrix();
      max_dev = std::max(max_dev, diff.cwiseAbs().maxCoeff());
    }
    const bool ok = max_dev <= 1e-12;
    all_ok = all_ok && ok;
    out << "channel-equivalence (1000 random triples): max entry diff = " << g12(max_dev)
        << (ok ? " PASS" : " FAIL") << '\n';
  }

  {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double max_dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const TwoQubitState rho = random_state(rng);
      const double lam = unit(rng);
      const double gam = unit(rng);
      const double p = witness_probability_sum(rho, lam, gam);
      const double w = witness_expectation(rho, WitnessParams{lam, gam});
      max_dev = std::max(max_dev, std::abs(18.0 * (p - 1.0 / 9.0) - w));
    }
    const bool ok = max_dev <= 1e-12;
    all_ok = all_ok && ok;
    out << "probability-identity (1000 random triples): max |18(p-1/9) - <W>| = "
        << g12(max_dev) << (ok ? " PASS" : " FAIL") << '\n';
  }

  {
    const double grid[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
    double min_expectation = std::numeric_limits<double>::infinity();
    std::uint64_t point = 0;
    for (double lam : grid) {
      for (double gam : grid) {
        min_expectation = std::min(
            min_expectation,
            sample_separable_expectations(WitnessParams{lam, gam}, samples, seed + point));
        ++point;
      }
    }
    const bool ok = min_expectation >= -1e-12;
    all_ok = all_ok && ok;
    out << "separability-floor (25-point grid, " << samples
        << " product states each): min <W> = " << g12(min_expectation)
        << (ok ? " PASS" : " FAIL") << '\n';
  }

  out << (all_ok ? "PASS" : "FAIL") << '\n';
  return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"seqwit: sequential entanglement witnessing with unsharp measurements"};
  app.require_subcommand(1);
  const unsigned threads = thread_cap_from_env();

  auto* repro = app.add_subcommand(
      "reproduce-d-matrix",
      "Recompute the 5x5 gap matrix for lambda1=0.005, epsilon=4 on the Bell state "
      "and compare with the reference values");

  auto* seq = app.add_subcommand("sequence", "Print a sharpness profile");
  std::string seq_strategy;
  double seq_lambda1 = 0.005;
  double seq_epsilon = 4.0;
  double seq_theta = 0.01;
  std::size_t seq_n = 5;
  seq->add_option("--strategy", seq_strategy, "pandit or theta")
      ->required()
      ->check(CLI::IsMember({"pandit", "theta"}));
  seq->add_option("--lambda1", seq_lambda1, "first sharpness (pandit)");
  seq->add_option("--epsilon", seq_epsilon, "slack parameter epsilon");
  seq->add_option("--theta", seq_theta, "theta (theta strategy)");
  seq->add_option("--n", seq_n, "profile length")->check(CLI::Range(std::size_t{1}, std::size_t{1000}));

  auto* ft = app.add_subcommand("find-theta",
                                "Search for a theta that lets every pair witness");
  std::size_t ft_m = 1;
  std::size_t ft_n = 1;
  double ft_epsilon = 4.0;
  double ft_p1 = 0.0;
  double ft_alpha = 0.0;
  ft->add_option("--m", ft_m, "number of Alices")->required()->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
  ft->add_option("--n", ft_n, "number of Bobs")->required()->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
  ft->add_option("--epsilon", ft_epsilon, "slack parameter (>= 4)");
  auto* ft_p1_opt = ft->add_option("--p1", ft_p1, "mixed-family weight of |Psi_alpha|");
  auto* ft_alpha_opt = ft->add_option("--alpha", ft_alpha, "Schmidt weight alpha");
  ft_p1_opt->needs(ft_alpha_opt);
  ft_alpha_opt->needs(ft_p1_opt);

  auto* sim = app.add_subcommand("simulate", "Run a scenario and emit a report");
  std::string sim_state;
  double sim_p1 = 0.0;
  double sim_alpha = 0.0;
  std::size_t sim_m = 1;
  std::size_t sim_n = 1;
  std::string sim_strategy = "pandit";
  double sim_lambda1 = 0.005;
  double sim_epsilon = 4.0;
  double sim_theta = 0.0;
  std::string sim_format = "csv";
  std::string sim_out;
  sim->add_option("--state", sim_state, "bell or mixed")
      ->required()
      ->check(CLI::IsMember({"bell", "mixed"}));
  auto* sim_p1_opt = sim->add_option("--p1", sim_p1, "mixed-family weight of |Psi_alpha|");
  auto* sim_alpha_opt = sim->add_option("--alpha", sim_alpha, "Schmidt weight alpha");
  sim_p1_opt->needs(sim_alpha_opt);
  sim_alpha_opt->needs(sim_p1_opt);
  sim->add_option("--m", sim_m, "number of Alices")->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
  sim->add_option("--n", sim_n, "number of Bobs")->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
  sim->add_option("--strategy", sim_strategy, "pandit or theta")
      ->check(CLI::IsMember({"pandit", "theta"}));
  sim->add_option("--lambda1", sim_lambda1, "first sharpness (pandit)");
  sim->add_option("--epsilon", sim_epsilon, "slack parameter epsilon");
  auto* sim_theta_opt = sim->add_option("--theta", sim_theta,
                                        "theta (theta strategy); searched if omitted");
  sim->add_option("--format", sim_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sim->add_option("--out", sim_out, "output path (stdout if omitted)");

  auto* check = app.add_subcommand("check", "Run the numerical invariant suite");
  std::size_t check_samples = 10000;
  std::uint64_t check_seed = 0;
  check->add_option("--samples", check_samples, "product states per grid point")
      ->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
  check->add_option("--seed", check_seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (repro->parsed()) {
      return cmd_reproduce_d_matrix(out, threads);
    }

    if (seq->parsed()) {
      SharpnessProfile profile;
      if (seq_strategy == "pandit") {
        profile = pandit_sequence(seq_lambda1, seq_epsilon, seq_n);
      } else {
        profile = theta_sequence(SequenceParams{seq_epsilon, 2.0, seq_theta}, seq_n);
      }
      print_profile(profile, out);
      return kExitOk;
    }

    if (ft->parsed()) {
      double big_l = 2.0;
      if (ft_p1_opt->count() > 0) {
        if (!(ft_p1 > 0.0 && ft_p1 <= 1.0)) {
          err << "--p1: value must lie in (0,1]\n";
          return kExitUsage;
        }
        if (!(ft_alpha > 0.0 && ft_alpha <= 1.0)) {
          err << "--alpha: value must lie in (0,1]\n";
          return kExitUsage;
        }
        big_l = mixed_big_l(ft_p1, ft_alpha);
      }
      const FindThetaResult found = find_theta(ft_m, ft_n, ft_epsilon, big_l);
      out << "theta = " << g12(found.theta) << '\n';
      out << "min_gap = " << g12(found.min_gap) << '\n';
      return kExitOk;
    }

    if (sim->parsed()) {
      ScenarioConfig config;
      if (sim_state == "mixed") {
        if (sim_p1_opt->count() == 0) {
          err << "--p1 and --alpha are required when --state mixed\n";
          return kExitUsage;
        }
        const double rest = 1.0 - sim_p1;
        config.initial =
            InitialStateSpec::mixed_alpha(sim_alpha, sim_p1, rest / 2.0, rest / 2.0);
      } else {
        config.initial = InitialStateSpec::bell();
      }
      config.m = sim_m;
      config.n = sim_n;
      if (sim_strategy == "pandit") {
        config.strategy = PanditStrategy{sim_lambda1, sim_epsilon};
      } else {
        ThetaStrategy strategy;
        strategy.epsilon = sim_epsilon;
        if (sim_theta_opt->count() > 0) strategy.theta = sim_theta;
        config.strategy = strategy;
      }
      config.output_format = sim_format == "json" ? OutputFormat::Json : OutputFormat::Csv;

      const ExperimentReport report = run_scenario(config, threads);
      const auto emit = [&](std::ostream& target) {
        if (config.output_format == OutputFormat::Json) {
          write_json(report, target);
        } else {
          write_csv(report, target);
        }
      };
      if (sim_out.empty()) {
        emit(out);
      } else {
        std::ofstream file(sim_out);
        if (!file) {
          err << "--out: cannot open '" << sim_out << "' for writing\n";
          return kExitUsage;
        }
        emit(file);
      }
      if (!report.certification.ok()) {
        err << "certification failed: closed-form and matrix-evolved witnesses disagree\n";
        return kExitCheckFailed;
      }
      return kExitOk;
    }

    if (check->parsed()) {
      return cmd_check(check_samples, check_seed, out);
    }
  } catch (const std::logic_error& e) {  // bad parameters, infeasible profiles
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {  // exhausted searches, certification trouble
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }

  err << "no subcommand given\n";
  return kExitUsage;
}

}  // namespace seqwit
