#include "seqwit/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace seqwit {

namespace {

struct QuietTerm {
  double quiet;    // Lambda = sqrt(1 - lambda^2)
  double deficit;  // 1 - Lambda, cancellation-free
};

QuietTerm quiet_term(double lambda) {
  const double quiet = std::sqrt((1.0 - lambda) * (1.0 + lambda));
  return {quiet, lambda * lambda / (1.0 + quiet)};
}

// Running prefix products over one chain. The longitudinal factor
// (1+2Lambda)/3 equals 1 - (2/3)(1-Lambda), so its product deficit obeys
//   d <- d + (2/3)(1-Lambda)(1 - d),
// an all-positive accumulation that never cancels against 1.
struct ChainAccumulator {
  double transverse = 1.0;
  double deficit = 0.0;

  void push(double lambda) {
    const QuietTerm q = quiet_term(lambda);
    transverse *= (1.0 + q.quiet) / 3.0;
    deficit += (2.0 / 3.0) * q.deficit * (1.0 - deficit);
  }

  Attenuation attenuation() const { return {transverse, deficit}; }
};

bool in_open_unit_interval(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

SharpnessProfile SharpnessProfile::from_feasible_prefix(std::vector<double> prefix,
                                                        std::size_t total_size) {
  if (prefix.size() > total_size) {
    throw std::invalid_argument("SharpnessProfile: prefix longer than total size");
  }
  for (double v : prefix) {
    if (!in_open_unit_interval(v)) {
      throw std::invalid_argument("SharpnessProfile: feasible entries must lie in (0,1)");
    }
  }
  SharpnessProfile profile;
  profile.values_ = std::move(prefix);
  profile.total_size_ = total_size;
  return profile;
}

bool SharpnessProfile::is_saturated(std::size_t i) const {
  if (i >= total_size_) {
    throw std::out_of_range("SharpnessProfile: entry index out of range");
  }
  return i >= values_.size();
}

double SharpnessProfile::value(std::size_t i) const {
  if (i >= total_size_) {
    throw std::out_of_range("SharpnessProfile: entry index out of range");
  }
  if (i >= values_.size()) {
    throw std::domain_error("SharpnessProfile: entry " + std::to_string(i + 1) +
                            " is saturated");
  }
  return values_[i];
}

void SequenceParams::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("SequenceParams: epsilon must be > 0");
  if (!(big_l > 0.0 && big_l <= 2.0)) {
    throw std::invalid_argument("SequenceParams: L must lie in (0,2]");
  }
  if (!in_open_unit_interval(theta)) {
    throw std::invalid_argument("SequenceParams: theta must lie in (0,1)");
  }
}

Attenuation attenuation_before(const SharpnessProfile& profile, std::size_t k) {
  if (k == 0 || k > profile.size()) {
    throw std::out_of_range("attenuation_before: k is a 1-based entry index");
  }
  if (!profile.feasible_to(k - 1)) {
    throw std::domain_error("attenuation_before: profile saturates before entry " +
                            std::to_string(k));
  }
  ChainAccumulator acc;
  for (std::size_t i = 0; i + 1 < k; ++i) acc.push(profile.value(i));
  return acc.attenuation();
}

Attenuation combine(const Attenuation& alice, const Attenuation& bob) {
  const double da = alice.longitudinal_deficit;
  const double db = bob.longitudinal_deficit;
  return {alice.transverse * bob.transverse, da + db - da * db};
}

SharpnessProfile pandit_sequence(double lambda1, double epsilon, std::size_t n) {
  if (!in_open_unit_interval(lambda1)) {
    throw std::invalid_argument("pandit_sequence: lambda1 must lie in (0,1)");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("pandit_sequence: epsilon must be > 0");
  if (n == 0) return SharpnessProfile::from_feasible_prefix({}, 0);

  std::vector<double> values{lambda1};
  ChainAccumulator acc;
  while (values.size() < n) {
    acc.push(values.back());
    // 1 - prod (1+2Lambda)^2/9 = d(2-d) with d the single-power deficit
    const double numerator = acc.deficit * (2.0 - acc.deficit);
    const double square =
        (1.0 + epsilon) * numerator / (2.0 * acc.transverse * acc.transverse);
    if (!in_open_unit_interval(square)) break;
    values.push_back(std::sqrt(square));
  }
  return SharpnessProfile::from_feasible_prefix(std::move(values), n);
}

SharpnessProfile theta_sequence(const SequenceParams& params, std::size_t n) {
  params.validate();
  if (n == 0) return SharpnessProfile::from_feasible_prefix({}, 0);

  std::vector<double> values{params.theta};
  ChainAccumulator acc;
  while (values.size() < n) {
    acc.push(values.back());
    const double next =
        params.epsilon * acc.deficit / (params.big_l * params.theta * acc.transverse);
    if (!in_open_unit_interval(next)) break;
    values.push_back(next);
  }
  return SharpnessProfile::from_feasible_prefix(std::move(values), n);
}

AsymptoticCoefficients asymptotic_coefficients(double epsilon, double big_l, std::size_t n) {
  if (!(big_l > 0.0 && big_l <= 2.0 && epsilon > 2.0)) {
    throw std::invalid_argument(
        "asymptotic_coefficients: requires 0 < L <= 2 < epsilon");
  }
  AsymptoticCoefficients coeffs;
  if (n == 0) return coeffs;
  coeffs.a.reserve(n);
  coeffs.a.push_back(1.0);
  double sum_squares = 0.0;
  double power = 1.0;  // (3/2)^{k-1}
  for (std::size_t k = 2; k <= n; ++k) {
    sum_squares += coeffs.a.back() * coeffs.a.back();
    power *= 1.5;
    coeffs.a.push_back(epsilon / (3.0 * big_l) * power * sum_squares);
  }
  return coeffs;
}

double threshold_f(const SequenceParams& params, std::size_t k, std::size_t l) {
  if (k == 0 || l == 0) throw std::out_of_range("threshold_f: k, l are 1-based");
  const std::size_t depth = std::max(k, l);
  const SharpnessProfile profile = theta_sequence(params, depth);
  if (!profile.feasible_to(depth)) {
    throw std::domain_error("threshold_f: theta sequence saturates at entry " +
                            std::to_string(profile.feasible_count() + 1));
  }
  const Attenuation pair =
      combine(attenuation_before(profile, k), attenuation_before(profile, l));
  return pair.longitudinal_deficit / (params.big_l * pair.transverse);
}

double limit_gap_L(double epsilon, double big_l, std::size_t k, std::size_t l) {
  if (k < 2 || l < 2) throw std::invalid_argument("limit_gap_L: requires k, l >= 2");
  const AsymptoticCoefficients coeffs =
      asymptotic_coefficients(epsilon, big_l, std::max(k, l));
  double sum_a = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) sum_a += coeffs.a[i] * coeffs.a[i];
  double sum_b = 0.0;
  for (std::size_t j = 0; j + 1 < l; ++j) sum_b += coeffs.a[j] * coeffs.a[j];
  const double scale =
      std::pow(1.5, static_cast<double>(k + l - 2)) / (3.0 * big_l);
  return scale * (epsilon * epsilon / (3.0 * big_l) * sum_a * sum_b - (sum_a + sum_b));
}

FindThetaResult find_theta(std::size_t m, std::size_t n, double epsilon, double big_l) {
  if (m == 0 || n == 0) throw std::invalid_argument("find_theta: m and n must be >= 1");
  if (!(epsilon >= 4.0)) throw std::invalid_argument("find_theta: epsilon must be >= 4");
  if (!(big_l > 0.0 && big_l <= 2.0)) {
    throw std::invalid_argument("find_theta: L must lie in (0,2]");
  }
  const std::size_t depth = std::max(m, n);

  // Analytic warm start: below 1/(a_depth + 1) the whole sequence stays
  // under 1 once theta is small enough, so this is usually feasible at once.
  double theta = 0.1;
  const AsymptoticCoefficients coeffs = asymptotic_coefficients(epsilon, big_l, depth);
  if (std::isfinite(coeffs.a.back())) {
    theta = std::min(theta, 1.0 / (coeffs.a.back() + 1.0));
  }

  std::size_t fail_k = 0;
  std::size_t fail_l = 0;
  std::string fail_reason;
  double smallest_tried = theta;

  for (int iteration = 0; iteration < 200; ++iteration) {
    smallest_tried = theta;
    const SequenceParams params{epsilon, big_l, theta};
    const SharpnessProfile profile = theta_sequence(params, depth);
    if (profile.feasible_to(depth)) {
      std::vector<Attenuation> prefix;
      prefix.reserve(depth);
      ChainAccumulator acc;
      for (std::size_t i = 0; i < depth; ++i) {
        prefix.push_back(acc.attenuation());
        acc.push(profile.value(i));
      }
      double min_gap = std::numeric_limits<double>::infinity();
      bool all_positive = true;
      for (std::size_t k = 1; k <= m && all_positive; ++k) {
        for (std::size_t l = 1; l <= n; ++l) {
          const Attenuation pair = combine(prefix[k - 1], prefix[l - 1]);
          const double gap = profile.value(k - 1) * profile.value(l - 1) -
                             pair.longitudinal_deficit / (big_l * pair.transverse);
          if (!(gap > 0.0)) {
            all_positive = false;
            fail_k = k;
            fail_l = l;
            fail_reason = "nonpositive gap";
            break;
          }
          min_gap = std::min(min_gap, gap);
        }
      }
      if (all_positive) return {theta, min_gap};
    } else {
      fail_k = profile.feasible_count() + 1;
      fail_l = 0;
      fail_reason = "sequence saturates";
    }
    theta *= 0.5;
  }

  throw std::runtime_error(
      "find_theta: search exhausted after 200 halvings (smallest theta tried " +
      std::to_string(smallest_tried) + "; last failure: " + fail_reason + " at (" +
      std::to_string(fail_k) + "," + std::to_string(fail_l) +
      ")). A valid theta is guaranteed to exist for epsilon >= 4 and 0 < L <= 2, "
      "so this indicates a bug or pathological parameters.");
}

}  // namespace seqwit
