// Sharpness-sequence generators, their small-theta asymptotics, and the
// constructive search for a theta that lets every observer pair witness.
#pragma once

#include <cstddef>
#include <vector>

namespace seqwit {

/// One chain's ordered sharpness values. Every entry lies strictly inside
/// (0,1); the generating recursions mark the first out-of-range value and
/// everything after it as saturated, so a profile is always a feasible
/// prefix followed by a saturated tail.
class SharpnessProfile {
 public:
  SharpnessProfile() = default;

  // `prefix` holds the feasible entries (each in (0,1)); entries
  // prefix.size()..total_size-1 are saturated.
  static SharpnessProfile from_feasible_prefix(std::vector<double> prefix,
                                               std::size_t total_size);

  std::size_t size() const { return total_size_; }
  std::size_t feasible_count() const { return values_.size(); }
  bool feasible_to(std::size_t n) const { return n <= values_.size(); }
  bool is_saturated(std::size_t i) const;  // 0-based entry index
  double value(std::size_t i) const;       // 0-based; throws for saturated entries
  const std::vector<double>& feasible_values() const { return values_; }

 private:
  std::vector<double> values_;
  std::size_t total_size_ = 0;
};

struct SequenceParams {
  double epsilon = 4.0;
  double big_l = 2.0;  // T11+T22 of the initial state; 2 for the Bell state
  double theta = 0.1;

  // epsilon > 0, big_l in (0,2], theta in (0,1).
  void validate() const;
};

struct AsymptoticCoefficients {
  std::vector<double> a;  // a[k-1] = lim_{theta->0+} lambda_k(theta)/theta
};

// How the first k-1 measurements of one chain attenuate the shared state's
// correlators:
//   transverse           = prod_{i<k} (1+Lambda_i)/3      (scales T11, T22)
//   longitudinal_deficit = 1 - prod_{i<k} (1+2Lambda_i)/3 (T33 scales by the
//                          complement)
// with Lambda_i = sqrt(1-lambda_i^2). The deficit is accumulated directly,
// not as 1 minus a product, so it keeps full relative precision when every
// factor sits within a few ulp of 1 (which happens for the tiny thetas the
// search needs at large m, n).
struct Attenuation {
  double transverse = 1.0;
  double longitudinal_deficit = 0.0;
};

// Attenuation in front of entry k (1-based), i.e. over entries 1..k-1.
Attenuation attenuation_before(const SharpnessProfile& profile, std::size_t k);

// Attenuation of a pair of chains acting on opposite qubits.
Attenuation combine(const Attenuation& alice, const Attenuation& bob);

// lambda_k^2 = (1+epsilon) * (1 - prod_{i<k} (1+2Lambda_i)^2/9)
//                          / (2 prod_{i<k} (1+Lambda_i)^2/9)
// starting from lambda_1 in (0,1); saturates once the square leaves (0,1).
SharpnessProfile pandit_sequence(double lambda1, double epsilon, std::size_t n);

// lambda_1 = theta and, for k >= 2,
// lambda_k = epsilon * (1 - prod_{i<k} (1+2Lambda_i)/3)
//                    / (L * theta * prod_{i<k} (1+Lambda_i)/3).
// The two chains share this sequence: the recursion and the initial value
// are identical on both sides.
SharpnessProfile theta_sequence(const SequenceParams& params, std::size_t n);

// a_1 = 1, a_k = epsilon/(3L) * (3/2)^{k-1} * sum_{i<k} a_i^2.
// Requires the regime big_l <= 2 < epsilon.
AsymptoticCoefficients asymptotic_coefficients(double epsilon, double big_l, std::size_t n);

// The witnessing threshold f_{kl}: under the theta strategy, pair (k,l)
// witnesses iff lambda_k * gamma_l > f_{kl}. k, l are 1-based.
double threshold_f(const SequenceParams& params, std::size_t k, std::size_t l);

// Leading theta^2 coefficient of lambda_k*gamma_l - f_{kl} as theta -> 0+;
// positive whenever epsilon^2/(3L) > 2. Requires k, l >= 2.
double limit_gap_L(double epsilon, double big_l, std::size_t k, std::size_t l);

struct FindThetaResult {
  double theta = 0.0;
  double min_gap = 0.0;  // smallest lambda_k*gamma_l - f_{kl} over the m x n grid
};

// Finds a theta in (0,1) whose length-max(m,n) sequence is feasible and
// whose m*n pair gaps are all strictly positive. Geometric descent from
// min(0.1, 1/(a_max+1)); throws std::runtime_error if 200 halvings fail
// (which the epsilon >= 4, L <= 2 regime rules out for correct code).
FindThetaResult find_theta(std::size_t m, std::size_t n, double epsilon, double big_l);

}  // namespace seqwit
