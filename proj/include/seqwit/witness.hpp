// The entanglement witness W = I + sigma_3 x sigma_3
//                              - lam*gam (sigma_1 x sigma_1 + sigma_2 x sigma_2),
// its expectation on explicit states and via closed-form correlator
// propagation, plus the statistical separability check.
#pragma once

#include <cstdint>
#include <cstddef>

#include "seqwit/qcore.hpp"
#include "seqwit/sequences.hpp"

namespace seqwit {

struct WitnessParams {
  double lam = 0.0;  // Alice sharpness lambda_k
  double gam = 0.0;  // Bob sharpness gamma_l

  void validate() const;  // both in [0,1]
};

struct WitnessReport {
  std::size_t k = 1;  // 1-based pair indices
  std::size_t l = 1;
  double expectation = 0.0;  // <W_{k,l}>
  double gap = 0.0;          // d_{kl}
  bool witnessed = false;    // expectation < 0
};

WitnessReport make_witness_report(std::size_t k, std::size_t l, double expectation,
                                  double gap);

// Diagonal is exactly (2, 0, 0, 2); the sharpness product only enters the
// antidiagonal block, so Tr[W rho] never cancels a large diagonal term.
Mat4 witness_matrix(const WitnessParams& p);

double witness_expectation(const TwoQubitState& rho, const WitnessParams& p);

// <W_{k,l}> from the initial correlators alone:
//   (1+T33) - T33 * pair_deficit - lambda_k gamma_l (T11+T22) * pair_transverse
// where the pair attenuation covers Alice entries 1..k-1 and Bob entries
// 1..l-1. k, l are 1-based; both profiles must be feasible through k and l.
double witness_expectation_closed_form(const CorrelatorTriple& initial,
                                       const SharpnessProfile& alice,
                                       const SharpnessProfile& bob,
                                       std::size_t k, std::size_t l);

// d_{kl} = lambda_k gamma_l - pair_deficit / (C * pair_transverse) with
// C = -(T11+T22)/T33. Requires C > 0; for the supported families
// (T33 = -1) the sign of d_{kl} is opposite to the sign of <W_{k,l}>.
double difference_gap(const CorrelatorTriple& initial,
                      const SharpnessProfile& alice,
                      const SharpnessProfile& bob,
                      std::size_t k, std::size_t l);

// Minimum <W> over n_samples Haar-random pure product states |a>|b>;
// a statistical check that the witness is nonnegative on separable states.
double sample_separable_expectations(const WitnessParams& p, std::size_t n_samples,
                                     std::uint64_t seed);

}  // namespace seqwit
