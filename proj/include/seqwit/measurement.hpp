// Unsharp Pauli POVMs, joint outcome probabilities, and the non-selective
// Lueders measurement channel acting on one side of a two-qubit state.
#pragma once

#include <utility>

#include "seqwit/qcore.hpp"

namespace seqwit {

// A two-outcome unsharp measurement along a Pauli axis: elements
// (I + lambda P)/2 (outcome 0) and (I - lambda P)/2 (outcome 1).
struct WeakPovm {
  PauliAxis axis = PauliAxis::Z;
  double sharpness = 1.0;  // lambda in [0,1]
};

/// One observer's sharpness setting: sigma_1 and sigma_2 are measured at
/// `weak`, sigma_3 always sharply. Stores the quiet factor
/// Lambda = sqrt(1-weak^2) together with 1-Lambda in the cancellation-free
/// form weak^2/(1+Lambda); the channel needs the latter at full relative
/// precision when `weak` is tiny.
class SideSharpness {
 public:
  explicit SideSharpness(double weak);

  double weak() const { return weak_; }
  double quiet() const { return quiet_; }
  double quiet_deficit() const { return quiet_deficit_; }

 private:
  double weak_;
  double quiet_;
  double quiet_deficit_;
};

enum class Side { Alice, Bob };

std::pair<Mat2, Mat2> povm_elements(const WeakPovm& p);

// Outcome-averaged state update after one observer measures: the three
// axis POVMs are applied with probability 1/3 each,
//   rho -> 1/6 sum_i [ (1+Lambda^(i)) rho + (1-Lambda^(i)) sigma_i rho sigma_i ]
// with Lambda^(1) = Lambda^(2) = quiet(weak) and Lambda^(3) = 0, the Paulis
// acting on the chosen tensor factor.
TwoQubitState luders_channel(const TwoQubitState& rho, Side side, const SideSharpness& s);

// Same channel via explicit POVM square roots,
//   rho -> 1/3 sum_i sum_a sqrt(E_i,a) rho sqrt(E_i,a),
// using the closed-form roots sqrt((I +- lambda P)/2) = a I +- b P. Serves
// as the independent reference for luders_channel.
TwoQubitState luders_channel_bruteforce(const TwoQubitState& rho, Side side,
                                        const SideSharpness& s);

// Tr[(E_a x F_b) rho] for outcomes a, b in {0,1}.
double joint_outcome_probability(const TwoQubitState& rho, const WeakPovm& alice, int a,
                                 const WeakPovm& bob, int b);

// Total probability p = p1+p2+p3 of the three witnessing coincidence cases:
// equal sharp sigma_3 outcomes, unequal sigma_1 outcomes, unequal sigma_2
// outcomes, each case weighted by the 1/9 chance of its setting pair.
// Satisfies 18 (p - 1/9) = <W>.
double witness_probability_sum(const TwoQubitState& rho, double lam, double gam);

}  // namespace seqwit
