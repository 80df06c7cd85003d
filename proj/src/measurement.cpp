#include "seqwit/measurement.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace seqwit {

namespace {

Mat4 lift(const Mat2& op, Side side) {
  return side == Side::Alice ? kron(op, Mat2::Identity()) : kron(Mat2::Identity(), op);
}

// sqrt((I +- lambda P)/2) = a I +- b P with b in the cancellation-free form
// lambda / (2(x+y)) rather than (x-y)/2.
struct RootCoefficients {
  double a;
  double b;
};

RootCoefficients povm_root(double lambda) {
  const double x = std::sqrt((1.0 + lambda) / 2.0);
  const double y = std::sqrt((1.0 - lambda) / 2.0);
  return {(x + y) / 2.0, lambda / (2.0 * (x + y))};
}

}  // namespace

SideSharpness::SideSharpness(double weak) : weak_(weak) {
  if (!(weak >= 0.0 && weak <= 1.0)) {
    throw std::invalid_argument("SideSharpness: weak sharpness must lie in [0,1]");
  }
  quiet_ = std::sqrt((1.0 - weak) * (1.0 + weak));
  quiet_deficit_ = weak * weak / (1.0 + quiet_);
}

std::pair<Mat2, Mat2> povm_elements(const WeakPovm& p) {
  if (!(p.sharpness >= 0.0 && p.sharpness <= 1.0)) {
    throw std::invalid_argument("WeakPovm: sharpness must lie in [0,1]");
  }
  const Mat2 scaled = p.sharpness * pauli(p.axis);
  const Mat2 e0 = (Mat2::Identity() + scaled) / 2.0;
  const Mat2 e1 = (Mat2::Identity() - scaled) / 2.0;
  return {e0, e1};
}

TwoQubitState luders_channel(const TwoQubitState& rho, Side side, const SideSharpness& s) {
  const Mat4& r = rho.matrix();
  Mat4 out = Mat4::Zero();
  for (PauliAxis axis : {PauliAxis::X, PauliAxis::Y}) {
    const Mat4 p = lift(pauli(axis), side);
    out += (1.0 + s.quiet()) * r + s.quiet_deficit() * (p * r * p);
  }
  const Mat4 p3 = lift(pauli(PauliAxis::Z), side);
  out += r + p3 * r * p3;  // sigma_3 is always sharp: Lambda^(3) = 0
  return TwoQubitState(Mat4(out / 6.0));
}

TwoQubitState luders_channel_bruteforce(const TwoQubitState& rho, Side side,
                                        const SideSharpness& s) {
  const Mat4& r = rho.matrix();
  const std::array<PauliAxis, 3> axes{PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
  const std::array<double, 3> sharpness{s.weak(), s.weak(), 1.0};

  Mat4 out = Mat4::Zero();
  for (int i = 0; i < 3; ++i) {
    const RootCoefficients rc = povm_root(sharpness[i]);
    const Mat2 p = pauli(axes[i]);
    const Mat4 root0 = lift(Mat2(rc.a * Mat2::Identity() + rc.b * p), side);
    const Mat4 root1 = lift(Mat2(rc.a * Mat2::Identity() - rc.b * p), side);
    out += root0 * r * root0 + root1 * r * root1;  // roots are Hermitian
  }
  return TwoQubitState(Mat4(out / 3.0));
}

double joint_outcome_probability(const TwoQubitState& rho, const WeakPovm& alice, int a,
                                 const WeakPovm& bob, int b) {
  if ((a != 0 && a != 1) || (b != 0 && b != 1)) {
    throw std::invalid_argument("joint_outcome_probability: outcomes must be 0 or 1");
  }
  const auto [ea0, ea1] = povm_elements(alice);
  const auto [fb0, fb1] = povm_elements(bob);
  const Mat4 effect = kron(a == 0 ? ea0 : ea1, b == 0 ? fb0 : fb1);
  return (effect * rho.matrix()).trace().real();
}

double witness_probability_sum(const TwoQubitState& rho, double lam, double gam) {
  if (!(lam >= 0.0 && lam <= 1.0) || !(gam >= 0.0 && gam <= 1.0)) {
    throw std::invalid_argument("witness_probability_sum: sharpness must lie in [0,1]");
  }
  const WeakPovm az{PauliAxis::Z, 1.0};
  const WeakPovm bz{PauliAxis::Z, 1.0};
  const WeakPovm ax{PauliAxis::X, lam};
  const WeakPovm bx{PauliAxis::X, gam};
  const WeakPovm ay{PauliAxis::Y, lam};
  const WeakPovm by{PauliAxis::Y, gam};

  const double p1 = (joint_outcome_probability(rho, az, 0, bz, 0) +
                     joint_outcome_probability(rho, az, 1, bz, 1)) / 9.0;
  const double p2 = (joint_outcome_probability(rho, ax, 0, bx, 1) +
                     joint_outcome_probability(rho, ax, 1, bx, 0)) / 9.0;
  const double p3 = (joint_outcome_probability(rho, ay, 0, by, 1) +
                     joint_outcome_probability(rho, ay, 1, by, 0)) / 9.0;
  return p1 + p2 + p3;
}

}  // namespace seqwit
