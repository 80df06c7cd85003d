#include "seqwit/witness.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace seqwit {

namespace {

void check_pair_indices(const SharpnessProfile& alice, const SharpnessProfile& bob,
                        std::size_t k, std::size_t l) {
  if (k == 0 || k > alice.size() || l == 0 || l > bob.size()) {
    throw std::out_of_range("witness: pair indices are 1-based and bounded by the profiles");
  }
  if (!alice.feasible_to(k) || !bob.feasible_to(l)) {
    throw std::domain_error("witness: a profile saturates before the requested pair");
  }
}

Eigen::Matrix<Complex, 2, 1> haar_qubit(std::mt19937_64& rng,
                                        std::normal_distribution<double>& normal) {
  Eigen::Matrix<Complex, 2, 1> psi;
  do {
    psi(0) = Complex(normal(rng), normal(rng));
    psi(1) = Complex(normal(rng), normal(rng));
  } while (psi.norm() == 0.0);
  psi /= psi.norm();
  return psi;
}

}  // namespace

void WitnessParams::validate() const {
  if (!(lam >= 0.0 && lam <= 1.0) || !(gam >= 0.0 && gam <= 1.0)) {
    throw std::invalid_argument("WitnessParams: lam and gam must lie in [0,1]");
  }
}

WitnessReport make_witness_report(std::size_t k, std::size_t l, double expectation,
                                  double gap) {
  return {k, l, expectation, gap, expectation < 0.0};
}

Mat4 witness_matrix(const WitnessParams& p) {
  p.validate();
  const Mat4 transverse = kron(pauli(PauliAxis::X), pauli(PauliAxis::X)) +
                          kron(pauli(PauliAxis::Y), pauli(PauliAxis::Y));
  return Mat4(Mat4::Identity() + kron(pauli(PauliAxis::Z), pauli(PauliAxis::Z)) -
              (p.lam * p.gam) * transverse);
}

double witness_expectation(const TwoQubitState& rho, const WitnessParams& p) {
  return (witness_matrix(p) * rho.matrix()).trace().real();
}

double witness_expectation_closed_form(const CorrelatorTriple& initial,
                                       const SharpnessProfile& alice,
                                       const SharpnessProfile& bob,
                                       std::size_t k, std::size_t l) {
  check_pair_indices(alice, bob, k, l);
  const Attenuation pair =
      combine(attenuation_before(alice, k), attenuation_before(bob, l));
  const double sharpness_product = alice.value(k - 1) * bob.value(l - 1);
  // 1 + T33 * prod = (1 + T33) - T33 * deficit; exact when T33 = -1
  return (1.0 + initial.t33) - initial.t33 * pair.longitudinal_deficit -
         sharpness_product * (initial.t11 + initial.t22) * pair.transverse;
}

double difference_gap(const CorrelatorTriple& initial,
                      const SharpnessProfile& alice,
                      const SharpnessProfile& bob,
                      std::size_t k, std::size_t l) {
  check_pair_indices(alice, bob, k, l);
  const double scale = -(initial.t11 + initial.t22) / initial.t33;
  if (!(std::isfinite(scale) && scale > 0.0)) {
    throw std::domain_error(
        "difference_gap: initial state outside the supported families "
        "(need T33 < 0 and T11+T22 > 0)");
  }
  const Attenuation pair =
      combine(attenuation_before(alice, k), attenuation_before(bob, l));
  const double threshold = pair.longitudinal_deficit / (scale * pair.transverse);
  return alice.value(k - 1) * bob.value(l - 1) - threshold;
}

double sample_separable_expectations(const WitnessParams& p, std::size_t n_samples,
                                     std::uint64_t seed) {
  p.validate();
  if (n_samples == 0) {
    throw std::invalid_argument("sample_separable_expectations: n_samples must be >= 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double min_expectation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_samples; ++i) {
    const auto a = haar_qubit(rng, normal);
    const auto b = haar_qubit(rng, normal);
    const Mat2 rho_a = a * a.adjoint();
    const Mat2 rho_b = b * b.adjoint();
    const TwoQubitState product(kron(rho_a, rho_b));
    min_expectation = std::min(min_expectation, witness_expectation(product, p));
  }
  return min_expectation;
}

}  // namespace seqwit
