#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "seqwit/measurement.hpp"
#include "seqwit/witness.hpp"

using namespace seqwit;

namespace {

SharpnessProfile random_profile(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  std::vector<double> values(n);
  for (double& v : values) v = unit(rng);
  return SharpnessProfile::from_feasible_prefix(std::move(values), n);
}

// evolution through the POVM-square-root channel form; the oracle side of
// the closed-form comparison
TwoQubitState evolve_bruteforce(const TwoQubitState& rho0, const SharpnessProfile& alice,
                                const SharpnessProfile& bob, std::size_t k, std::size_t l) {
  TwoQubitState rho = rho0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    rho = luders_channel_bruteforce(rho, Side::Alice, SideSharpness(alice.value(i)));
  }
  for (std::size_t j = 0; j + 1 < l; ++j) {
    rho = luders_channel_bruteforce(rho, Side::Bob, SideSharpness(bob.value(j)));
  }
  return rho;
}

}  // namespace

TEST_CASE("witness matrix structure") {
  const Mat4 w0 = witness_matrix({0.0, 0.0});
  Mat4 expected = Mat4::Zero();
  expected(0, 0) = 2.0;
  expected(3, 3) = 2.0;
  CHECK((w0 - expected).cwiseAbs().maxCoeff() == 0.0);

  const Mat4 w = witness_matrix({0.7, 0.4});
  CHECK(w(0, 0) == Complex(2.0));
  CHECK(w(1, 1) == Complex(0.0));
  CHECK(w(2, 2) == Complex(0.0));
  CHECK(w(3, 3) == Complex(2.0));
  CHECK(w(1, 2) == Complex(-2.0 * 0.7 * 0.4));
  CHECK(w(2, 1) == Complex(-2.0 * 0.7 * 0.4));
  CHECK(w(0, 3) == Complex(0.0));
  CHECK((w - w.adjoint()).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(witness_matrix({1.2, 0.5}), std::invalid_argument);
}

TEST_CASE("witness expectation on reference states") {
  const TwoQubitState bell = initial_state(InitialStateSpec::bell());
  CHECK(witness_expectation(bell, {1.0, 1.0}) == doctest::Approx(-2.0).epsilon(1e-12));

  // Bell gives -2 lam gam for any sharpness pair
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double lam = unit(rng);
    const double gam = unit(rng);
    CHECK(witness_expectation(bell, {lam, gam}) ==
          doctest::Approx(-2.0 * lam * gam).epsilon(1e-12));
  }

  const TwoQubitState mixed(Mat4(Mat4::Identity() / 4.0));
  CHECK(witness_expectation(mixed, {0.3, 0.8}) == doctest::Approx(1.0).epsilon(1e-14));

  // |01><01| and |10><10| sit in the witness kernel for every parameter pair
  Mat4 ket01 = Mat4::Zero();
  ket01(1, 1) = 1.0;
  Mat4 ket10 = Mat4::Zero();
  ket10(2, 2) = 1.0;
  for (int trial = 0; trial < 20; ++trial) {
    const WitnessParams params{unit(rng), unit(rng)};
    CHECK(witness_expectation(TwoQubitState(ket01), params) == 0.0);
    CHECK(witness_expectation(TwoQubitState(ket10), params) == 0.0);
  }
}

TEST_CASE("closed form with empty products reproduces the first pair") {
  std::mt19937_64 rng(71);
  const SharpnessProfile profile = random_profile(rng, 3);
  const CorrelatorTriple bell{1.0, 1.0, -1.0};
  const double expected = -2.0 * profile.value(0) * profile.value(0);
  CHECK(witness_expectation_closed_form(bell, profile, profile, 1, 1) ==
        doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("closed-form propagation equals full channel evolution") {
  // the central equivalence: correlator propagation vs matrix chains
  std::mt19937_64 rng(73);
  const TwoQubitState bell = initial_state(InitialStateSpec::bell());
  const TwoQubitState mixed = initial_state(InitialStateSpec::mixed_alpha(0.3, 0.8, 0.1, 0.1));
  double max_dev = 0.0;
  for (int trial = 0; trial < 12; ++trial) {
    const SharpnessProfile alice = random_profile(rng, 6);
    const SharpnessProfile bob = random_profile(rng, 6);
    for (const TwoQubitState* rho0 : {&bell, &mixed}) {
      const CorrelatorTriple c0 = correlators(*rho0);
      for (std::size_t k = 1; k <= 6; ++k) {
        for (std::size_t l = 1; l <= 6; ++l) {
          const TwoQubitState rho = evolve_bruteforce(*rho0, alice, bob, k, l);
          const double direct =
              witness_expectation(rho, {alice.value(k - 1), bob.value(l - 1)});
          const double closed = witness_expectation_closed_form(c0, alice, bob, k, l);
          max_dev = std::max(max_dev, std::abs(direct - closed));
        }
      }
    }
  }
  CHECK(max_dev <= 1e-12);

  // also for a generic (non-family) random initial state
  const TwoQubitState generic = random_state(rng);
  const CorrelatorTriple cg = correlators(generic);
  const SharpnessProfile profile = random_profile(rng, 4);
  for (std::size_t k = 1; k <= 4; ++k) {
    for (std::size_t l = 1; l <= 4; ++l) {
      const TwoQubitState rho = evolve_bruteforce(generic, profile, profile, k, l);
      const double direct = witness_expectation(rho, {profile.value(k - 1), profile.value(l - 1)});
      const double closed = witness_expectation_closed_form(cg, profile, profile, k, l);
      CHECK(std::abs(direct - closed) < 1e-12);
    }
  }
}

TEST_CASE("difference gap against the printed reference entries") {
  const SharpnessProfile pandit = pandit_sequence(0.005, 4.0, 5);
  const CorrelatorTriple bell{1.0, 1.0, -1.0};
  CHECK(100.0 * difference_gap(bell, pandit, pandit, 5, 5) ==
        doctest::Approx(77.5252).epsilon(1e-5));
  CHECK(100.0 * difference_gap(bell, pandit, pandit, 1, 5) ==
        doctest::Approx(-1.4184).epsilon(1e-4));
  // d_11 = lambda_1 * gamma_1
  CHECK(difference_gap(bell, pandit, pandit, 1, 1) ==
        doctest::Approx(0.005 * 0.005).epsilon(1e-14));
}

TEST_CASE("the alpha = 1/2, p1 = 1 mixed state reduces to the Bell gap exactly") {
  std::mt19937_64 rng(79);
  const SharpnessProfile profile = random_profile(rng, 4);
  const CorrelatorTriple bell = correlators(initial_state(InitialStateSpec::bell()));
  const CorrelatorTriple degenerate =
      correlators(initial_state(InitialStateSpec::mixed_alpha(0.5, 1.0, 0.0, 0.0)));
  for (std::size_t k = 1; k <= 4; ++k) {
    for (std::size_t l = 1; l <= 4; ++l) {
      CHECK(difference_gap(bell, profile, profile, k, l) ==
            difference_gap(degenerate, profile, profile, k, l));
    }
  }
}

TEST_CASE("gap sign agrees with the witness verdict") {
  std::mt19937_64 rng(83);
  const TwoQubitState bell = initial_state(InitialStateSpec::bell());
  const TwoQubitState mixed = initial_state(InitialStateSpec::mixed_alpha(0.6, 0.7, 0.2, 0.1));
  for (int trial = 0; trial < 10; ++trial) {
    const SharpnessProfile profile = random_profile(rng, 5);
    for (const TwoQubitState* rho0 : {&bell, &mixed}) {
      const CorrelatorTriple c0 = correlators(*rho0);
      for (std::size_t k = 1; k <= 5; ++k) {
        for (std::size_t l = 1; l <= 5; ++l) {
          const double gap = difference_gap(c0, profile, profile, k, l);
          const double expectation = witness_expectation_closed_form(c0, profile, profile, k, l);
          CHECK((gap > 0.0) == (expectation < 0.0));
        }
      }
    }
  }
}

TEST_CASE("difference gap rejects unsupported initial families") {
  std::mt19937_64 rng(89);
  const SharpnessProfile profile = random_profile(rng, 2);
  const CorrelatorTriple zero_t33{0.5, 0.5, 0.0};
  CHECK_THROWS_AS(difference_gap(zero_t33, profile, profile, 1, 1), std::domain_error);
  const CorrelatorTriple wrong_sign{0.5, 0.5, 0.9};
  CHECK_THROWS_AS(difference_gap(wrong_sign, profile, profile, 1, 1), std::domain_error);
}

TEST_CASE("pair index validation") {
  std::mt19937_64 rng(97);
  const SharpnessProfile profile = random_profile(rng, 3);
  const CorrelatorTriple bell{1.0, 1.0, -1.0};
  CHECK_THROWS_AS(witness_expectation_closed_form(bell, profile, profile, 0, 1),
                  std::out_of_range);
  CHECK_THROWS_AS(witness_expectation_closed_form(bell, profile, profile, 1, 4),
                  std::out_of_range);
  const SharpnessProfile saturated = pandit_sequence(0.005, 4.0, 6);  // entry 6 saturated
  CHECK_THROWS_AS(witness_expectation_closed_form(bell, saturated, saturated, 6, 1),
                  std::domain_error);
}

TEST_CASE("mixed-family linearity through the channels") {
  // The initial pair sees Tr[W rho] = p1 Tr[W |Psi_alpha><Psi_alpha|] because
  // |01><01| and |10><10| carry zero witness weight. Down the chains those
  // components pick up the pair deficit, so the exact relation becomes
  //   <W>_mixed = p1 <W>_pure + (1-p1) * pair_deficit.
  const double p1 = 0.8;
  const double alpha = 0.3;
  const TwoQubitState mixed = initial_state(InitialStateSpec::mixed_alpha(alpha, p1, 0.1, 0.1));
  const TwoQubitState pure = initial_state(InitialStateSpec::mixed_alpha(alpha, 1.0, 0.0, 0.0));
  const SharpnessProfile profile = pandit_sequence(0.05, 4.0, 3);
  REQUIRE(profile.feasible_to(3));

  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t l = 1; l <= 3; ++l) {
      const WitnessParams params{profile.value(k - 1), profile.value(l - 1)};
      const double w_mixed =
          witness_expectation(evolve_bruteforce(mixed, profile, profile, k, l), params);
      const double w_pure =
          witness_expectation(evolve_bruteforce(pure, profile, profile, k, l), params);
      const Attenuation pair =
          combine(attenuation_before(profile, k), attenuation_before(profile, l));
      const double corrected = p1 * w_pure + (1.0 - p1) * pair.longitudinal_deficit;
      CHECK(std::abs(w_mixed - corrected) < 1e-12);
      if (k == 1 && l == 1) {
        CHECK(std::abs(w_mixed - p1 * w_pure) < 1e-12);  // deficit vanishes up front
      }
    }
  }
}

TEST_CASE("separability floor on sampled product states") {
  // (0,0) leaves the PSD operator I + sigma_3 x sigma_3
  CHECK(sample_separable_expectations({0.0, 0.0}, 2000, 1) >= 0.0);

  const double floor = sample_separable_expectations({1.0, 1.0}, 10000, 2);
  CHECK(floor >= -1e-12);
  CHECK(floor < 0.05);  // the infimum 0 is approached, e.g. near |0>|1>

  for (double lam : {0.25, 0.5, 0.75, 1.0}) {
    for (double gam : {0.25, 0.75}) {
      CHECK(sample_separable_expectations({lam, gam}, 2000, 3) >= -1e-12);
    }
  }
}

TEST_CASE("hand-checked product state |+>|+> at full sharpness") {
  Eigen::Matrix<Complex, 2, 1> plus;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const Mat2 rho1 = plus * plus.adjoint();
  const TwoQubitState product(kron(rho1, rho1));
  CHECK(witness_expectation(product, {1.0, 1.0}) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("witness report verdict flag") {
  const WitnessReport hit = make_witness_report(2, 3, -0.25, 0.1);
  CHECK(hit.witnessed);
  CHECK(hit.k == 2);
  CHECK(hit.l == 3);
  const WitnessReport miss = make_witness_report(1, 1, 0.0, 0.0);
  CHECK_FALSE(miss.witnessed);  // ties count as not witnessed
}
