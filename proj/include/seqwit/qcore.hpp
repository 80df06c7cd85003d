// Dense two-qubit operator algebra: Pauli matrices, Kronecker products,
// validated density matrices, and the initial-state families.
#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

namespace seqwit {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix<Complex, 2, 2, Eigen::RowMajor>;
using Mat4 = Eigen::Matrix<Complex, 4, 4, Eigen::RowMajor>;

// Density-matrix validation tolerances.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kMinEigenvalue = -1e-10;

enum class PauliAxis { X, Y, Z };

// sigma_1, sigma_2, sigma_3 in the standard sign convention
// (sigma_2 carries -i at entry (0,1)).
Mat2 pauli(PauliAxis axis);

// Kronecker product; basis order |00>, |01>, |10>, |11>.
Mat4 kron(const Mat2& a, const Mat2& b);

struct CorrelatorTriple {
  double t11 = 0.0;  // Tr[sigma_1 x sigma_1 rho]
  double t22 = 0.0;
  double t33 = 0.0;
};

/// A two-qubit density operator. Construction validates Hermiticity,
/// unit trace, and positive semidefiniteness (within the tolerances
/// above) and throws std::invalid_argument on violation.
class TwoQubitState {
 public:
  explicit TwoQubitState(const Mat4& matrix);

  const Mat4& matrix() const { return matrix_; }

 private:
  Mat4 matrix_;
};

// Initial shared states: the Bell state (|01>+|10>)/sqrt(2), or the family
//   p1 |Psi_alpha><Psi_alpha| + p2 |01><01| + p3 |10><10|
// with |Psi_alpha> = sqrt(alpha)|01> + sqrt(1-alpha)|10>. Bell is the
// special case alpha = 1/2, p1 = 1.
struct InitialStateSpec {
  enum class Family { Bell, MixedAlpha };

  Family family = Family::Bell;
  double alpha = 0.5;
  double p1 = 1.0;
  double p2 = 0.0;
  double p3 = 0.0;

  static InitialStateSpec bell();
  static InitialStateSpec mixed_alpha(double alpha, double p1, double p2, double p3);

  // Throws std::invalid_argument unless alpha in (0,1], p1 > 0,
  // p2, p3 >= 0 and p1+p2+p3 = 1 (to 1e-12).
  void validate() const;

  // T11 + T22 of the described state: 2 for Bell, 4*p1*sqrt(alpha(1-alpha))
  // for the mixed family. This is the scale constant in the witnessing
  // thresholds.
  double transverse_sum() const;
};

TwoQubitState initial_state(const InitialStateSpec& spec);

CorrelatorTriple correlators(const TwoQubitState& rho);

// Ginibre-sampled random density matrix; used by self-checks and tests.
TwoQubitState random_state(std::mt19937_64& rng);

}  // namespace seqwit
