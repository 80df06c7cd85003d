#include "seqwit/qcore.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace seqwit {

Mat2 pauli(PauliAxis axis) {
  const Complex i{0.0, 1.0};
  Mat2 m;
  switch (axis) {
    case PauliAxis::X:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case PauliAxis::Y:
      m << 0.0, -i, i, 0.0;
      break;
    case PauliAxis::Z:
      m << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return m;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out(i, j) = a(i / 2, j / 2) * b(i % 2, j % 2);
    }
  }
  return out;
}

TwoQubitState::TwoQubitState(const Mat4& matrix) : matrix_(matrix) {
  const double herm_dev = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm_dev <= kHermitianTol)) {
    throw std::invalid_argument("TwoQubitState: matrix is not Hermitian (max deviation " +
                                std::to_string(herm_dev) + ")");
  }
  const double trace_dev = std::abs(matrix_.trace() - Complex(1.0));
  if (!(trace_dev <= kTraceTol)) {
    throw std::invalid_argument("TwoQubitState: trace deviates from 1 by " +
                                std::to_string(trace_dev));
  }
  Eigen::SelfAdjointEigenSolver<Mat4> solver(matrix_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (!(min_eig >= kMinEigenvalue)) {
    throw std::invalid_argument("TwoQubitState: not positive semidefinite (min eigenvalue " +
                                std::to_string(min_eig) + ")");
  }
}

InitialStateSpec InitialStateSpec::bell() {
  return InitialStateSpec{Family::Bell, 0.5, 1.0, 0.0, 0.0};
}

InitialStateSpec InitialStateSpec::mixed_alpha(double alpha, double p1, double p2, double p3) {
  InitialStateSpec spec{Family::MixedAlpha, alpha, p1, p2, p3};
  spec.validate();
  return spec;
}

void InitialStateSpec::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("InitialStateSpec: alpha must lie in (0,1]");
  }
  if (!(p1 > 0.0) || p2 < 0.0 || p3 < 0.0) {
    throw std::invalid_argument("InitialStateSpec: need p1 > 0 and p2, p3 >= 0");
  }
  if (std::abs(p1 + p2 + p3 - 1.0) > 1e-12) {
    throw std::invalid_argument("InitialStateSpec: p1 + p2 + p3 must equal 1");
  }
}

double InitialStateSpec::transverse_sum() const {
  if (family == Family::Bell) return 2.0;
  return 4.0 * p1 * std::sqrt(alpha * (1.0 - alpha));
}

TwoQubitState initial_state(const InitialStateSpec& spec) {
  spec.validate();
  const bool bell = spec.family == InitialStateSpec::Family::Bell;
  const double alpha = bell ? 0.5 : spec.alpha;
  const double p1 = bell ? 1.0 : spec.p1;

  Eigen::Matrix<Complex, 4, 1> psi = Eigen::Matrix<Complex, 4, 1>::Zero();
  psi(1) = std::sqrt(alpha);
  psi(2) = std::sqrt(1.0 - alpha);

  Mat4 rho = p1 * (psi * psi.adjoint());
  if (!bell) {
    rho(1, 1) += spec.p2;
    rho(2, 2) += spec.p3;
  }
  return TwoQubitState(rho);
}

CorrelatorTriple correlators(const TwoQubitState& rho) {
  const auto corr = [&rho](PauliAxis axis) {
    return (kron(pauli(axis), pauli(axis)) * rho.matrix()).trace().real();
  };
  return {corr(PauliAxis::X), corr(PauliAxis::Y), corr(PauliAxis::Z)};
}

TwoQubitState random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat4 g;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      g(i, j) = Complex(normal(rng), normal(rng));
    }
  }
  Mat4 h = g * g.adjoint();
  h /= h.trace().real();
  return TwoQubitState(h);
}

}  // namespace seqwit
