#include "weightint/intop.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace weightint {

void WeightExponent::validate() const {
  if (!(rate >= 0.0) || !std::isfinite(rate) || !std::isfinite(frequency)) {
    throw InvalidArgument("WeightExponent: rate must be finite and >= 0, frequency finite (got "
                          "rate = " + std::to_string(rate) + ", frequency = " +
                          std::to_string(frequency) + ")");
  }
}

WeightExponent WeightExponent::from_tau(double tau, double frequency) {
  if (tau <= 0.0) {
    throw InvalidArgument("WeightExponent::from_tau: tau must be positive, got " +
                          std::to_string(tau));
  }
  return {1.0 / tau, frequency};
}

namespace detail {

Complex expm1c(Complex w) {
  // exp(x+iy) - 1 = expm1(x)*cos(y) - 2*sin^2(y/2) + i*exp(x)*sin(y).
  // Each term is evaluated without cancellation, so the result keeps full
  // relative accuracy down to |w| -> 0.
  const double ex = std::expm1(w.real());
  const double cy = std::cos(w.imag());
  const double sy = std::sin(w.imag());
  const double sh = std::sin(0.5 * w.imag());
  return {ex * cy - 2.0 * sh * sh, (ex + 1.0) * sy};
}

Complex phi1_series(Complex z, double t) {
  const Complex w = z * t;
  return t * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w * (1.0 / 120.0)))));
}

Complex phi1_direct(Complex z, double t) {
  return expm1c(z * t) / z;
}

} // namespace detail

Complex phi1(Complex z, double t) {
  if (std::abs(z * t) < detail::kPhi1SeriesSwitch) {
    return detail::phi1_series(z, t);
  }
  return detail::phi1_direct(z, t);
}

namespace {

constexpr double kStateNormTol = 1e-12;
constexpr double kDensityTol = 1e-10;

} // namespace

QuantumState QuantumState::pure(ComplexVector psi) {
  if (psi.size() == 0) {
    throw InvalidState("pure state: vector must have size >= 1");
  }
  const double norm = psi.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kStateNormTol) {
    throw InvalidState("pure state: ||psi|| = " + std::to_string(norm) +
                       " is not 1 within 1e-12");
  }
  return QuantumState(std::move(psi));
}

QuantumState QuantumState::density(ComplexMatrix rho) {
  if (rho.rows() == 0 || rho.rows() != rho.cols()) {
    throw InvalidState("density matrix: must be square with size >= 1");
  }
  const double dev = hermiticity_deviation(rho);
  if (dev > kDensityTol) {
    throw InvalidState("density matrix: Hermiticity deviation " + std::to_string(dev) +
                       " exceeds 1e-10");
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kDensityTol) {
    throw InvalidState("density matrix: trace must be 1 within 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("density matrix: eigenvalue check failed to converge");
  }
  if (solver.eigenvalues().minCoeff() < -kDensityTol) {
    throw InvalidState("density matrix: smallest eigenvalue " +
                       std::to_string(solver.eigenvalues().minCoeff()) + " is below -1e-10");
  }
  return QuantumState(std::move(rho));
}

Eigen::Index QuantumState::size() const {
  if (kind() == Kind::pure) {
    return vector().size();
  }
  return matrix().rows();
}

IntegralOperator::IntegralOperator(const ComplexMatrix& s, EigenDecomposition eig,
                                   WeightExponent weight)
    : eig_(std::move(eig)), weight_(weight) {
  weight_.validate();
  if (s.rows() != s.cols() || s.rows() != eig_.size()) {
    throw DimensionMismatch("IntegralOperator: observable is " + std::to_string(s.rows()) + "x" +
                            std::to_string(s.cols()) + " but the decomposition has size " +
                            std::to_string(eig_.size()));
  }
  s_eig_ = eig_.vectors.adjoint() * s * eig_.vectors;

  const Eigen::Index n = eig_.size();
  const Complex a = weight_.exponent();
  z_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      z_(i, j) = Complex(0.0, (eig_.eigenvalues[i] - eig_.eigenvalues[j]) / eig_.hbar) - a;
    }
  }
}

ComplexMatrix IntegralOperator::evaluate(double t) const {
  if (!std::isfinite(t) || t < 0.0) {
    throw InvalidArgument("IntegralOperator::evaluate: t must be finite and >= 0");
  }
  const Eigen::Index n = eig_.size();
  ComplexMatrix p(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      p(i, j) = s_eig_(i, j) * phi1(z_(i, j), t);
    }
  }
  return p;
}

ComplexMatrix IntegralOperator::evaluate_infinite() const {
  if (weight_.rate <= 0.0) {
    throw NonDecayingWeight(
        "evaluate_infinite: infinite horizon requires rate > 0, got rate = " +
        std::to_string(weight_.rate));
  }
  return -s_eig_.cwiseQuotient(z_);
}

Complex expectation(const ComplexMatrix& m_eigenbasis, const QuantumState& state,
                    const EigenDecomposition& eig) {
  const Eigen::Index n = eig.size();
  if (m_eigenbasis.rows() != n || m_eigenbasis.cols() != n || state.size() != n) {
    throw DimensionMismatch("expectation: matrix is " + std::to_string(m_eigenbasis.rows()) +
                            "x" + std::to_string(m_eigenbasis.cols()) + ", state has size " +
                            std::to_string(state.size()) + ", decomposition has size " +
                            std::to_string(n));
  }
  if (state.kind() == QuantumState::Kind::pure) {
    const ComplexVector psi = eig.vectors.adjoint() * state.vector();
    return psi.dot(m_eigenbasis * psi);
  }
  const ComplexMatrix rho = eig.vectors.adjoint() * state.matrix() * eig.vectors;
  // trace(rho*M) = sum_ij rho_ji M_ij
  return (rho.transpose().array() * m_eigenbasis.array()).sum();
}

Complex weighted_integral(const ComplexMatrix& h, const ComplexMatrix& s,
                          const QuantumState& state, WeightExponent w, double t, double hbar) {
  if (std::isnan(t) || t < 0.0) {
    throw InvalidArgument("weighted_integral: t must be >= 0 (or infinity)");
  }
  const EigenDecomposition eig = eigendecompose(h, hbar);
  const IntegralOperator op(s, eig, w);
  const ComplexMatrix p = std::isinf(t) ? op.evaluate_infinite() : op.evaluate(t);
  return expectation(p, state, eig);
}

} // namespace weightint
