#pragma once

#include <variant>

#include "weightint/matcore.hpp"

namespace weightint {

/// Complex exponent a = rate + i*frequency of the weight exp(-a*t).
/// rate is the inverse decay time (1/tau), frequency the probed angular
/// frequency. Infinite-horizon integrals need rate > 0 strictly.
struct WeightExponent {
  double rate = 0.0;
  double frequency = 0.0;

  Complex exponent() const { return {rate, frequency}; }

  /// Throws InvalidArgument unless rate is finite and >= 0 and frequency is
  /// finite.
  void validate() const;

  static WeightExponent from_tau(double tau, double frequency = 0.0);
};

namespace detail {

/// |z*t| threshold below which phi1 switches to its Taylor expansion.
inline constexpr double kPhi1SeriesSwitch = 1e-4;

/// exp(w) - 1 without cancellation for small |w|.
Complex expm1c(Complex w);

/// Truncated Taylor branch: t*(1 + w/2 + w^2/6 + w^3/24 + w^4/120), w = z*t.
Complex phi1_series(Complex z, double t);

/// Closed-form branch (exp(z*t) - 1)/z.
Complex phi1_direct(Complex z, double t);

} // namespace detail

/// The kernel (exp(z*t) - 1)/z with its removable singularity at z = 0
/// filled in: below the series switch the truncated Taylor expansion is
/// used, so phi1(0, t) = t and phi1(z, 0) = 0 exactly.
Complex phi1(Complex z, double t);

/// A pure state vector or a density matrix, validated on construction.
class QuantumState {
public:
  enum class Kind { pure, density };

  /// Normalized state vector, ||psi|| = 1 within 1e-12.
  static QuantumState pure(ComplexVector psi);

  /// Density matrix: Hermitian within 1e-10, trace 1 within 1e-10,
  /// eigenvalues >= -1e-10.
  static QuantumState density(ComplexMatrix rho);

  Kind kind() const { return std::holds_alternative<ComplexVector>(data_) ? Kind::pure : Kind::density; }
  Eigen::Index size() const;

  const ComplexVector& vector() const { return std::get<ComplexVector>(data_); }
  const ComplexMatrix& matrix() const { return std::get<ComplexMatrix>(data_); }

private:
  explicit QuantumState(ComplexVector psi) : data_(std::move(psi)) {}
  explicit QuantumState(ComplexMatrix rho) : data_(std::move(rho)) {}

  std::variant<ComplexVector, ComplexMatrix> data_;
};

/// The operator P(t) whose expectation value in the initial state equals
/// the running integral of <S>(t') exp(-a t') from 0 to t.
///
/// Element-wise in the eigenbasis of H:
///
///   p_ij(t) = s_ij * (exp(z_ij t) - 1) / z_ij,
///   z_ij    = i (lambda_i - lambda_j) / hbar - a.
///
/// Construction transforms the observable into the eigenbasis and tabulates
/// the exponents once; each evaluation afterwards is O(N^2). Instances are
/// immutable and safe to share between threads.
class IntegralOperator {
public:
  /// s is given in the original basis and must match eig's size.
  IntegralOperator(const ComplexMatrix& s, EigenDecomposition eig, WeightExponent weight);

  /// P(t) in the eigenbasis. t must be finite and >= 0; evaluate(0) is the
  /// zero matrix exactly.
  ComplexMatrix evaluate(double t) const;

  /// The t -> infinity limit, -s_ij / z_ij. Requires weight.rate > 0,
  /// otherwise NonDecayingWeight.
  ComplexMatrix evaluate_infinite() const;

  const ComplexMatrix& observable_eigenbasis() const { return s_eig_; }
  const ComplexMatrix& exponents() const { return z_; }
  const EigenDecomposition& eigensystem() const { return eig_; }
  const WeightExponent& weight() const { return weight_; }

private:
  ComplexMatrix s_eig_;
  EigenDecomposition eig_;
  WeightExponent weight_;
  ComplexMatrix z_;
};

/// Expectation value of an eigenbasis matrix in a state given in the
/// original basis: the state is transformed (psi -> V^dagger psi,
/// rho -> V^dagger rho V), then <psi|M|psi> or trace(rho*M) is returned.
Complex expectation(const ComplexMatrix& m_eigenbasis, const QuantumState& state,
                    const EigenDecomposition& eig);

/// One-call composition: integral from 0 to t of <S>(t') exp(-a t') dt'.
/// Pass t = infinity for the full horizon (needs w.rate > 0). For rate > 0,
/// frequency = 0 and Hermitian s the result is real up to rounding; callers
/// wanting the physical value take the real part.
Complex weighted_integral(const ComplexMatrix& h, const ComplexMatrix& s,
                          const QuantumState& state, WeightExponent w, double t,
                          double hbar = 1.0);

} // namespace weightint
