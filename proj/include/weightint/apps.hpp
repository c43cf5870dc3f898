#pragma once

#include <string>
#include <utility>
#include <vector>

#include "weightint/intop.hpp"

namespace weightint {

/// One integral per Hamiltonian of a parameter family, in input order.
/// errors[k] is empty when point k succeeded; a failed point carries the
/// error message and a NaN value, and never aborts the remaining points.
struct SweepResult {
  std::vector<double> labels;
  std::vector<Complex> values;
  std::vector<std::string> errors;

  bool all_ok() const;
};

/// Damped Fourier amplitudes of <S>(t) at the probed angular frequencies.
struct FourierProbe {
  double tau = 0.0;
  std::vector<double> omegas;
  std::vector<Complex> values;
};

/// Exponentially weighted time average
///   Re[ integral of <S>(t') exp(-t'/tau) dt' ] / integral of exp(-t'/tau) dt',
/// both taken from 0 to t. Pass t = infinity for the full horizon, where the
/// normalization is tau; at finite t it is tau*(1 - exp(-t/tau)).
double weighted_average(const ComplexMatrix& h, const ComplexMatrix& s,
                        const QuantumState& state, double tau, double t, double hbar = 1.0);

/// Damped Fourier amplitude of <S>(t) at each omega: the infinite-horizon
/// weighted integral with exponent 1/tau + i*omega. Frequencies are
/// independent and may be evaluated by worker threads (capped by the
/// WEIGHTINT_THREADS environment variable); the output order always matches
/// the input order.
FourierProbe fourier_probe(const ComplexMatrix& h, const ComplexMatrix& s,
                           const QuantumState& state, double tau,
                           const std::vector<double>& omegas, double hbar = 1.0);

/// Infinite-horizon weighted integral for each (label, H) pair, sharing the
/// observable, state and weight. Point failures are captured per label.
SweepResult sweep(const std::vector<std::pair<double, ComplexMatrix>>& hamiltonians,
                  const ComplexMatrix& s, const QuantumState& state, WeightExponent w,
                  double hbar = 1.0);

} // namespace weightint
