#pragma once

#include <vector>

#include "weightint/intop.hpp"
#include "weightint/matcore.hpp"

namespace weightint {

/// Uniformly sampled expectation-value curve on [0, t_max], both endpoints
/// included. "steps" counts intervals, so a series holds steps+1 points.
struct TimeSeries {
  std::vector<double> times;
  std::vector<Complex> values;

  std::size_t size() const { return times.size(); }
};

/// Sample <S>(t_k) on a uniform grid by evolving the state with exact
/// eigenbasis phase factors: psi_j(t) = psi_j exp(-i lambda_j t / hbar),
/// rho_ij(t) = rho_ij exp(-i (lambda_i - lambda_j) t / hbar). No ODE-step
/// error; the only baseline error left downstream is the quadrature's.
TimeSeries evolve_expectation(const EigenDecomposition& eig, const ComplexMatrix& s,
                              const QuantumState& state, double t_max, int steps);

/// Same, diagonalizing h first.
TimeSeries evolve_expectation(const ComplexMatrix& h, const ComplexMatrix& s,
                              const QuantumState& state, double t_max, int steps,
                              double hbar = 1.0);

/// Trapezoidal rule for the weighted integral of a sampled curve:
/// sum_k (f_k + f_{k+1})/2 * dt with f_k = values[k] * exp(-a t_k).
/// The accumulation is compensated so the quadrature stays discretization-
/// limited even at 1e6 steps.
Complex trapezoid_weighted_integral(const TimeSeries& series, WeightExponent w);

} // namespace weightint
