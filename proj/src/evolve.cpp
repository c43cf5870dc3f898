#include "weightint/evolve.hpp"

#include <cmath>
#include <string>

namespace weightint {

namespace {

void fill_phases(ComplexVector& u, const RealVector& lambda, double t, double hbar) {
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    u[i] = std::polar(1.0, -lambda[i] * t / hbar);
  }
}

} // namespace

TimeSeries evolve_expectation(const EigenDecomposition& eig, const ComplexMatrix& s,
                              const QuantumState& state, double t_max, int steps) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw InvalidArgument("evolve_expectation: t_max must be positive and finite");
  }
  if (steps < 1) {
    throw InvalidArgument("evolve_expectation: steps must be >= 1");
  }
  const Eigen::Index n = eig.size();
  if (s.rows() != s.cols() || s.rows() != n || state.size() != n) {
    throw DimensionMismatch("evolve_expectation: observable is " + std::to_string(s.rows()) +
                            "x" + std::to_string(s.cols()) + ", state has size " +
                            std::to_string(state.size()) + ", decomposition has size " +
                            std::to_string(n));
  }

  const ComplexMatrix s_eig = to_eigenbasis(s, eig);

  TimeSeries series;
  series.times.resize(static_cast<std::size_t>(steps) + 1);
  series.values.resize(static_cast<std::size_t>(steps) + 1);

  ComplexVector u(n);
  ComplexVector work(n);

  if (state.kind() == QuantumState::Kind::pure) {
    const ComplexVector psi = eig.vectors.adjoint() * state.vector();
    ComplexVector evolved(n);
    for (int k = 0; k <= steps; ++k) {
      const double t = t_max * (static_cast<double>(k) / steps);
      fill_phases(u, eig.eigenvalues, t, eig.hbar);
      evolved = psi.cwiseProduct(u);
      work.noalias() = s_eig * evolved;
      series.times[static_cast<std::size_t>(k)] = t;
      series.values[static_cast<std::size_t>(k)] = evolved.dot(work);
    }
  } else {
    const ComplexMatrix rho = eig.vectors.adjoint() * state.matrix() * eig.vectors;
    // trace(rho(t)*S) = sum_ij rho_ij u_i conj(u_j) s_ji, folded into one
    // matrix-vector product per grid point via K = rho (.*) S^T.
    const ComplexMatrix kernel = rho.cwiseProduct(s_eig.transpose());
    for (int k = 0; k <= steps; ++k) {
      const double t = t_max * (static_cast<double>(k) / steps);
      fill_phases(u, eig.eigenvalues, t, eig.hbar);
      work.noalias() = kernel * u.conjugate();
      series.times[static_cast<std::size_t>(k)] = t;
      series.values[static_cast<std::size_t>(k)] = (u.array() * work.array()).sum();
    }
  }
  return series;
}

TimeSeries evolve_expectation(const ComplexMatrix& h, const ComplexMatrix& s,
                              const QuantumState& state, double t_max, int steps, double hbar) {
  return evolve_expectation(eigendecompose(h, hbar), s, state, t_max, steps);
}

Complex trapezoid_weighted_integral(const TimeSeries& series, WeightExponent w) {
  w.validate();
  const std::size_t m = series.size();
  if (m < 2) {
    throw DegenerateGrid("trapezoid_weighted_integral: need at least 2 grid points, got " +
                         std::to_string(m));
  }
  if (series.values.size() != m) {
    throw DimensionMismatch("trapezoid_weighted_integral: times and values lengths differ");
  }
  const double span = series.times.back() - series.times.front();
  const double dt = span / static_cast<double>(m - 1);
  const double scale = std::max(std::abs(series.times.front()), std::abs(series.times.back()));
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double step = series.times[k + 1] - series.times[k];
    if (!(step > 0.0)) {
      throw InvalidArgument("trapezoid_weighted_integral: times must be strictly increasing");
    }
    if (std::abs(step - dt) > 1e-12 * scale) {
      throw InvalidArgument("trapezoid_weighted_integral: grid is not uniform");
    }
  }

  const Complex a = w.exponent();
  // Kahan-compensated sum of the weighted samples.
  Complex sum = 0.0;
  Complex comp = 0.0;
  Complex first = 0.0;
  Complex last = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double t = series.times[k];
    const Complex f = series.values[k] * std::exp(Complex(-a.real() * t, -a.imag() * t));
    if (k == 0) first = f;
    if (k == m - 1) last = f;
    const Complex y = f - comp;
    const Complex s2 = sum + y;
    comp = (s2 - sum) - y;
    sum = s2;
  }
  return dt * (sum - 0.5 * (first + last));
}

} // namespace weightint
