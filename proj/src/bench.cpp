#include "weightint/bench.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "weightint/evolve.hpp"

namespace weightint {

ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  if (n < 1) {
    throw InvalidArgument("random_hermitian: n must be >= 1");
  }
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = rng.uniform(-0.5, 0.5);
      const double im = rng.uniform(-0.5, 0.5);
      a(i, j) = Complex(re, im);
    }
  }
  return 0.5 * (a + a.adjoint().eval());
}

ComplexMatrix number_operator(Eigen::Index n) {
  if (n < 1) {
    throw InvalidArgument("number_operator: n must be >= 1");
  }
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s(i, i) = static_cast<double>(i);
  }
  return s;
}

QuantumState highest_state(Eigen::Index n) {
  if (n < 1) {
    throw InvalidArgument("highest_state: n must be >= 1");
  }
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  rho(n - 1, n - 1) = 1.0;
  return QuantumState::density(std::move(rho));
}

std::string_view to_string(BenchMethod method) {
  return method == BenchMethod::integral_operator ? "integral_operator" : "trapezoid";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void validate(const BenchConfig& cfg) {
  if (cfg.sizes.empty() || cfg.step_counts.empty()) {
    throw InvalidArgument("run_benchmark: sizes and step_counts must be non-empty");
  }
  for (int n : cfg.sizes) {
    if (n < 1) throw InvalidArgument("run_benchmark: sizes must be >= 1");
  }
  for (int steps : cfg.step_counts) {
    if (steps < 1) throw InvalidArgument("run_benchmark: step counts must be >= 1");
  }
  if (cfg.repeats < 1) {
    throw InvalidArgument("run_benchmark: repeats must be >= 1");
  }
  if (!(cfg.tau > 0.0)) {
    throw InvalidArgument("run_benchmark: tau must be positive");
  }
  if (!(cfg.t_max > 0.0)) {
    throw InvalidArgument("run_benchmark: t_max must be positive");
  }
}

struct Accumulator {
  double time_sum = 0.0;
  double value_sum = 0.0;
  double error_sum = 0.0;
  int count = 0;

  void add(double time_s, double value, double error) {
    time_sum += time_s;
    value_sum += value;
    error_sum += error;
    ++count;
  }

  double mean_time() const { return count ? time_sum / count : nan(); }
  double mean_value() const { return count ? value_sum / count : nan(); }
  double mean_error() const { return count ? error_sum / count : nan(); }

  static double nan() { return std::numeric_limits<double>::quiet_NaN(); }
};

} // namespace

std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg, std::ostream* diag) {
  validate(cfg);

  Rng rng(cfg.seed);
  const WeightExponent w = WeightExponent::from_tau(cfg.tau);
  std::vector<BenchRecord> records;
  records.reserve(cfg.sizes.size() * cfg.step_counts.size() * 2);

  for (int size : cfg.sizes) {
    const ComplexMatrix s = number_operator(size);
    const QuantumState state = highest_state(size);

    // All Hamiltonians for this size are drawn up front so the RNG stream
    // (and therefore every value) is independent of timing and failures.
    std::vector<ComplexMatrix> hams;
    hams.reserve(static_cast<std::size_t>(cfg.repeats));
    for (int r = 0; r < cfg.repeats; ++r) {
      hams.push_back(random_hermitian(size, rng));
    }

    Accumulator op_acc;
    std::vector<Accumulator> trap_acc(cfg.step_counts.size());

    // Untimed warm-up pass, touching both code paths once.
    try {
      const EigenDecomposition eig = eigendecompose(hams.front());
      const IntegralOperator op(s, eig, w);
      (void)expectation(op.evaluate(cfg.t_max), state, eig);
      (void)trapezoid_weighted_integral(
          evolve_expectation(eig, s, state, cfg.t_max, cfg.step_counts.front()), w);
    } catch (const std::exception& e) {
      if (diag) *diag << "bench: warm-up failed for size " << size << ": " << e.what() << '\n';
    }

    for (int r = 0; r < cfg.repeats; ++r) {
      try {
        const EigenDecomposition eig = eigendecompose(hams[static_cast<std::size_t>(r)]);

        auto start = Clock::now();
        const IntegralOperator op(s, eig, w);
        const double op_value = expectation(op.evaluate(cfg.t_max), state, eig).real();
        const double op_time = seconds_since(start);
        op_acc.add(op_time, op_value, 0.0);

        for (std::size_t si = 0; si < cfg.step_counts.size(); ++si) {
          start = Clock::now();
          const TimeSeries series =
              evolve_expectation(eig, s, state, cfg.t_max, cfg.step_counts[si]);
          const double trap_value = trapezoid_weighted_integral(series, w).real();
          const double trap_time = seconds_since(start);
          trap_acc[si].add(trap_time, trap_value, std::abs(trap_value - op_value));
        }
      } catch (const std::exception& e) {
        if (diag) {
          *diag << "bench: size " << size << " repeat " << r << " failed: " << e.what() << '\n';
        }
      }
    }

    for (std::size_t si = 0; si < cfg.step_counts.size(); ++si) {
      records.push_back({size, cfg.step_counts[si], BenchMethod::integral_operator,
                         op_acc.mean_time(), op_acc.mean_value(), 0.0});
      records.push_back({size, cfg.step_counts[si], BenchMethod::trapezoid,
                         trap_acc[si].mean_time(), trap_acc[si].mean_value(),
                         trap_acc[si].mean_error()});
    }
  }
  return records;
}

} // namespace weightint
