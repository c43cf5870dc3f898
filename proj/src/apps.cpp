#include "weightint/apps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>

namespace weightint {

namespace {

std::size_t worker_count(std::size_t jobs) {
  std::size_t workers = std::max<unsigned>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("WEIGHTINT_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) {
      workers = std::min<std::size_t>(workers, cap);
    }
  }
  return std::min(workers, std::max<std::size_t>(jobs, 1));
}

// Runs body(k) for k in [0, jobs) on a small worker pool. Each index is
// handled exactly once and writes only its own output slot, so results are
// deterministic regardless of scheduling.
template <typename Body>
void parallel_for(std::size_t jobs, Body&& body) {
  const std::size_t workers = worker_count(jobs);
  if (workers <= 1) {
    for (std::size_t k = 0; k < jobs; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t wgt = 0; wgt < workers; ++wgt) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= jobs) return;
        body(k);
      }
    });
  }
  for (auto& th : pool) th.join();
}

} // namespace

bool SweepResult::all_ok() const {
  return std::all_of(errors.begin(), errors.end(),
                     [](const std::string& e) { return e.empty(); });
}

double weighted_average(const ComplexMatrix& h, const ComplexMatrix& s,
                        const QuantumState& state, double tau, double t, double hbar) {
  if (!(tau > 0.0)) {
    throw InvalidArgument("weighted_average: tau must be positive, got " + std::to_string(tau));
  }
  if (std::isnan(t) || t <= 0.0) {
    throw InvalidArgument("weighted_average: t must be > 0 (or infinity)");
  }
  const WeightExponent w = WeightExponent::from_tau(tau);
  const double numerator = weighted_integral(h, s, state, w, t, hbar).real();
  const double denominator = std::isinf(t) ? tau : tau * (-std::expm1(-t / tau));
  return numerator / denominator;
}

FourierProbe fourier_probe(const ComplexMatrix& h, const ComplexMatrix& s,
                           const QuantumState& state, double tau,
                           const std::vector<double>& omegas, double hbar) {
  if (!(tau > 0.0)) {
    throw InvalidArgument("fourier_probe: tau must be positive, got " + std::to_string(tau));
  }
  const EigenDecomposition eig = eigendecompose(h, hbar);

  FourierProbe probe;
  probe.tau = tau;
  probe.omegas = omegas;
  probe.values.resize(omegas.size());

  std::vector<std::exception_ptr> failures(omegas.size());
  parallel_for(omegas.size(), [&](std::size_t k) {
    try {
      const IntegralOperator op(s, eig, WeightExponent::from_tau(tau, omegas[k]));
      probe.values[k] = expectation(op.evaluate_infinite(), state, eig);
    } catch (...) {
      failures[k] = std::current_exception();
    }
  });
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return probe;
}

SweepResult sweep(const std::vector<std::pair<double, ComplexMatrix>>& hamiltonians,
                  const ComplexMatrix& s, const QuantumState& state, WeightExponent w,
                  double hbar) {
  SweepResult result;
  const std::size_t n = hamiltonians.size();
  result.labels.resize(n);
  result.values.resize(n);
  result.errors.resize(n);

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  constexpr double inf = std::numeric_limits<double>::infinity();
  parallel_for(n, [&](std::size_t k) {
    result.labels[k] = hamiltonians[k].first;
    try {
      result.values[k] = weighted_integral(hamiltonians[k].second, s, state, w, inf, hbar);
    } catch (const std::exception& e) {
      result.values[k] = Complex(nan, nan);
      result.errors[k] = e.what();
    }
  });
  return result;
}

} // namespace weightint
