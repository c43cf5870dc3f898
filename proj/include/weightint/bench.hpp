#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string_view>
#include <vector>

#include "weightint/intop.hpp"

namespace weightint {

/// Seeded deterministic generator. The engine is std::mt19937_64 (fully
/// specified by the standard) and doubles are derived from the top 53 bits
/// of each draw, so a seed reproduces the same stream on any platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
  std::mt19937_64 engine_;
};

/// Random Hermitian matrix built the benchmark way: draw A with real and
/// imaginary parts uniform in (-0.5, 0.5) (row-major, real before imaginary),
/// then symmetrize as (A + A^dagger)/2. Exactly Hermitian by construction.
ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng);

/// diag(0, 1, ..., n-1).
ComplexMatrix number_operator(Eigen::Index n);

/// Rank-one density matrix projecting onto the last basis vector, the
/// maximal number_operator eigenstate.
QuantumState highest_state(Eigen::Index n);

enum class BenchMethod { integral_operator, trapezoid };

std::string_view to_string(BenchMethod method);

struct BenchConfig {
  std::vector<int> sizes;
  std::vector<int> step_counts;
  int repeats = 200;
  double tau = 10.0;
  double t_max = 50.0;
  std::uint64_t seed = 0;
};

/// One aggregate row per (size, steps, method). The integral-operator rows
/// repeat across step counts (the method takes no step parameter) and carry
/// abs_error_vs_operator = 0 by definition.
struct BenchRecord {
  int size = 0;
  int steps = 0;
  BenchMethod method = BenchMethod::integral_operator;
  double mean_time_s = 0.0;
  double value = 0.0;
  double abs_error_vs_operator = 0.0;
};

/// Timing comparison of the two routes to the weighted integral
/// integral of <S_N>(t') exp(-t'/tau) dt' over [0, t_max] for seeded random
/// Hamiltonians, the number operator, and the highest-state density matrix.
///
/// Per repeat the Hamiltonian is diagonalized outside the clock (both
/// methods need it), then the integral-operator route (build + evaluate +
/// expectation) and the trapezoid route (evolve + quadrature, once per step
/// count) are timed with a monotonic clock. Values are deterministic for a
/// fixed config including the seed; times of course are not. The timing
/// loops run single-threaded. Failures of individual repeats are reported
/// to diag (when given) and excluded from the means instead of aborting.
std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg, std::ostream* diag = nullptr);

} // namespace weightint
