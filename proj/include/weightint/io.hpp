#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "weightint/apps.hpp"
#include "weightint/bench.hpp"
#include "weightint/evolve.hpp"

namespace weightint {

// JSON wire format (entries are [re, im] pairs of IEEE-754 doubles):
//   matrix: {"size": N, "data": [[[re,im], ...N...], ...N rows...]}
//   vector: {"size": N, "data": [[re,im], ...N...]}

nlohmann::json matrix_to_json(const ComplexMatrix& m);
nlohmann::json vector_to_json(const ComplexVector& v);

/// context names the source (usually the file path) in error messages.
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& context);
ComplexVector vector_from_json(const nlohmann::json& j, const std::string& context);

ComplexMatrix read_matrix_json(const std::filesystem::path& path);
ComplexVector read_vector_json(const std::filesystem::path& path);

/// Reads either schema: a vector file becomes a pure state, a matrix file a
/// density matrix.
QuantumState read_state_json(const std::filesystem::path& path);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

/// Shortest round-trip decimal for CSV cells, 17 significant digits.
std::string format_double(double x);

void write_timeseries_csv(std::ostream& out, const TimeSeries& series);      // t,re,im
void write_sweep_csv(std::ostream& out, const SweepResult& result);          // label,re,im
void write_fourier_csv(std::ostream& out, const FourierProbe& probe);        // omega,re,im
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

} // namespace weightint
