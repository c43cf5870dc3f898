#include "weightint/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace weightint {

namespace {

nlohmann::json entry_to_json(Complex c) {
  return nlohmann::json::array({c.real(), c.imag()});
}

Complex entry_from_json(const nlohmann::json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw MalformedInputFile(context + ": entry must be a [re, im] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Eigen::Index size_from_json(const nlohmann::json& j, const std::string& context) {
  if (!j.is_object()) {
    throw MalformedInputFile(context + ": expected a JSON object with \"size\" and \"data\"");
  }
  if (!j.contains("size") || !j["size"].is_number_integer() || j["size"].get<long long>() < 1) {
    throw MalformedInputFile(context + ": \"size\" must be a positive integer");
  }
  if (!j.contains("data") || !j["data"].is_array()) {
    throw MalformedInputFile(context + ": \"data\" must be an array");
  }
  return j["size"].get<Eigen::Index>();
}

nlohmann::json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw MalformedInputFile(path.string() + ": cannot open file");
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInputFile(path.string() + ": " + e.what());
  }
}

} // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(entry_to_json(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return {{"size", m.rows()}, {"data", std::move(rows)}};
}

nlohmann::json vector_to_json(const ComplexVector& v) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    data.push_back(entry_to_json(v[i]));
  }
  return {{"size", v.size()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& context) {
  const Eigen::Index n = size_from_json(j, context);
  const auto& data = j["data"];
  if (static_cast<Eigen::Index>(data.size()) != n) {
    throw MalformedInputFile(context + ": expected " + std::to_string(n) + " rows, got " +
                             std::to_string(data.size()));
  }
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = data[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw MalformedInputFile(context + ": row " + std::to_string(i) + " must hold " +
                               std::to_string(n) + " entries");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      m(i, k) = entry_from_json(row[static_cast<std::size_t>(k)],
                                context + ": row " + std::to_string(i) + ", column " +
                                    std::to_string(k));
    }
  }
  return m;
}

ComplexVector vector_from_json(const nlohmann::json& j, const std::string& context) {
  const Eigen::Index n = size_from_json(j, context);
  const auto& data = j["data"];
  if (static_cast<Eigen::Index>(data.size()) != n) {
    throw MalformedInputFile(context + ": expected " + std::to_string(n) + " entries, got " +
                             std::to_string(data.size()));
  }
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = entry_from_json(data[static_cast<std::size_t>(i)],
                           context + ": entry " + std::to_string(i));
  }
  return v;
}

ComplexMatrix read_matrix_json(const std::filesystem::path& path) {
  return matrix_from_json(parse_file(path), path.string());
}

ComplexVector read_vector_json(const std::filesystem::path& path) {
  return vector_from_json(parse_file(path), path.string());
}

QuantumState read_state_json(const std::filesystem::path& path) {
  const nlohmann::json j = parse_file(path);
  const std::string context = path.string();
  size_from_json(j, context);
  const auto& data = j["data"];
  if (data.empty()) {
    throw MalformedInputFile(context + ": \"data\" must be non-empty");
  }
  // A matrix row is an array of [re, im] pairs; a vector entry is the pair
  // itself. The first element of the first entry tells the two apart.
  const auto& first = data[0];
  const bool looks_like_matrix = first.is_array() && !first.empty() && first[0].is_array();
  try {
    if (looks_like_matrix) {
      return QuantumState::density(matrix_from_json(j, context));
    }
    return QuantumState::pure(vector_from_json(j, context));
  } catch (const InvalidState& e) {
    throw InvalidState(context + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  out << j.dump(2) << '\n';
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

void write_labeled_rows(std::ostream& out, const char* label_name,
                        const std::vector<double>& labels, const std::vector<Complex>& values) {
  out << label_name << ",re,im\n";
  for (std::size_t k = 0; k < labels.size(); ++k) {
    out << format_double(labels[k]) << ',' << format_double(values[k].real()) << ','
        << format_double(values[k].imag()) << '\n';
  }
}

} // namespace

void write_timeseries_csv(std::ostream& out, const TimeSeries& series) {
  write_labeled_rows(out, "t", series.times, series.values);
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  write_labeled_rows(out, "label", result.labels, result.values);
}

void write_fourier_csv(std::ostream& out, const FourierProbe& probe) {
  write_labeled_rows(out, "omega", probe.omegas, probe.values);
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "size,steps,method,mean_time_s,value,abs_error\n";
  for (const BenchRecord& rec : records) {
    out << rec.size << ',' << rec.steps << ',' << to_string(rec.method) << ','
        << format_double(rec.mean_time_s) << ',' << format_double(rec.value) << ','
        << format_double(rec.abs_error_vs_operator) << '\n';
  }
}

} // namespace weightint
