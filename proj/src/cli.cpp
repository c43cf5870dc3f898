#include "weightint/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>

#include <CLI11.hpp>

#include "weightint/io.hpp"

namespace weightint {

namespace {

/// Flag/file problems detected after CLI11 parsing; mapped to exit code 1.
class CliValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

/// "-" targets the fallback stream, anything else a freshly created file.
class OutputTarget {
public:
  OutputTarget(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
      return;
    }
    file_.open(path);
    if (!file_) {
      throw CliValidationError("--out: cannot open '" + path + "' for writing");
    }
    stream_ = &file_;
  }

  std::ostream& stream() { return *stream_; }

private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

double parse_time_flag(const std::string& text) {
  std::string lowered = text;
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "inf" || lowered == "infinity") {
    return kInf;
  }
  try {
    std::size_t consumed = 0;
    const double t = std::stod(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument(text);
    if (std::isnan(t) || t < 0.0) throw std::invalid_argument(text);
    return t;
  } catch (const std::exception&) {
    throw CliValidationError("--t: expected 'inf' or a number >= 0, got '" + text + "'");
  }
}

void check_hbar(double hbar) {
  if (!(hbar > 0.0)) {
    throw CliValidationError("--hbar must be positive");
  }
}

struct WeightFlags {
  std::optional<double> rate;
  std::optional<double> tau;
  double frequency = 0.0;

  void add_options(CLI::App* cmd, bool with_frequency = true) {
    auto* rate_opt = cmd->add_option("--rate", rate, "Decay rate, the real part of the exponent");
    auto* tau_opt = cmd->add_option("--tau", tau, "Decay time; shorthand for --rate 1/tau");
    rate_opt->excludes(tau_opt);
    tau_opt->excludes(rate_opt);
    if (with_frequency) {
      cmd->add_option("--frequency", frequency,
                      "Probe angular frequency, the imaginary part of the exponent");
    }
  }

  WeightExponent resolve() const {
    if (rate.has_value() == tau.has_value()) {
      throw CliValidationError("exactly one of --rate or --tau is required");
    }
    if (tau) {
      if (!(*tau > 0.0)) throw CliValidationError("--tau must be positive");
      return WeightExponent::from_tau(*tau, frequency);
    }
    if (*rate < 0.0 || !std::isfinite(*rate)) {
      throw CliValidationError("--rate must be finite and >= 0");
    }
    return {*rate, frequency};
  }
};

struct SystemPaths {
  std::string hamiltonian;
  std::string observable;
  std::string state;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--hamiltonian", hamiltonian, "Hamiltonian matrix JSON file")->required();
    cmd->add_option("--observable", observable, "Observable matrix JSON file")->required();
    cmd->add_option("--state", state,
                    "State JSON file: vector schema for a pure state, matrix schema for a "
                    "density matrix")
        ->required();
  }
};

std::vector<std::pair<double, ComplexMatrix>> load_manifest(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw CliValidationError("--manifest: cannot open '" + manifest_path + "'");
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInputFile(manifest_path + ": " + e.what());
  }
  if (!j.is_array() || j.empty()) {
    throw MalformedInputFile(manifest_path + ": expected a non-empty array of {label, path}");
  }
  const std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
  std::vector<std::pair<double, ComplexMatrix>> entries;
  entries.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& item = j[k];
    if (!item.is_object() || !item.contains("label") || !item["label"].is_number() ||
        !item.contains("path") || !item["path"].is_string()) {
      throw MalformedInputFile(manifest_path + ": entry " + std::to_string(k) +
                               " must be {\"label\": number, \"path\": string}");
    }
    std::filesystem::path p = item["path"].get<std::string>();
    if (p.is_relative()) p = base / p;
    entries.emplace_back(item["label"].get<double>(), read_matrix_json(p));
  }
  return entries;
}

std::vector<std::pair<double, ComplexMatrix>> load_directory(const std::string& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw CliValidationError("--dir: '" + dir + "' is not a directory");
  }
  std::vector<std::pair<double, std::filesystem::path>> labeled;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    const std::string stem = entry.path().stem().string();
    try {
      std::size_t consumed = 0;
      const double label = std::stod(stem, &consumed);
      if (consumed != stem.size()) throw std::invalid_argument(stem);
      labeled.emplace_back(label, entry.path());
    } catch (const std::exception&) {
      throw MalformedInputFile(entry.path().string() +
                               ": file name must be a numeric label, e.g. 0.5.json");
    }
  }
  if (labeled.empty()) {
    throw CliValidationError("--dir: no .json files found in '" + dir + "'");
  }
  std::sort(labeled.begin(), labeled.end());
  std::vector<std::pair<double, ComplexMatrix>> entries;
  entries.reserve(labeled.size());
  for (const auto& [label, path] : labeled) {
    entries.emplace_back(label, read_matrix_json(path));
  }
  return entries;
}

} // namespace

int parse_and_dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponentially weighted time integrals of quantum expectation values,\n"
               "computed in closed form through the integral operator and cross-checked\n"
               "against explicit evolution plus trapezoidal quadrature.",
               "weightint"};
  app.require_subcommand(1);

  // eig
  auto* eig_cmd = app.add_subcommand("eig", "Diagonalize a Hermitian matrix");
  std::string eig_hamiltonian;
  double eig_hbar = 1.0;
  std::string eig_out = "-";
  eig_cmd->add_option("--hamiltonian", eig_hamiltonian, "Hamiltonian matrix JSON file")->required();
  eig_cmd->add_option("--hbar", eig_hbar, "Reduced Planck constant (natural units)");
  eig_cmd->add_option("--out", eig_out, "Output path, - for stdout");

  // evolve
  auto* evolve_cmd =
      app.add_subcommand("evolve", "Sample <S>(t) on a uniform grid and emit t,re,im CSV");
  SystemPaths evolve_paths;
  evolve_paths.add_options(evolve_cmd);
  double evolve_t_max = 0.0;
  int evolve_steps = 0;
  double evolve_hbar = 1.0;
  std::string evolve_out = "-";
  evolve_cmd->add_option("--t-max", evolve_t_max, "End of the time grid")->required();
  evolve_cmd->add_option("--steps", evolve_steps, "Number of grid intervals")->required();
  evolve_cmd->add_option("--hbar", evolve_hbar, "Reduced Planck constant");
  evolve_cmd->add_option("--out", evolve_out, "Output path, - for stdout");

  // integrate
  auto* integrate_cmd = app.add_subcommand(
      "integrate", "Weighted integral of <S>(t) from 0 to t; prints re,im");
  SystemPaths integrate_paths;
  integrate_paths.add_options(integrate_cmd);
  WeightFlags integrate_weight;
  integrate_weight.add_options(integrate_cmd);
  std::string integrate_t;
  double integrate_hbar = 1.0;
  std::string integrate_out = "-";
  integrate_cmd->add_option("--t", integrate_t, "Upper limit: a number >= 0 or 'inf'")->required();
  integrate_cmd->add_option("--hbar", integrate_hbar, "Reduced Planck constant");
  integrate_cmd->add_option("--out", integrate_out, "Output path, - for stdout");

  // average
  auto* average_cmd =
      app.add_subcommand("average", "Weighted time average of <S>(t); prints one real number");
  SystemPaths average_paths;
  average_paths.add_options(average_cmd);
  double average_tau = 0.0;
  std::string average_t = "inf";
  double average_hbar = 1.0;
  std::string average_out = "-";
  average_cmd->add_option("--tau", average_tau, "Damping time of the weight")->required();
  average_cmd->add_option("--t", average_t, "Upper limit: a number > 0 or 'inf' (default)");
  average_cmd->add_option("--hbar", average_hbar, "Reduced Planck constant");
  average_cmd->add_option("--out", average_out, "Output path, - for stdout");

  // fourier
  auto* fourier_cmd = app.add_subcommand(
      "fourier", "Damped Fourier amplitudes of <S>(t); emits omega,re,im CSV");
  SystemPaths fourier_paths;
  fourier_paths.add_options(fourier_cmd);
  double fourier_tau = 0.0;
  std::vector<double> fourier_omegas;
  double fourier_omega_min = 0.0;
  double fourier_omega_max = 0.0;
  int fourier_omega_count = 0;
  double fourier_hbar = 1.0;
  std::string fourier_out = "-";
  fourier_cmd->add_option("--tau", fourier_tau, "Damping time of the probe")->required();
  auto* omegas_opt = fourier_cmd->add_option("--omegas", fourier_omegas,
                                             "Comma-separated list of angular frequencies")
                         ->delimiter(',');
  auto* omin_opt = fourier_cmd->add_option("--omega-min", fourier_omega_min,
                                           "Start of a uniform frequency window");
  auto* omax_opt =
      fourier_cmd->add_option("--omega-max", fourier_omega_max, "End of the frequency window");
  auto* ocount_opt = fourier_cmd->add_option("--omega-count", fourier_omega_count,
                                             "Number of probe frequencies in the window");
  omegas_opt->excludes(omin_opt)->excludes(omax_opt)->excludes(ocount_opt);
  fourier_cmd->add_option("--hbar", fourier_hbar, "Reduced Planck constant");
  fourier_cmd->add_option("--out", fourier_out, "Output path, - for stdout");

  // sweep
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Infinite-horizon weighted integral across a Hamiltonian family; "
               "emits label,re,im CSV");
  std::string sweep_manifest;
  std::string sweep_dir;
  auto* manifest_opt = sweep_cmd->add_option(
      "--manifest", sweep_manifest, "JSON array of {label, path} Hamiltonian entries");
  auto* dir_opt =
      sweep_cmd->add_option("--dir", sweep_dir, "Directory of <label>.json Hamiltonians");
  manifest_opt->excludes(dir_opt);
  dir_opt->excludes(manifest_opt);
  std::string sweep_observable;
  std::string sweep_state;
  sweep_cmd->add_option("--observable", sweep_observable, "Observable matrix JSON file")
      ->required();
  sweep_cmd->add_option("--state", sweep_state, "State JSON file")->required();
  WeightFlags sweep_weight;
  sweep_weight.add_options(sweep_cmd);
  double sweep_hbar = 1.0;
  std::string sweep_out = "-";
  sweep_cmd->add_option("--hbar", sweep_hbar, "Reduced Planck constant");
  sweep_cmd->add_option("--out", sweep_out, "Output path, - for stdout");

  // bench
  auto* bench_cmd = app.add_subcommand(
      "bench", "Time the integral operator against evolve+trapezoid on random systems");
  BenchConfig bench_cfg;
  std::string bench_out = "-";
  bench_cmd->add_option("--sizes", bench_cfg.sizes, "Comma-separated system sizes")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--steps", bench_cfg.step_counts, "Comma-separated quadrature step counts")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--repeats", bench_cfg.repeats, "Averages per configuration");
  bench_cmd->add_option("--seed", bench_cfg.seed, "RNG seed (required for reproducibility)")
      ->required();
  bench_cmd->add_option("--tau", bench_cfg.tau, "Weight damping time");
  bench_cmd->add_option("--t-max", bench_cfg.t_max, "Upper integration limit");
  bench_cmd->add_option("--out", bench_out, "Output path, - for stdout");

  try {
    std::reverse(args.begin(), args.end()); // CLI11 consumes the vector back to front
    app.parse(args);

    if (eig_cmd->parsed()) {
      check_hbar(eig_hbar);
      const ComplexMatrix h = read_matrix_json(eig_hamiltonian);
      const EigenDecomposition eig = eigendecompose(h, eig_hbar);
      nlohmann::json result;
      result["hbar"] = eig.hbar;
      result["eigenvalues"] = std::vector<double>(
          eig.eigenvalues.data(), eig.eigenvalues.data() + eig.eigenvalues.size());
      result["vectors"] = matrix_to_json(eig.vectors);
      OutputTarget target(eig_out, out);
      target.stream() << result.dump(2) << '\n';
    } else if (evolve_cmd->parsed()) {
      check_hbar(evolve_hbar);
      const TimeSeries series = evolve_expectation(
          read_matrix_json(evolve_paths.hamiltonian), read_matrix_json(evolve_paths.observable),
          read_state_json(evolve_paths.state), evolve_t_max, evolve_steps, evolve_hbar);
      OutputTarget target(evolve_out, out);
      write_timeseries_csv(target.stream(), series);
    } else if (integrate_cmd->parsed()) {
      check_hbar(integrate_hbar);
      const WeightExponent w = integrate_weight.resolve();
      const double t = parse_time_flag(integrate_t);
      if (std::isinf(t) && !(w.rate > 0.0)) {
        throw CliValidationError("--t inf needs a strictly positive decay rate: pass --rate > 0 "
                                 "or --tau, or use a finite --t");
      }
      const Complex value = weighted_integral(
          read_matrix_json(integrate_paths.hamiltonian),
          read_matrix_json(integrate_paths.observable), read_state_json(integrate_paths.state),
          w, t, integrate_hbar);
      OutputTarget target(integrate_out, out);
      target.stream() << format_double(value.real()) << ',' << format_double(value.imag())
                      << '\n';
    } else if (average_cmd->parsed()) {
      check_hbar(average_hbar);
      if (!(average_tau > 0.0)) {
        throw CliValidationError("--tau must be positive");
      }
      const double t = parse_time_flag(average_t);
      if (t == 0.0) {
        throw CliValidationError("--t must be > 0 for an average");
      }
      const double value = weighted_average(
          read_matrix_json(average_paths.hamiltonian), read_matrix_json(average_paths.observable),
          read_state_json(average_paths.state), average_tau, t, average_hbar);
      OutputTarget target(average_out, out);
      target.stream() << format_double(value) << '\n';
    } else if (fourier_cmd->parsed()) {
      check_hbar(fourier_hbar);
      if (!(fourier_tau > 0.0)) {
        throw CliValidationError("--tau must be positive");
      }
      std::vector<double> omegas = fourier_omegas;
      if (omegas.empty()) {
        if (ocount_opt->count() == 0 || omin_opt->count() == 0 || omax_opt->count() == 0) {
          throw CliValidationError(
              "fourier needs --omegas or all of --omega-min/--omega-max/--omega-count");
        }
        if (fourier_omega_count < 1) {
          throw CliValidationError("--omega-count must be >= 1");
        }
        omegas.resize(static_cast<std::size_t>(fourier_omega_count));
        for (int k = 0; k < fourier_omega_count; ++k) {
          const double frac =
              fourier_omega_count == 1 ? 0.0 : static_cast<double>(k) / (fourier_omega_count - 1);
          omegas[static_cast<std::size_t>(k)] =
              fourier_omega_min + frac * (fourier_omega_max - fourier_omega_min);
        }
      }
      const FourierProbe probe = fourier_probe(
          read_matrix_json(fourier_paths.hamiltonian), read_matrix_json(fourier_paths.observable),
          read_state_json(fourier_paths.state), fourier_tau, omegas, fourier_hbar);
      OutputTarget target(fourier_out, out);
      write_fourier_csv(target.stream(), probe);
    } else if (sweep_cmd->parsed()) {
      check_hbar(sweep_hbar);
      const WeightExponent w = sweep_weight.resolve();
      if (!(w.rate > 0.0)) {
        throw CliValidationError("sweep integrates to t = inf and needs a strictly positive "
                                 "decay rate (--rate > 0 or --tau)");
      }
      if (manifest_opt->count() == 0 && dir_opt->count() == 0) {
        throw CliValidationError("sweep needs --manifest or --dir");
      }
      const auto hams =
          manifest_opt->count() ? load_manifest(sweep_manifest) : load_directory(sweep_dir);
      const SweepResult result = sweep(hams, read_matrix_json(sweep_observable),
                                       read_state_json(sweep_state), w, sweep_hbar);
      OutputTarget target(sweep_out, out);
      write_sweep_csv(target.stream(), result);
      if (!result.all_ok()) {
        for (std::size_t k = 0; k < result.errors.size(); ++k) {
          if (!result.errors[k].empty()) {
            err << "sweep: label " << format_double(result.labels[k]) << ": " << result.errors[k]
                << '\n';
          }
        }
        return 2;
      }
    } else if (bench_cmd->parsed()) {
      const std::vector<BenchRecord> records = run_benchmark(bench_cfg, &err);
      OutputTarget target(bench_out, out);
      write_bench_csv(target.stream(), records);
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const CliValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const MalformedInputFile& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int parse_and_dispatch(std::vector<std::string> args) {
  return parse_and_dispatch(std::move(args), std::cout, std::cerr);
}

} // namespace weightint
