// Command-line front end: compute signatures (sig), recover path coefficients
// from a target signature (recover), and benchmark the two piecewise-linear
// algorithms (bench).
//
// Exit codes: 0 success (recover: converged), 1 recover did not converge,
// 2 flag/shape errors, 3 parse errors (coefficient CSV or target JSON).
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sigtensor/sigtensor.hpp"

namespace {

using namespace sigtensor;

// Target-JSON problems (malformed file, bad schema, not a group element) map
// to exit code 3, unlike general flag/shape errors.
struct TargetJsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

struct SigOptions {
  int dim = 0;
  int level = 0;
  std::string type;
  std::string coef_path;
  std::vector<int> composition;
  int regularity = 0;
  std::string algorithm = "chen";
  bool algorithm_given = false;
  std::string field = "rational";
  std::string output = "json";
};

template <typename T>
int run_sig(const SigOptions& options) {
  const TensorAlgebra<T> space(options.dim, options.level);
  PathSpec<T> spec;
  if (options.type == "axis") {
    spec.geom_type = GeomType::Axis;
    detail::require(options.coef_path.empty(), "--coef is not accepted with --type axis");
  } else if (options.type == "pwln") {
    spec.geom_type = GeomType::Pwln;
  } else if (options.type == "poly") {
    spec.geom_type = GeomType::Poly;
  } else if (options.type == "spline") {
    spec.geom_type = GeomType::Spline;
  } else {
    throw std::invalid_argument("unknown --type '" + options.type + "'");
  }
  detail::require(options.type == "pwln" || !options.algorithm_given,
                  "--algorithm applies only to --type pwln");
  if (options.type != "axis") {
    detail::require(!options.coef_path.empty(), "--coef is required unless --type axis");
    spec.coef = read_coefficient_csv_file<T>(options.coef_path);
  }
  if (options.type == "spline") {
    detail::require(!options.composition.empty(), "--composition is required with --type spline");
    spec.composition = options.composition;
    spec.regularity = options.regularity;
  } else {
    detail::require(options.composition.empty(), "--composition applies only to --type spline");
  }
  if (options.algorithm == "chen") {
    spec.algorithm = SigAlgorithm::Chen;
  } else if (options.algorithm == "congruence") {
    spec.algorithm = SigAlgorithm::Congruence;
  } else {
    throw std::invalid_argument("unknown --algorithm '" + options.algorithm + "'");
  }

  const TensorSequence<T> signature = sig(space, spec);
  if (options.output == "json") {
    std::cout << tensor_sequence_to_json(signature).dump() << "\n";
  } else if (options.output == "flat") {
    for (const T& entry : flatten(signature)) {
      if constexpr (field_traits<T>::exact) {
        std::cout << rational_to_string(entry) << "\n";
      } else {
        std::cout << format_double(entry) << "\n";
      }
    }
  } else {
    throw std::invalid_argument("unknown --output '" + options.output + "'");
  }
  return 0;
}

struct RecoverOptions {
  std::string target_path;
  int segments = 0;
  std::string core = "axis";
  double tol = 1e-8;
  int restarts = 20;
  std::uint64_t seed = 0;
  std::string init_path;
};

int run_recover(const RecoverOptions& options) {
  nlohmann::json parsed;
  {
    std::ifstream in(options.target_path);
    if (!in) throw TargetJsonError("cannot open target JSON '" + options.target_path + "'");
    try {
      parsed = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw TargetJsonError(std::string("malformed target JSON: ") + e.what());
    }
  }
  TensorSequence<double> target = [&]() {
    try {
      return to_double(tensor_sequence_from_json(parsed));
    } catch (const std::invalid_argument& e) {
      throw TargetJsonError(std::string("malformed target JSON: ") + e.what());
    }
  }();
  if (target.level(0)[0] != 1.0)
    throw TargetJsonError("target is not a group element (level-0 entry must be 1)");

  CoreKind core;
  if (options.core == "axis") {
    core = CoreKind::Axis;
  } else if (options.core == "monomial") {
    core = CoreKind::Monomial;
  } else {
    throw std::invalid_argument("unknown --core '" + options.core + "'");
  }
  RecoveryOptions recovery_options;
  recovery_options.residual_tolerance = options.tol;
  recovery_options.restarts = options.restarts;
  recovery_options.rng_seed = options.seed;
  if (!options.init_path.empty())
    recovery_options.initial_guess = read_coefficient_csv_file<double>(options.init_path);

  const RecoveryResult result = recover(target, options.segments, core, recovery_options);
  std::cout << recovery_result_to_json(result, options.seed).dump() << "\n";
  return result.converged ? 0 : 1;
}

struct BenchOptions {
  std::vector<int> dims;
  std::vector<int> segments;
  std::vector<int> levels;
  int samples = 100;
  std::uint64_t seed = 0;
  std::string format = "table";
  std::string field = "float64";
};

int run_bench_cmd(const BenchOptions& options) {
  detail::require(options.field == "float64", "only --field float64 is benchmarked");
  BenchConfig config;
  config.dimensions = options.dims;
  config.segments = options.segments;
  config.levels = options.levels;
  config.samples = options.samples;
  config.rng_seed = options.seed;
  const std::vector<BenchRow> rows = run_bench(config);
  if (options.format == "csv") {
    std::cout << bench_rows_to_csv(rows);
  } else if (options.format == "table") {
    std::cout << bench_rows_to_table(rows);
  } else {
    throw std::invalid_argument("unknown --format '" + options.format + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated path-signature toolkit"};
  app.require_subcommand(1);

  SigOptions sig_options;
  CLI::App* sig_cmd = app.add_subcommand("sig", "Compute a truncated path signature");
  sig_cmd->add_option("--dim", sig_options.dim, "Path dimension d")->required();
  sig_cmd->add_option("--level", sig_options.level, "Truncation level k")->required();
  sig_cmd->add_option("--type", sig_options.type, "Path type: axis|pwln|poly|spline")->required();
  sig_cmd->add_option("--coef", sig_options.coef_path, "Coefficient CSV (required unless axis)");
  sig_cmd->add_option("--composition", sig_options.composition, "Spline piece degrees c1,c2,...")
      ->delimiter(',');
  sig_cmd->add_option("--regularity", sig_options.regularity, "Spline regularity order");
  sig_cmd->add_option("--algorithm", sig_options.algorithm, "pwln algorithm: chen|congruence");
  sig_cmd->add_option("--field", sig_options.field, "Coefficient field: rational|float64");
  sig_cmd->add_option("--output", sig_options.output, "Output form: json|flat");

  RecoverOptions recover_options;
  CLI::App* recover_cmd = app.add_subcommand("recover", "Recover path coefficients from a signature");
  recover_cmd->add_option("--target", recover_options.target_path, "Target signature JSON")->required();
  recover_cmd->add_option("--segments", recover_options.segments, "Segment count m")->required();
  recover_cmd->add_option("--core", recover_options.core, "Core tensor: axis|monomial");
  recover_cmd->add_option("--tol", recover_options.tol, "Residual tolerance");
  recover_cmd->add_option("--restarts", recover_options.restarts, "Multi-start attempts");
  recover_cmd->add_option("--seed", recover_options.seed, "RNG seed");
  recover_cmd->add_option("--init", recover_options.init_path, "Initial guess CSV");

  BenchOptions bench_options;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Benchmark chen vs congruence");
  bench_cmd->add_option("--dims", bench_options.dims, "Dimensions d1,d2,...")->delimiter(',');
  bench_cmd->add_option("--segments", bench_options.segments, "Segment counts m1,m2,...")->delimiter(',');
  bench_cmd->add_option("--levels", bench_options.levels, "Truncation levels k1,k2,...")->delimiter(',');
  bench_cmd->add_option("--samples", bench_options.samples, "Samples per cell");
  bench_cmd->add_option("--seed", bench_options.seed, "RNG seed");
  bench_cmd->add_option("--format", bench_options.format, "Output: csv|table");
  bench_cmd->add_option("--field", bench_options.field, "Coefficient field (float64 only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "sigtensor: " << e.what() << "\n";
    return 2;
  }
  sig_options.algorithm_given = sig_cmd->count("--algorithm") > 0;

  try {
    if (sig_cmd->parsed()) {
      if (sig_options.field == "rational") return run_sig<Rational>(sig_options);
      if (sig_options.field == "float64") return run_sig<double>(sig_options);
      throw std::invalid_argument("unknown --field '" + sig_options.field + "'");
    }
    if (recover_cmd->parsed()) return run_recover(recover_options);
    if (bench_cmd->parsed()) return run_bench_cmd(bench_options);
  } catch (const CsvParseError& e) {
    std::cerr << "sigtensor: " << e.what() << "\n";
    return 3;
  } catch (const TargetJsonError& e) {
    std::cerr << "sigtensor: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "sigtensor: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "sigtensor: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
