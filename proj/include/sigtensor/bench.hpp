// Benchmark harness for the two piecewise-linear signature algorithms.
// For every (k, d, m, algorithm) cell: draw one random integer coefficient
// matrix per sample (entries uniform in [-20, 20]), time only the signature
// constructor, and report the median wall-clock time in milliseconds.
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "sigtensor/random.hpp"
#include "sigtensor/signatures.hpp"

namespace sigtensor {

struct BenchConfig {
  std::vector<int> dimensions;
  std::vector<int> segments;
  std::vector<int> levels;
  bool run_chen = true;
  bool run_congruence = true;
  int samples = 100;
  std::uint64_t rng_seed = 0;
  // Test instrumentation: invoked with each freshly drawn input matrix,
  // outside the timed region.
  std::function<void(const Matrix<double>&)> input_hook;
};

struct BenchRow {
  int k = 0;
  int d = 0;
  int m = 0;
  SigAlgorithm algorithm = SigAlgorithm::Chen;
  double median_ms = 0.0;
  int samples = 0;
};

namespace detail {

inline void do_not_optimize(const void* p) { asm volatile("" : : "g"(p) : "memory"); }

inline double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

inline std::vector<int> sorted_unique(std::vector<int> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace detail

// Cells run sequentially in lexicographic (k, d, m, algorithm) order, which is
// also the emitted row order. Input generation is excluded from the timings.
inline std::vector<BenchRow> run_bench(const BenchConfig& config) {
  detail::require(!config.dimensions.empty() && !config.segments.empty() && !config.levels.empty(),
                  "benchmark grid is empty");
  detail::require(config.samples >= 1, "samples must be >= 1");
  detail::require(config.run_chen || config.run_congruence, "no algorithm selected");
  const std::vector<int> levels = detail::sorted_unique(config.levels);
  const std::vector<int> dims = detail::sorted_unique(config.dimensions);
  const std::vector<int> segs = detail::sorted_unique(config.segments);
  for (int v : levels) detail::require(v >= 1, "levels must be >= 1");
  for (int v : dims) detail::require(v >= 1, "dimensions must be >= 1");
  for (int v : segs) detail::require(v >= 1, "segment counts must be >= 1");

  std::vector<SigAlgorithm> algorithms;
  if (config.run_chen) algorithms.push_back(SigAlgorithm::Chen);
  if (config.run_congruence) algorithms.push_back(SigAlgorithm::Congruence);

  std::vector<BenchRow> rows;
  for (int k : levels) {
    for (int d : dims) {
      for (int m : segs) {
        for (SigAlgorithm algorithm : algorithms) {
          const TensorAlgebra<double> space(d, k);
          std::mt19937_64 rng(mix_seed(config.rng_seed,
                                       mix_seed(static_cast<std::uint64_t>(k) << 40 |
                                                static_cast<std::uint64_t>(d) << 20 |
                                                static_cast<std::uint64_t>(m))));
          std::vector<double> times_ms;
          times_ms.reserve(static_cast<std::size_t>(config.samples));
          for (int s = 0; s < config.samples; ++s) {
            Matrix<double> coef(d, m);
            for (int i = 0; i < d; ++i)
              for (int j = 0; j < m; ++j)
                coef(i, j) = static_cast<double>(uniform_int(rng, -20, 20));
            if (config.input_hook) config.input_hook(coef);
            const auto start = std::chrono::steady_clock::now();
            const TensorSequence<double> signature = algorithm == SigAlgorithm::Chen
                                                         ? sig_pwln_chen(space, coef)
                                                         : sig_pwln_congruence(space, coef);
            const auto stop = std::chrono::steady_clock::now();
            detail::do_not_optimize(signature.level(k).data());
            times_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
          }
          rows.push_back({k, d, m, algorithm, detail::median(times_ms), config.samples});
        }
      }
    }
  }
  return rows;
}

namespace detail {

// Faster algorithm per (k, d, m) cell; "tie" on equal medians, "-" when the
// cell ran only one algorithm.
inline std::string winner_of_cell(const std::vector<BenchRow>& rows, const BenchRow& row) {
  const BenchRow* chen = nullptr;
  const BenchRow* congruence = nullptr;
  for (const BenchRow& r : rows) {
    if (r.k != row.k || r.d != row.d || r.m != row.m) continue;
    (r.algorithm == SigAlgorithm::Chen ? chen : congruence) = &r;
  }
  if (!chen || !congruence) return "-";
  if (chen->median_ms == congruence->median_ms) return "tie";
  return chen->median_ms < congruence->median_ms ? "chen" : "congruence";
}

inline std::string format_ms(double ms) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << ms;
  return out.str();
}

}  // namespace detail

inline std::string bench_rows_to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "k,d,m,algorithm,median_ms,samples,winner\n";
  for (const BenchRow& row : rows)
    out << row.k << ',' << row.d << ',' << row.m << ',' << to_string(row.algorithm) << ','
        << detail::format_ms(row.median_ms) << ',' << row.samples << ','
        << detail::winner_of_cell(rows, row) << '\n';
  return out.str();
}

inline std::string bench_rows_to_table(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(4) << "k" << std::setw(5) << "d" << std::setw(5) << "m"
      << std::setw(12) << "algorithm" << std::right << std::setw(14) << "median_ms"
      << std::setw(9) << "samples" << "  " << std::left << "winner" << '\n';
  for (const BenchRow& row : rows)
    out << std::left << std::setw(4) << row.k << std::setw(5) << row.d << std::setw(5) << row.m
        << std::setw(12) << to_string(row.algorithm) << std::right << std::setw(14)
        << detail::format_ms(row.median_ms) << std::setw(9) << row.samples << "  " << std::left
        << detail::winner_of_cell(rows, row) << '\n';
  return out.str();
}

}  // namespace sigtensor
