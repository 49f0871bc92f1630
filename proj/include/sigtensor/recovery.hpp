// Numeric path recovery: given a target signature S and a segment count m,
// find coefficients a with sig(a) = S by damped nonlinear least squares on
// the flattened residual. Works over float64; exact targets are converted
// before solving.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sigtensor/matrix.hpp"
#include "sigtensor/random.hpp"
#include "sigtensor/signatures.hpp"
#include "sigtensor/tensor_algebra.hpp"

namespace sigtensor {

enum class CoreKind { Axis, Monomial };

inline const char* to_string(CoreKind core) {
  return core == CoreKind::Axis ? "axis" : "monomial";
}

struct RecoveryOptions {
  int max_iterations = 200;
  double residual_tolerance = 1e-8;
  int restarts = 20;
  std::uint64_t rng_seed = 0;
  std::optional<Matrix<double>> initial_guess;
};

class RecoveryProblem {
 public:
  RecoveryProblem(TensorSequence<double> target, int segment_count, CoreKind core,
                  RecoveryOptions options = {})
      : target_(std::move(target)),
        segment_count_(segment_count),
        core_(core),
        options_(std::move(options)) {
    detail::require(target_.level(0)[0] == 1.0, "target is not a group element (level-0 entry must be 1)");
    detail::require(segment_count_ >= 1, "segment count must be >= 1");
    detail::require(options_.restarts >= 1, "restarts must be >= 1");
    detail::require(options_.residual_tolerance > 0.0, "residual tolerance must be positive");
    detail::require(options_.max_iterations >= 1, "max iterations must be >= 1");
    if (options_.initial_guess) {
      detail::require(options_.initial_guess->rows() == target_.space().dimension() &&
                          options_.initial_guess->cols() == segment_count_,
                      "initial guess has wrong shape");
    }
  }

  const TensorSequence<double>& target() const { return target_; }
  int segment_count() const { return segment_count_; }
  CoreKind core() const { return core_; }
  const RecoveryOptions& options() const { return options_; }
  int dimension() const { return target_.space().dimension(); }
  std::size_t residual_length() const { return target_.space().flat_size(); }

 private:
  TensorSequence<double> target_;
  int segment_count_;
  CoreKind core_;
  RecoveryOptions options_;
};

struct RecoveryResult {
  Matrix<double> coef;
  double residual_norm = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  int restart_index = 0;
  std::string diagnostic;  // human-readable stop reason; not part of the wire format
};

// flatten(sig_core(a) - S). Entries appear in the flatten order of the target
// space, so the vector has (d^(k+1)-1)/(d-1) entries and entry 0 (the constant
// coordinate) is identically zero.
inline std::vector<double> residual(const RecoveryProblem& problem, const Matrix<double>& a) {
  detail::require(a.rows() == problem.dimension() && a.cols() == problem.segment_count(),
                  "coefficient matrix has wrong shape");
  for (const double v : a.data())
    detail::require(std::isfinite(v), "coefficient matrix has non-finite entries");
  const TensorSequence<double> sig_a = problem.core() == CoreKind::Axis
                                           ? sig_pwln_congruence(problem.target().space(), a)
                                           : sig_poly(problem.target().space(), a);
  std::vector<double> out = flatten(sig_a);
  const std::vector<double> target_flat = flatten(problem.target());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= target_flat[i];
  return out;
}

// Central finite differences, step h = max(1e-6, 1e-7*(1+|a_ij|)). Column
// order is the row-major enumeration of a's entries: column i*m + j holds
// d(residual)/d(a_ij).
inline Matrix<double> jacobian(const RecoveryProblem& problem, const Matrix<double>& a) {
  const int d = problem.dimension();
  const int m = problem.segment_count();
  const std::size_t rows = problem.residual_length();
  Matrix<double> jac(static_cast<int>(rows), d * m);
  Matrix<double> probe = a;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < m; ++j) {
      const double center = a(i, j);
      const double h = std::max(1e-6, 1e-7 * (1.0 + std::abs(center)));
      probe(i, j) = center + h;
      const std::vector<double> forward = residual(problem, probe);
      probe(i, j) = center - h;
      const std::vector<double> backward = residual(problem, probe);
      probe(i, j) = center;
      const int col = i * m + j;
      for (std::size_t r = 0; r < rows; ++r) {
        const double derivative = (forward[r] - backward[r]) / (2.0 * h);
        if (!std::isfinite(derivative))
          throw std::domain_error("non-finite residual while probing the jacobian");
        jac(static_cast<int>(r), col) = derivative;
      }
    }
  }
  return jac;
}

namespace detail {

inline double norm2(const std::vector<double>& v) {
  double sum = 0.0;
  for (const double x : v) sum += x * x;
  return std::sqrt(sum);
}

// Cholesky solve of the SPD system M x = b; returns false when a pivot is
// non-positive or non-finite.
inline bool solve_spd(std::vector<double> m, std::vector<double> b, int n,
                      std::vector<double>& x) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = m[static_cast<std::size_t>(i) * n + j];
      for (int p = 0; p < j; ++p)
        sum -= m[static_cast<std::size_t>(i) * n + p] * m[static_cast<std::size_t>(j) * n + p];
      if (i == j) {
        if (!(sum > 0.0) || !std::isfinite(sum)) return false;
        m[static_cast<std::size_t>(i) * n + j] = std::sqrt(sum);
      } else {
        m[static_cast<std::size_t>(i) * n + j] = sum / m[static_cast<std::size_t>(j) * n + j];
      }
    }
  }
  for (int i = 0; i < n; ++i) {  // forward substitution
    double sum = b[static_cast<std::size_t>(i)];
    for (int p = 0; p < i; ++p) sum -= m[static_cast<std::size_t>(i) * n + p] * b[static_cast<std::size_t>(p)];
    b[static_cast<std::size_t>(i)] = sum / m[static_cast<std::size_t>(i) * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {  // back substitution
    double sum = b[static_cast<std::size_t>(i)];
    for (int p = i + 1; p < n; ++p) sum -= m[static_cast<std::size_t>(p) * n + i] * b[static_cast<std::size_t>(p)];
    b[static_cast<std::size_t>(i)] = sum / m[static_cast<std::size_t>(i) * n + i];
  }
  x = std::move(b);
  return true;
}

}  // namespace detail

// Levenberg-Marquardt iteration: solve (J^T J + lambda I) delta = -J^T r,
// accept the step when the residual norm decreases (lambda /= 3), otherwise
// retry with lambda *= 3. Stops on residual_norm <= tolerance, step norm
// <= 1e-12, lambda beyond 1e8, or max_iterations.
inline RecoveryResult solve_damped_least_squares(const RecoveryProblem& problem,
                                                 Matrix<double> start) {
  constexpr double kLambda0 = 1e-3;
  constexpr double kLambdaMax = 1e8;
  constexpr double kStepStall = 1e-12;
  const int n = problem.dimension() * problem.segment_count();
  const double tolerance = problem.options().residual_tolerance;

  RecoveryResult result;
  result.coef = std::move(start);
  std::vector<double> res = residual(problem, result.coef);
  result.residual_norm = detail::norm2(res);
  if (result.residual_norm <= tolerance) {
    result.converged = true;
    result.diagnostic = "converged at the starting point";
    return result;
  }

  Matrix<double> jac = jacobian(problem, result.coef);
  double lambda = kLambda0;
  const std::size_t rows = res.size();
  while (result.iterations < problem.options().max_iterations) {
    ++result.iterations;
    // Normal system J^T J + lambda I and right-hand side -J^T r.
    std::vector<double> normal(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      for (int i = 0; i < n; ++i) {
        const double ji = jac(static_cast<int>(r), i);
        if (ji == 0.0) continue;
        rhs[static_cast<std::size_t>(i)] -= ji * res[r];
        for (int j = 0; j <= i; ++j)
          normal[static_cast<std::size_t>(i) * n + j] += ji * jac(static_cast<int>(r), j);
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        normal[static_cast<std::size_t>(i) * n + j] = normal[static_cast<std::size_t>(j) * n + i];
    for (int i = 0; i < n; ++i) normal[static_cast<std::size_t>(i) * n + i] += lambda;

    std::vector<double> delta;
    if (!detail::solve_spd(normal, rhs, n, delta)) {
      lambda *= 3.0;
      if (lambda > kLambdaMax) {
        result.diagnostic = "damped normal system singular at lambda_max";
        return result;
      }
      continue;
    }

    Matrix<double> trial = result.coef;
    for (int i = 0; i < problem.dimension(); ++i)
      for (int j = 0; j < problem.segment_count(); ++j)
        trial(i, j) += delta[static_cast<std::size_t>(i * problem.segment_count() + j)];
    std::vector<double> trial_res = residual(problem, trial);
    const double trial_norm = detail::norm2(trial_res);

    if (std::isfinite(trial_norm) && trial_norm < result.residual_norm) {
      result.coef = std::move(trial);
      res = std::move(trial_res);
      result.residual_norm = trial_norm;
      lambda /= 3.0;
      if (result.residual_norm <= tolerance) {
        result.converged = true;
        result.diagnostic = "residual tolerance reached";
        return result;
      }
      if (detail::norm2(delta) <= kStepStall) {
        result.diagnostic = "step norm below stall threshold";
        return result;
      }
      jac = jacobian(problem, result.coef);
    } else {
      lambda *= 3.0;
      if (lambda > kLambdaMax) {
        result.diagnostic = "no residual decrease up to lambda_max";
        return result;
      }
    }
  }
  result.diagnostic = "maximum iterations reached";
  return result;
}

// Multi-start driver. Attempt 0 is the caller's initial guess when present;
// every other attempt starts from a matrix with entries uniform in [-1,1]
// scaled by the max-norm of the target's level-1 part. Returns the first
// attempt that meets the residual tolerance, otherwise the best attempt seen
// (lowest residual; ties by lowest restart index).
inline RecoveryResult recover(const TensorSequence<double>& target, int segment_count,
                              CoreKind core, const RecoveryOptions& options = {}) {
  const RecoveryProblem problem(target, segment_count, core, options);
  const int d = problem.dimension();
  double scale = 0.0;
  for (const double v : target.level(1)) scale = std::max(scale, std::abs(v));
  std::mt19937_64 rng(options.rng_seed);

  RecoveryResult best;
  best.restart_index = -1;
  for (int attempt = 0; attempt < options.restarts; ++attempt) {
    Matrix<double> start(d, segment_count);
    if (attempt == 0 && options.initial_guess) {
      start = *options.initial_guess;
    } else {
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < segment_count; ++j) start(i, j) = scale * uniform_symmetric(rng);
    }
    RecoveryResult candidate;
    try {
      candidate = solve_damped_least_squares(problem, std::move(start));
    } catch (const std::domain_error& e) {
      candidate.diagnostic = e.what();
      candidate.coef = Matrix<double>(d, segment_count);
    }
    candidate.restart_index = attempt;
    if (candidate.converged) return candidate;
    if (best.restart_index < 0 || candidate.residual_norm < best.residual_norm) best = candidate;
  }
  return best;
}

}  // namespace sigtensor
