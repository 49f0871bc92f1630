// Signature constructors: axis, piecewise-linear (Chen product or
// matrix-tensor congruence), polynomial and spline paths, plus the core
// tensors they factor through and a chord-subdivision quadrature oracle.
#pragma once

#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <vector>

#include "sigtensor/matrix.hpp"
#include "sigtensor/tensor_algebra.hpp"

namespace sigtensor {

enum class GeomType { Axis, Pwln, Poly, Spline };
enum class SigAlgorithm { Chen, Congruence };

inline const char* to_string(SigAlgorithm a) {
  return a == SigAlgorithm::Chen ? "chen" : "congruence";
}

// Path description consumed by the sig() dispatcher.
//
//   Axis    no coefficients; the path is the concatenation of the d unit steps.
//   Pwln    coef column j is the increment of segment j; `algorithm` selects
//           the Chen product or the congruence route (default Chen).
//   Poly    coef column j multiplies t^j (j starting at 1, no constant column).
//   Spline  coef columns are grouped into pieces by `composition`; piece p is a
//           polynomial of degree composition[p] on [0,1]. `regularity` is the
//           derivative-matching order validated at interior knots.
template <typename T>
struct PathSpec {
  GeomType geom_type = GeomType::Axis;
  std::optional<Matrix<T>> coef;
  std::vector<int> composition;
  int regularity = 0;
  SigAlgorithm algorithm = SigAlgorithm::Chen;
};

// --- linear segments ---------------------------------------------------------

// Signature of the straight segment with increment a: level l is a^(x)l / l!.
template <typename T>
TensorSequence<T> sig_linear(const TensorAlgebra<T>& space, std::span<const T> increment) {
  const int d = space.dimension();
  detail::require(static_cast<int>(increment.size()) == d,
                  "segment increment has " + std::to_string(increment.size()) +
                      " entries, expected " + std::to_string(d));
  TensorSequence<T> out(space);
  out.level(0)[0] = T(1);
  if (space.truncation_level() >= 1) {
    auto& l1 = out.level(1);
    for (int i = 0; i < d; ++i) l1[static_cast<std::size_t>(i)] = increment[static_cast<std::size_t>(i)];
  }
  for (int l = 2; l <= space.truncation_level(); ++l) {
    const auto& prev = out.level(l - 1);
    auto& cur = out.level(l);
    const T factor = field_traits<T>::ratio(1, l);
    for (std::size_t p = 0; p < prev.size(); ++p) {
      T* row = cur.data() + p * static_cast<std::size_t>(d);
      for (int q = 0; q < d; ++q) row[q] = prev[p] * increment[static_cast<std::size_t>(q)] * factor;
    }
  }
  return out;
}

template <typename T>
TensorSequence<T> sig_linear(const TensorAlgebra<T>& space, const std::vector<T>& increment) {
  return sig_linear(space, std::span<const T>(increment));
}

// --- core tensors ------------------------------------------------------------

// Signature of the canonical axis path e_1 * e_2 * ... * e_m. The entry of a
// weakly increasing word is 1 / prod(run-length!) over its maximal runs of
// equal letters; every other entry vanishes, so the fill below prunes whole
// subtrees at the first decrease.
template <typename T>
TensorSequence<T> core_axis(const TensorAlgebra<T>& space) {
  const int m = space.dimension();
  const int k = space.truncation_level();
  TensorSequence<T> out(space);
  out.level(0)[0] = T(1);
  const auto fill = [&](auto&& self, int depth, std::size_t base, const T& value, int last,
                        int run) -> void {
    if (depth == k) return;
    for (int letter = last == 0 ? 1 : last; letter <= m; ++letter) {
      const std::size_t index = base * static_cast<std::size_t>(m) + static_cast<std::size_t>(letter - 1);
      if (letter == last) {
        const T extended = value * field_traits<T>::ratio(1, run + 1);
        out.level(depth + 1)[index] = extended;
        self(self, depth + 1, index, extended, letter, run + 1);
      } else {
        out.level(depth + 1)[index] = value;
        self(self, depth + 1, index, value, letter, 1);
      }
    }
  };
  fill(fill, 0, 0, T(1), 0, 0);
  return out;
}

// Signature of the moment path t -> (t, t^2, ..., t^m); the entry of the word
// (w_1,...,w_l) is prod_i w_i / (w_1 + ... + w_i).
template <typename T>
TensorSequence<T> core_monomial(const TensorAlgebra<T>& space) {
  const int m = space.dimension();
  const int k = space.truncation_level();
  TensorSequence<T> out(space);
  out.level(0)[0] = T(1);
  const auto fill = [&](auto&& self, int depth, std::size_t base, const T& value,
                        long weight) -> void {
    if (depth == k) return;
    for (int letter = 1; letter <= m; ++letter) {
      const std::size_t index = base * static_cast<std::size_t>(m) + static_cast<std::size_t>(letter - 1);
      const T extended = value * field_traits<T>::ratio(letter, weight + letter);
      out.level(depth + 1)[index] = extended;
      self(self, depth + 1, index, extended, weight + letter);
    }
  };
  fill(fill, 0, 0, T(1), 0);
  return out;
}

// --- matrix-tensor congruence -------------------------------------------------

// S^(l)_{w_1..w_l} = sum_v A_{w_1 v_1} ... A_{w_l v_l} C^(l)_{v_1..v_l},
// contracted one mode at a time. After j modes the buffer has shape
// d^j x m^(l-j); each step is a batch of d x m times m x m^(l-j) products on
// contiguous rows, so the total work is sum_l sum_j d^j m^(l-j+1).
template <typename T>
TensorSequence<T> congruence(const Matrix<T>& a, const TensorSequence<T>& core,
                             const TensorAlgebra<T>& target) {
  const int d = target.dimension();
  const int m = core.space().dimension();
  const int k = target.truncation_level();
  detail::require(core.space().truncation_level() == k,
                  "congruence: core truncation level mismatch");
  detail::require(a.rows() == d && a.cols() == m,
                  "congruence: matrix is " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + ", expected " + std::to_string(d) + "x" +
                      std::to_string(m));
  const T zero_value(0);
  TensorSequence<T> out(target);
  out.level(0)[0] = core.level(0)[0];
  for (int l = 1; l <= k; ++l) {
    std::vector<T> buffer = core.level(l);
    std::size_t lead = 1;                               // d^(j-1)
    std::size_t trail = core.space().level_size(l - 1); // m^(l-j)
    for (int mode = 1; mode <= l; ++mode) {
      std::vector<T> next(lead * static_cast<std::size_t>(d) * trail, T(0));
      for (std::size_t b = 0; b < lead; ++b) {
        const T* in_block = buffer.data() + b * static_cast<std::size_t>(m) * trail;
        T* out_block = next.data() + b * static_cast<std::size_t>(d) * trail;
        for (int r = 0; r < d; ++r) {
          T* out_row = out_block + static_cast<std::size_t>(r) * trail;
          for (int v = 0; v < m; ++v) {
            const T& weight = a(r, v);
            if (weight == zero_value) continue;
            const T* in_row = in_block + static_cast<std::size_t>(v) * trail;
            for (std::size_t c = 0; c < trail; ++c) out_row[c] += weight * in_row[c];
          }
        }
      }
      buffer = std::move(next);
      lead *= static_cast<std::size_t>(d);
      trail /= static_cast<std::size_t>(m);
    }
    out.level(l) = std::move(buffer);
  }
  return out;
}

// --- piecewise linear paths ----------------------------------------------------

namespace detail {

template <typename T>
void check_segment_rows(const TensorAlgebra<T>& space, const Matrix<T>& coef, const char* what) {
  require(coef.rows() == space.dimension(),
          std::string(what) + ": coefficient matrix has " + std::to_string(coef.rows()) +
              " rows, expected " + std::to_string(space.dimension()));
}

}  // namespace detail

// Chen route: the product of the segment signatures, left to right.
template <typename T>
TensorSequence<T> sig_pwln_chen(const TensorAlgebra<T>& space, const Matrix<T>& segments) {
  detail::check_segment_rows(space, segments, "sig_pwln_chen");
  TensorSequence<T> acc = one(space);
  for (int j = 0; j < segments.cols(); ++j)
    acc = mul(acc, sig_linear(space, segments.column(j)));
  return acc;
}

// Congruence route: apply the segment matrix to the axis core over m letters.
template <typename T>
TensorSequence<T> sig_pwln_congruence(const TensorAlgebra<T>& space, const Matrix<T>& segments) {
  detail::check_segment_rows(space, segments, "sig_pwln_congruence");
  if (segments.cols() == 0) return one(space);
  TensorAlgebra<T> core_space(segments.cols(), space.truncation_level());
  return congruence(segments, core_axis(core_space), space);
}

// --- polynomial and spline paths -------------------------------------------------

// X(t) = sum_j coef[:,j] t^j on [0,1]; column j multiplies t^j, j >= 1.
template <typename T>
TensorSequence<T> sig_poly(const TensorAlgebra<T>& space, const Matrix<T>& coef) {
  detail::check_segment_rows(space, coef, "sig_poly");
  if (coef.cols() == 0) return one(space);
  TensorAlgebra<T> core_space(coef.cols(), space.truncation_level());
  return congruence(coef, core_monomial(core_space), space);
}

struct SplineKnotMismatch {
  int knot;   // interior knot index; knot i joins piece i and piece i+1 (0-based)
  int order;  // derivative order that fails to match
};

// Derivative matching at interior knots under per-piece parameterization on
// [0,1]: piece p must satisfy X_p^(q)(1) = X_{p+1}^(q)(0) for q = 1..regularity.
// Order 0 needs no check; concatenation is translation-invariant.
template <typename T>
std::vector<SplineKnotMismatch> check_spline_regularity(const Matrix<T>& coef,
                                                        const std::vector<int>& composition,
                                                        int regularity) {
  std::vector<SplineKnotMismatch> issues;
  if (regularity <= 0 || composition.size() < 2) return issues;
  const int d = coef.rows();
  std::vector<int> offsets{0};
  for (int degree : composition) offsets.push_back(offsets.back() + degree);
  const auto falling_factorial = [](int j, int q) {
    long f = 1;
    for (int i = 0; i < q; ++i) f *= (j - i);
    return f;
  };
  for (std::size_t p = 0; p + 1 < composition.size(); ++p) {
    const int deg_left = composition[p];
    const int deg_right = composition[p + 1];
    for (int q = 1; q <= regularity; ++q) {
      bool mismatch = false;
      for (int i = 0; i < d && !mismatch; ++i) {
        T left(0);
        for (int j = q; j <= deg_left; ++j)
          left += coef(i, offsets[p] + j - 1) * T(falling_factorial(j, q));
        T right(0);
        if (q <= deg_right) right = coef(i, offsets[p + 1] + q - 1) * T(falling_factorial(q, q));
        if constexpr (field_traits<T>::exact) {
          mismatch = left != right;
        } else {
          mismatch = !approx_equal_scalar(left, right, 1e-9, 1e-12);
        }
      }
      if (mismatch) issues.push_back({static_cast<int>(p), q});
    }
  }
  return issues;
}

// Chen product over the polynomial pieces. A regularity violation only emits
// a warning; the coefficients are taken as given.
template <typename T>
TensorSequence<T> sig_spline(const TensorAlgebra<T>& space, const Matrix<T>& coef,
                             const std::vector<int>& composition, int regularity) {
  detail::check_segment_rows(space, coef, "sig_spline");
  detail::require(regularity >= 0, "sig_spline: regularity must be non-negative");
  detail::require(!composition.empty(), "sig_spline: composition must be non-empty");
  int total = 0;
  for (int degree : composition) {
    detail::require(degree >= 1, "sig_spline: composition entries must be positive");
    total += degree;
  }
  detail::require(total == coef.cols(),
                  "sig_spline: composition sums to " + std::to_string(total) + " but matrix has " +
                      std::to_string(coef.cols()) + " columns");
  for (const auto& issue : check_spline_regularity(coef, composition, regularity))
    std::cerr << "sigtensor: warning: spline derivative of order " << issue.order
              << " does not match at interior knot " << issue.knot << "\n";
  TensorSequence<T> acc = one(space);
  int offset = 0;
  for (int degree : composition) {
    acc = mul(acc, sig_poly(space, coef.block_columns(offset, degree)));
    offset += degree;
  }
  return acc;
}

// --- dispatcher -----------------------------------------------------------------

template <typename T>
TensorSequence<T> sig(const TensorAlgebra<T>& space, const PathSpec<T>& spec) {
  switch (spec.geom_type) {
    case GeomType::Axis:
      detail::require(!spec.coef.has_value(), "axis path takes no coefficient matrix");
      detail::require(spec.composition.empty(), "axis path takes no composition");
      return core_axis(space);
    case GeomType::Pwln:
      detail::require(spec.coef.has_value(), "pwln path requires a coefficient matrix");
      detail::require(spec.composition.empty(), "pwln path takes no composition");
      return spec.algorithm == SigAlgorithm::Chen ? sig_pwln_chen(space, *spec.coef)
                                                  : sig_pwln_congruence(space, *spec.coef);
    case GeomType::Poly:
      detail::require(spec.coef.has_value(), "poly path requires a coefficient matrix");
      detail::require(spec.composition.empty(), "poly path takes no composition");
      return sig_poly(space, *spec.coef);
    case GeomType::Spline:
      detail::require(spec.coef.has_value(), "spline path requires a coefficient matrix");
      return sig_spline(space, *spec.coef, spec.composition, spec.regularity);
  }
  throw std::invalid_argument("unknown geometry type");
}

// --- quadrature oracle ------------------------------------------------------------

// Independent numerical realization of the defining iterated integrals:
// sample the path at N+1 equispaced times on [0,1] and take the signature of
// the chord polyline. Converges to the true signature as N grows (exactly for
// straight lines at any N).
inline TensorSequence<double> sig_quadrature_oracle(
    const TensorAlgebra<double>& space,
    const std::function<std::vector<double>(double)>& sampler, int chords) {
  detail::require(chords >= 1, "quadrature oracle needs at least one chord");
  const int d = space.dimension();
  Matrix<double> increments(d, chords);
  std::vector<double> previous = sampler(0.0);
  detail::require(static_cast<int>(previous.size()) == d, "sampler returned wrong dimension");
  for (int j = 1; j <= chords; ++j) {
    const std::vector<double> current = sampler(static_cast<double>(j) / chords);
    detail::require(static_cast<int>(current.size()) == d, "sampler returned wrong dimension");
    for (int i = 0; i < d; ++i) {
      const double delta = current[static_cast<std::size_t>(i)] - previous[static_cast<std::size_t>(i)];
      detail::require(std::isfinite(delta), "sampler produced a non-finite value");
      increments(i, j - 1) = delta;
    }
    previous = current;
  }
  return sig_pwln_chen(space, increments);
}

}  // namespace sigtensor
