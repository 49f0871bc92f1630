// Truncated tensor algebra T_{d,k}: dense graded tensor sequences with the
// truncated tensor product, exponential, logarithm and group inverse.
//
// A sequence holds one dense level-l tensor for l = 0..k (level 0 is a
// scalar). The coefficient of the word (w_1,...,w_l), letters in 1..d, lives
// at flat index sum_i (w_i - 1) * d^(l-i), i.e. w_1 is the slowest index and
// flat storage order within a level is lexicographic word order.
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sigtensor/field.hpp"

namespace sigtensor {

template <typename T>
class TensorAlgebra {
 public:
  TensorAlgebra(int dimension, int truncation_level)
      : dimension_(dimension), truncation_level_(truncation_level) {
    detail::require(dimension >= 1, "dimension must be >= 1");
    detail::require(truncation_level >= 1, "truncation level must be >= 1");
    // Guard against accidental huge spaces (d^k coordinate blow-up).
    std::size_t total = 0, level_size = 1;
    constexpr std::size_t kMaxCoordinates = std::size_t(1) << 33;
    for (int l = 0; l <= truncation_level; ++l) {
      total += level_size;
      detail::require(total <= kMaxCoordinates && level_size <= kMaxCoordinates / dimension,
                      "tensor algebra too large: " + std::to_string(dimension) + "^" +
                          std::to_string(truncation_level) + " coordinates");
      level_size *= static_cast<std::size_t>(dimension);
    }
  }

  int dimension() const { return dimension_; }
  int truncation_level() const { return truncation_level_; }
  FieldKind field() const { return field_kind_of<T>; }

  // d^level.
  std::size_t level_size(int level) const {
    std::size_t n = 1;
    for (int l = 0; l < level; ++l) n *= static_cast<std::size_t>(dimension_);
    return n;
  }

  // Total coordinate count: (d^(k+1)-1)/(d-1), or k+1 when d = 1.
  std::size_t flat_size() const {
    std::size_t total = 0;
    for (int l = 0; l <= truncation_level_; ++l) total += level_size(l);
    return total;
  }

  friend bool operator==(const TensorAlgebra& a, const TensorAlgebra& b) {
    return a.dimension_ == b.dimension_ && a.truncation_level_ == b.truncation_level_;
  }

 private:
  int dimension_;
  int truncation_level_;
};

template <typename T>
class TensorSequence {
 public:
  // Zero element of the space.
  explicit TensorSequence(const TensorAlgebra<T>& space) : space_(space) {
    levels_.resize(static_cast<std::size_t>(space.truncation_level()) + 1);
    for (int l = 0; l <= space.truncation_level(); ++l)
      levels_[static_cast<std::size_t>(l)].assign(space.level_size(l), T(0));
  }

  const TensorAlgebra<T>& space() const { return space_; }

  const std::vector<T>& level(int l) const { return levels_[static_cast<std::size_t>(l)]; }
  std::vector<T>& level(int l) { return levels_[static_cast<std::size_t>(l)]; }

  friend bool operator==(const TensorSequence& a, const TensorSequence& b) {
    return a.space_ == b.space_ && a.levels_ == b.levels_;
  }

 private:
  TensorAlgebra<T> space_;
  std::vector<std::vector<T>> levels_;
};

// --- word indexing ---------------------------------------------------------

// Flat index of a word within its level; letters are 1-based.
inline std::size_t index_of_word(int dimension, std::span<const int> word) {
  std::size_t index = 0;
  for (int letter : word) {
    detail::require(letter >= 1 && letter <= dimension,
                    "word letter " + std::to_string(letter) + " out of range 1.." +
                        std::to_string(dimension));
    index = index * static_cast<std::size_t>(dimension) + static_cast<std::size_t>(letter - 1);
  }
  return index;
}

inline std::vector<int> word_of_index(int dimension, int length, std::size_t index) {
  std::vector<int> word(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    word[static_cast<std::size_t>(i)] =
        static_cast<int>(index % static_cast<std::size_t>(dimension)) + 1;
    index /= static_cast<std::size_t>(dimension);
  }
  return word;
}

// --- vector-space structure ------------------------------------------------

namespace detail {

template <typename T>
void check_same_space(const TensorSequence<T>& x, const TensorSequence<T>& y, const char* op) {
  require(x.space() == y.space(),
          std::string(op) + ": space mismatch (d=" + std::to_string(x.space().dimension()) +
              ",k=" + std::to_string(x.space().truncation_level()) + " vs d=" +
              std::to_string(y.space().dimension()) + ",k=" +
              std::to_string(y.space().truncation_level()) + ")");
}

}  // namespace detail

template <typename T>
TensorSequence<T> zero(const TensorAlgebra<T>& space) {
  return TensorSequence<T>(space);
}

template <typename T>
TensorSequence<T> one(const TensorAlgebra<T>& space) {
  TensorSequence<T> out(space);
  out.level(0)[0] = T(1);
  return out;
}

template <typename T>
TensorSequence<T> add(const TensorSequence<T>& x, const TensorSequence<T>& y) {
  detail::check_same_space(x, y, "add");
  TensorSequence<T> out = x;
  for (int l = 0; l <= out.space().truncation_level(); ++l) {
    auto& ol = out.level(l);
    const auto& yl = y.level(l);
    for (std::size_t i = 0; i < ol.size(); ++i) ol[i] += yl[i];
  }
  return out;
}

template <typename T>
TensorSequence<T> sub(const TensorSequence<T>& x, const TensorSequence<T>& y) {
  detail::check_same_space(x, y, "sub");
  TensorSequence<T> out = x;
  for (int l = 0; l <= out.space().truncation_level(); ++l) {
    auto& ol = out.level(l);
    const auto& yl = y.level(l);
    for (std::size_t i = 0; i < ol.size(); ++i) ol[i] -= yl[i];
  }
  return out;
}

template <typename T>
TensorSequence<T> scale(const T& c, const TensorSequence<T>& x) {
  TensorSequence<T> out = x;
  for (int l = 0; l <= out.space().truncation_level(); ++l)
    for (auto& v : out.level(l)) v *= c;
  return out;
}

// --- graded truncated product ----------------------------------------------

// Level l of the result is sum_{i+j=l} x^(i) (x) y^(j); levels above k are
// discarded by construction.
template <typename T>
TensorSequence<T> mul(const TensorSequence<T>& x, const TensorSequence<T>& y) {
  detail::check_same_space(x, y, "mul");
  const TensorAlgebra<T>& space = x.space();
  const int k = space.truncation_level();
  const T zero_value(0);
  TensorSequence<T> out(space);
  for (int l = 0; l <= k; ++l) {
    auto& ol = out.level(l);
    for (int i = 0; i <= l; ++i) {
      const auto& xi = x.level(i);
      const auto& yj = y.level(l - i);
      const std::size_t block = yj.size();
      for (std::size_t p = 0; p < xi.size(); ++p) {
        const T& xv = xi[p];
        if (xv == zero_value) continue;
        T* row = ol.data() + p * block;
        for (std::size_t q = 0; q < block; ++q) row[q] += xv * yj[q];
      }
    }
  }
  return out;
}

// --- exp / log / inverse ----------------------------------------------------

// exp(x) = sum_{i=0..k} x^i / i!; finite because x has no constant term, so
// x^i is supported on levels >= i.
template <typename T>
TensorSequence<T> exp(const TensorSequence<T>& x) {
  detail::require(x.level(0)[0] == T(0), "exp requires a zero constant term");
  const int k = x.space().truncation_level();
  TensorSequence<T> out = one(x.space());
  TensorSequence<T> term = one(x.space());
  for (int i = 1; i <= k; ++i) {
    term = mul(term, x);
    term = scale(field_traits<T>::ratio(1, i), term);
    out = add(out, term);
  }
  return out;
}

// log(g) = sum_{i=1..k} (-1)^(i+1) y^i / i with y = g - 1.
template <typename T>
TensorSequence<T> log(const TensorSequence<T>& g) {
  detail::require(g.level(0)[0] == T(1), "log requires constant term 1");
  const int k = g.space().truncation_level();
  TensorSequence<T> y = sub(g, one(g.space()));
  TensorSequence<T> out = y;
  TensorSequence<T> term = y;
  for (int i = 2; i <= k; ++i) {
    term = mul(term, y);
    const long sign = (i % 2 == 0) ? -1 : 1;
    out = add(out, scale(field_traits<T>::ratio(sign, i), term));
  }
  return out;
}

// Group inverse via the Neumann series sum_{i=0..k} (-1)^i y^i, y = g - 1.
template <typename T>
TensorSequence<T> inverse(const TensorSequence<T>& g) {
  detail::require(g.level(0)[0] == T(1), "inverse requires constant term 1");
  const int k = g.space().truncation_level();
  TensorSequence<T> y = sub(g, one(g.space()));
  TensorSequence<T> out = one(g.space());
  TensorSequence<T> term = one(g.space());
  for (int i = 1; i <= k; ++i) {
    term = mul(term, y);
    out = (i % 2 == 1) ? sub(out, term) : add(out, term);
  }
  return out;
}

// --- entry access and flattening -------------------------------------------

template <typename T>
T get_entry(const TensorSequence<T>& t, std::span<const int> word) {
  const int k = t.space().truncation_level();
  detail::require(static_cast<int>(word.size()) <= k,
                  "word of length " + std::to_string(word.size()) +
                      " exceeds truncation level " + std::to_string(k));
  const std::size_t index = index_of_word(t.space().dimension(), word);
  return t.level(static_cast<int>(word.size()))[index];
}

template <typename T>
T get_entry(const TensorSequence<T>& t, std::initializer_list<int> word) {
  return get_entry(t, std::span<const int>(word.begin(), word.size()));
}

// Level-major concatenation; within a level entries appear in lexicographic
// word order. This ordering is the wire contract for JSON/flat output and
// for recovery residuals.
template <typename T>
std::vector<T> flatten(const TensorSequence<T>& t) {
  std::vector<T> out;
  out.reserve(t.space().flat_size());
  for (int l = 0; l <= t.space().truncation_level(); ++l)
    out.insert(out.end(), t.level(l).begin(), t.level(l).end());
  return out;
}

// Exact fields compare exactly (tolerances ignored); float spaces compare
// entrywise with |a-b| <= abs_tol + rel_tol*max(|a|,|b|).
template <typename T>
bool approx_equal(const TensorSequence<T>& x, const TensorSequence<T>& y, double rel_tol,
                  double abs_tol) {
  detail::check_same_space(x, y, "approx_equal");
  if constexpr (field_traits<T>::exact) {
    (void)rel_tol;
    (void)abs_tol;
    return x == y;
  } else {
    for (int l = 0; l <= x.space().truncation_level(); ++l) {
      const auto& xl = x.level(l);
      const auto& yl = y.level(l);
      for (std::size_t i = 0; i < xl.size(); ++i)
        if (!approx_equal_scalar(xl[i], yl[i], rel_tol, abs_tol)) return false;
    }
    return true;
  }
}

inline TensorSequence<double> to_double(const TensorSequence<Rational>& t) {
  TensorAlgebra<double> space(t.space().dimension(), t.space().truncation_level());
  TensorSequence<double> out(space);
  for (int l = 0; l <= space.truncation_level(); ++l) {
    const auto& src = t.level(l);
    auto& dst = out.level(l);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = to_double(src[i]);
  }
  return out;
}

}  // namespace sigtensor
