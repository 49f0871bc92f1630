// Shared test helpers: independent oracles (word enumeration, brute-force
// tensor product, shuffle product) and random input generators. Everything
// here works from get_entry/word definitions only, never from the production
// kernels it is used to check.
#pragma once

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "sigtensor/sigtensor.hpp"

namespace testutil {

using sigtensor::Matrix;
using sigtensor::Rational;
using sigtensor::TensorAlgebra;
using sigtensor::TensorSequence;

using Word = std::vector<int>;

inline std::vector<Word> words_of_length(int dimension, int length) {
  std::vector<Word> words;
  Word current(static_cast<std::size_t>(length), 1);
  if (length == 0) {
    words.push_back({});
    return words;
  }
  while (true) {
    words.push_back(current);
    int pos = length - 1;
    while (pos >= 0 && current[static_cast<std::size_t>(pos)] == dimension) {
      current[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++current[static_cast<std::size_t>(pos)];
  }
  return words;
}

inline std::vector<Word> words_up_to_length(int dimension, int max_length) {
  std::vector<Word> words;
  for (int l = 0; l <= max_length; ++l)
    for (auto& w : words_of_length(dimension, l)) words.push_back(std::move(w));
  return words;
}

// All interleavings of u and v preserving each word's internal order, with
// multiplicity (the straight recursive definition of the shuffle product).
inline std::vector<Word> shuffle_words(const Word& u, const Word& v) {
  if (u.empty()) return {v};
  if (v.empty()) return {u};
  std::vector<Word> out;
  const Word u_rest(u.begin() + 1, u.end());
  for (Word w : shuffle_words(u_rest, v)) {
    w.insert(w.begin(), u.front());
    out.push_back(std::move(w));
  }
  const Word v_rest(v.begin() + 1, v.end());
  for (Word w : shuffle_words(u, v_rest)) {
    w.insert(w.begin(), v.front());
    out.push_back(std::move(w));
  }
  return out;
}

// Brute-force truncated product straight from the definition:
// (x*y)(w) = sum over splits w = u|v of x(u)*y(v).
template <typename T>
TensorSequence<T> brute_force_mul(const TensorSequence<T>& x, const TensorSequence<T>& y) {
  const auto& space = x.space();
  TensorSequence<T> out(space);
  for (int l = 0; l <= space.truncation_level(); ++l) {
    for (const Word& w : words_of_length(space.dimension(), l)) {
      T sum(0);
      for (int cut = 0; cut <= l; ++cut) {
        const Word prefix(w.begin(), w.begin() + cut);
        const Word suffix(w.begin() + cut, w.end());
        sum += sigtensor::get_entry(x, std::span<const int>(prefix)) *
               sigtensor::get_entry(y, std::span<const int>(suffix));
      }
      out.level(l)[sigtensor::index_of_word(space.dimension(), w)] = sum;
    }
  }
  return out;
}

// Shuffle identity at a word pair: S(u)*S(v) == sum_{w in u ∇ v} S(w).
template <typename T>
bool shuffle_identity_holds(const TensorSequence<T>& s, const Word& u, const Word& v) {
  T product = sigtensor::get_entry(s, std::span<const int>(u)) *
              sigtensor::get_entry(s, std::span<const int>(v));
  T sum(0);
  for (const Word& w : shuffle_words(u, v)) sum += sigtensor::get_entry(s, std::span<const int>(w));
  if constexpr (sigtensor::field_traits<T>::exact) {
    return product == sum;
  } else {
    return sigtensor::approx_equal_scalar(product, sum, 1e-9, 1e-12);
  }
}

// Embed a vector at level 1 and exponentiate through the generic series
// (deliberately not sig_linear, so the two routes can be compared).
template <typename T>
TensorSequence<T> exp_embedded(const TensorAlgebra<T>& space, const std::vector<T>& a) {
  TensorSequence<T> x(space);
  for (std::size_t i = 0; i < a.size(); ++i) x.level(1)[i] = a[i];
  return sigtensor::exp(x);
}

inline Rational random_rational(std::mt19937_64& rng, long num_range = 20, long den_range = 8) {
  const long num = sigtensor::uniform_int(rng, -num_range, num_range);
  const long den = sigtensor::uniform_int(rng, 1, den_range);
  return sigtensor::field_traits<Rational>::ratio(num, den);
}

// Sparse random sequence: roughly `fill_per_mille`/1000 of the coordinates
// are set (level 0 included).
inline TensorSequence<Rational> random_sparse_sequence(const TensorAlgebra<Rational>& space,
                                                       std::mt19937_64& rng,
                                                       int fill_per_mille = 300) {
  TensorSequence<Rational> out(space);
  for (int l = 0; l <= space.truncation_level(); ++l)
    for (auto& entry : out.level(l))
      if (sigtensor::uniform_int(rng, 0, 999) < fill_per_mille) entry = random_rational(rng);
  return out;
}

template <typename T>
Matrix<T> random_int_matrix(int rows, int cols, long lo, long hi, std::mt19937_64& rng) {
  Matrix<T> out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = T(sigtensor::uniform_int(rng, lo, hi));
  return out;
}

template <typename T>
::testing::AssertionResult sequences_equal(const TensorSequence<T>& actual,
                                           const TensorSequence<T>& expected) {
  if (!(actual.space() == expected.space()))
    return ::testing::AssertionFailure() << "space mismatch";
  for (int l = 0; l <= actual.space().truncation_level(); ++l) {
    const auto& al = actual.level(l);
    const auto& el = expected.level(l);
    for (std::size_t i = 0; i < al.size(); ++i) {
      if (!(al[i] == el[i])) {
        const auto word = sigtensor::word_of_index(actual.space().dimension(), l, i);
        std::string word_str;
        for (int letter : word) word_str += std::to_string(letter) + ",";
        return ::testing::AssertionFailure()
               << "entry mismatch at level " << l << " word (" << word_str << ") : " << al[i]
               << " vs " << el[i];
      }
    }
  }
  return ::testing::AssertionSuccess();
}

template <typename T>
::testing::AssertionResult sequences_close(const TensorSequence<T>& actual,
                                           const TensorSequence<T>& expected, double rel,
                                           double abs) {
  if (!(actual.space() == expected.space()))
    return ::testing::AssertionFailure() << "space mismatch";
  for (int l = 0; l <= actual.space().truncation_level(); ++l) {
    const auto& al = actual.level(l);
    const auto& el = expected.level(l);
    for (std::size_t i = 0; i < al.size(); ++i)
      if (!sigtensor::approx_equal_scalar(static_cast<double>(al[i]), static_cast<double>(el[i]),
                                          rel, abs))
        return ::testing::AssertionFailure()
               << "entry mismatch at level " << l << " index " << i << " : " << al[i] << " vs "
               << el[i];
  }
  return ::testing::AssertionSuccess();
}

// Maximum absolute entry difference between two float sequences.
inline double max_entry_error(const TensorSequence<double>& a, const TensorSequence<double>& b) {
  double err = 0.0;
  for (int l = 0; l <= a.space().truncation_level(); ++l)
    for (std::size_t i = 0; i < a.level(l).size(); ++i)
      err = std::max(err, std::abs(a.level(l)[i] - b.level(l)[i]));
  return err;
}

}  // namespace testutil
