// Frozen reference signatures for T_{2,3}: the canonical axis path and the
// polynomial path (t + 2t^2, 3t + 4t^2). Entries are written out one word at
// a time so the tests never depend on the constructors they exercise.
#pragma once

#include <vector>

#include "sigtensor/sigtensor.hpp"

namespace fixtures {

using sigtensor::Matrix;
using sigtensor::Rational;
using sigtensor::TensorAlgebra;
using sigtensor::TensorSequence;

inline void set_entry(TensorSequence<Rational>& t, const std::vector<int>& word,
                      const char* value) {
  t.level(static_cast<int>(word.size()))[sigtensor::index_of_word(t.space().dimension(), word)] =
      sigtensor::rational_from_string(value);
}

inline TensorSequence<Rational> axis_d2k3() {
  TensorAlgebra<Rational> space(2, 3);
  TensorSequence<Rational> t(space);
  set_entry(t, {}, "1");
  set_entry(t, {1}, "1");
  set_entry(t, {2}, "1");
  set_entry(t, {1, 1}, "1/2");
  set_entry(t, {1, 2}, "1");
  set_entry(t, {2, 1}, "0");
  set_entry(t, {2, 2}, "1/2");
  set_entry(t, {1, 1, 1}, "1/6");
  set_entry(t, {1, 1, 2}, "1/2");
  set_entry(t, {1, 2, 2}, "1/2");
  set_entry(t, {2, 2, 2}, "1/6");
  return t;
}

// Coefficients of the polynomial path: column j multiplies t^j.
inline Matrix<Rational> poly_coef() {
  Matrix<Rational> a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 3;
  a(1, 1) = 4;
  return a;
}

inline TensorSequence<Rational> poly_d2k3() {
  TensorAlgebra<Rational> space(2, 3);
  TensorSequence<Rational> t(space);
  set_entry(t, {}, "1");
  set_entry(t, {1}, "3");
  set_entry(t, {2}, "7");
  set_entry(t, {1, 1}, "9/2");
  set_entry(t, {1, 2}, "61/6");
  set_entry(t, {2, 1}, "65/6");
  set_entry(t, {2, 2}, "49/2");
  set_entry(t, {1, 1, 1}, "9/2");
  set_entry(t, {1, 2, 1}, "311/30");
  set_entry(t, {2, 1, 1}, "166/15");
  set_entry(t, {2, 2, 1}, "383/15");
  set_entry(t, {1, 1, 2}, "151/15");
  set_entry(t, {1, 2, 2}, "116/5");
  set_entry(t, {2, 1, 2}, "743/30");
  set_entry(t, {2, 2, 2}, "343/6");
  return t;
}

// 2x4 segment matrix of the four-segment piecewise linear recovery example.
inline Matrix<Rational> pwln_recovery_matrix() {
  Matrix<Rational> a(2, 4);
  a(0, 0) = 6;
  a(0, 1) = -2;
  a(0, 2) = 6;
  a(0, 3) = -10;
  a(1, 0) = 7;
  a(1, 1) = -4;
  a(1, 2) = 10;
  a(1, 3) = -4;
  return a;
}

// The polynomial path as a callable, for the quadrature oracle.
inline std::vector<double> poly_path_point(double t) {
  return {t + 2.0 * t * t, 3.0 * t + 4.0 * t * t};
}

}  // namespace fixtures
