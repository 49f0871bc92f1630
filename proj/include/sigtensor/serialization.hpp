// JSON wire formats.
//
// TensorSequence: {"dimension": d, "level": k, "field": "rational"|"float64",
// "levels": [...]} where levels[l] is nested l deep with the first word letter
// as the outer index; level 0 is a bare scalar. Rational entries are strings
// "p/q" in lowest terms ("p" for integers), float entries are JSON numbers
// that round-trip at full double precision.
//
// RecoveryResult: {"coef": [[...]], "residual_norm", "iterations",
// "converged", "restart_index", "seed"}.
#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <json.hpp>

#include "sigtensor/recovery.hpp"
#include "sigtensor/tensor_algebra.hpp"

namespace sigtensor {

using AnyTensorSequence = std::variant<TensorSequence<Rational>, TensorSequence<double>>;

namespace detail {

inline nlohmann::json entry_to_json(const Rational& value) { return rational_to_string(value); }
inline nlohmann::json entry_to_json(double value) { return value; }

template <typename T>
nlohmann::json level_to_json(const TensorSequence<T>& t, int level, int depth, std::size_t base) {
  if (depth == level) return entry_to_json(t.level(level)[base]);
  const int d = t.space().dimension();
  nlohmann::json array = nlohmann::json::array();
  for (int letter = 0; letter < d; ++letter)
    array.push_back(level_to_json(t, level, depth + 1,
                                  base * static_cast<std::size_t>(d) + static_cast<std::size_t>(letter)));
  return array;
}

inline Rational entry_from_json(const nlohmann::json& j, const Rational*) {
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("rational entries must be \"p/q\" strings or integers");
}

inline double entry_from_json(const nlohmann::json& j, const double*) {
  if (!j.is_number()) throw std::invalid_argument("float64 entries must be JSON numbers");
  return j.get<double>();
}

template <typename T>
void level_from_json(const nlohmann::json& j, TensorSequence<T>& t, int level, int depth,
                     std::size_t base) {
  if (depth == level) {
    t.level(level)[base] = entry_from_json(j, static_cast<const T*>(nullptr));
    return;
  }
  const int d = t.space().dimension();
  if (!j.is_array() || static_cast<int>(j.size()) != d)
    throw std::invalid_argument("level " + std::to_string(level) + " is not nested " +
                                std::to_string(level) + " deep with extent " + std::to_string(d));
  for (int letter = 0; letter < d; ++letter)
    level_from_json(j[static_cast<std::size_t>(letter)], t, level, depth + 1,
                    base * static_cast<std::size_t>(d) + static_cast<std::size_t>(letter));
}

template <typename T>
TensorSequence<T> sequence_from_json_fields(const nlohmann::json& j, int dimension, int level) {
  TensorAlgebra<T> space(dimension, level);
  TensorSequence<T> out(space);
  const auto& levels = j.at("levels");
  for (int l = 0; l <= level; ++l) level_from_json(levels[static_cast<std::size_t>(l)], out, l, 0, 0);
  return out;
}

}  // namespace detail

template <typename T>
nlohmann::json tensor_sequence_to_json(const TensorSequence<T>& t) {
  nlohmann::json j;
  j["dimension"] = t.space().dimension();
  j["level"] = t.space().truncation_level();
  j["field"] = to_string(field_kind_of<T>);
  nlohmann::json levels = nlohmann::json::array();
  for (int l = 0; l <= t.space().truncation_level(); ++l)
    levels.push_back(detail::level_to_json(t, l, 0, 0));
  j["levels"] = std::move(levels);
  return j;
}

inline AnyTensorSequence tensor_sequence_from_json(const nlohmann::json& j) {
  detail::require(j.is_object(), "tensor sequence JSON must be an object");
  detail::require(j.contains("dimension") && j.contains("level") && j.contains("field") &&
                      j.contains("levels"),
                  "tensor sequence JSON needs dimension, level, field, levels");
  detail::require(j["dimension"].is_number_integer() && j["level"].is_number_integer(),
                  "dimension and level must be integers");
  const int dimension = j["dimension"].get<int>();
  const int level = j["level"].get<int>();
  detail::require(j["levels"].is_array() && static_cast<int>(j["levels"].size()) == level + 1,
                  "levels must be an array of level+1 entries");
  const std::string field = j["field"].is_string() ? j["field"].get<std::string>() : "";
  if (field == "rational") return detail::sequence_from_json_fields<Rational>(j, dimension, level);
  if (field == "float64") return detail::sequence_from_json_fields<double>(j, dimension, level);
  throw std::invalid_argument("field must be \"rational\" or \"float64\"");
}

inline TensorSequence<double> to_double(const AnyTensorSequence& any) {
  if (std::holds_alternative<TensorSequence<double>>(any))
    return std::get<TensorSequence<double>>(any);
  return to_double(std::get<TensorSequence<Rational>>(any));
}

inline nlohmann::json recovery_result_to_json(const RecoveryResult& result, std::uint64_t seed) {
  nlohmann::json coef = nlohmann::json::array();
  for (int i = 0; i < result.coef.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < result.coef.cols(); ++j) row.push_back(result.coef(i, j));
    coef.push_back(std::move(row));
  }
  return nlohmann::json{{"coef", std::move(coef)},
                        {"residual_norm", result.residual_norm},
                        {"iterations", result.iterations},
                        {"converged", result.converged},
                        {"restart_index", result.restart_index},
                        {"seed", seed}};
}

}  // namespace sigtensor
