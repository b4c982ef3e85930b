#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace c45 {

enum class AttributeKind { Continuous, Discrete };

/// Declaration of one attribute: continuous, or discrete with an ordered
/// value list.
struct AttributeDecl {
  std::string name;
  AttributeKind kind = AttributeKind::Continuous;
  std::vector<std::string> values;  // non-empty, duplicate-free for Discrete

  bool continuous() const { return kind == AttributeKind::Continuous; }

  static AttributeDecl continuous_attr(std::string name) {
    return {std::move(name), AttributeKind::Continuous, {}};
  }
  static AttributeDecl discrete_attr(std::string name,
                                     std::vector<std::string> values) {
    return {std::move(name), AttributeKind::Discrete, std::move(values)};
  }
};

struct Schema {
  std::vector<AttributeDecl> attributes;
  std::vector<std::string> classes;

  std::size_t class_count() const { return classes.size(); }

  int class_index(const std::string& label) const {
    for (std::size_t j = 0; j < classes.size(); ++j)
      if (classes[j] == label) return static_cast<int>(j);
    return -1;
  }

  // Throws std::invalid_argument on duplicate names, empty class list or
  // empty/duplicated discrete value lists.
  void validate() const {
    if (classes.empty()) throw std::invalid_argument("schema: empty class list");
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (std::size_t j = i + 1; j < classes.size(); ++j)
        if (classes[i] == classes[j])
          throw std::invalid_argument("schema: duplicate class '" + classes[i] + "'");
    for (std::size_t i = 0; i < attributes.size(); ++i) {
      const auto& a = attributes[i];
      for (std::size_t j = i + 1; j < attributes.size(); ++j)
        if (a.name == attributes[j].name)
          throw std::invalid_argument("schema: duplicate attribute '" + a.name + "'");
      if (!a.continuous()) {
        if (a.values.empty())
          throw std::invalid_argument("schema: attribute '" + a.name + "' has no values");
        for (std::size_t u = 0; u < a.values.size(); ++u)
          for (std::size_t v = u + 1; v < a.values.size(); ++v)
            if (a.values[u] == a.values[v])
              throw std::invalid_argument("schema: attribute '" + a.name +
                                          "' repeats value '" + a.values[u] + "'");
      }
    }
  }
};

// One attribute value of a case. Continuous attributes store the number,
// discrete attributes store the index into the declared value list.
struct Value {
  double number = 0.0;
  int index = -1;
  bool unknown = true;

  static Value of_number(double x) { return {x, -1, false}; }
  static Value of_index(int i) { return {0.0, i, false}; }
  static Value unknown_value() { return {}; }
};

struct Case {
  std::vector<Value> values;  // one per schema attribute
  int class_index = 0;
  double weight = 1.0;  // fractional after unknown-value splitting
};

struct Dataset {
  Schema schema;
  std::vector<Case> cases;

  double total_weight() const {
    double w = 0.0;
    for (const auto& c : cases) w += c.weight;
    return w;
  }
};

// p(D, j) numerators: summed case weight per class.
inline std::vector<double> class_distribution(const Schema& schema,
                                              const std::vector<Case>& cases) {
  std::vector<double> dist(schema.class_count(), 0.0);
  for (const auto& c : cases) dist[static_cast<std::size_t>(c.class_index)] += c.weight;
  return dist;
}

inline std::vector<double> class_distribution(const Dataset& d) {
  return class_distribution(d.schema, d.cases);
}

// argmax with ties broken to the lowest class index
inline int majority_class(const std::vector<double>& dist) {
  int best = 0;
  for (std::size_t j = 1; j < dist.size(); ++j)
    if (dist[j] > dist[best]) best = static_cast<int>(j);
  return best;
}

inline double sum_weights(const std::vector<double>& dist) {
  double w = 0.0;
  for (double x : dist) w += x;
  return w;
}

}  // namespace c45
