#pragma once

#include <string>
#include <vector>

#include "c45/dataset.hpp"
#include "c45/rng.hpp"

namespace testutil {

struct RandomDataOptions {
  int min_cases = 10, max_cases = 60;
  int max_discrete = 3, max_continuous = 2;
  int max_classes = 3;
  bool discrete_only = false;
  bool with_unknowns = false;
  bool distinct_continuous = false;  // guarantees no duplicate vectors
};

inline c45::Dataset random_dataset(c45::Rng& rng, const RandomDataOptions& opt = {}) {
  c45::Dataset d;
  int classes = 2 + static_cast<int>(rng.next_below(opt.max_classes - 1));
  for (int j = 0; j < classes; ++j) d.schema.classes.push_back("c" + std::to_string(j));
  int n_disc = 1 + static_cast<int>(rng.next_below(opt.max_discrete));
  int n_cont = opt.discrete_only ? 0 : static_cast<int>(rng.next_below(opt.max_continuous + 1));
  if (opt.distinct_continuous && n_cont == 0) n_cont = 1;
  for (int a = 0; a < n_disc; ++a) {
    int vals = 2 + static_cast<int>(rng.next_below(3));
    std::vector<std::string> names;
    for (int v = 0; v < vals; ++v) names.push_back("v" + std::to_string(v));
    d.schema.attributes.push_back(
        c45::AttributeDecl::discrete_attr("d" + std::to_string(a), std::move(names)));
  }
  for (int a = 0; a < n_cont; ++a)
    d.schema.attributes.push_back(c45::AttributeDecl::continuous_attr("x" + std::to_string(a)));

  int cases = opt.min_cases +
              static_cast<int>(rng.next_below(opt.max_cases - opt.min_cases + 1));
  for (int i = 0; i < cases; ++i) {
    c45::Case c;
    c.class_index = static_cast<int>(rng.next_below(classes));
    for (const auto& attr : d.schema.attributes) {
      if (opt.with_unknowns && rng.next_double() < 0.1) {
        c.values.push_back(c45::Value::unknown_value());
      } else if (attr.continuous()) {
        double x = opt.distinct_continuous ? static_cast<double>(i) + rng.next_double() * 0.5
                                           : rng.next_double();
        c.values.push_back(c45::Value::of_number(x));
      } else {
        c.values.push_back(
            c45::Value::of_index(static_cast<int>(rng.next_below(attr.values.size()))));
      }
    }
    d.cases.push_back(std::move(c));
  }
  return d;
}

}  // namespace testutil
