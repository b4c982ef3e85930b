#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "c45/dataset.hpp"
#include "c45/rng.hpp"

namespace c45 {
namespace synth {

// Diabetes-style surrogate: two overlapping classes described by eight
// continuous attributes, four carrying a graded signal and four pure
// noise. Class priors and case count mirror the pima task.
inline Dataset diabetes_like(std::size_t cases = 768, std::uint64_t seed = 20240314) {
  Dataset d;
  d.schema.classes = {"neg", "pos"};
  const double shifts[4] = {1.2, 0.8, 0.5, 0.3};
  for (int i = 0; i < 4; ++i)
    d.schema.attributes.push_back(AttributeDecl::continuous_attr("s" + std::to_string(i + 1)));
  for (int i = 0; i < 4; ++i)
    d.schema.attributes.push_back(AttributeDecl::continuous_attr("n" + std::to_string(i + 1)));
  Rng rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    Case c;
    c.class_index = rng.next_double() < 0.35 ? 1 : 0;
    for (double shift : shifts)
      c.values.push_back(Value::of_number(rng.next_normal() + shift * c.class_index));
    for (int j = 0; j < 4; ++j) c.values.push_back(Value::of_number(rng.next_double()));
    d.cases.push_back(std::move(c));
  }
  return d;
}

// Mixed discrete/continuous task with graded signal strength and label
// noise; a stand-in for the UCI tasks in head-to-head policy runs. The
// continuous attributes are coarse (half-unit readings) so the policies
// start out on comparable footing.
inline Dataset mixed_task(std::size_t cases = 300, std::uint64_t seed = 99,
                          double label_noise = 0.08) {
  Dataset d;
  d.schema.classes = {"a", "b"};
  d.schema.attributes.push_back(AttributeDecl::discrete_attr("d1", {"u", "v", "w"}));
  d.schema.attributes.push_back(AttributeDecl::discrete_attr("d2", {"y", "n"}));
  d.schema.attributes.push_back(AttributeDecl::continuous_attr("z1"));
  d.schema.attributes.push_back(AttributeDecl::continuous_attr("z2"));
  Rng rng(seed);
  auto pick3 = [&](double p0, double p1) {
    double u = rng.next_double();
    return u < p0 ? 0 : (u < p0 + p1 ? 1 : 2);
  };
  auto coarse = [](double x) { return std::floor(x * 2.0 + 0.5) / 2.0; };
  for (std::size_t i = 0; i < cases; ++i) {
    Case c;
    int cls = rng.next_double() < 0.5 ? 0 : 1;
    c.values.push_back(Value::of_index(cls == 0 ? pick3(0.6, 0.3) : pick3(0.1, 0.3)));
    c.values.push_back(Value::of_index(rng.next_double() < (cls == 0 ? 0.7 : 0.3) ? 0 : 1));
    c.values.push_back(Value::of_number(coarse(rng.next_normal() + 1.5 * cls)));
    c.values.push_back(Value::of_number(coarse(rng.next_normal() + 1.0 * cls)));
    if (rng.next_double() < label_noise) cls = 1 - cls;
    c.class_index = cls;
    d.cases.push_back(std::move(c));
  }
  return d;
}

// Two classes separated by the diagonal x1 + x2 <= 1 plus label noise.
// Local thresholds can refine the staircase with more data; a fixed global
// quantization cannot.
inline Dataset diagonal_task(std::size_t cases, std::uint64_t seed, double label_noise = 0.05) {
  Dataset d;
  d.schema.classes = {"lo", "hi"};
  d.schema.attributes.push_back(AttributeDecl::continuous_attr("x1"));
  d.schema.attributes.push_back(AttributeDecl::continuous_attr("x2"));
  Rng rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    Case c;
    double x1 = rng.next_double();
    double x2 = rng.next_double();
    int cls = x1 + x2 <= 1.0 ? 0 : 1;
    if (rng.next_double() < label_noise) cls = 1 - cls;
    c.values.push_back(Value::of_number(x1));
    c.values.push_back(Value::of_number(x2));
    c.class_index = cls;
    d.cases.push_back(std::move(c));
  }
  return d;
}

// One weakly informative two-valued attribute next to one class-independent
// continuous attribute whose values are all distinct. Exercises the MDL
// penalty filter.
inline Dataset penalty_probe(std::size_t cases, std::uint64_t seed, double disc_strength = 0.62) {
  Dataset d;
  d.schema.classes = {"a", "b"};
  d.schema.attributes.push_back(AttributeDecl::discrete_attr("d", {"u", "v"}));
  d.schema.attributes.push_back(AttributeDecl::continuous_attr("noise"));
  Rng rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    Case c;
    int cls = rng.next_double() < 0.5 ? 0 : 1;
    double p = cls == 0 ? disc_strength : 1.0 - disc_strength;
    c.values.push_back(Value::of_index(rng.next_double() < p ? 0 : 1));
    c.values.push_back(Value::of_number(rng.next_double()));
    c.class_index = cls;
    d.cases.push_back(std::move(c));
  }
  return d;
}

// 20 fixed cases on which Rel 7 roots at the continuous attribute while
// Rel 8's penalty re-ranking roots at the discrete one.
inline Dataset policy_divergence_fixture() {
  // class sequence along x = 1..20; best threshold 14.5 has gain 0.3958,
  // the discrete test has gain 0.2781, penalty log2(19)/20 = 0.2124
  static const int cls[20] = {0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1, 1, 1};
  Dataset d;
  d.schema.classes = {"a", "b"};
  d.schema.attributes.push_back(AttributeDecl::discrete_attr("d", {"v1", "v2"}));
  d.schema.attributes.push_back(AttributeDecl::continuous_attr("x"));
  int a_seen = 0, b_seen = 0;
  for (int i = 0; i < 20; ++i) {
    Case c;
    c.class_index = cls[i];
    int dv;
    if (cls[i] == 0)
      dv = a_seen++ < 8 ? 0 : 1;  // 8 of 10 a-cases take v1
    else
      dv = b_seen++ < 2 ? 0 : 1;  // 2 of 10 b-cases take v1
    c.values.push_back(Value::of_index(dv));
    c.values.push_back(Value::of_number(static_cast<double>(i + 1)));
    d.cases.push_back(std::move(c));
  }
  return d;
}

}  // namespace synth
}  // namespace c45
