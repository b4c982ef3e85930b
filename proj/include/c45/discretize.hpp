#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "c45/io.hpp"
#include "c45/metrics.hpp"

namespace c45 {

// Sorted cut points mapping a continuous attribute to w+1 interval values;
// value i covers (cut[i-1], cut[i]] with open outer ends.
struct DiscretizationRule {
  int attribute_index = -1;
  std::vector<double> cut_points;

  std::size_t interval_count() const { return cut_points.size() + 1; }

  std::size_t interval_of(double x) const {
    return static_cast<std::size_t>(
        std::lower_bound(cut_points.begin(), cut_points.end(), x) - cut_points.begin());
  }
};

namespace detail {

struct SegmentStats {
  std::vector<double> dist;
  double weight = 0.0;
  double entropy = 0.0;
  int classes_present = 0;
};

inline SegmentStats segment_stats(const std::vector<ValueGroup>& groups, std::size_t lo,
                                  std::size_t hi, std::size_t class_count) {
  SegmentStats s;
  s.dist.assign(class_count, 0.0);
  for (std::size_t i = lo; i < hi; ++i) {
    for (std::size_t j = 0; j < class_count; ++j) s.dist[j] += groups[i].dist[j];
    s.weight += groups[i].weight;
  }
  s.entropy = info(s.dist);
  for (double w : s.dist)
    if (w > 0.0) ++s.classes_present;
  return s;
}

// Recursive binary entropy splitting with the MDL acceptance test:
// a split of N cases is kept only when its gain exceeds
// [log2(N-1) + log2(3^c - 2) - (c*Ent(S) - c1*Ent(S1) - c2*Ent(S2))] / N.
inline void split_segment(const std::vector<ValueGroup>& groups, std::size_t lo, std::size_t hi,
                          const SegmentStats& stats, std::size_t class_count,
                          std::vector<double>& cuts) {
  if (hi - lo < 2 || stats.classes_present < 2) return;

  std::vector<double> left(class_count, 0.0);
  double left_w = 0.0;
  bool found = false;
  double best_gain = 0.0, best_cut = 0.0;
  std::size_t best_split = lo;
  SegmentStats best_left, best_right;
  for (std::size_t i = lo; i + 1 < hi; ++i) {
    for (std::size_t j = 0; j < class_count; ++j) left[j] += groups[i].dist[j];
    left_w += groups[i].weight;
    if (jointly_single_class(groups[i], groups[i + 1])) continue;
    double right_w = stats.weight - left_w;
    std::vector<double> right(class_count);
    for (std::size_t j = 0; j < class_count; ++j) right[j] = stats.dist[j] - left[j];
    double ent_l = info(left);
    double ent_r = info(right);
    double g = stats.entropy - (left_w / stats.weight) * ent_l - (right_w / stats.weight) * ent_r;
    if (std::fabs(g) < kGainEpsilon) g = 0.0;
    if (g <= 0.0) continue;
    if (!found || g > best_gain) {
      found = true;
      best_gain = g;
      best_cut = (groups[i].value + groups[i + 1].value) / 2.0;
      best_split = i + 1;
      best_left.dist = left;
      best_left.weight = left_w;
      best_left.entropy = ent_l;
      best_right.dist = right;
      best_right.weight = right_w;
      best_right.entropy = ent_r;
    }
  }
  if (!found) return;

  auto count_present = [](const std::vector<double>& d) {
    int n = 0;
    for (double w : d)
      if (w > 0.0) ++n;
    return n;
  };
  best_left.classes_present = count_present(best_left.dist);
  best_right.classes_present = count_present(best_right.dist);
  const double n = stats.weight;
  const double c = stats.classes_present;
  double delta = std::log2(std::pow(3.0, c) - 2.0) -
                 (c * stats.entropy - best_left.classes_present * best_left.entropy -
                  best_right.classes_present * best_right.entropy);
  double threshold_cost = std::max(std::log2(std::max(n - 1.0, 1.0)), 0.0);
  if (best_gain <= (threshold_cost + delta) / n) return;

  cuts.push_back(best_cut);
  split_segment(groups, lo, best_split, best_left, class_count, cuts);
  split_segment(groups, best_split, hi, best_right, class_count, cuts);
}

}  // namespace detail

// Fits one attribute's cut points from known-valued training cases.
inline DiscretizationRule discretize_attribute(const std::vector<ValueSample>& samples,
                                               std::size_t class_count, int attribute_index) {
  DiscretizationRule rule;
  rule.attribute_index = attribute_index;
  auto groups = detail::group_by_value(samples, class_count);
  auto stats = detail::segment_stats(groups, 0, groups.size(), class_count);
  detail::split_segment(groups, 0, groups.size(), stats, class_count, rule.cut_points);
  std::sort(rule.cut_points.begin(), rule.cut_points.end());
  return rule;
}

// One rule per continuous attribute, fitted on the known values of the
// given training cases only.
inline std::vector<DiscretizationRule> fit_rules(const Schema& schema,
                                                 const std::vector<Case>& training_cases) {
  std::vector<DiscretizationRule> rules;
  for (std::size_t i = 0; i < schema.attributes.size(); ++i) {
    if (!schema.attributes[i].continuous()) continue;
    std::vector<ValueSample> samples;
    for (const auto& c : training_cases) {
      const Value& v = c.values[i];
      if (!v.unknown) samples.push_back({v.number, c.class_index, c.weight});
    }
    rules.push_back(discretize_attribute(samples, schema.class_count(), static_cast<int>(i)));
  }
  return rules;
}

// ".." separates the interval ends: a comma would collide with the
// comma-separated .names/.data syntax these names are written into.
inline std::string interval_name(const DiscretizationRule& rule, std::size_t i) {
  std::string lo = i == 0 ? "-inf" : format_double(rule.cut_points[i - 1]);
  std::string hi = i == rule.cut_points.size() ? "+inf" : format_double(rule.cut_points[i]);
  if (i == rule.cut_points.size()) return "(" + lo + ".." + hi + ")";
  return "(" + lo + ".." + hi + "]";
}

// Rewrites every continuous attribute to a discrete attribute whose values
// are the rule's intervals. Unknown stays unknown; out-of-range values land
// in the end intervals. Requires exactly one rule per continuous attribute.
inline Dataset apply_rules(const Dataset& d, const std::vector<DiscretizationRule>& rules) {
  std::vector<const DiscretizationRule*> by_attr(d.schema.attributes.size(), nullptr);
  for (const auto& r : rules) {
    if (r.attribute_index < 0 ||
        static_cast<std::size_t>(r.attribute_index) >= d.schema.attributes.size() ||
        !d.schema.attributes[static_cast<std::size_t>(r.attribute_index)].continuous() ||
        by_attr[static_cast<std::size_t>(r.attribute_index)])
      throw std::invalid_argument("apply_rules: rule/attribute mismatch");
    by_attr[static_cast<std::size_t>(r.attribute_index)] = &r;
  }
  for (std::size_t i = 0; i < d.schema.attributes.size(); ++i)
    if (d.schema.attributes[i].continuous() && !by_attr[i])
      throw std::invalid_argument("apply_rules: no rule for continuous attribute '" +
                                  d.schema.attributes[i].name + "'");

  Dataset out;
  out.schema.classes = d.schema.classes;
  for (std::size_t i = 0; i < d.schema.attributes.size(); ++i) {
    const auto& attr = d.schema.attributes[i];
    if (!attr.continuous()) {
      out.schema.attributes.push_back(attr);
      continue;
    }
    std::vector<std::string> names;
    for (std::size_t v = 0; v < by_attr[i]->interval_count(); ++v)
      names.push_back(interval_name(*by_attr[i], v));
    out.schema.attributes.push_back(AttributeDecl::discrete_attr(attr.name, std::move(names)));
  }
  out.cases.reserve(d.cases.size());
  for (const auto& c : d.cases) {
    Case nc;
    nc.class_index = c.class_index;
    nc.weight = c.weight;
    nc.values.reserve(c.values.size());
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      const Value& v = c.values[i];
      if (v.unknown || !by_attr[i]) {
        nc.values.push_back(v);
      } else {
        nc.values.push_back(Value::of_index(static_cast<int>(by_attr[i]->interval_of(v.number))));
      }
    }
    out.cases.push_back(std::move(nc));
  }
  return out;
}

inline std::string rules_to_json(const std::vector<DiscretizationRule>& rules,
                                 const Schema& schema, const nlohmann::json& meta = {}) {
  nlohmann::json j;
  j["format"] = "c45-rules";
  j["version"] = 1;
  if (!meta.is_null() && !meta.empty()) j["meta"] = meta;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rules) {
    nlohmann::json rj;
    rj["attribute"] = schema.attributes[static_cast<std::size_t>(r.attribute_index)].name;
    rj["index"] = r.attribute_index;
    rj["cuts"] = r.cut_points;
    arr.push_back(std::move(rj));
  }
  j["rules"] = std::move(arr);
  return j.dump(2) + "\n";
}

inline std::vector<DiscretizationRule> rules_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("format") != "c45-rules" || j.at("version").get<int>() != 1)
    throw std::runtime_error("unsupported rules format");
  std::vector<DiscretizationRule> rules;
  for (const auto& rj : j.at("rules")) {
    DiscretizationRule r;
    r.attribute_index = rj.at("index").get<int>();
    r.cut_points = rj.at("cuts").get<std::vector<double>>();
    rules.push_back(std::move(r));
  }
  return rules;
}

}  // namespace c45
