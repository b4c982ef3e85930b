#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "c45/io.hpp"
#include "c45/metrics.hpp"
#include "c45/policy.hpp"

namespace c45 {

struct GrowParams {
  Policy policy = Policy::Rel8;
  double min_split_weight = 2.0;   // each of >=2 outcomes must carry this much
  double prune_confidence = 0.25;  // CF for the pessimistic error bound
  bool pruning_enabled = true;
};

// Internal test node or leaf. Every node keeps the training distribution
// that reached it; class_index is the majority (fallback) class.
struct TreeNode {
  bool leaf = true;
  int class_index = 0;
  std::vector<double> dist;
  double weight = 0.0;
  SplitCandidate test;             // meaningful iff !leaf
  std::vector<TreeNode> children;  // outcome order; true/false for continuous
};

inline int tree_size(const TreeNode& node) {
  int n = 1;
  for (const auto& c : node.children) n += tree_size(c);
  return n;
}

// Evaluates every attribute under the policy and picks the ranking winner.
//
// Candidates with nonpositive gain are dropped; 7GS and Rel8 additionally
// drop continuous tests whose best gain does not cover the MDL penalty.
// Among survivors with at least average ranking gain (adjusted gain under
// Rel8, raw gain otherwise) the test with maximum gain ratio wins; ties go
// to the lowest attribute index.
inline std::optional<SplitCandidate> select_split(const Schema& schema,
                                                  const std::vector<Case>& cases,
                                                  const GrowParams& params) {
  std::vector<SplitCandidate> survivors;
  for (std::size_t i = 0; i < schema.attributes.size(); ++i) {
    const int ai = static_cast<int>(i);
    if (schema.attributes[i].continuous()) {
      auto cand = evaluate_continuous_test(schema, cases, ai, params.policy,
                                           params.min_split_weight);
      if (!cand) continue;
      if (cand->gain <= 0.0) continue;
      if (penalty_filters(params.policy) && cand->adjusted_gain <= 0.0) continue;
      survivors.push_back(std::move(*cand));
    } else {
      SplitCandidate cand = evaluate_discrete_test(schema, cases, ai);
      if (cand.trivial || cand.gain <= 0.0) continue;
      int heavy = 0;
      for (double w : cand.outcome_weights)
        if (w >= params.min_split_weight) ++heavy;
      if (heavy < 2) continue;
      survivors.push_back(std::move(cand));
    }
  }
  if (survivors.empty()) return std::nullopt;

  auto rank_gain = [&](const SplitCandidate& c) {
    return (penalty_reranks(params.policy) && c.continuous()) ? c.adjusted_gain : c.gain;
  };
  double avg = 0.0;
  for (const auto& c : survivors) avg += rank_gain(c);
  avg /= static_cast<double>(survivors.size());

  const SplitCandidate* best = nullptr;
  double best_ratio = 0.0;
  for (auto& c : survivors) {
    double g = rank_gain(c);
    if (g + 1e-9 < avg) continue;
    double ratio = c.split_info > kGainEpsilon ? g / c.split_info : 0.0;
    c.gain_ratio = ratio;
    if (!best || ratio > best_ratio) {
      best = &c;
      best_ratio = ratio;
    }
  }
  if (!best) return std::nullopt;
  return *best;
}

namespace detail {

inline TreeNode make_leaf(std::vector<double> dist, double weight, int class_index) {
  TreeNode n;
  n.leaf = true;
  n.dist = std::move(dist);
  n.weight = weight;
  n.class_index = class_index;
  return n;
}

inline bool single_class(const std::vector<double>& dist) {
  int present = 0;
  for (double w : dist)
    if (w > 0.0) ++present;
  return present <= 1;
}

}  // namespace detail

// Divide and conquer. Leaves form on single-class sets, sets lighter than
// twice the split floor, and sets where no test survives selection. Empty
// outcome subsets become leaves that predict the parent majority.
inline TreeNode grow(const Schema& schema, const std::vector<Case>& cases,
                     const GrowParams& params) {
  std::vector<double> dist = class_distribution(schema, cases);
  const double weight = sum_weights(dist);
  const int majority = majority_class(dist);
  if (detail::single_class(dist) || weight < 2.0 * params.min_split_weight)
    return detail::make_leaf(std::move(dist), weight, majority);
  auto test = select_split(schema, cases, params);
  if (!test) return detail::make_leaf(std::move(dist), weight, majority);

  auto subsets = partition_by_test(schema, cases, *test);
  TreeNode node;
  node.leaf = false;
  node.class_index = majority;
  node.dist = std::move(dist);
  node.weight = weight;
  node.test = *test;
  node.children.reserve(subsets.size());
  for (const auto& subset : subsets) {
    if (subset.empty()) {
      node.children.push_back(
          detail::make_leaf(std::vector<double>(schema.class_count(), 0.0), 0.0, majority));
    } else {
      node.children.push_back(grow(schema, subset, params));
    }
  }
  return node;
}

inline TreeNode grow(const Dataset& d, const GrowParams& params) {
  return grow(d.schema, d.cases, params);
}

// ---- pessimistic error-based pruning ----------------------------------

namespace detail {

// Coefficient for the confidence level: squared normal deviate,
// interpolated from the Documenta Geigy table as in C4.5.
inline double confidence_coefficient(double cf) {
  static const double val[] = {0, 0.001, 0.005, 0.01, 0.05, 0.10, 0.20, 0.40, 1.00};
  static const double dev[] = {4.0, 3.09, 2.58, 2.33, 1.65, 1.28, 0.84, 0.25, 0.00};
  int i = 0;
  while (cf > val[i]) ++i;
  if (i == 0) return dev[0] * dev[0];
  double c = dev[i - 1] + (dev[i] - dev[i - 1]) * (cf - val[i - 1]) / (val[i] - val[i - 1]);
  return c * c;
}

// Additional errors if the observed rate e/n rises to the upper confidence
// limit (binomial upper bound at the cf level, C4.5 form).
inline double added_errors(double n, double e, double cf, double coeff) {
  if (n <= 0.0) return 0.0;
  if (e < 1e-6) return n * (1.0 - std::exp(std::log(cf) / n));
  if (e < 0.9999) {
    double v0 = n * (1.0 - std::exp(std::log(cf) / n));
    return v0 + e * (added_errors(n, 1.0, cf, coeff) - v0);
  }
  if (e + 0.5 >= n) return 0.67 * (n - e);
  double pr = (e + 0.5 + coeff / 2.0 +
               std::sqrt(coeff * ((e + 0.5) * (1.0 - (e + 0.5) / n) + coeff / 4.0))) /
              (n + coeff);
  return n * pr - e;
}

struct PruneOutcome {
  TreeNode node;
  double errors;
};

// Estimated errors of a subtree kept as-is when `cases` are routed through
// it: the sum of the leaves' pessimistic estimates on the redistributed
// data. Used to probe branch raising without rebuilding anything.
inline double subtree_error_estimate(const TreeNode& node, const Schema& schema,
                                     const std::vector<Case>& cases, double cf, double coeff) {
  std::vector<double> dist = class_distribution(schema, cases);
  const double weight = sum_weights(dist);
  if (node.leaf || weight <= 0.0) {
    if (weight <= 0.0) return 0.0;
    const double misses = weight - dist[static_cast<std::size_t>(majority_class(dist))];
    return misses + added_errors(weight, misses, cf, coeff);
  }
  auto subsets = partition_by_test(schema, cases, node.test);
  double errors = 0.0;
  for (std::size_t i = 0; i < subsets.size(); ++i)
    errors += subtree_error_estimate(node.children[i], schema, subsets[i], cf, coeff);
  return errors;
}

// Rebuilds the subtree bottom-up against the cases routed to it. A subtree
// is replaced by a leaf, or by its heaviest branch re-fitted on all the
// cases, when the replacement's estimated error does not exceed its own.
// Distributions are recomputed from the supplied cases throughout, which
// makes the pass idempotent.
inline PruneOutcome prune_rec(const TreeNode& node, const Schema& schema,
                              const std::vector<Case>& cases, double cf, double coeff) {
  std::vector<double> dist = class_distribution(schema, cases);
  const double weight = sum_weights(dist);
  const int majority = weight > 0.0 ? majority_class(dist) : node.class_index;
  const double misses = weight - (weight > 0.0 ? dist[static_cast<std::size_t>(majority)] : 0.0);
  const double leaf_errors = misses + added_errors(weight, misses, cf, coeff);
  if (node.leaf || weight <= 0.0)
    return {make_leaf(std::move(dist), weight, majority), node.leaf ? leaf_errors : 0.0};

  auto subsets = partition_by_test(schema, cases, node.test);
  std::vector<TreeNode> children;
  children.reserve(subsets.size());
  double tree_errors = 0.0;
  std::size_t heaviest = 0;
  double heaviest_weight = -1.0;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    double w = 0.0;
    for (const auto& c : subsets[i]) w += c.weight;
    if (w > heaviest_weight) {
      heaviest_weight = w;
      heaviest = i;
    }
    auto out = prune_rec(node.children[i], schema, subsets[i], cf, coeff);
    tree_errors += out.errors;
    children.push_back(std::move(out.node));
  }
  const double branch_errors =
      subtree_error_estimate(children[heaviest], schema, cases, cf, coeff);

  if (leaf_errors <= branch_errors + 0.1 && leaf_errors <= tree_errors + 0.1)
    return {make_leaf(std::move(dist), weight, majority), leaf_errors};
  if (branch_errors <= tree_errors + 0.1)
    return prune_rec(children[heaviest], schema, cases, cf, coeff);

  TreeNode kept;
  kept.leaf = false;
  kept.class_index = majority;
  kept.dist = std::move(dist);
  kept.weight = weight;
  kept.test = node.test;
  kept.children = std::move(children);
  return {std::move(kept), tree_errors};
}

}  // namespace detail

inline TreeNode prune(const TreeNode& tree, const Schema& schema,
                      const std::vector<Case>& training_cases, const GrowParams& params) {
  double coeff = detail::confidence_coefficient(params.prune_confidence);
  return detail::prune_rec(tree, schema, training_cases, params.prune_confidence, coeff).node;
}

inline TreeNode grow_and_prune(const Schema& schema, const std::vector<Case>& cases,
                               const GrowParams& params) {
  TreeNode t = grow(schema, cases, params);
  if (params.pruning_enabled) t = prune(t, schema, cases, params);
  return t;
}

// ---- classification ----------------------------------------------------

namespace detail {

inline std::vector<double> leaf_probabilities(const TreeNode& node) {
  std::vector<double> p(node.dist.size(), 0.0);
  if (node.weight > 0.0) {
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = node.dist[j] / node.weight;
  } else {
    p[static_cast<std::size_t>(node.class_index)] = 1.0;
  }
  return p;
}

inline std::vector<double> class_probabilities(const TreeNode& node, const Case& c) {
  if (node.leaf) return leaf_probabilities(node);
  const Value& v = c.values[static_cast<std::size_t>(node.test.attribute_index)];
  if (!v.unknown) {
    std::size_t child = node.test.continuous()
                            ? (v.number <= *node.test.threshold ? 0u : 1u)
                            : static_cast<std::size_t>(v.index);
    return class_probabilities(node.children[child], c);
  }
  // unknown tested value: blend children by their training weight share
  double total = 0.0;
  for (const auto& ch : node.children) total += ch.weight;
  if (total <= 0.0) return leaf_probabilities(node);
  std::vector<double> p(node.dist.size(), 0.0);
  for (const auto& ch : node.children) {
    if (ch.weight <= 0.0) continue;
    auto sub = class_probabilities(ch, c);
    double share = ch.weight / total;
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += share * sub[j];
  }
  return p;
}

}  // namespace detail

struct Classification {
  int class_index;
  std::vector<double> probabilities;
};

inline Classification classify(const TreeNode& tree, const Case& c) {
  auto p = detail::class_probabilities(tree, c);
  int best = 0;
  for (std::size_t j = 1; j < p.size(); ++j)
    if (p[j] > p[static_cast<std::size_t>(best)]) best = static_cast<int>(j);
  return {best, std::move(p)};
}

// Misclassified weight fraction of `cases`, in percent.
inline double error_percent(const TreeNode& tree, const std::vector<Case>& cases) {
  double wrong = 0.0, total = 0.0;
  for (const auto& c : cases) {
    total += c.weight;
    if (classify(tree, c).class_index != c.class_index) wrong += c.weight;
  }
  return total > 0.0 ? 100.0 * wrong / total : 0.0;
}

// ---- serialization -----------------------------------------------------

namespace detail {

inline void append_tree_text(const TreeNode& node, const Schema& schema, int depth,
                             std::string& out) {
  auto indent = [&](int d) {
    for (int i = 0; i < d; ++i) out += "|   ";
  };
  if (node.leaf) {
    out += ' ';
    out += schema.classes[static_cast<std::size_t>(node.class_index)];
    out += " (";
    out += format_double(node.weight);
    out += ")\n";
    return;
  }
  const AttributeDecl& attr = schema.attributes[static_cast<std::size_t>(node.test.attribute_index)];
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    indent(depth);
    out += attr.name;
    if (node.test.continuous()) {
      out += i == 0 ? " <= " : " > ";
      out += format_double(*node.test.threshold);
    } else {
      out += " = ";
      out += attr.values[i];
    }
    out += " :";
    if (node.children[i].leaf) {
      append_tree_text(node.children[i], schema, depth + 1, out);
    } else {
      out += '\n';
      append_tree_text(node.children[i], schema, depth + 1, out);
    }
  }
}

inline nlohmann::json node_to_json(const TreeNode& node) {
  nlohmann::json j;
  j["leaf"] = node.leaf;
  j["class"] = node.class_index;
  j["dist"] = node.dist;
  j["weight"] = node.weight;
  if (!node.leaf) {
    j["attr"] = node.test.attribute_index;
    if (node.test.continuous()) j["threshold"] = *node.test.threshold;
    j["outcomes"] = node.test.outcomes;
    nlohmann::json kids = nlohmann::json::array();
    for (const auto& c : node.children) kids.push_back(node_to_json(c));
    j["children"] = std::move(kids);
  }
  return j;
}

inline TreeNode node_from_json(const nlohmann::json& j) {
  TreeNode n;
  n.leaf = j.at("leaf").get<bool>();
  n.class_index = j.at("class").get<int>();
  n.dist = j.at("dist").get<std::vector<double>>();
  n.weight = j.at("weight").get<double>();
  if (!n.leaf) {
    n.test.attribute_index = j.at("attr").get<int>();
    if (j.contains("threshold")) n.test.threshold = j.at("threshold").get<double>();
    n.test.outcomes = j.at("outcomes").get<int>();
    n.test.outcome_weights.clear();
    for (const auto& cj : j.at("children")) {
      TreeNode child = node_from_json(cj);
      n.test.outcome_weights.push_back(child.weight);
      n.children.push_back(std::move(child));
    }
  }
  return n;
}

}  // namespace detail

// Indented display form, one line per branch.
inline std::string tree_to_text(const TreeNode& tree, const Schema& schema) {
  std::string out;
  if (tree.leaf) {
    out += schema.classes[static_cast<std::size_t>(tree.class_index)];
    out += " (";
    out += format_double(tree.weight);
    out += ")\n";
    return out;
  }
  detail::append_tree_text(tree, schema, 0, out);
  return out;
}

// Versioned structured form; parse(serialize(t)) reproduces t.
inline std::string tree_to_json(const TreeNode& tree, const Schema& schema,
                                const nlohmann::json& meta = {}) {
  nlohmann::json j;
  j["format"] = "c45-tree";
  j["version"] = 1;
  j["classes"] = schema.classes;
  if (!meta.is_null() && !meta.empty()) j["meta"] = meta;
  j["root"] = detail::node_to_json(tree);
  return j.dump(2) + "\n";
}

inline TreeNode tree_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("format") != "c45-tree" || j.at("version").get<int>() != 1)
    throw std::runtime_error("unsupported tree format");
  return detail::node_from_json(j.at("root"));
}

}  // namespace c45
