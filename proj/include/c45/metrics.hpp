#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "c45/dataset.hpp"
#include "c45/policy.hpp"

namespace c45 {

constexpr double kGainEpsilon = 1e-12;  // gains this close to 0 are 0

// Info(D): class entropy in bits; 0 for empty or single-class sets.
inline double info(std::span<const double> dist) {
  double total = 0.0;
  for (double w : dist) total += w;
  if (total <= 0.0) return 0.0;
  double bits = 0.0;
  for (double w : dist) {
    if (w > 0.0) {
      double p = w / total;
      bits -= p * std::log2(p);
    }
  }
  return bits;
}

inline double info(const std::vector<double>& dist) {
  return info(std::span<const double>(dist));
}

// Gain(D,T) from the parent distribution and the per-outcome distributions.
// Throws when the outcome distributions do not add back up to the parent.
inline double gain(const std::vector<double>& parent_dist,
                   const std::vector<std::vector<double>>& subset_dists) {
  double total = sum_weights(parent_dist);
  for (std::size_t j = 0; j < parent_dist.size(); ++j) {
    double s = 0.0;
    for (const auto& sub : subset_dists) s += sub[j];
    if (std::fabs(s - parent_dist[j]) > 1e-6 * std::max(1.0, total))
      throw std::invalid_argument("gain: subset mass does not match parent distribution");
  }
  double g = info(parent_dist);
  if (total > 0.0) {
    for (const auto& sub : subset_dists) {
      double w = sum_weights(sub);
      if (w > 0.0) g -= (w / total) * info(sub);
    }
  }
  if (std::fabs(g) < kGainEpsilon) g = 0.0;
  return g;
}

// Split(D,T): entropy of the outcome sizes; zero-weight outcomes add 0.
inline double split_info(std::span<const double> subset_weights) {
  return info(subset_weights);
}

inline double split_info(const std::vector<double>& subset_weights) {
  return info(std::span<const double>(subset_weights));
}

// MDL charge for a test on a continuous attribute with N distinct values:
// log2(N-1) bits to name the chosen threshold, spread over the known cases.
// N counts every distinct value, not just the gain-maximizing candidates.
inline double continuous_penalty(int distinct_values, double known_weight) {
  if (distinct_values < 2)
    throw std::invalid_argument("continuous_penalty: need at least 2 distinct values");
  if (known_weight <= 0.0)
    throw std::invalid_argument("continuous_penalty: known weight must be positive");
  return std::log2(static_cast<double>(distinct_values) - 1.0) / known_weight;
}

// One known-valued case of a continuous attribute.
struct ValueSample {
  double value;
  int class_index;
  double weight;
};

namespace detail {

// distinct ascending values with per-class weight totals
struct ValueGroup {
  double value;
  std::vector<double> dist;
  double weight;
};

inline std::vector<ValueGroup> group_by_value(std::vector<ValueSample> samples,
                                              std::size_t class_count) {
  std::sort(samples.begin(), samples.end(),
            [](const ValueSample& a, const ValueSample& b) { return a.value < b.value; });
  std::vector<ValueGroup> groups;
  for (const auto& s : samples) {
    if (groups.empty() || groups.back().value != s.value) {
      groups.push_back({s.value, std::vector<double>(class_count, 0.0), 0.0});
    }
    groups.back().dist[static_cast<std::size_t>(s.class_index)] += s.weight;
    groups.back().weight += s.weight;
  }
  return groups;
}

inline bool jointly_single_class(const ValueGroup& a, const ValueGroup& b) {
  int seen = -1;
  for (std::size_t j = 0; j < a.dist.size(); ++j) {
    if (a.dist[j] > 0.0 || b.dist[j] > 0.0) {
      if (seen >= 0) return false;
      seen = static_cast<int>(j);
    }
  }
  return true;
}

}  // namespace detail

// Midpoints between adjacent distinct values; empty when N < 2.
inline std::vector<double> enumerate_thresholds(const std::vector<ValueSample>& samples,
                                                std::size_t class_count) {
  auto groups = detail::group_by_value(samples, class_count);
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < groups.size(); ++i)
    out.push_back((groups[i].value + groups[i + 1].value) / 2.0);
  return out;
}

// The subset of midpoints that can maximize a convex criterion: midpoints
// whose two adjacent value groups are not jointly single-class.
inline std::vector<double> boundary_thresholds(const std::vector<ValueSample>& samples,
                                               std::size_t class_count) {
  auto groups = detail::group_by_value(samples, class_count);
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < groups.size(); ++i)
    if (!detail::jointly_single_class(groups[i], groups[i + 1]))
      out.push_back((groups[i].value + groups[i + 1].value) / 2.0);
  return out;
}

enum class ThresholdSearch { Boundary, AllMidpoints };

struct BestThreshold {
  bool found = false;       // a positive-gain threshold exists
  double threshold = 0.0;   // midpoint (v_i + v_{i+1}) / 2
  double gain = 0.0;        // over the known cases
  double split_info = 0.0;  // of the two known-case outcomes
  double left_weight = 0.0;
  double right_weight = 0.0;
  int distinct_count = 0;   // N over the known cases
  double known_weight = 0.0;
};

// Best binary test on one continuous attribute. Rel7 maximizes gain ratio,
// the other policies maximize gain; only positive-gain thresholds compete
// and ties go to the smallest threshold. min_side_weight drops thresholds
// whose lighter side falls below the tree's branch-weight floor.
inline BestThreshold best_threshold(const std::vector<ValueSample>& samples,
                                    std::size_t class_count, Policy policy,
                                    double min_side_weight = 0.0,
                                    ThresholdSearch search = ThresholdSearch::Boundary) {
  auto groups = detail::group_by_value(samples, class_count);
  BestThreshold best;
  best.distinct_count = static_cast<int>(groups.size());
  std::vector<double> total(class_count, 0.0);
  for (const auto& g : groups) {
    for (std::size_t j = 0; j < class_count; ++j) total[j] += g.dist[j];
    best.known_weight += g.weight;
  }
  if (groups.size() < 2) return best;

  const double base = info(total);
  const double W = best.known_weight;
  std::vector<double> left(class_count, 0.0);
  std::vector<double> right = total;
  double left_w = 0.0;
  double best_crit = 0.0;
  for (std::size_t i = 0; i + 1 < groups.size(); ++i) {
    for (std::size_t j = 0; j < class_count; ++j) {
      left[j] += groups[i].dist[j];
      right[j] -= groups[i].dist[j];
    }
    left_w += groups[i].weight;
    const double right_w = W - left_w;
    if (search == ThresholdSearch::Boundary &&
        detail::jointly_single_class(groups[i], groups[i + 1]))
      continue;
    if (left_w < min_side_weight || right_w < min_side_weight) continue;
    double g = base - (left_w / W) * info(left) - (right_w / W) * info(right);
    if (std::fabs(g) < kGainEpsilon) g = 0.0;
    if (g <= 0.0) continue;
    double si = split_info(std::vector<double>{left_w, right_w});
    double crit = threshold_by_gain_ratio(policy) ? (si > kGainEpsilon ? g / si : 0.0) : g;
    if (!best.found || crit > best_crit) {
      best.found = true;
      best_crit = crit;
      best.threshold = (groups[i].value + groups[i + 1].value) / 2.0;
      best.gain = g;
      best.split_info = si;
      best.left_weight = left_w;
      best.right_weight = right_w;
    }
  }
  return best;
}

// A fully evaluated candidate test on one attribute.
struct SplitCandidate {
  int attribute_index = -1;
  std::optional<double> threshold;  // present iff continuous
  int outcomes = 0;                 // k: 2 for continuous, declared value count otherwise
  double gain = 0.0;                // scaled by the known-weight fraction
  double split_info = 0.0;          // includes the unknown mass as an extra outcome
  double penalty = 0.0;             // log2(N-1)/known weight; 0 for discrete tests
  double adjusted_gain = 0.0;       // gain - penalty
  double gain_ratio = 0.0;          // ranking ratio, filled in by select_split
  int distinct_count = 0;           // N, continuous only
  double known_weight = 0.0;
  double unknown_weight = 0.0;
  bool trivial = false;             // fewer than 2 non-empty outcomes
  std::vector<double> outcome_weights;  // known weight reaching each outcome

  bool continuous() const { return threshold.has_value(); }
};

// Split information over the known outcome weights plus the unknown mass,
// relative to the full weight of the node.
inline double candidate_split_info(const std::vector<double>& outcome_weights,
                                   double unknown_weight) {
  std::vector<double> parts = outcome_weights;
  if (unknown_weight > 0.0) parts.push_back(unknown_weight);
  return split_info(parts);
}

// A=? test with one outcome per declared value. Gain is computed on the
// known-valued cases and scaled by their weight fraction.
inline SplitCandidate evaluate_discrete_test(const Schema& schema,
                                             const std::vector<Case>& cases,
                                             int attribute_index) {
  const AttributeDecl& attr = schema.attributes[static_cast<std::size_t>(attribute_index)];
  const std::size_t k = attr.values.size();
  const std::size_t C = schema.class_count();
  SplitCandidate cand;
  cand.attribute_index = attribute_index;
  cand.outcomes = static_cast<int>(k);
  std::vector<std::vector<double>> dists(k, std::vector<double>(C, 0.0));
  cand.outcome_weights.assign(k, 0.0);
  std::vector<double> known_dist(C, 0.0);
  double total_weight = 0.0;
  for (const auto& c : cases) {
    total_weight += c.weight;
    const Value& v = c.values[static_cast<std::size_t>(attribute_index)];
    if (v.unknown) {
      cand.unknown_weight += c.weight;
      continue;
    }
    dists[static_cast<std::size_t>(v.index)][static_cast<std::size_t>(c.class_index)] += c.weight;
    cand.outcome_weights[static_cast<std::size_t>(v.index)] += c.weight;
    known_dist[static_cast<std::size_t>(c.class_index)] += c.weight;
    cand.known_weight += c.weight;
  }
  int non_empty = 0;
  for (double w : cand.outcome_weights)
    if (w > 0.0) ++non_empty;
  if (non_empty < 2 || cand.known_weight <= 0.0) {
    cand.trivial = true;
    return cand;
  }
  double g = gain(known_dist, dists);
  cand.gain = g * (cand.known_weight / total_weight);
  if (std::fabs(cand.gain) < kGainEpsilon) cand.gain = 0.0;
  cand.adjusted_gain = cand.gain;
  cand.split_info = candidate_split_info(cand.outcome_weights, cand.unknown_weight);
  return cand;
}

// A<=t test. Returns nothing when the attribute has under two distinct
// known values or no positive-gain threshold survives the side-weight
// floor.
inline std::optional<SplitCandidate> evaluate_continuous_test(
    const Schema& schema, const std::vector<Case>& cases, int attribute_index, Policy policy,
    double min_side_weight = 0.0, ThresholdSearch search = ThresholdSearch::Boundary) {
  std::vector<ValueSample> samples;
  double total_weight = 0.0;
  double unknown_weight = 0.0;
  for (const auto& c : cases) {
    total_weight += c.weight;
    const Value& v = c.values[static_cast<std::size_t>(attribute_index)];
    if (v.unknown)
      unknown_weight += c.weight;
    else
      samples.push_back({v.number, c.class_index, c.weight});
  }
  BestThreshold bt =
      best_threshold(samples, schema.class_count(), policy, min_side_weight, search);
  if (!bt.found) return std::nullopt;
  SplitCandidate cand;
  cand.attribute_index = attribute_index;
  cand.threshold = bt.threshold;
  cand.outcomes = 2;
  cand.distinct_count = bt.distinct_count;
  cand.known_weight = bt.known_weight;
  cand.unknown_weight = unknown_weight;
  cand.outcome_weights = {bt.left_weight, bt.right_weight};
  cand.gain = bt.gain * (bt.known_weight / total_weight);
  if (std::fabs(cand.gain) < kGainEpsilon) cand.gain = 0.0;
  cand.penalty = continuous_penalty(bt.distinct_count, bt.known_weight);
  cand.adjusted_gain = cand.gain - cand.penalty;
  cand.split_info = candidate_split_info(cand.outcome_weights, unknown_weight);
  return cand;
}

// Partition cases by a test's outcomes. A case with an unknown tested value
// descends every outcome with its weight scaled by that outcome's share of
// the known weight; zero-share outcomes get nothing.
inline std::vector<std::vector<Case>> partition_by_test(const Schema& schema,
                                                        const std::vector<Case>& cases,
                                                        const SplitCandidate& test) {
  (void)schema;
  const std::size_t k = static_cast<std::size_t>(test.outcomes);
  std::vector<std::vector<Case>> subsets(k);
  double known_total = 0.0;
  for (double w : test.outcome_weights) known_total += w;
  for (const auto& c : cases) {
    const Value& v = c.values[static_cast<std::size_t>(test.attribute_index)];
    if (v.unknown) {
      if (known_total <= 0.0) continue;
      for (std::size_t i = 0; i < k; ++i) {
        double frac = test.outcome_weights[i] / known_total;
        if (frac > 0.0) {
          Case split = c;
          split.weight = c.weight * frac;
          subsets[i].push_back(std::move(split));
        }
      }
    } else if (test.continuous()) {
      std::size_t side = v.number <= *test.threshold ? 0 : 1;
      subsets[side].push_back(c);
    } else {
      subsets[static_cast<std::size_t>(v.index)].push_back(c);
    }
  }
  return subsets;
}

inline std::vector<std::vector<Case>> partition_by_test(const Dataset& d,
                                                        const SplitCandidate& test) {
  return partition_by_test(d.schema, d.cases, test);
}

}  // namespace c45
