#pragma once

// Independent oracles for the criterion mathematics. Everything here is
// computed from scratch in long double with natural logs so it shares no
// code path with the library implementation it checks.

#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

#include "c45/metrics.hpp"

namespace oracle {

inline double info_bits(const std::vector<double>& dist) {
  long double total = 0.0L;
  for (double w : dist) total += static_cast<long double>(w);
  if (total <= 0.0L) return 0.0;
  long double nats = 0.0L;
  for (double w : dist) {
    if (w > 0.0) {
      long double p = static_cast<long double>(w) / total;
      nats -= p * std::log(p);
    }
  }
  return static_cast<double>(nats / std::log(2.0L));
}

inline double gain_bits(const std::vector<double>& parent,
                        const std::vector<std::vector<double>>& subsets) {
  long double total = 0.0L;
  for (double w : parent) total += static_cast<long double>(w);
  long double g = static_cast<long double>(info_bits(parent));
  for (const auto& sub : subsets) {
    long double w = 0.0L;
    for (double x : sub) w += static_cast<long double>(x);
    if (w > 0.0L && total > 0.0L)
      g -= (w / total) * static_cast<long double>(info_bits(sub));
  }
  return static_cast<double>(g);
}

inline double split_bits(const std::vector<double>& weights) { return info_bits(weights); }

struct BestCut {
  bool found = false;
  double threshold = 0.0;
  double gain = 0.0;
  double criterion = 0.0;
};

// Exhaustive search over every midpoint between adjacent distinct values,
// maximizing gain or gain ratio over positive-gain cuts, smallest
// threshold on ties.
inline BestCut best_threshold_bruteforce(const std::vector<c45::ValueSample>& samples,
                                         std::size_t class_count, bool by_ratio) {
  std::map<double, std::vector<double>> groups;
  for (const auto& s : samples) {
    auto& d = groups[s.value];
    if (d.empty()) d.assign(class_count, 0.0);
    d[static_cast<std::size_t>(s.class_index)] += s.weight;
  }
  std::vector<double> values;
  std::vector<std::vector<double>> dists;
  for (const auto& [v, d] : groups) {
    values.push_back(v);
    dists.push_back(d);
  }
  std::vector<double> total(class_count, 0.0);
  for (const auto& d : dists)
    for (std::size_t j = 0; j < class_count; ++j) total[j] += d[j];
  double whole = 0.0;
  for (double w : total) whole += w;

  BestCut best;
  std::vector<double> left(class_count, 0.0);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    for (std::size_t j = 0; j < class_count; ++j) left[j] += dists[i][j];
    std::vector<double> right(class_count);
    double lw = 0.0;
    for (std::size_t j = 0; j < class_count; ++j) {
      right[j] = total[j] - left[j];
      lw += left[j];
    }
    double g = gain_bits(total, {left, right});
    if (std::fabs(g) < 1e-12) g = 0.0;
    if (g <= 0.0) continue;
    double si = split_bits({lw, whole - lw});
    double crit = by_ratio ? g / si : g;
    if (!best.found || crit > best.criterion) {
      best.found = true;
      best.criterion = crit;
      best.threshold = (values[i] + values[i + 1]) / 2.0;
      best.gain = g;
    }
  }
  return best;
}

// Direct evaluation of the recursive entropy-split stopping rule on one
// segment: returns true when the best binary split must be accepted.
struct SegmentDecision {
  bool accept = false;
  double cut = 0.0;
};

inline SegmentDecision mdl_top_decision(const std::vector<c45::ValueSample>& samples,
                                        std::size_t class_count) {
  std::map<double, std::vector<double>> groups;
  for (const auto& s : samples) {
    auto& d = groups[s.value];
    if (d.empty()) d.assign(class_count, 0.0);
    d[static_cast<std::size_t>(s.class_index)] += s.weight;
  }
  std::vector<double> values;
  std::vector<std::vector<double>> dists;
  for (const auto& [v, d] : groups) {
    values.push_back(v);
    dists.push_back(d);
  }
  std::vector<double> total(class_count, 0.0);
  double n = 0.0;
  for (const auto& d : dists)
    for (std::size_t j = 0; j < class_count; ++j) {
      total[j] += d[j];
      n += d[j];
    }

  SegmentDecision out;
  double best_gain = 0.0;
  std::vector<double> best_left, best_right;
  std::vector<double> left(class_count, 0.0);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    for (std::size_t j = 0; j < class_count; ++j) left[j] += dists[i][j];
    std::vector<double> right(class_count);
    for (std::size_t j = 0; j < class_count; ++j) right[j] = total[j] - left[j];
    double g = gain_bits(total, {left, right});
    if (g > best_gain) {
      best_gain = g;
      out.cut = (values[i] + values[i + 1]) / 2.0;
      best_left = left;
      best_right = right;
    }
  }
  if (best_gain <= 0.0) return out;

  auto present = [](const std::vector<double>& d) {
    int c = 0;
    for (double w : d)
      if (w > 0.0) ++c;
    return static_cast<double>(c);
  };
  double c = present(total), c1 = present(best_left), c2 = present(best_right);
  double delta = std::log2(std::pow(3.0, c) - 2.0) -
                 (c * info_bits(total) - c1 * info_bits(best_left) - c2 * info_bits(best_right));
  out.accept = best_gain > (std::log2(n - 1.0) + delta) / n;
  return out;
}

}  // namespace oracle
