#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "c45/discretize.hpp"
#include "c45/rng.hpp"
#include "c45/tree.hpp"

namespace c45 {

// Seed streams. Fold plans for repeat r use derive_seed(seed, r), matching
// the documented rule splitmix64(seed XOR r); augmentation attribute t uses
// the disjoint tag range below so the two stream families never collide.
constexpr std::uint64_t kAugmentStreamTag = 0x41554700ULL;

struct FoldPlan {
  std::uint64_t seed = 0;
  int repeat_index = 0;
  std::vector<int> assignments;  // per-case fold index in [0, k)
};

// Per class, cases are shuffled by the seeded generator and dealt
// round-robin; the dealing cursor persists across classes so both fold
// sizes and per-class fold counts differ by at most one.
inline FoldPlan stratified_folds(const Dataset& d, int k, std::uint64_t seed,
                                 int repeat_index = 0) {
  if (k < 2) throw std::invalid_argument("stratified_folds: need k >= 2");
  if (static_cast<std::size_t>(k) > d.cases.size())
    throw std::invalid_argument("stratified_folds: k exceeds case count");
  FoldPlan plan;
  plan.seed = seed;
  plan.repeat_index = repeat_index;
  plan.assignments.assign(d.cases.size(), 0);
  Rng rng(seed);
  std::size_t cursor = 0;
  for (std::size_t cls = 0; cls < d.schema.class_count(); ++cls) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < d.cases.size(); ++i)
      if (static_cast<std::size_t>(d.cases[i].class_index) == cls) members.push_back(i);
    rng.shuffle(members);
    for (std::size_t idx : members) {
      plan.assignments[idx] = static_cast<int>(cursor % static_cast<std::size_t>(k));
      ++cursor;
    }
  }
  return plan;
}

struct RepeatResult {
  double error_percent = 0.0;
  double mean_tree_size = 0.0;
};

// One complete k-fold pass under a fixed plan: train on k-1 folds, test on
// the held-out fold, pool the misclassified weight.
inline RepeatResult evaluate_fold_plan(const Dataset& d, const FoldPlan& plan, int k,
                                       const GrowParams& params) {
  double wrong = 0.0, total = 0.0, size_sum = 0.0;
  for (int f = 0; f < k; ++f) {
    std::vector<Case> train, test;
    for (std::size_t i = 0; i < d.cases.size(); ++i) {
      if (plan.assignments[i] == f)
        test.push_back(d.cases[i]);
      else
        train.push_back(d.cases[i]);
    }
    TreeNode tree = grow_and_prune(d.schema, train, params);
    size_sum += tree_size(tree);
    for (const auto& c : test) {
      total += c.weight;
      if (classify(tree, c).class_index != c.class_index) wrong += c.weight;
    }
  }
  RepeatResult r;
  r.error_percent = total > 0.0 ? 100.0 * wrong / total : 0.0;
  r.mean_tree_size = size_sum / static_cast<double>(k);
  return r;
}

inline std::vector<RepeatResult> cross_validate(const Dataset& d, const GrowParams& params,
                                                int k, int repeats, std::uint64_t seed) {
  std::vector<RepeatResult> out;
  out.reserve(static_cast<std::size_t>(repeats));
  for (int r = 0; r < repeats; ++r) {
    FoldPlan plan = stratified_folds(d, k, derive_seed(seed, static_cast<std::uint64_t>(r)), r);
    out.push_back(evaluate_fold_plan(d, plan, k, params));
  }
  return out;
}

// Appends irrelevant attributes: n_cont uniform [0,1) continuous ones and
// n_disc discrete ones with disc_card equiprobable values. Each added
// attribute draws from its own substream, so existing columns and the
// other additions are untouched by any single change.
inline Dataset augment_irrelevant(const Dataset& d, int n_cont, int n_disc, int disc_card,
                                  std::uint64_t seed) {
  Dataset out = d;
  int ordinal = 0;
  for (int a = 0; a < n_cont; ++a, ++ordinal) {
    Rng rng(derive_seed(seed, kAugmentStreamTag + static_cast<std::uint64_t>(ordinal)));
    out.schema.attributes.push_back(
        AttributeDecl::continuous_attr("rand_irr_c" + std::to_string(a)));
    for (auto& c : out.cases) c.values.push_back(Value::of_number(rng.next_double()));
  }
  for (int a = 0; a < n_disc; ++a, ++ordinal) {
    Rng rng(derive_seed(seed, kAugmentStreamTag + static_cast<std::uint64_t>(ordinal)));
    std::vector<std::string> values;
    for (int v = 1; v <= disc_card; ++v) values.push_back("v" + std::to_string(v));
    out.schema.attributes.push_back(
        AttributeDecl::discrete_attr("rand_irr_d" + std::to_string(a), std::move(values)));
    for (auto& c : out.cases)
      c.values.push_back(
          Value::of_index(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(disc_card)))));
  }
  return out;
}

// ---- comparison reports --------------------------------------------------

struct SeriesStats {
  std::string label;
  std::vector<RepeatResult> repeats;
  double mean_error = 0.0, se_error = 0.0;
  double mean_size = 0.0, se_size = 0.0;
};

struct PairComparison {
  std::size_t baseline = 0, treatment = 0;  // indices into series
  int wins = 0, draws = 0, losses = 0;      // treatment vs baseline, per repeat
  double error_ratio = 1.0, size_ratio = 1.0;
};

struct CvReport {
  std::string dataset_name;
  int folds = 10, repeats = 10;
  std::uint64_t seed = 0;
  std::string config;  // echoed into file headers
  std::vector<SeriesStats> series;
  std::vector<PairComparison> pairs;
};

namespace detail {

inline void fill_summary(SeriesStats& s) {
  const double n = static_cast<double>(s.repeats.size());
  if (n == 0) return;
  double me = 0.0, ms = 0.0;
  for (const auto& r : s.repeats) {
    me += r.error_percent;
    ms += r.mean_tree_size;
  }
  me /= n;
  ms /= n;
  double ve = 0.0, vs = 0.0;
  for (const auto& r : s.repeats) {
    ve += (r.error_percent - me) * (r.error_percent - me);
    vs += (r.mean_tree_size - ms) * (r.mean_tree_size - ms);
  }
  s.mean_error = me;
  s.mean_size = ms;
  s.se_error = n > 1 ? std::sqrt(ve / (n - 1.0) / n) : 0.0;
  s.se_size = n > 1 ? std::sqrt(vs / (n - 1.0) / n) : 0.0;
}

// draws use error rates rounded to 4 decimals to absorb float noise
inline long long rounded_error(double e) { return std::llround(e * 1e4); }

inline PairComparison compare_series(const std::vector<SeriesStats>& series, std::size_t base,
                                     std::size_t treat) {
  PairComparison p;
  p.baseline = base;
  p.treatment = treat;
  const auto& b = series[base];
  const auto& t = series[treat];
  for (std::size_t r = 0; r < b.repeats.size(); ++r) {
    long long eb = rounded_error(b.repeats[r].error_percent);
    long long et = rounded_error(t.repeats[r].error_percent);
    if (et < eb)
      ++p.wins;
    else if (et == eb)
      ++p.draws;
    else
      ++p.losses;
  }
  auto ratio = [](double num, double den) {
    if (den == 0.0) return num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return num / den;
  };
  p.error_ratio = ratio(t.mean_error, b.mean_error);
  p.size_ratio = ratio(t.mean_size, b.mean_size);
  return p;
}

}  // namespace detail

// Runs every policy on the same fold plans and compares each later-listed
// policy against each earlier one (Table-1 shape: treatment/baseline).
inline CvReport compare_policies(const Dataset& d, const std::vector<Policy>& policies,
                                 const GrowParams& base_params, int k, int repeats,
                                 std::uint64_t seed) {
  if (policies.size() < 2)
    throw std::invalid_argument("compare_policies: need at least 2 policies");
  std::vector<FoldPlan> plans;
  for (int r = 0; r < repeats; ++r)
    plans.push_back(stratified_folds(d, k, derive_seed(seed, static_cast<std::uint64_t>(r)), r));

  CvReport report;
  report.folds = k;
  report.repeats = repeats;
  report.seed = seed;
  for (Policy p : policies) {
    SeriesStats s;
    s.label = policy_name(p);
    GrowParams params = base_params;
    params.policy = p;
    for (const auto& plan : plans) s.repeats.push_back(evaluate_fold_plan(d, plan, k, params));
    detail::fill_summary(s);
    report.series.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < report.series.size(); ++i)
    for (std::size_t j = i + 1; j < report.series.size(); ++j)
      report.pairs.push_back(detail::compare_series(report.series, i, j));
  return report;
}

// ---- global-discretization experiment ------------------------------------

struct FoldAudit {
  int repeat = 0, fold = 0;
  std::size_t train_cases = 0, test_cases = 0;
  std::size_t total_cuts = 0;
  std::uint64_t rules_hash = 0;
};

struct DiscrReport {
  CvReport cv;  // series[0] = local-threshold baseline, series[1] = "discr"
  std::vector<FoldAudit> audits;
  std::size_t case_count = 0;
  double error_ratio = 1.0;  // discr / baseline: one Figure-2 point
};

inline std::uint64_t rules_fingerprint(const std::vector<DiscretizationRule>& rules) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a over cut bit patterns
  auto mix = [&h](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  };
  for (const auto& r : rules) {
    mix(static_cast<std::uint64_t>(r.attribute_index));
    for (double c : r.cut_points) {
      std::uint64_t bits;
      static_assert(sizeof(bits) == sizeof(c));
      std::memcpy(&bits, &c, sizeof(bits));
      mix(bits);
    }
  }
  return h;
}

// Fits rules on the training portion of one fold. Kept as a named entry
// point so tests can audit that test-fold labels never influence the rules.
inline std::vector<DiscretizationRule> fit_fold_rules(const Dataset& d, const FoldPlan& plan,
                                                      int fold) {
  std::vector<Case> train;
  for (std::size_t i = 0; i < d.cases.size(); ++i)
    if (plan.assignments[i] != fold) train.push_back(d.cases[i]);
  return fit_rules(d.schema, train);
}

// Per fold: fit rules on the training blocks, rewrite train and test with
// those same rules, then induce and evaluate. The baseline runs on the raw
// data under identical fold plans.
inline DiscrReport discretization_experiment(const Dataset& d, const GrowParams& base_params,
                                             int k, int repeats, std::uint64_t seed) {
  bool has_continuous = false;
  for (const auto& a : d.schema.attributes)
    if (a.continuous()) has_continuous = true;
  if (!has_continuous)
    throw std::invalid_argument("discretization_experiment: dataset has no continuous attributes");

  DiscrReport report;
  report.case_count = d.cases.size();
  report.cv.folds = k;
  report.cv.repeats = repeats;
  report.cv.seed = seed;
  SeriesStats local, global;
  local.label = policy_name(base_params.policy);
  global.label = "discr";

  for (int r = 0; r < repeats; ++r) {
    FoldPlan plan = stratified_folds(d, k, derive_seed(seed, static_cast<std::uint64_t>(r)), r);
    double wrong_l = 0.0, wrong_g = 0.0, total = 0.0;
    double sizes_l = 0.0, sizes_g = 0.0;
    for (int f = 0; f < k; ++f) {
      std::vector<Case> train, test;
      for (std::size_t i = 0; i < d.cases.size(); ++i) {
        if (plan.assignments[i] == f)
          test.push_back(d.cases[i]);
        else
          train.push_back(d.cases[i]);
      }
      TreeNode base_tree = grow_and_prune(d.schema, train, base_params);
      sizes_l += tree_size(base_tree);

      auto rules = fit_rules(d.schema, train);
      Dataset train_d = apply_rules(Dataset{d.schema, train}, rules);
      Dataset test_d = apply_rules(Dataset{d.schema, test}, rules);
      TreeNode discr_tree = grow_and_prune(train_d.schema, train_d.cases, base_params);
      sizes_g += tree_size(discr_tree);

      for (std::size_t i = 0; i < test.size(); ++i) {
        total += test[i].weight;
        if (classify(base_tree, test[i]).class_index != test[i].class_index)
          wrong_l += test[i].weight;
        if (classify(discr_tree, test_d.cases[i]).class_index != test_d.cases[i].class_index)
          wrong_g += test_d.cases[i].weight;
      }
      std::size_t cuts = 0;
      for (const auto& rule : rules) cuts += rule.cut_points.size();
      report.audits.push_back(
          {r, f, train.size(), test.size(), cuts, rules_fingerprint(rules)});
    }
    local.repeats.push_back({total > 0 ? 100.0 * wrong_l / total : 0.0, sizes_l / k});
    global.repeats.push_back({total > 0 ? 100.0 * wrong_g / total : 0.0, sizes_g / k});
  }
  detail::fill_summary(local);
  detail::fill_summary(global);
  report.cv.series.push_back(std::move(local));
  report.cv.series.push_back(std::move(global));
  report.cv.pairs.push_back(detail::compare_series(report.cv.series, 0, 1));
  report.error_ratio = report.cv.pairs[0].error_ratio;
  return report;
}

// ---- report emission ------------------------------------------------------

namespace detail {

inline std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

}  // namespace detail

// CSV with '#' header lines; record kinds: repeat, summary, pair.
inline std::string cv_report_csv(const CvReport& r, const std::string& header) {
  std::string out = header;
  out += "record,series,repeat,error_percent,mean_tree_size\n";
  for (const auto& s : r.series)
    for (std::size_t i = 0; i < s.repeats.size(); ++i)
      out += "repeat," + s.label + "," + std::to_string(i) + "," +
             detail::fixed(s.repeats[i].error_percent, 4) + "," +
             detail::fixed(s.repeats[i].mean_tree_size, 4) + "\n";
  out += "record,series,mean_error,se_error,mean_size,se_size\n";
  for (const auto& s : r.series)
    out += "summary," + s.label + "," + detail::fixed(s.mean_error, 4) + "," +
           detail::fixed(s.se_error, 4) + "," + detail::fixed(s.mean_size, 4) + "," +
           detail::fixed(s.se_size, 4) + "\n";
  out += "record,baseline,treatment,wins,draws,losses,error_ratio,size_ratio\n";
  for (const auto& p : r.pairs)
    out += "pair," + r.series[p.baseline].label + "," + r.series[p.treatment].label + "," +
           std::to_string(p.wins) + "," + std::to_string(p.draws) + "," +
           std::to_string(p.losses) + "," + detail::fixed(p.error_ratio, 4) + "," +
           detail::fixed(p.size_ratio, 4) + "\n";
  return out;
}

inline std::string cv_report_markdown(const CvReport& r, const std::string& header) {
  auto pad = [](std::string s, std::size_t w) {
    while (s.size() < w) s = " " + s;
    return s;
  };
  std::string out = header;
  out += "\n| series | error %  | se     | size     | se     |\n";
  out += "|--------|----------|--------|----------|--------|\n";
  for (const auto& s : r.series) {
    std::string label = s.label;
    while (label.size() < 6) label += ' ';
    out += "| " + label + " | " + pad(detail::fixed(s.mean_error, 2), 8) + " | " +
           pad(detail::fixed(s.se_error, 2), 6) + " | " + pad(detail::fixed(s.mean_size, 2), 8) +
           " | " + pad(detail::fixed(s.se_size, 2), 6) + " |\n";
  }
  if (!r.pairs.empty()) {
    out += "\n| pair | w/d/l | error ratio | size ratio |\n";
    out += "|------|-------|-------------|------------|\n";
    for (const auto& p : r.pairs) {
      std::string name = r.series[p.treatment].label + " vs " + r.series[p.baseline].label;
      std::string wdl = std::to_string(p.wins) + "/" + std::to_string(p.draws) + "/" +
                        std::to_string(p.losses);
      out += "| " + name + " | " + wdl + " | " + pad(detail::fixed(p.error_ratio, 2), 11) +
             " | " + pad(detail::fixed(p.size_ratio, 2), 10) + " |\n";
    }
  }
  return out;
}

}  // namespace c45
