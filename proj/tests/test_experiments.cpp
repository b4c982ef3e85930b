#include <catch2/catch_amalgamated.hpp>

#include "c45/experiments.hpp"
#include "c45/synth.hpp"
#include "test_util.hpp"

using namespace c45;
using Catch::Approx;

namespace {

Dataset balanced_two_class(int per_class) {
  Dataset d;
  d.schema.classes = {"a", "b"};
  d.schema.attributes.push_back(AttributeDecl::continuous_attr("x"));
  for (int i = 0; i < 2 * per_class; ++i) {
    Case c;
    c.class_index = i % 2;
    c.values.push_back(Value::of_number(i + (c.class_index ? 100.0 : 0.0)));
    d.cases.push_back(c);
  }
  return d;
}

}  // namespace

TEST_CASE("stratified folds balance classes") {
  auto d = balanced_two_class(10);
  auto plan = stratified_folds(d, 10, 5);
  std::vector<std::vector<int>> per_fold(10, std::vector<int>(2, 0));
  for (std::size_t i = 0; i < d.cases.size(); ++i)
    per_fold[static_cast<std::size_t>(plan.assignments[i])]
            [static_cast<std::size_t>(d.cases[i].class_index)]++;
  for (const auto& f : per_fold) {
    CHECK(f[0] == 1);
    CHECK(f[1] == 1);
  }
}

TEST_CASE("fold sizes differ by at most one") {
  Dataset d;
  d.schema.classes = {"only"};
  d.schema.attributes.push_back(AttributeDecl::continuous_attr("x"));
  for (int i = 0; i < 15; ++i) {
    Case c;
    c.values.push_back(Value::of_number(i));
    d.cases.push_back(c);
  }
  auto plan = stratified_folds(d, 10, 3);
  std::vector<int> sizes(10, 0);
  for (int f : plan.assignments) sizes[static_cast<std::size_t>(f)]++;
  for (int s : sizes) {
    CHECK(s >= 1);
    CHECK(s <= 2);
  }
}

TEST_CASE("fold plans are deterministic and exhaustive") {
  auto d = synth::mixed_task(60, 4);
  auto a = stratified_folds(d, 10, 77);
  auto b = stratified_folds(d, 10, 77);
  CHECK(a.assignments == b.assignments);
  CHECK(a.assignments.size() == d.cases.size());
  for (int f : a.assignments) {
    CHECK(f >= 0);
    CHECK(f < 10);
  }
  CHECK_THROWS_AS(stratified_folds(d, static_cast<int>(d.cases.size()) + 1, 1),
                  std::invalid_argument);
}

TEST_CASE("cross-validation on noiseless separable data is error-free") {
  auto d = balanced_two_class(20);
  GrowParams p;
  auto res = cross_validate(d, p, 10, 3, 9);
  for (const auto& r : res) CHECK(r.error_percent == 0.0);
}

TEST_CASE("majority-only prediction yields the minority rate") {
  Dataset d;
  d.schema.classes = {"big", "small"};
  d.schema.attributes.push_back(AttributeDecl::discrete_attr("k", {"z"}));
  for (int i = 0; i < 100; ++i) {
    Case c;
    c.class_index = i < 90 ? 0 : 1;
    c.values.push_back(Value::of_index(0));
    d.cases.push_back(c);
  }
  GrowParams p;
  auto res = cross_validate(d, p, 10, 2, 13);
  for (const auto& r : res) CHECK(r.error_percent == Approx(10.0));
}

TEST_CASE("cross-validation is reproducible") {
  auto d = synth::mixed_task(80, 21);
  GrowParams p;
  auto a = cross_validate(d, p, 5, 3, 1234);
  auto b = cross_validate(d, p, 5, 3, 1234);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].error_percent == b[i].error_percent);
    CHECK(a[i].mean_tree_size == b[i].mean_tree_size);
  }
}

TEST_CASE("augmentation leaves the original data untouched") {
  auto d = synth::mixed_task(50, 3);
  auto same = augment_irrelevant(d, 0, 0, 10, 42);
  CHECK(serialize_names(same.schema) == serialize_names(d.schema));
  CHECK(serialize_data(same) == serialize_data(d));

  auto aug = augment_irrelevant(d, 10, 10, 10, 42);
  CHECK(aug.schema.attributes.size() == d.schema.attributes.size() + 20);
  CHECK(aug.schema.attributes[d.schema.attributes.size()].name.ends_with("_irr_c0"));
  CHECK(aug.schema.attributes.back().name.ends_with("_irr_d9"));
  for (std::size_t i = 0; i < d.cases.size(); ++i) {
    CHECK(aug.cases[i].class_index == d.cases[i].class_index);
    for (std::size_t a = 0; a < d.schema.attributes.size(); ++a)
      CHECK(aug.cases[i].values[a].unknown == d.cases[i].values[a].unknown);
  }
}

TEST_CASE("augmented discrete values are near-equiprobable") {
  Dataset d;
  d.schema.classes = {"a", "b"};
  d.schema.attributes.push_back(AttributeDecl::discrete_attr("k", {"z"}));
  for (int i = 0; i < 1000; ++i) {
    Case c;
    c.class_index = i % 2;
    c.values.push_back(Value::of_index(0));
    d.cases.push_back(c);
  }
  auto aug = augment_irrelevant(d, 0, 1, 10, 99);
  std::vector<int> counts(10, 0);
  for (const auto& c : aug.cases) counts[static_cast<std::size_t>(c.values[1].index)]++;
  // five-sigma binomial band around 100: sqrt(1000 * .1 * .9) = 9.49
  for (int n : counts) {
    CHECK(n >= 100 - 47);
    CHECK(n <= 100 + 47);
  }
}

TEST_CASE("a policy compared with itself draws every repeat") {
  auto d = synth::mixed_task(60, 8);
  GrowParams p;
  auto rep = compare_policies(d, {Policy::Rel8, Policy::Rel8}, p, 5, 4, 3);
  REQUIRE(rep.pairs.size() == 1);
  CHECK(rep.pairs[0].wins == 0);
  CHECK(rep.pairs[0].draws == 4);
  CHECK(rep.pairs[0].losses == 0);
  CHECK(rep.pairs[0].error_ratio == Approx(1.0));
  CHECK(rep.pairs[0].size_ratio == Approx(1.0));
}

TEST_CASE("policies tie exactly on discrete-only data") {
  Rng rng(5150);
  testutil::RandomDataOptions opt;
  opt.discrete_only = true;
  opt.min_cases = 40;
  opt.max_cases = 80;
  auto d = testutil::random_dataset(rng, opt);
  GrowParams p;
  auto rep = compare_policies(d, {Policy::Rel7, Policy::Rel8}, p, 5, 4, 11);
  for (std::size_t r = 0; r < rep.series[0].repeats.size(); ++r) {
    CHECK(rep.series[0].repeats[r].error_percent == rep.series[1].repeats[r].error_percent);
    CHECK(rep.series[0].repeats[r].mean_tree_size == rep.series[1].repeats[r].mean_tree_size);
  }
  CHECK(rep.pairs[0].error_ratio == Approx(1.0));
  CHECK(rep.pairs[0].draws == 4);
}

TEST_CASE("w/d/l counts always total the repeats") {
  auto d = synth::diabetes_like(120, 5);
  GrowParams p;
  auto rep = compare_policies(d, {Policy::Rel7, Policy::SevenGS, Policy::Rel8}, p, 5, 6, 2);
  REQUIRE(rep.pairs.size() == 3);
  for (const auto& pr : rep.pairs) CHECK(pr.wins + pr.draws + pr.losses == 6);
}

TEST_CASE("discretization experiment rejects discrete-only data") {
  Rng rng(3);
  testutil::RandomDataOptions opt;
  opt.discrete_only = true;
  auto d = testutil::random_dataset(rng, opt);
  GrowParams p;
  CHECK_THROWS_AS(discretization_experiment(d, p, 5, 1, 1), std::invalid_argument);
}

TEST_CASE("fold rules never consult held-out labels") {
  auto d = synth::diagonal_task(100, 31);
  auto plan = stratified_folds(d, 10, 17);
  for (int f = 0; f < 10; f += 3) {
    auto rules = fit_fold_rules(d, plan, f);
    Dataset poisoned = d;
    for (std::size_t i = 0; i < poisoned.cases.size(); ++i)
      if (plan.assignments[i] == f)
        poisoned.cases[i].class_index = 1 - poisoned.cases[i].class_index;
    auto rules2 = fit_fold_rules(poisoned, plan, f);
    CHECK(rules_fingerprint(rules) == rules_fingerprint(rules2));
  }
}

TEST_CASE("discretization experiment emits audits and a figure point") {
  auto d = synth::diagonal_task(120, 8);
  GrowParams p;
  auto rep = discretization_experiment(d, p, 6, 2, 21);
  CHECK(rep.case_count == 120);
  CHECK(rep.audits.size() == 12);
  for (const auto& a : rep.audits) CHECK(a.train_cases + a.test_cases == 120);
  REQUIRE(rep.cv.series.size() == 2);
  CHECK(rep.cv.series[1].label == "discr");
  CHECK(rep.error_ratio == Approx(rep.cv.pairs[0].error_ratio));
}

TEST_CASE("reports render deterministically") {
  auto d = synth::mixed_task(60, 12);
  GrowParams p;
  auto rep = compare_policies(d, {Policy::Rel7, Policy::Rel8}, p, 5, 3, 6);
  rep.config = "test";
  auto csv1 = cv_report_csv(rep, "# hdr\n");
  auto csv2 = cv_report_csv(rep, "# hdr\n");
  CHECK(csv1 == csv2);
  CHECK(csv1.find("record,series,repeat") != std::string::npos);
  auto md = cv_report_markdown(rep, "# hdr\n");
  CHECK(md.find("| rel7") != std::string::npos);
  CHECK(md.find("rel8 vs rel7") != std::string::npos);
}
