// c45: decision-tree induction and experiment harness.
//
// Subcommands: grow (induce one tree), cv (repeated stratified
// cross-validation and policy comparison), discretize (global
// entropy/MDL discretization, optionally evaluated fold-by-fold).

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "c45/c45.hpp"

namespace {

using namespace c45;

// Every output file starts with a header carrying version, the full
// effective configuration and the seed, so runs are self-describing and
// byte-reproducible.
struct RunInfo {
  std::string config;
  std::uint64_t seed = 1;

  std::string hash_header() const {
    return std::string("# c45 ") + kVersion + "\n# config: " + config +
           "\n# seed: " + std::to_string(seed) + "\n";
  }
  std::string bar_header() const {
    return std::string("| c45 ") + kVersion + "\n| config: " + config +
           "\n| seed: " + std::to_string(seed) + "\n";
  }
  nlohmann::json meta() const {
    return {{"version", kVersion}, {"config", config}, {"seed", seed}};
  }
};

// Tracks files written by one command; anything registered but not
// committed is deleted, so failed runs leave no partial outputs behind.
class OutputGuard {
 public:
  ~OutputGuard() {
    if (committed_) return;
    for (const auto& p : paths_) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
  }
  void write(const std::string& path, const std::string& content) {
    paths_.push_back(path);
    write_file(path, content);
  }
  void commit() { committed_ = true; }

 private:
  std::vector<std::string> paths_;
  bool committed_ = false;
};

struct DataOptions {
  std::string stem;
  std::string csv_path;
  std::string class_column = "class";
};

void add_data_options(CLI::App* cmd, DataOptions& opts) {
  auto* stem = cmd->add_option("--data", opts.stem, "dataset stem (reads STEM.names + STEM.data)");
  auto* csv = cmd->add_option("--csv", opts.csv_path, "CSV file with a header row");
  cmd->add_option("--class-column", opts.class_column, "class column name for --csv");
  stem->excludes(csv);
}

Dataset load_dataset(const DataOptions& opts) {
  if (!opts.csv_path.empty())
    return parse_csv(read_file(opts.csv_path), opts.class_column);
  if (opts.stem.empty())
    throw std::runtime_error("no dataset given (use --data STEM or --csv FILE)");
  Schema schema = parse_names(read_file(opts.stem + ".names"));
  return parse_data(read_file(opts.stem + ".data"), schema);
}

std::string describe_data(const DataOptions& opts) {
  return opts.csv_path.empty() ? "data=" + opts.stem
                               : "csv=" + opts.csv_path + " class-column=" + opts.class_column;
}

std::vector<Policy> parse_policy_list(const std::string& csv) {
  std::vector<Policy> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= csv.size(); ++i) {
    if (i == csv.size() || csv[i] == ',') {
      out.push_back(policy_from_name(csv.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

int cmd_grow(const DataOptions& data_opts, const std::string& out_prefix, GrowParams params,
             std::uint64_t seed) {
  Dataset d = load_dataset(data_opts);
  RunInfo info;
  info.seed = seed;
  info.config = "grow " + describe_data(data_opts) + " policy=" + policy_name(params.policy) +
                " min-split=" + format_double(params.min_split_weight) +
                " cf=" + format_double(params.prune_confidence) +
                " prune=" + (params.pruning_enabled ? "on" : "off");

  TreeNode tree = grow_and_prune(d.schema, d.cases, params);
  OutputGuard out;
  out.write(out_prefix + ".tree.txt", info.bar_header() + tree_to_text(tree, d.schema));
  out.write(out_prefix + ".tree.json", tree_to_json(tree, d.schema, info.meta()));
  out.commit();
  std::printf("size=%d resub_error=%s%%\n", tree_size(tree),
              format_double(error_percent(tree, d.cases)).c_str());
  return 0;
}

int cmd_cv(const DataOptions& data_opts, const std::string& out_prefix,
           const std::string& policies_csv, GrowParams params, int folds, int repeats,
           std::uint64_t seed, const std::vector<int>& augment) {
  Dataset d = load_dataset(data_opts);
  std::string aug_note;
  if (!augment.empty()) {
    int n_cont = augment[0];
    int n_disc = augment.size() > 1 ? augment[1] : 0;
    int card = augment.size() > 2 ? augment[2] : 10;
    d = augment_irrelevant(d, n_cont, n_disc, card, seed);
    aug_note = " augment=" + std::to_string(n_cont) + "," + std::to_string(n_disc) + "," +
               std::to_string(card);
  }
  std::vector<Policy> policies = parse_policy_list(policies_csv);

  RunInfo info;
  info.seed = seed;
  info.config = "cv " + describe_data(data_opts) + " policies=" + policies_csv +
                " folds=" + std::to_string(folds) + " repeats=" + std::to_string(repeats) +
                " min-split=" + format_double(params.min_split_weight) +
                " cf=" + format_double(params.prune_confidence) +
                " prune=" + (params.pruning_enabled ? "on" : "off") + aug_note;

  CvReport report;
  if (policies.size() == 1) {
    params.policy = policies[0];
    SeriesStats s;
    s.label = policy_name(policies[0]);
    s.repeats = cross_validate(d, params, folds, repeats, seed);
    detail::fill_summary(s);
    report.folds = folds;
    report.repeats = repeats;
    report.seed = seed;
    report.series.push_back(std::move(s));
  } else {
    report = compare_policies(d, policies, params, folds, repeats, seed);
  }
  report.config = info.config;

  OutputGuard out;
  out.write(out_prefix + ".cv.csv", cv_report_csv(report, info.hash_header()));
  out.write(out_prefix + ".cv.md", cv_report_markdown(report, info.hash_header()));
  out.commit();
  for (const auto& s : report.series)
    std::printf("%s: error=%s%% size=%s\n", s.label.c_str(),
                format_double(s.mean_error).c_str(), format_double(s.mean_size).c_str());
  return 0;
}

int cmd_discretize(const DataOptions& data_opts, const std::string& out_prefix,
                   GrowParams params, int folds, int repeats, std::uint64_t seed, bool eval) {
  Dataset d = load_dataset(data_opts);
  RunInfo info;
  info.seed = seed;
  info.config = "discretize " + describe_data(data_opts) +
                " policy=" + policy_name(params.policy) + (eval ? " eval=on" : "") +
                (eval ? " folds=" + std::to_string(folds) + " repeats=" + std::to_string(repeats)
                      : "");

  auto rules = fit_rules(d.schema, d.cases);
  Dataset rewritten = apply_rules(d, rules);

  OutputGuard out;
  out.write(out_prefix + ".rules.json", rules_to_json(rules, d.schema, info.meta()));
  out.write(out_prefix + ".names", serialize_names(rewritten.schema, info.bar_header()));
  out.write(out_prefix + ".data", serialize_data(rewritten, info.bar_header()));

  if (eval) {
    DiscrReport rep = discretization_experiment(d, params, folds, repeats, seed);
    rep.cv.config = info.config;
    out.write(out_prefix + ".discr.csv", cv_report_csv(rep.cv, info.hash_header()));
    out.write(out_prefix + ".discr.md", cv_report_markdown(rep.cv, info.hash_header()));
    std::string fig2 = info.hash_header() + "case_count,error_ratio\n" +
                       std::to_string(rep.case_count) + "," + format_double(rep.error_ratio) +
                       "\n";
    out.write(out_prefix + ".fig2.csv", fig2);
    std::string audit = info.hash_header();
    for (const auto& a : rep.audits) {
      char line[160];
      std::snprintf(line, sizeof(line),
                    "audit repeat=%d fold=%d train_cases=%zu test_cases=%zu cuts=%zu "
                    "rules=%016llx\n",
                    a.repeat, a.fold, a.train_cases, a.test_cases, a.total_cuts,
                    static_cast<unsigned long long>(a.rules_hash));
      audit += line;
      std::fputs(line, stdout);
    }
    out.write(out_prefix + ".audit.txt", audit);
  }
  out.commit();
  std::printf("rules=%zu\n", rules.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"c45: decision-tree induction with gain-ratio/MDL split policies"};
  app.require_subcommand(1);

  const std::vector<std::string> policy_names = {"rel7", "7g", "7gs", "rel8"};

  DataOptions grow_data, cv_data, disc_data;
  std::string grow_out = "c45_out", cv_out = "c45_out", disc_out = "c45_out";
  std::string grow_policy = "rel8", disc_policy = "rel8", cv_policies = "rel8";
  double min_split = 2.0, cf = 0.25;
  bool no_prune = false, eval = false;
  int folds = 10, repeats = 10;
  std::uint64_t seed = 1;
  std::vector<int> augment;

  auto* grow = app.add_subcommand("grow", "induce a decision tree");
  add_data_options(grow, grow_data);
  grow->add_option("--policy", grow_policy, "split policy")
      ->check(CLI::IsMember(policy_names));
  grow->add_option("--out", grow_out, "output file prefix");
  grow->add_option("--min-split", min_split, "minimum weight per outcome");
  grow->add_option("--cf", cf, "pruning confidence in (0,1]")
      ->check(CLI::Range(1e-6, 1.0));
  grow->add_flag("--no-prune", no_prune, "keep the unpruned tree");
  grow->add_option("--seed", seed, "random seed (echoed into outputs)");

  auto* cv = app.add_subcommand("cv", "repeated stratified cross-validation");
  add_data_options(cv, cv_data);
  cv->add_option("--policies", cv_policies, "comma-separated policies to compare");
  cv->add_option("--out", cv_out, "output file prefix");
  cv->add_option("--folds", folds, "folds per cross-validation")->check(CLI::PositiveNumber);
  cv->add_option("--repeats", repeats, "complete cross-validations")
      ->check(CLI::PositiveNumber);
  cv->add_option("--seed", seed, "random seed");
  cv->add_option("--min-split", min_split, "minimum weight per outcome");
  cv->add_option("--cf", cf, "pruning confidence in (0,1]")->check(CLI::Range(1e-6, 1.0));
  cv->add_flag("--no-prune", no_prune, "evaluate unpruned trees");
  cv->add_option("--augment", augment,
                 "append irrelevant attributes: N_CONT,N_DISC[,CARDINALITY]")
      ->delimiter(',')
      ->expected(1, 3);

  auto* disc = app.add_subcommand("discretize", "fit global discretization rules");
  add_data_options(disc, disc_data);
  disc->add_option("--policy", disc_policy, "policy for --eval induction")
      ->check(CLI::IsMember(policy_names));
  disc->add_option("--out", disc_out, "output file prefix");
  disc->add_flag("--eval", eval, "run the per-fold discretization experiment");
  disc->add_option("--folds", folds, "folds for --eval")->check(CLI::PositiveNumber);
  disc->add_option("--repeats", repeats, "repeats for --eval")->check(CLI::PositiveNumber);
  disc->add_option("--seed", seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    c45::GrowParams params;
    params.min_split_weight = min_split;
    params.prune_confidence = cf;
    params.pruning_enabled = !no_prune;
    if (grow->parsed()) {
      params.policy = c45::policy_from_name(grow_policy);
      return cmd_grow(grow_data, grow_out, params, seed);
    }
    if (cv->parsed()) return cmd_cv(cv_data, cv_out, cv_policies, params, folds, repeats, seed, augment);
    if (disc->parsed()) {
      params.policy = c45::policy_from_name(disc_policy);
      return cmd_discretize(disc_data, disc_out, params, folds, repeats, seed, eval);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "c45: error: %s\n", e.what());
    return 1;
  }
  return 0;
}
