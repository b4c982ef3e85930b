#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "c45/discretize.hpp"
#include "c45/io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

std::string cli_path() {
  const char* p = std::getenv("C45_CLI");
  return p ? p : "";
}

std::string data_dir() {
  const char* p = std::getenv("C45_DATA");
  return p ? p : "";
}

CliResult run_cli(const std::string& args, const fs::path& scratch) {
  fs::path out = scratch / "stdout.txt";
  std::string cmd = cli_path() + " " + args + " > " + out.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::string text;
  if (fs::exists(out)) text = c45::read_file(out.string());
  return {code, text};
}

fs::path make_scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("c45_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int parse_size(const std::string& text) {
  auto pos = text.find("size=");
  REQUIRE(pos != std::string::npos);
  return std::atoi(text.c_str() + pos + 5);
}

}  // namespace

TEST_CASE("cli rejects unknown policies", "[cli]") {
  if (cli_path().empty()) SKIP("C45_CLI not set");
  auto scratch = make_scratch("badpolicy");
  auto r = run_cli("grow --data " + data_dir() + "/iris --policy bogus", scratch);
  CHECK(r.exit_code != 0);
}

TEST_CASE("cli grow writes headed outputs", "[cli]") {
  if (cli_path().empty()) SKIP("C45_CLI not set");
  auto scratch = make_scratch("grow");
  std::string prefix = (scratch / "iris").string();
  auto r = run_cli("grow --data " + data_dir() + "/iris --policy rel8 --out " + prefix, scratch);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("size=") != std::string::npos);
  CHECK(r.output.find("resub_error=") != std::string::npos);

  auto text = c45::read_file(prefix + ".tree.txt");
  CHECK(text.rfind("| c45 ", 0) == 0);
  CHECK(text.find("| seed:") != std::string::npos);
  auto json = c45::read_file(prefix + ".tree.json");
  CHECK(json.find("\"format\": \"c45-tree\"") != std::string::npos);
  CHECK(json.find("\"config\"") != std::string::npos);
}

TEST_CASE("unpruned trees are never smaller", "[cli]") {
  if (cli_path().empty()) SKIP("C45_CLI not set");
  auto scratch = make_scratch("noprune");
  std::string p1 = (scratch / "pruned").string();
  std::string p2 = (scratch / "raw").string();
  auto a = run_cli("grow --data " + data_dir() + "/iris --out " + p1, scratch);
  REQUIRE(a.exit_code == 0);
  int pruned = parse_size(a.output);
  auto b = run_cli("grow --data " + data_dir() + "/iris --no-prune --out " + p2, scratch);
  REQUIRE(b.exit_code == 0);
  CHECK(parse_size(b.output) >= pruned);
}

TEST_CASE("cv runs are byte-identical under one seed", "[cli]") {
  if (cli_path().empty()) SKIP("C45_CLI not set");
  auto scratch = make_scratch("cvdet");
  std::string p1 = (scratch / "r1").string();
  std::string p2 = (scratch / "r2").string();
  std::string args = "cv --data " + data_dir() +
                     "/iris --policies rel7,rel8 --seed 1 --repeats 2 --folds 5 --out ";
  REQUIRE(run_cli(args + p1, scratch).exit_code == 0);
  REQUIRE(run_cli(args + p2, scratch).exit_code == 0);
  CHECK(c45::read_file(p1 + ".cv.csv") == c45::read_file(p2 + ".cv.csv"));
  CHECK(c45::read_file(p1 + ".cv.md") == c45::read_file(p2 + ".cv.md"));
}

TEST_CASE("cv surfaces fold errors cleanly", "[cli]") {
  if (cli_path().empty()) SKIP("C45_CLI not set");
  auto scratch = make_scratch("tiny");
  c45::write_file((scratch / "tiny.names").string(), "a,b.\nx: continuous.\n");
  c45::write_file((scratch / "tiny.data").string(), "1,a\n2,b\n3,a\n");
  auto r = run_cli("cv --data " + (scratch / "tiny").string() +
                       " --folds 10 --repeats 1 --out " + (scratch / "t").string(),
                   scratch);
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("error") != std::string::npos);
  CHECK_FALSE(fs::exists(scratch / "t.cv.csv"));
}

TEST_CASE("augmented cv notes the augmentation", "[cli]") {
  if (cli_path().empty()) SKIP("C45_CLI not set");
  auto scratch = make_scratch("aug");
  std::string prefix = (scratch / "a").string();
  auto r = run_cli("cv --data " + data_dir() +
                       "/iris --policies rel7,rel8 --augment 2,2 --seed 1 --repeats 1 "
                       "--folds 5 --out " +
                       prefix,
                   scratch);
  REQUIRE(r.exit_code == 0);
  auto csv = c45::read_file(prefix + ".cv.csv");
  CHECK(csv.find("augment=2,2,10") != std::string::npos);
}

TEST_CASE("discretize emits rules and rewritten files", "[cli]") {
  if (cli_path().empty()) SKIP("C45_CLI not set");
  auto scratch = make_scratch("disc");
  std::string prefix = (scratch / "d").string();
  auto r = run_cli("discretize --data " + data_dir() + "/iris --out " + prefix, scratch);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("rules=4") != std::string::npos);
  auto rules = c45::rules_from_json(c45::read_file(prefix + ".rules.json"));
  CHECK(rules.size() == 4);
  auto schema = c45::parse_names(c45::read_file(prefix + ".names"));
  for (const auto& a : schema.attributes) CHECK_FALSE(a.continuous());
  auto d = c45::parse_data(c45::read_file(prefix + ".data"), schema);
  CHECK(d.cases.size() == 150);
}

TEST_CASE("discretize --eval emits audit lines", "[cli]") {
  if (cli_path().empty()) SKIP("C45_CLI not set");
  auto scratch = make_scratch("disceval");
  std::string prefix = (scratch / "e").string();
  auto r = run_cli("discretize --data " + data_dir() +
                       "/iris --eval --folds 5 --repeats 1 --seed 2 --out " + prefix,
                   scratch);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("audit repeat=0 fold=0") != std::string::npos);
  CHECK(fs::exists(prefix + ".fig2.csv"));
  auto audit = c45::read_file(prefix + ".audit.txt");
  CHECK(audit.find("train_cases=120 test_cases=30") != std::string::npos);
}

TEST_CASE("failed runs leave no partial outputs", "[cli]") {
  if (cli_path().empty()) SKIP("C45_CLI not set");
  auto scratch = make_scratch("cleanup");
  std::string prefix = (scratch / "missing_dir" / "x").string();
  auto r = run_cli("grow --data " + data_dir() + "/iris --out " + prefix, scratch);
  CHECK(r.exit_code != 0);
  CHECK_FALSE(fs::exists(prefix + ".tree.txt"));
  CHECK_FALSE(fs::exists(prefix + ".tree.json"));
}
