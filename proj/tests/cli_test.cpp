#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "redukt/service.hpp"

using namespace redukt;

namespace {

const std::string kBin = REDUKT_CLI;
const std::string kFixtures = REDUKT_FIXTURES;

struct Outcome {
  int code = -1;
  std::string out;
};

// stderr is discarded; stdout is captured.
Outcome run(const std::string& args) {
  Outcome r;
  FILE* p = popen((kBin + " " + args + " 2>/dev/null").c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

json read_json(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return json::parse(ss.str());
}

}  // namespace

TEST(Cli, ApplyIsByteIdenticalToService) {
  Outcome r = run("apply --reduction " + fixture("vc-to-fvs.json") + " --structure " +
              fixture("k2.json"));
  ASSERT_EQ(r.code, 0);
  json req{{"reduction", read_json(fixture("vc-to-fvs.json"))},
           {"structure", read_json(fixture("k2.json"))}};
  EXPECT_EQ(r.out, service::handle_apply(req.dump()).text());
}

TEST(Cli, ValidateExitCodes) {
  Outcome ok = run("validate --candidate " + fixture("vc-to-fvs.json") +
               " --source 2-vc --target 2-fvs");
  EXPECT_EQ(ok.code, 0);
  json req{{"candidate", read_json(fixture("vc-to-fvs.json"))},
           {"source_problem", "2-vc"},
           {"target_problem", "2-fvs"}};
  EXPECT_EQ(ok.out, service::handle_validate(req.dump(), service::Config{}).text());

  Outcome bad = run("validate --candidate " + fixture("bare-edge.json") +
                " --source 1-vc --target 1-fvs");
  EXPECT_EQ(bad.code, 3);
  EXPECT_EQ(json::parse(bad.out)["status"], "invalid");

  EXPECT_EQ(run("validate --candidate " + fixture("hamcycle.json") +
                " --source hamcycle-d --target hamcycle-u")
                .code,
            0);
}

TEST(Cli, ValidateErrors) {
  const std::string cand = " --candidate " + fixture("bare-edge.json");
  EXPECT_EQ(run("validate" + cand + " --source 1-vc --target 1-fvs --budget 9").code, 2);
  EXPECT_EQ(run("validate" + cand + " --source nonsense --target 1-fvs").code, 2);
  EXPECT_EQ(run("validate --candidate /nonexistent.json --source 1-vc --target 1-fvs").code, 1);
}

TEST(Cli, ExistentialProblemFromFile) {
  // x -> x maps graphs with an edge to graphs with an edge.
  Outcome r = run("validate --candidate " + fixture("clique-3-to-4.json") +
              " --source 3-clique --target fo:" + fixture("has-edge.fo"));
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, OutputFile) {
  const std::string path = ::testing::TempDir() + "redukt_cli_out.json";
  std::remove(path.c_str());
  Outcome r = run("-o " + path + " apply --reduction " + fixture("clique-3-to-4.json") +
              " --structure " + fixture("empty-graph.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(read_json(path)["universe"].size(), 1u);
}

TEST(Cli, TranslateAndCheck) {
  Outcome r = run("translate --reduction " + fixture("vc-to-fvs.json") + " --stage copying --check 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["dimension"], 3);
}

TEST(Cli, EnumerateNodePathFamily) {
  Outcome r = run("enumerate-gadgets --family node --max-nodes 3 --paths-only --pair hamcycle-d,hamcycle-u");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "gadget\tverdict\tcounterexample_size");
  int valid = 0, invalid = 0;
  while (std::getline(in, line)) {
    if (line.find("\tvalid\t") != std::string::npos) ++valid;
    if (line.find("\tinvalid\t") != std::string::npos) ++invalid;
  }
  EXPECT_EQ(valid, 6);
  EXPECT_EQ(invalid, 506);
}

TEST(Cli, EnumerateEdgeJson) {
  Outcome r = run("enumerate-gadgets --family edge --max-nodes 3 --pair 1-vc,1-fvs --format json");
  ASSERT_EQ(r.code, 0);
  const json rows = json::parse(r.out);
  ASSERT_EQ(rows.size(), 6u);
  std::set<std::string> ids;
  for (const auto& row : rows) ids.insert(row["id"].get<std::string>());
  EXPECT_EQ(ids.size(), rows.size());
}

TEST(Cli, EnumerateOutOfScopePair) {
  EXPECT_EQ(run("enumerate-gadgets --family edge --pair 1-clique,2-clique").code, 2);
}
