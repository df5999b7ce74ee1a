// Copyright 2026 The Wikigraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the wikigraph binary end to end on the TinyWiki fixture.

#include <gtest/gtest.h>

#include <cstdlib>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include "synthetic.h"

namespace wikigraph {
namespace {

namespace fs = std::filesystem;

const fs::path kTiny = fs::path(WIKIGRAPH_FIXTURES) / "tinywiki";

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  CliRun run(const std::string& args) {
    const auto out = tmp_ / "stdout", err = tmp_ / "stderr";
    const std::string cmd = std::string("'") + WIKIGRAPH_CLI + "' --data-dir '" + (tmp_ / "data").string() + "' " +
                            args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    return CliRun{WIFEXITED(status) ? WEXITSTATUS(status) : -1, testing::read_text(out), testing::read_text(err)};
  }

  std::string dump_flags(const fs::path& dir) const {
    return "--page '" + (dir / "page.sql").string() + "' --redirect '" + (dir / "redirect.sql").string() +
           "' --pagelinks '" + (dir / "pagelinks.sql").string() + "' --categorylinks '" +
           (dir / "categorylinks.sql").string() + "'";
  }

  std::string count_files() const {
    std::string s;
    for (const auto& e : fs::directory_iterator(kTiny / "pagecounts")) s += " '" + e.path().string() + "'";
    return s;
  }

  void ingest_all() {
    ASSERT_EQ(run("ingest-graph " + dump_flags(kTiny)).code, 0);
    ASSERT_EQ(run("ingest-counts" + count_files()).code, 0);
  }

  testing::TempDir tmp_;
};

TEST_F(Cli, IngestGraphReportsCounts) {
  const auto r = run("ingest-graph " + dump_flags(kTiny));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["graph"]["articles"], 3);
  EXPECT_EQ(j["graph"]["categories"], 2);
  EXPECT_EQ(j["graph"]["links_to"], 5);
  EXPECT_EQ(j["graph"]["belongs_to"], 3);
}

TEST_F(Cli, StrictRejectsMalformedRows) {
  const auto dir = tmp_ / "bad";
  fs::create_directories(dir);
  for (const char* f : {"page.sql", "redirect.sql", "categorylinks.sql"}) fs::copy_file(kTiny / f, dir / f);
  testing::write_text(dir / "pagelinks.sql", "INSERT INTO `pagelinks` VALUES (1,0,'Relativity'),(1,0);\n");
  EXPECT_EQ(run("ingest-graph " + dump_flags(dir)).code, 0);
  const auto strict = run("--strict ingest-graph " + dump_flags(dir));
  EXPECT_NE(strict.code, 0);
  EXPECT_NE(strict.err.find("error"), std::string::npos);
}

TEST_F(Cli, EmptyDumpsGiveEmptyGraph) {
  const auto dir = tmp_ / "empty";
  fs::create_directories(dir);
  for (const char* f : {"page.sql", "redirect.sql", "pagelinks.sql", "categorylinks.sql"}) testing::write_text(dir / f, "");
  const auto r = run("ingest-graph " + dump_flags(dir));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["graph"]["articles"], 0);
}

TEST_F(Cli, QueryCategoryAndNeighborhood) {
  ingest_all();
  auto r = run("query category Physics --format csv");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "source_id,target_id,kind\n1,3,links_to\n1,6,belongs_to\n3,1,links_to\n3,2,belongs_to\n6,2,belongs_to\n");
  const auto stats = nlohmann::json::parse(r.err);
  EXPECT_EQ(stats["nodes"], 4);
  EXPECT_EQ(stats["depth"], "unlimited");
  EXPECT_TRUE(stats.contains("elapsed_ms"));

  r = run("query neighborhood 'Albert Einstein' --depth 1 --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["nodes"].size(), 3u);

  r = run("query category Category:Physics --depth 0 --format csv");
  EXPECT_EQ(r.out, "source_id,target_id,kind\n3,2,belongs_to\n");
}

TEST_F(Cli, QueryWithSeries) {
  ingest_all();
  const auto r = run("query neighborhood Albert_Einstein --from 2018-08-01T00:00Z --to 2018-08-02T00:00Z "
                     "--visits-threshold 150 --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  // Einstein 240 > 150, Quantum_mechanics 100 and Relativity (not stored) drop
  ASSERT_EQ(j["nodes"].size(), 1u);
  EXPECT_EQ(j["series"]["1"].size(), 24u);
}

TEST_F(Cli, UsageErrors) {
  ASSERT_EQ(run("ingest-graph " + dump_flags(kTiny)).code, 0);
  EXPECT_EQ(run("query neighborhood Albert_Einstein --from 2018-08-01T00:00Z --to 2018-08-02T00:00Z").code, 2);
  EXPECT_EQ(run("query neighborhood Albert_Einstein --from 2018-08-01T00:00Z").code, 2);
  EXPECT_EQ(run("query neighborhood Albert_Einstein --format dot").code, 2);
  EXPECT_EQ(run("query sideways X").code, 2);
  EXPECT_EQ(run("query neighborhood Albert_Einstein --depth 0").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  const auto r = run("query category Albert_Einstein");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("there is a article"), std::string::npos) << r.err;
}

TEST_F(Cli, NoGraphYet) {
  const auto r = run("query category Physics");
  EXPECT_EQ(r.code, 1);
}

TEST_F(Cli, FreezeIsImmutableAndLabelsUnique) {
  ingest_all();
  ASSERT_EQ(run("freeze --label 2018-08").code, 0);
  const auto before = run("query category Physics --label 2018-08 --from 2018-08-01T00:00Z --to 2018-08-02T00:00Z");
  ASSERT_EQ(before.code, 0) << before.err;
  // re-ingesting the day and updating the graph leave the frozen view alone
  ASSERT_EQ(run("ingest-counts" + count_files()).code, 0);
  const auto dir = tmp_ / "next";
  fs::create_directories(dir);
  for (const char* f : {"page.sql", "redirect.sql", "categorylinks.sql"}) fs::copy_file(kTiny / f, dir / f);
  testing::write_text(dir / "pagelinks.sql", "INSERT INTO `pagelinks` VALUES (1,0,'Relativity');\n");
  const auto upd = run("update " + dump_flags(dir) + " --delta-out '" + (tmp_ / "delta.json").string() + "'");
  ASSERT_EQ(upd.code, 0) << upd.err;
  EXPECT_TRUE(fs::exists(tmp_ / "delta.json"));
  const auto after = run("query category Physics --label 2018-08 --from 2018-08-01T00:00Z --to 2018-08-02T00:00Z");
  EXPECT_EQ(after.out, before.out);
  EXPECT_NE(run("query category Physics --format csv").out, run("query category Physics --label 2018-08 --format csv").out);

  const auto dup = run("freeze --label 2018-08");
  EXPECT_EQ(dup.code, 1);
  EXPECT_NE(dup.err.find("already"), std::string::npos);
  EXPECT_EQ(run("freeze --label 2018-8").code, 2);
}

TEST_F(Cli, Stats) {
  ingest_all();
  ASSERT_EQ(run("freeze --label 2018-08").code, 0);
  auto j = nlohmann::json::parse(run("stats").out);
  EXPECT_EQ(j["graph"]["counts"]["articles"], 3);
  EXPECT_EQ(j["timeseries"]["records"], 50);
  EXPECT_EQ(j["frozen"], nlohmann::json::array({"2018-08"}));
  j = nlohmann::json::parse(run("stats --label 2018-08").out);
  EXPECT_EQ(j["label"], "2018-08");
  EXPECT_EQ(run("stats --label 2019-01").code, 1);
}

TEST_F(Cli, QueryOutFile) {
  ingest_all();
  const auto out = tmp_ / "g.graphml";
  const auto r = run("query category Physics --format graphml --out '" + out.string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["edges"], 5);
  EXPECT_NE(testing::read_text(out).find("<graphml"), std::string::npos);
}

}  // namespace
}  // namespace wikigraph
