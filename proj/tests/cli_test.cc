#include <gtest/gtest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zkprov/bench/bench.h"
#include "zkprov/common/io.h"

namespace fs = std::filesystem;
using namespace zkprov;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "ZKPROV_WITNESS_KEY=test-passphrase ") {
  std::string cmd = env + ZKPROV_CLI + std::string(" ") + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("zkprov-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    std::vector<int64_t> v(8 * 32);
    for (size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int64_t>(i % 97) - 48;
    weights::make_custom_diffs(8, v, 7).save(dir_ / "diffs.zkpwd");
    std::string d = dir_.string();
    ASSERT_EQ(run("keygen --out " + d + "/ca --seed 1").code, 0);
    ASSERT_EQ(run("authenticate --ca-key " + d + "/ca/ca.key --srs " + d + "/ca/srs.bin --manifest " +
                  ZKPROV_CORPUS_DIR + "/manifest.json --out " + d + "/ap.zkpap --seed 2")
                  .code,
              0);
    auto s = run("setup --srs " + d + "/ca/srs.bin --package " + d + "/ap.zkpap --ca-pub " + d +
                 "/ca/ca.pub --diffs " + d + "/diffs.zkpwd --train pubmedqa-oncology,pubmedqa-neurology --out " + d +
                 "/setup --seed 3");
    ASSERT_EQ(s.code, 0) << s.out;
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string d() { return dir_.string(); }
  static std::string cs() { return d() + "/setup/commitments.zkpc"; }
  static std::string wit() { return d() + "/setup/witness.zkpw"; }
  static fs::path dir_;
};

fs::path Cli::dir_;

}  // namespace

TEST_F(Cli, HappyPath) {
  EXPECT_EQ(fs::status(wit()).permissions() & fs::perms::all, fs::perms::owner_read | fs::perms::owner_write);
  EXPECT_EQ(fs::status(d() + "/ca/ca.key").permissions() & fs::perms::all,
            fs::perms::owner_read | fs::perms::owner_write);
  auto p = run("prove --commitments " + cs() + " --witness " + wit() +
               " --prompt 'Does exercise help memory?' --attr topic=neurology --out " + d() + "/resp.json");
  ASSERT_EQ(p.code, 0) << p.out;
  auto j = nlohmann::json::parse(slurp(d() + "/resp.json"));
  for (const char* k : {"prompt", "attributes", "response", "proof_b64", "setup_digest"}) EXPECT_TRUE(j.contains(k)) << k;
  auto v = run("--json verify --commitments " + cs() + " --response " + d() + "/resp.json");
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_EQ(nlohmann::json::parse(v.out)["verdict"], "accept");
}

TEST_F(Cli, StaleSetupDigest) {
  ASSERT_EQ(run("prove --commitments " + cs() + " --witness " + wit() + " --prompt q --out " + d() + "/r.json").code, 0);
  auto j = nlohmann::json::parse(slurp(d() + "/r.json"));
  j["setup_digest"] = std::string(64, '0');
  std::ofstream(d() + "/stale.json") << j.dump();
  auto v = run("verify --commitments " + cs() + " --response " + d() + "/stale.json");
  EXPECT_EQ(v.code, 1);
  EXPECT_NE(v.out.find("malformed/stale setup"), std::string::npos) << v.out;
  // Tampered response text.
  j = nlohmann::json::parse(slurp(d() + "/r.json"));
  j["response"] = "something else";
  std::ofstream(d() + "/edited.json") << j.dump();
  auto e = run("--json verify --commitments " + cs() + " --response " + d() + "/edited.json");
  EXPECT_EQ(e.code, 1);
  EXPECT_EQ(nlohmann::json::parse(e.out)["reason"], "binding-values");
  std::ofstream(d() + "/garbage.json") << "{not json";
  EXPECT_EQ(run("verify --commitments " + cs() + " --response " + d() + "/garbage.json").code, 1);
}

TEST_F(Cli, NoRelevantDataset) {
  auto p = run("--json prove --commitments " + cs() + " --witness " + wit() +
               " --prompt q --attr topic=cardiology --out " + d() + "/none.json");
  EXPECT_EQ(p.code, 3);
  EXPECT_EQ(nlohmann::json::parse(p.out)["reason"], "no relevant dataset");
  EXPECT_FALSE(fs::exists(d() + "/none.json"));
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("prove --commitments " + cs()).code, 2);
  EXPECT_EQ(run("bench --percent 15").code, 2);
  auto k = run("prove --commitments " + cs() + " --witness " + wit() + " --prompt q --out " + d() + "/x.json", "");
  EXPECT_EQ(k.code, 2);
  EXPECT_NE(k.out.find("ZKPROV_WITNESS_KEY"), std::string::npos);
  EXPECT_EQ(run("prove --commitments " + cs() + " --witness " + wit() + " --prompt q --out " + d() + "/x.json",
                "ZKPROV_WITNESS_KEY=wrong ")
                .code,
            2);
  EXPECT_EQ(run("verify --commitments " + d() + "/missing --response " + d() + "/missing").code, 2);
}

TEST_F(Cli, SetupRejectsForeignCaKey) {
  ASSERT_EQ(run("keygen --out " + d() + "/ca2 --seed 9").code, 0);
  auto s = run("setup --srs " + d() + "/ca/srs.bin --package " + d() + "/ap.zkpap --ca-pub " + d() +
               "/ca2/ca.pub --diffs " + d() + "/diffs.zkpwd --out " + d() + "/setup2");
  EXPECT_EQ(s.code, 3) << s.out;
  EXPECT_FALSE(fs::exists(d() + "/setup2/commitments.zkpc"));
}

TEST(BenchOutput, CsvAndJsonAgree) {
  bench::BenchRecord a;
  a.model_profile = "1b";
  a.percent = 10;
  a.layers = 8;
  a.element_count = 419430;
  a.repetitions = 3;
  a.t_prove_ms = bench::Stats::of({1000, 1100, 1200});
  a.t_verify_ms = bench::Stats::of({100, 100, 100});
  a.t_stub_inference_ms = bench::Stats::of({0.01});
  auto b = a;
  b.percent = 50;
  b.element_count = 2097152;
  b.layers = 40;
  b.t_prove_ms = bench::Stats::of({2000});
  auto c = a;
  c.model_profile = "8b";
  c.percent = 10;
  c.element_count = 1677721;
  c.t_prove_ms = bench::Stats::of({1200});
  auto d = a;
  d.percent = 40;
  d.element_count = 1677721;
  d.t_prove_ms = bench::Stats::of({1000});
  std::vector<bench::BenchRecord> recs = {a, b, c, d};
  EXPECT_DOUBLE_EQ(a.t_prove_ms.mean, 1100);
  EXPECT_DOUBLE_EQ(a.t_prove_ms.stddev, 100);
  auto checks = bench::compute_checks(recs);
  ASSERT_EQ(checks.scaling.size(), 1u);
  EXPECT_NEAR(checks.scaling[0].ratio, 2000.0 / 1100.0, 1e-12);
  ASSERT_EQ(checks.cross_profile.size(), 1u);
  EXPECT_NEAR(checks.cross_profile[0].deviation, 0.2, 1e-12);

  auto js = nlohmann::json::parse(bench::to_json(recs, checks));
  std::istringstream csv(bench::to_csv(recs));
  std::string header, row;
  std::getline(csv, header);
  std::vector<std::string> cols;
  std::stringstream hs(header);
  for (std::string c; std::getline(hs, c, ',');) cols.push_back(c);
  for (const char* k : {"model_profile", "percent", "N", "element_count", "repetitions", "t_prove_ms_mean",
                        "t_prove_ms_stddev", "t_verify_ms_mean", "t_stub_inference_ms_mean"}) {
    EXPECT_NE(std::find(cols.begin(), cols.end(), k), cols.end()) << k;
  }
  size_t i = 0;
  while (std::getline(csv, row)) {
    std::stringstream rs(row);
    const auto& rec = js["records"][i++];
    for (const auto& col : cols) {
      std::string cell;
      std::getline(rs, cell, ',');
      const auto& v = rec.at(col);
      EXPECT_EQ(cell, v.is_string() ? v.get<std::string>() : v.dump()) << col;
    }
  }
  EXPECT_EQ(i, recs.size());
}
