// Copyright 2026 The ft2ra Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// End-to-end runs of the ft2ra binary, checking outputs and exit codes.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "ft2ra/datastore.h"
#include "ft2ra/toy_lm.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.h"

namespace ft2ra {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(testing::ScratchDir("cli"));
    ASSERT_EQ(Run("gen-corpus --out " + P("c") + " --base-tokens 4000"), 0);
    ASSERT_EQ(Run("train --corpus " + P("c/base.txt") + " --vocab " +
                  P("v.txt") + " --vocab-from " + P("c/domain_train.txt") +
                  " --vocab-from " + P("c/domain_test.txt") +
                  " --epochs 1 --context-len 3 --embed-dim 4 --hidden-dim 8"
                  " --seed 3 --out " + P("m.bin")),
              0);
    ASSERT_EQ(Run("build-datastore --model " + P("m.bin") + " --vocab " +
                  P("v.txt") + " --corpus " + P("c/domain_train.txt") +
                  " --out " + P("ds.bin")),
              0);
  }

  static void TearDownTestSuite() {
    fs::remove_all(*dir_);
    delete dir_;
  }

  static std::string P(const std::string& name) {
    return (*dir_ / name).string();
  }

  // Runs the CLI with `args`, discarding output; returns the exit status.
  static int Run(const std::string& args, const std::string& out = "") {
    const std::string cmd = std::string(FT2RA_CLI_PATH) + " " + args + " > " +
                            (out.empty() ? "/dev/null" : P(out)) +
                            " 2>> " + P("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string Common() {
    return "--model " + P("m.bin") + " --vocab " + P("v.txt");
  }

  static fs::path* dir_;
};

fs::path* CliTest::dir_ = nullptr;

TEST_F(CliTest, BuildsArtifacts) {
  const ToyLm m = ToyLm::Load(P("m.bin"));
  EXPECT_EQ(m.context_len(), 3u);
  const Datastore ds = Datastore::Load(P("ds.bin"));
  EXPECT_EQ(ds.vocab_size(), m.vocab_size());
  EXPECT_EQ(ds.meta().model_fingerprint, m.Fingerprint());
  EXPECT_TRUE(fs::exists(P("m.bin.log.json")));
  const auto log = nlohmann::json::parse(testing::ReadBytes(P("m.bin.log.json")));
  EXPECT_EQ(log["config"]["seed"], 3);
}

TEST_F(CliTest, ZeroEpochTrainingCopiesModel) {
  ASSERT_EQ(Run("train --corpus " + P("c/domain_train.txt") + " --vocab " +
                P("v.txt") + " --model " + P("m.bin") + " --epochs 0 --out " +
                P("m0.bin")),
            0);
  EXPECT_EQ(testing::ReadBytes(P("m.bin")), testing::ReadBytes(P("m0.bin")));
}

TEST_F(CliTest, EvalWritesReport) {
  for (const std::string method : {"original", "ft2ra", "knnlm"}) {
    const std::string out = P("eval_" + method + ".json");
    ASSERT_EQ(Run("eval " + Common() + " --corpus " + P("c/domain_test.txt") +
                  " --datastore " + P("ds.bin") + " --method " + method +
                  " --line --max-tokens 20 --threads 2 --out " + out),
              0);
    const auto j = nlohmann::json::parse(testing::ReadBytes(out));
    EXPECT_EQ(j["method"], method);
    const double acc = j["metrics"]["token_accuracy"].get<double>();
    EXPECT_GE(acc, 0.0);
    EXPECT_LE(acc, 100.0);
    EXPECT_TRUE(j["metrics"]["line_es"].is_number());
  }
}

TEST_F(CliTest, SweepAcceptsLists) {
  ASSERT_EQ(Run("sweep " + Common() + " --corpus " + P("c/domain_test.txt") +
                " --datastore " + P("ds.bin") +
                " --iters 1,3 --neighbors 5,20 --eta 1,5 --strategy rec,uni"
                " --lambda 0.5 --out " + P("sweep.json")),
            0);
  const auto j = nlohmann::json::parse(testing::ReadBytes(P("sweep.json")));
  EXPECT_EQ(j["rows"].size(), 1u + 2u * 2u * 2u * 2u + 2u);
  EXPECT_TRUE(fs::exists(P("sweep.json.curve.0.tsv")));
}

TEST_F(CliTest, CompleteAndTrace) {
  ASSERT_EQ(Run("complete " + Common() + " --datastore " + P("ds.bin") +
                    " --prompt 'def run(self' --max-tokens 5 --trace",
                "complete.txt"),
            0);
  const std::string out = testing::ReadBytes(P("complete.txt"));
  EXPECT_NE(out.find("# step 0\n1\t"), std::string::npos) << out;
}

// Seeded regression values recorded from the fixture above.
TEST_F(CliTest, FixtureRunsReproduceRecordedOutputs) {
  EXPECT_EQ(ToyLm::Load(P("m.bin")).Fingerprint(), 0xb02298348b04716eULL);
  ASSERT_EQ(Run("complete " + Common() + " --datastore " + P("ds.bin") +
                    " --prompt 'def run(self'",
                "recorded.txt"),
            0);
  EXPECT_EQ(testing::ReadBytes(P("recorded.txt")), ", size , i )\n");
}

TEST_F(CliTest, ZeroEtaReproducesOriginalModel) {
  const std::string prompt = " --prompt 'for item in self' --max-tokens 12";
  ASSERT_EQ(Run("complete " + Common() + prompt + " --method original",
                "orig.txt"),
            0);
  ASSERT_EQ(Run("complete " + Common() + prompt + " --datastore " +
                    P("ds.bin") + " --method ft2ra --eta 0",
                "eta0.txt"),
            0);
  EXPECT_EQ(testing::ReadBytes(P("eta0.txt")), testing::ReadBytes(P("orig.txt")));
  // The original method never opens the datastore, even a corrupt one.
  testing::WriteBytes(P("junk.ds"), "not a datastore");
  ASSERT_EQ(Run("complete " + Common() + prompt + " --method original" +
                    " --datastore " + P("junk.ds"),
                "orig_junk.txt"),
            0);
  EXPECT_EQ(testing::ReadBytes(P("orig_junk.txt")),
            testing::ReadBytes(P("orig.txt")));
}

TEST_F(CliTest, PersistentEvalRuns) {
  EXPECT_EQ(Run("eval " + Common() + " --corpus " + P("c/domain_test.txt") +
                " --datastore " + P("ds.bin") + " --persist-updates --iters 2"),
            0);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Run(""), 2);
  EXPECT_EQ(Run("eval " + Common() + " --corpus " + P("missing.txt")), 2);
  EXPECT_EQ(Run("eval " + Common() + " --corpus " + P("c/domain_test.txt") +
                " --bogus"),
            2);
  EXPECT_EQ(Run("eval " + Common() + " --corpus " + P("c/domain_test.txt") +
                " --strategy nope"),
            2);
  EXPECT_EQ(Run("eval " + Common() + " --corpus " + P("c/domain_test.txt") +
                " --lambda 2"),
            2);
  EXPECT_EQ(Run("--help"), 0);
}

TEST_F(CliTest, DataErrorsExitOne) {
  // Method needs a datastore.
  EXPECT_EQ(Run("eval " + Common() + " --corpus " + P("c/domain_test.txt") +
                " --method ft2ra"),
            1);
  // Corrupt model file.
  testing::WriteBytes(P("bad.bin"), "FT2RALM1garbage");
  EXPECT_EQ(Run("eval --model " + P("bad.bin") + " --vocab " + P("v.txt") +
                " --corpus " + P("c/domain_test.txt")),
            1);
  // Vocab of a different size.
  testing::WriteBytes(P("small_vocab.txt"),
                      "#special:<EOL>,<UNK>,<STR_LIT>,<NUM_LIT>,<CHAR_LIT>,"
                      "<BOS>\n<EOL>\n<UNK>\n<STR_LIT>\n<NUM_LIT>\n<CHAR_LIT>\n"
                      "<BOS>\n");
  EXPECT_EQ(Run("eval --model " + P("m.bin") + " --vocab " +
                P("small_vocab.txt") + " --corpus " + P("c/domain_test.txt")),
            1);
  EXPECT_EQ(Run("build-datastore --model " + P("m.bin") + " --vocab " +
                P("small_vocab.txt") + " --corpus " + P("c/domain_train.txt") +
                " --out " + P("never.ds")),
            1);
  EXPECT_FALSE(fs::exists(P("never.ds")));
  // Truncated datastore.
  const std::string ds = testing::ReadBytes(P("ds.bin"));
  testing::WriteBytes(P("trunc.ds"), ds.substr(0, ds.size() / 2));
  EXPECT_EQ(Run("eval " + Common() + " --corpus " + P("c/domain_test.txt") +
                " --method knnlm --datastore " + P("trunc.ds")),
            1);
}

}  // namespace
}  // namespace ft2ra
