// Copyright 2026 The Synthrisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "synthrisk/experiment.h"

#include <algorithm>
#include <sstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace synthrisk {
namespace {

using json = nlohmann::json;
using ::testing::HasSubstr;
using ::testing::StartsWith;

LinearityConfig SmallConfig() {
  return ParseLinearityConfig(json::parse(R"({
    "generate_rows": 2600,
    "split": {"train": 1000, "control": 600, "release": 1000},
    "m": 1000,
    "f_l": [0.0, 1.0],
    "aux_sizes": [0],
    "seeds": [2],
    "n_attacks": 300,
    "secret": "occupation",
    "workers": 1
  })"));
}

TEST(ParseLinearityConfigTest, ReadsFields) {
  const LinearityConfig cfg = ParseLinearityConfig(
      json::parse(R"({"split": {"train": 10, "control": 5, "release": 10}, "f_l": [0.5],
                      "output": "out.csv", "dataset": "d.csv"})"),
      "/base");
  EXPECT_EQ(cfg.n_train, 10u);
  EXPECT_EQ(cfg.n_control, 5u);
  EXPECT_EQ(cfg.f_l, std::vector<double>{0.5});
  EXPECT_EQ(*cfg.output, std::filesystem::path("/base/out.csv"));
  EXPECT_EQ(*cfg.dataset, std::filesystem::path("/base/d.csv"));
  EXPECT_EQ(cfg.n_attacks, 2000u);
}

TEST(ParseLinearityConfigTest, RejectsInvalidDocuments) {
  EXPECT_THROW(ParseLinearityConfig(json::parse(R"({"extra": 1})")), InvalidArgument);
  EXPECT_THROW(ParseLinearityConfig(json::parse(R"({"f_l": [1.5]})")), InvalidArgument);
  EXPECT_THROW(ParseLinearityConfig(json::parse(R"({"f_l": []})")), InvalidArgument);
  EXPECT_THROW(ParseLinearityConfig(json::parse(R"({"seeds": [-1]})")), InvalidArgument);
  EXPECT_THROW(ParseLinearityConfig(json::parse(R"({"n_attacks": 0})")), InvalidArgument);
  EXPECT_THROW(ParseLinearityConfig(json::parse("[]")), InvalidArgument);
}

TEST(RunLinearityExperimentTest, EndpointsBracketTheLeakFraction) {
  const auto rows = RunLinearityExperiment(SmallConfig());
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.ok) << r.attack << ": " << r.error;
    EXPECT_EQ(r.seed, 2u);
    EXPECT_LE(r.ci_low, r.risk);
    EXPECT_GE(r.ci_high, r.risk);
    if (r.f_l == 1.0) {
      EXPECT_GT(r.risk, 0.8) << r.attack;
    } else if (r.attack != "singling_out") {
      EXPECT_LT(r.risk, 0.15) << r.attack;
    }
  }
}

TEST(RunLinearityExperimentTest, DeterministicAndCsvShape) {
  LinearityConfig cfg = SmallConfig();
  cfg.f_l = {0.5};
  const auto a = RunLinearityExperiment(cfg);
  cfg.workers = 2;
  const auto b = RunLinearityExperiment(cfg);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].attack, b[i].attack);
    EXPECT_EQ(a[i].risk_raw, b[i].risk_raw);
  }
  std::ostringstream out;
  WriteLinearityCsv(a, out);
  const std::string text = out.str();
  EXPECT_THAT(text, StartsWith("attack,f_l,aux,seed,status,risk,ci_low,ci_high,risk_raw,delta,"
                               "r_train,r_control,r_naive,excluded\n"));
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_THAT(text, HasSubstr("linkability,0.5,8,2,ok,"));
}

TEST(RunLinearityExperimentTest, UnknownSecretFails) {
  LinearityConfig cfg = SmallConfig();
  cfg.secret = "salary";
  EXPECT_ANY_THROW(RunLinearityExperiment(cfg));
}

}  // namespace
}  // namespace synthrisk
