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


#include "synthrisk/predicate.h"

#include <cmath>
#include <set>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace synthrisk {
namespace {

using ::synthrisk::testing::Cat;
using ::synthrisk::testing::Num;
using ::synthrisk::testing::RandomMixed;
using ::testing::UnorderedElementsAre;

std::vector<std::string> Texts(const std::vector<Predicate>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.ToString());
  return out;
}

// Row-by-row reference evaluation through Values.
size_t OracleCount(const Predicate& p, const Dataset& ds) {
  size_t n = 0;
  for (size_t r = 0; r < ds.n_rows(); ++r) {
    bool all = true;
    for (const Atom& a : p.atoms()) {
      const Value v = ds.value(r, ds.ColumnIndex(a.attr));
      bool ok;
      if (a.op == CompareOp::kIsMissing) {
        ok = v.is_missing();
      } else if (v.is_missing()) {
        ok = false;
      } else if (v.is_category()) {
        ok = (v.category() == a.value.category()) == (a.op == CompareOp::kEq);
      } else {
        const double x = v.number(), y = a.value.number();
        switch (a.op) {
          case CompareOp::kEq: ok = x == y; break;
          case CompareOp::kNeq: ok = x != y; break;
          case CompareOp::kLe: ok = x <= y; break;
          case CompareOp::kGe: ok = x >= y; break;
          case CompareOp::kLt: ok = x < y; break;
          case CompareOp::kGt: ok = x > y; break;
          default: ok = false;
        }
      }
      all = all && ok;
    }
    n += all;
  }
  return n;
}

TEST(PredicateTest, ToStringFormat) {
  Predicate p({{"workclass", CompareOp::kEq, Value::Category("Private")},
               {"age", CompareOp::kGe, Value::Number(50)},
               {"zip", CompareOp::kIsMissing, Value::Missing()}});
  EXPECT_EQ(p.ToString(), "workclass == 'Private' & age >= 50 & zip is NaN");
}

TEST(EvaluateTest, MissingOnlyMatchesIsMissing) {
  const Dataset ds({Num("x", {1.0, std::nullopt, 3.0}), Cat("c", {"a", "b", std::nullopt})});
  EXPECT_EQ(Evaluate(Predicate({{"x", CompareOp::kNeq, Value::Number(1)}}), ds), 1u);
  EXPECT_EQ(Evaluate(Predicate({{"x", CompareOp::kIsMissing, Value::Missing()}}), ds), 1u);
  EXPECT_EQ(Evaluate(Predicate({{"c", CompareOp::kNeq, Value::Category("a")}}), ds), 1u);
  EXPECT_EQ(Evaluate(Predicate({{"c", CompareOp::kIsMissing, Value::Missing()}}), ds), 1u);
}

TEST(EvaluateTest, AbsentToken) {
  const Dataset ds({Cat("c", {"a", "b", std::nullopt})});
  EXPECT_EQ(Evaluate(Predicate({{"c", CompareOp::kEq, Value::Category("zzz")}}), ds), 0u);
  EXPECT_EQ(Evaluate(Predicate({{"c", CompareOp::kNeq, Value::Category("zzz")}}), ds), 2u);
}

TEST(EvaluateTest, EmptyPredicateMatchesAll) {
  const Dataset ds({Num("x", {1.0, std::nullopt})});
  EXPECT_EQ(Evaluate(Predicate(), ds), 2u);
}

TEST(EvaluateTest, CountLimitStopsEarly) {
  const Dataset ds({Num("x", {1, 1, 1, 1})});
  BoundPredicate p(Predicate({{"x", CompareOp::kEq, Value::Number(1)}}), ds);
  EXPECT_EQ(p.Count(2), 2u);
  const std::vector<uint32_t> rows{0, 3};
  EXPECT_EQ(p.Count(rows), 2u);
}

TEST(EvaluateTest, Errors) {
  const Dataset ds({Num("x", {1.0}), Cat("c", {"a"})});
  EXPECT_THROW(Evaluate(Predicate({{"y", CompareOp::kEq, Value::Number(1)}}), ds),
               InvalidArgument);
  EXPECT_THROW(Evaluate(Predicate({{"x", CompareOp::kEq, Value::Category("1")}}), ds),
               InvalidArgument);
  EXPECT_THROW(Evaluate(Predicate({{"c", CompareOp::kLe, Value::Category("a")}}), ds),
               InvalidArgument);
  EXPECT_THROW(Evaluate(Predicate({{"c", CompareOp::kEq, Value::Number(1)}}), ds),
               InvalidArgument);
}

TEST(EvaluatePropertyTest, MatchesOracleOnRandomPredicates) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset ds = RandomMixed(150, 2, 3, 0.15, seed);
    Rng rng(seed);
    for (int i = 0; i < 50; ++i) {
      const size_t n = 1 + i % ds.n_cols();
      const Predicate p = RandomPredicate(ds, n, rng);
      EXPECT_EQ(Evaluate(p, ds), OracleCount(p, ds)) << p.ToString();
    }
  }
}

TEST(EvaluatePropertyTest, AddingAtomsNeverIncreasesCount) {
  const Dataset ds = RandomMixed(200, 2, 2, 0.1, 3);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Predicate full = RandomPredicate(ds, 4, rng);
    Predicate prefix;
    size_t last = ds.n_rows();
    for (const Atom& a : full.atoms()) {
      prefix.Add(a);
      const size_t c = Evaluate(prefix, ds);
      EXPECT_LE(c, last);
      last = c;
    }
  }
}

TEST(UnivariateTest, ContinuousExtremes) {
  const Dataset ds({Num("x", {1, 2, 2, 3})});
  EXPECT_THAT(Texts(UnivariatePredicates(ds, "x")), UnorderedElementsAre("x <= 1", "x >= 3"));
}

TEST(UnivariateTest, CategoricalSingletons) {
  const Dataset ds({Cat("c", {"A", "A", "B"})});
  EXPECT_THAT(Texts(UnivariatePredicates(ds, "c")), UnorderedElementsAre("c == 'B'"));
}

TEST(UnivariateTest, SingleMissingValue) {
  const Dataset ds({Cat("c", {"A", "A", std::nullopt}), Num("x", {std::nullopt, 2, std::nullopt})});
  EXPECT_THAT(Texts(UnivariatePredicates(ds, "c")), UnorderedElementsAre("c is NaN"));
  // Two missing values: no missingness predicate.
  EXPECT_THAT(Texts(UnivariatePredicates(ds, "x")), UnorderedElementsAre("x <= 2", "x >= 2"));
}

TEST(UnivariateTest, AllMissingContinuousYieldsNothing) {
  const Dataset ds({Num("x", {std::nullopt, std::nullopt}), Num("y", {1, 2})});
  EXPECT_TRUE(UnivariatePredicates(ds, "x").empty());
}

TEST(UnivariatePropertyTest, CategoricalCandidatesSingleOut) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset ds = RandomMixed(30, 2, 0, 0.05, seed, 20);
    for (const auto& name : ds.column_names()) {
      for (const auto& p : UnivariatePredicates(ds, name)) EXPECT_EQ(Evaluate(p, ds), 1u);
    }
  }
}

TEST(MultivariateTest, DirectionFollowsMedian) {
  const Dataset ds({Num("v", {30, 40, 50})});
  const std::vector<std::string> attrs{"v"};
  EXPECT_EQ(MultivariatePredicate(ds, attrs, 0).ToString(), "v <= 30");
  EXPECT_EQ(MultivariatePredicate(ds, attrs, 1).ToString(), "v >= 40");
  EXPECT_EQ(MultivariatePredicate(ds, attrs, 2).ToString(), "v >= 50");
}

TEST(MultivariateTest, LowerMedianOfEvenCount) {
  const Dataset ds({Num("v", {4, 1, 3, 2, std::nullopt}), Cat("c", {"a", "b", "c", "d", "e"})});
  const auto m = LowerMedians(ds);
  ASSERT_TRUE(m[0].has_value());
  EXPECT_EQ(*m[0], 2.0);
  EXPECT_FALSE(m[1].has_value());
}

TEST(MultivariateTest, MixedRecord) {
  const Dataset ds({Cat("c", {"a", "b"}), Num("v", {std::nullopt, 1.0}), Num("w", {5, 6})});
  const std::vector<std::string> attrs{"c", "v", "w"};
  EXPECT_EQ(MultivariatePredicate(ds, attrs, 0).ToString(), "c == 'a' & v is NaN & w >= 5");
  EXPECT_THROW(MultivariatePredicate(ds, attrs, 2), InvalidArgument);
  EXPECT_THROW(MultivariatePredicate(ds, std::vector<std::string>{}, 0), InvalidArgument);
}

TEST(MultivariatePropertyTest, RecordAlwaysSatisfiesItsPredicate) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset ds = RandomMixed(60, 2, 3, 0.2, seed);
    const auto names = ds.column_names();
    const auto medians = LowerMedians(ds);
    for (size_t r = 0; r < ds.n_rows(); ++r) {
      const Predicate p = MultivariatePredicate(ds, names, r, medians);
      EXPECT_TRUE(BoundPredicate(p, ds).Matches(r));
    }
  }
}

TEST(RandomPredicateTest, CategoricalOperatorIsFair) {
  const Dataset ds({Cat("c", {"a", "b", "c"})});
  Rng rng(11);
  const int n = 10000;
  int eq = 0;
  std::set<std::string> values;
  for (int i = 0; i < n; ++i) {
    const Predicate p = RandomPredicate(ds, 1, rng);
    eq += p.atoms()[0].op == CompareOp::kEq;
    values.insert(p.atoms()[0].value.category());
  }
  EXPECT_NEAR(eq, n / 2.0, 3 * std::sqrt(n * 0.25));
  EXPECT_EQ(values, (std::set<std::string>{"a", "b", "c"}));
}

TEST(RandomPredicateTest, ContinuousValuesStayInSupport) {
  const Dataset ds({Num("x", {-2.0, 5.0, std::nullopt})});
  Rng rng(12);
  std::set<CompareOp> ops;
  for (int i = 0; i < 2000; ++i) {
    const Predicate p = RandomPredicate(ds, 1, rng);
    const double v = p.atoms()[0].value.number();
    EXPECT_GE(v, -2.0);
    EXPECT_LE(v, 5.0);
    ops.insert(p.atoms()[0].op);
  }
  EXPECT_EQ(ops.size(), 6u);
}

TEST(RandomPredicateTest, DistinctAttributesAndErrors) {
  const Dataset ds = RandomMixed(10, 2, 2, 0.0, 1);
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    std::set<std::string> attrs;
    const Predicate p = RandomPredicate(ds, 4, rng);
    for (const Atom& a : p.atoms()) attrs.insert(a.attr);
    EXPECT_EQ(attrs.size(), 4u);
  }
  EXPECT_THROW(RandomPredicate(ds, 0, rng), InvalidArgument);
  EXPECT_THROW(RandomPredicate(ds, 5, rng), InvalidArgument);
}

TEST(RandomPredicatePropertyTest, IndependentOfRowOrder) {
  const Dataset ds = RandomMixed(80, 3, 2, 0.1, 4);
  const Dataset shuffled = synthrisk::testing::Shuffled(ds, 9);
  Rng a(5), b(5);
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(RandomPredicate(ds, 3, a).ToString(), RandomPredicate(shuffled, 3, b).ToString());
  }
}

}  // namespace
}  // namespace synthrisk
