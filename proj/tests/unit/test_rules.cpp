#include <gtest/gtest.h>

#include <fstream>
#include <limits>
#include <map>

#include "hkdsho/common/errors.hpp"
#include "hkdsho/rules/extraction.hpp"
#include "hkdsho/rules/format.hpp"
#include "hkdsho/rules/reasoner.hpp"
#include "hkdsho/rules/serialization.hpp"
#include "hkdsho/rules/store.hpp"
#include "merge_oracle.hpp"
#include "oracles.hpp"

using namespace hkdsho;
using namespace hkdsho::rules;
using oracle::make_rule;

namespace {

ExtractedRule instance(const std::vector<double>& values, const ActionMap& actions, const std::string& service = "svc") {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < values.size(); ++i) names.push_back("s" + std::to_string(i));
  return make_instance_rule(service, names, values, actions);
}

}  // namespace

TEST(InstanceRule, PinsValues) {
  const auto r = instance({2, 15.5}, {{"ac", -1}, {"win", 0}});
  ASSERT_EQ(r.conditions.size(), 2u);
  EXPECT_EQ(r.conditions[1].min, 15.5);
  EXPECT_EQ(r.conditions[1].avg, 15.5);
  EXPECT_EQ(r.conditions[1].max, 15.5);
  EXPECT_EQ(r.conclusions.size(), 2u);
  EXPECT_EQ(r.conclusions[0].count, 1u);
  EXPECT_TRUE(r.contains(std::vector<double>{2, 15.5}));
  EXPECT_THROW(instance({1}, {}), ContractError);
  const std::vector<std::string> names{"a"};
  const std::vector<double> vals{1, 2};
  EXPECT_THROW(make_instance_rule("s", names, vals, {{"x", 1}}), ContractError);
}

TEST(Generalize, AbsorbsComparableInstance) {
  RuleStore store;
  GeneralizeOptions opt;
  opt.tolerance["s1"] = 1.0;
  const auto a = generalize(instance({1, 20}, {{"ac", 1}}), store, opt, 0);
  EXPECT_FALSE(a.absorbed);
  const auto b = generalize(instance({1, 20.8}, {{"ac", 1}}), store, opt, 1);
  EXPECT_TRUE(b.absorbed);
  EXPECT_EQ(a.rule_id, b.rule_id);
  const auto* r = store.find_extracted(a.rule_id);
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->conditions[1].min, 20);
  EXPECT_EQ(r->conditions[1].max, 20.8);
  EXPECT_NEAR(r->conditions[1].avg, 20.4, 1e-12);
  EXPECT_EQ(r->conclusions[0].count, 2u);
  EXPECT_EQ(r->merge_count, 2u);
}

TEST(Generalize, CategoricalStateNeverWidens) {
  RuleStore store;
  GeneralizeOptions opt;
  opt.tolerance["s1"] = 1.0;
  generalize(instance({1, 20}, {{"ac", 1}}), store, opt, 0);
  const auto b = generalize(instance({2, 20}, {{"ac", 1}}), store, opt, 1);
  EXPECT_FALSE(b.absorbed);
  EXPECT_EQ(store.extracted_count(), 2u);
}

TEST(Generalize, DifferentConclusionsStaySeparate) {
  RuleStore store;
  GeneralizeOptions opt;
  generalize(instance({1, 20}, {{"ac", 1}}), store, opt, 0);
  generalize(instance({1, 20}, {{"ac", -1}}), store, opt, 0);
  EXPECT_EQ(store.extracted_count(), 2u);
}

TEST(Generalize, NeverChangesConclusionLevels) {
  Rng rng(17);
  RuleStore store;
  GeneralizeOptions opt;
  opt.tolerance["s0"] = 2.0;
  for (int i = 0; i < 500; ++i) {
    const double level = static_cast<double>(rng.uniform_index(3));
    const auto g = generalize(instance({10 * rng.uniform()}, {{"lp", level}}), store, opt, i);
    EXPECT_EQ(store.find_extracted(g.rule_id)->conclusions[0].level, level);
  }
}

TEST(MergeRules, FusesOverlapsToFixedPoint) {
  RuleStore store;
  auto& rules = store.extracted_mutable("svc");
  rules.push_back(make_rule("x1", {{0, 1, 2}}, {{"lp", 1}}));
  rules.push_back(make_rule("x2", {{5, 6, 7}}, {{"lp", 1}}));
  rules.push_back(make_rule("x3", {{1.5, 4, 5.5}}, {{"lp", 1}}));
  rules.push_back(make_rule("x4", {{1, 1, 1}}, {{"lp", 0}}));
  const auto events = merge_rules(store, 3);
  EXPECT_EQ(events.size(), 2u);
  const auto& out = store.extracted("svc");
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].id, "x1");
  EXPECT_EQ(out[0].conditions[0].min, 0);
  EXPECT_EQ(out[0].conditions[0].max, 7);
  EXPECT_NEAR(out[0].conditions[0].avg, (1 + 6 + 4) / 3.0, 1e-12);
  EXPECT_EQ(out[0].conclusions[0].count, 3u);
  EXPECT_EQ(out[1].id, "x4");
}

TEST(MergeRules, Idempotent) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    RuleStore store;
    store.extracted_mutable("svc") = oracle::random_rules(rng, 4, 3);
    merge_rules(store, 0);
    const auto once = store.extracted("svc");
    EXPECT_TRUE(merge_rules(store, 1).empty());
    EXPECT_EQ(store.extracted("svc"), once);
  }
}

TEST(MergeRules, MatchesAllOrdersOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const auto input = oracle::random_rules(rng, 4, 1 + rng.uniform_index(3));
    std::vector<oracle::PlainRule> plain;
    for (const auto& r : input) plain.push_back(oracle::plain(r));
    std::vector<std::vector<oracle::PlainRule>> terminals;
    oracle::explore_merges(plain, terminals);

    RuleStore store;
    store.extracted_mutable("svc") = input;
    merge_rules(store, 0);
    std::vector<oracle::PlainRule> got;
    for (const auto& r : store.extracted("svc")) got.push_back(oracle::plain(r));
    oracle::sort_plain(got);
    for (const auto& t : terminals) ASSERT_TRUE(oracle::plain_equal(got, t, 1e-9)) << "trial " << trial;
  }
}

TEST(DeleteRule, ErrorsAndLog) {
  RuleStore store({{"e1", {{"us", 0, 0}}, {{"lp", 0}}, 0}});
  const auto id = store.insert_extracted(instance({1}, {{"lp", 2}}), 0);
  EXPECT_THROW(delete_rule(store, "e1", 1), ForbiddenError);
  EXPECT_THROW(delete_rule(store, "nope", 1), NotFoundError);
  delete_rule(store, id, 2);
  EXPECT_EQ(store.extracted_count(), 0u);
  EXPECT_EQ(store.log().back().kind, RuleEventKind::deleted);
  EXPECT_EQ(store.log().back().rule_id, id);
}

TEST(RuleStore, RejectsDuplicateExistingIds) {
  std::vector<ExistingRule> rules{{"a", {{"us", 0, 0}}, {{"lp", 0}}, 0}, {"a", {{"us", 1, 1}}, {{"lp", 1}}, 0}};
  EXPECT_THROW(RuleStore{rules}, ConfigError);
}

TEST(Ppmcc, HandComputedValues) {
  const std::vector<double> a{1, 2, 3}, b{1, 2, 4}, c{3, 2, 1};
  EXPECT_NEAR(ppmcc(a, b), 0.9819805061, 1e-4);
  EXPECT_NEAR(ppmcc(a, c), -1.0, 1e-12);
  const std::vector<double> flat{2, 2, 2};
  EXPECT_EQ(ppmcc(a, flat), 0.0);
  const std::vector<double> d{0, 1, 3, 2}, e{1, 1, 2, 5};
  EXPECT_NEAR(ppmcc(d, e), 0.4773960376, 1e-4);
}

TEST(Ppmcc, SymmetricAndAffineInvariant) {
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> x(4), y(4), z(4);
    const double s = 0.1 + 10 * rng.uniform(), o = 100 * rng.uniform() - 50;
    for (int k = 0; k < 4; ++k) {
      x[k] = rng.uniform();
      y[k] = rng.uniform();
      z[k] = s * y[k] + o;
    }
    EXPECT_NEAR(ppmcc(x, y), ppmcc(y, x), 1e-12);
    EXPECT_NEAR(ppmcc(x, y), ppmcc(x, z), 1e-9);
    EXPECT_NEAR(ppmcc(x, y), oracle::pearson_oracle(x, y), 1e-12);
  }
}

TEST(ExtractedInfer, EmptyIsNoMatch) {
  const std::vector<ExtractedRule> none;
  EXPECT_FALSE(extracted_infer(none, std::vector<double>{1, 2, 3}).has_value());
}

TEST(ExtractedInfer, SingleContainment) {
  const std::vector<ExtractedRule> rules{make_rule("A", {{0, 1, 2}, {0, 2, 4}, {0, 3, 6}}, {{"lp", 2}}),
                                         make_rule("B", {{10, 11, 12}, {10, 11, 12}, {10, 11, 12}}, {{"lp", 0}}, 9)};
  const auto inf = extracted_infer(rules, std::vector<double>{1, 2, 3});
  ASSERT_TRUE(inf);
  EXPECT_EQ(inf->rule_id, "A");
  EXPECT_EQ(inf->branch, InferenceBranch::single_containment);
  EXPECT_EQ(inf->conclusions, (ActionMap{{"lp", 2}}));
}

TEST(ExtractedInfer, CorrelationDominant) {
  const std::vector<ExtractedRule> rules{make_rule("A", {{1, 1, 1}, {2, 2, 2}, {4, 4, 4}}, {{"lp", 2}}),
                                         make_rule("B", {{3, 3, 3}, {2, 2, 2}, {1, 1, 1}}, {{"lp", 0}}, 9)};
  const auto inf = extracted_infer(rules, std::vector<double>{1, 2, 3});
  ASSERT_TRUE(inf);
  EXPECT_EQ(inf->rule_id, "A");
  EXPECT_EQ(inf->branch, InferenceBranch::correlation);
  ASSERT_EQ(inf->correlations.size(), 2u);
  EXPECT_NEAR(inf->correlations[0].second, 0.9819805061, 1e-4);
  EXPECT_NEAR(inf->correlations[1].second, -1.0, 1e-4);
}

TEST(ExtractedInfer, CorrelationExampleWithEpsilon) {
  const std::vector<ExtractedRule> rules{make_rule("lo", {{4, 4, 4}, {1, 1, 1}, {3, 3, 3}, {5, 5, 5}}, {{"lp", 0}}, 9),
                                         make_rule("hi", {{2, 2, 2}, {3, 3, 3}, {1, 1, 1}, {9, 9, 9}}, {{"lp", 3}})};
  const auto inf = extracted_infer(rules, std::vector<double>{1, 4, 2, 8}, 0.05);
  ASSERT_TRUE(inf);
  EXPECT_EQ(inf->rule_id, "hi");
  EXPECT_NEAR(inf->correlations[0].second, 0.3310063706, 1e-4);
  EXPECT_NEAR(inf->correlations[1].second, 0.9512374756, 1e-4);
}

TEST(ExtractedInfer, CountFallback) {
  const std::vector<ExtractedRule> rules{make_rule("A", {{2, 2, 2}, {4, 4, 4}, {6, 6, 6}}, {{"lp", 1}}, 3),
                                         make_rule("B", {{10, 10, 10}, {20, 20, 20}, {30, 30, 30}}, {{"lp", 4}}, 7)};
  const auto inf = extracted_infer(rules, std::vector<double>{1, 2, 3});
  ASSERT_TRUE(inf);
  EXPECT_EQ(inf->rule_id, "B");
  EXPECT_EQ(inf->branch, InferenceBranch::occurrence_count);
}

TEST(ExtractedInfer, SeveralContainingRulesCorrelate) {
  const std::vector<ExtractedRule> rules{make_rule("A", {{0, 1, 5}, {0, 2, 5}, {0, 4, 5}}, {{"lp", 1}}),
                                         make_rule("B", {{0, 3, 5}, {0, 2, 5}, {0, 1, 5}}, {{"lp", 2}}, 5),
                                         make_rule("C", {{9, 9, 9}, {9, 9, 9}, {9, 9, 9}}, {{"lp", 3}}, 50)};
  const auto inf = extracted_infer(rules, std::vector<double>{1, 2, 3});
  ASSERT_TRUE(inf);
  EXPECT_EQ(inf->rule_id, "A");
  EXPECT_EQ(inf->correlations.size(), 2u);
}

TEST(ExtractedInfer, LoneNonContainingRuleWins) {
  const std::vector<ExtractedRule> rules{make_rule("A", {{5, 5, 5}, {5, 5, 5}}, {{"lp", 1}})};
  const auto inf = extracted_infer(rules, std::vector<double>{1, 2});
  ASSERT_TRUE(inf);
  EXPECT_EQ(inf->rule_id, "A");
}

TEST(ExtractedInfer, BitStable) {
  Rng rng(3);
  const auto rules = oracle::random_rules(rng, 4, 3);
  const std::vector<double> obs{2.5, 4.25, 7};
  const auto first = extracted_infer(rules, obs);
  for (int i = 0; i < 100; ++i) {
    const auto again = extracted_infer(rules, obs);
    ASSERT_EQ(again->rule_id, first->rule_id);
    ASSERT_EQ(again->correlations, first->correlations);
  }
}

TEST(ExtractedInfer, InstanceMatchesItsOwnObservation) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> obs{double(rng.uniform_index(4)), 30 * rng.uniform(), 30 * rng.uniform()};
    auto r = instance(obs, {{"ac", 1}});
    r.id = "i";
    std::vector<ExtractedRule> rules{r};
    EXPECT_TRUE(rules[0].contains(obs));
    EXPECT_EQ(extracted_infer(rules, obs)->branch, InferenceBranch::single_containment);
  }
}

TEST(ExistingMatch, PriorityAndConflicts) {
  const std::vector<ExistingRule> rules{{"a", {{"us", 0, 0}}, {{"lp", 0}, {"cur", 0}}, 0},
                                        {"b", {{"us", 0, 0}}, {{"lp", 2}}, 1},
                                        {"c", {{"us", 0, 0}}, {{"cur", 1}}, 0},
                                        {"d", {{"us", 1, 1}}, {{"ac", 1}}, 0}};
  const Observation o{{"us", 0}};
  const auto m = existing_match(rules, o);
  EXPECT_EQ(m.levels.at("lp"), 2);
  EXPECT_EQ(m.rule_of.at("lp"), "b");
  EXPECT_TRUE(m.conflicts.count("cur"));
  EXPECT_FALSE(m.levels.count("ac"));
}

TEST(Serialization, StoreRoundTripExact) {
  RuleStore store({{"e1", {{"us", 0, 0}, {"tr", 19.5, std::numeric_limits<double>::infinity()}}, {{"ac", -1}, {"act", 0.1}}, 2}});
  GeneralizeOptions opt;
  opt.tolerance["s1"] = 0.7;
  Rng rng(4);
  for (int i = 0; i < 50; ++i)
    generalize(instance({double(rng.uniform_index(2)), rng.uniform() * 3.0 + 1.0 / 3.0}, {{"lp", double(i % 2)}}),
               store, opt, i);
  merge_rules(store, 50);
  const auto dir = oracle::temp_dir("store");
  save_store(store, dir / "s.json");
  const auto back = load_store(dir / "s.json");
  EXPECT_TRUE(back == store);
  EXPECT_EQ(store_to_json(back).dump(), store_to_json(store).dump());
}

TEST(Serialization, LoadErrorsNamePath) {
  try {
    load_store("/nonexistent/store.json");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/store.json"), std::string::npos);
  }
}

TEST(Format, ShowsIntervalsAveragesAndCounts) {
  auto r = make_rule("x1", {{1, 1.5, 2}}, {{"lp", 3}}, 4);
  r.conditions[0].state = "le";
  const auto text = format_rule(r);
  EXPECT_NE(text.find("if le in [1, 2] (avg 1.5)"), std::string::npos) << text;
  EXPECT_NE(text.find("then lp=3 (count 4)"), std::string::npos) << text;
}

TEST(Generalize, AverageMatchesShadowList) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const double err = oracle::shadow_generalize_trial(rng, 30);
    ASSERT_GE(err, 0.0) << "invariant broken in trial " << trial;
    ASSERT_LE(err, 1e-9);
  }
}
