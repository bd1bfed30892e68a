// tests/syntax_test.cpp

// Copyright 2026 The spliceaug Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spliceaug/syntax.hpp"
#include "test_util.hpp"

using namespace spliceaug;

namespace {

TaggedSentence Sentence(
    std::vector<std::pair<std::string, PosTag>> parts,
    const std::string &utt_id = "u") {
  std::vector<Token> toks;
  for (auto &[surface, pos] : parts) toks.push_back(Token{surface, pos, 0});
  return testing::Finish(std::move(toks), utt_id);
}

TaggedSentence LikeFriends() {  // 我很喜欢朋友
  return Sentence({{"我", PosTag::kPronoun},
                   {"很", PosTag::kAdverb},
                   {"喜欢", PosTag::kVerb},
                   {"朋友", PosTag::kNoun}});
}

TaggedSentence GoPark() {  // 我今天要去公园
  return Sentence({{"我", PosTag::kPronoun},
                   {"今天", PosTag::kTimeNoun},
                   {"要", PosTag::kVerb},
                   {"去", PosTag::kVerb},
                   {"公园", PosTag::kNoun}});
}

TaggedSentence HappyToday() {  // 我今天很高兴
  return Sentence({{"我", PosTag::kPronoun},
                   {"今天", PosTag::kTimeNoun},
                   {"很", PosTag::kAdverb},
                   {"高兴", PosTag::kAdjective}});
}

std::optional<TransposedSentence> Apply(SyntaxRule rule,
                                        const TaggedSentence &s,
                                        const SyntaxOptions &opt = {}) {
  return ApplyRule(rule, MatchPattern(s), s, opt);
}

std::vector<SyntaxRule> AllRules() {
  return {SyntaxRule::kR1, SyntaxRule::kR2, SyntaxRule::kR3, SyntaxRule::kR4,
          SyntaxRule::kR5, SyntaxRule::kR6, SyntaxRule::kR7};
}

std::multiset<std::string> SurfaceMultiset(const TaggedSentence &s) {
  std::multiset<std::string> out;
  for (const Token &t : s.tokens) out.insert(t.surface);
  return out;
}

}  // namespace

TEST_CASE("match_pattern: subject + adverbial + predicate + object") {
  PatternMatch m = MatchPattern(LikeFriends());
  CHECK(m.pattern_id == PatternId::kSAdvVO);
  std::vector<SentenceRole> expected{
      SentenceRole::kSubject, SentenceRole::kAdverbial,
      SentenceRole::kPredicate, SentenceRole::kObject};
  CHECK(m.roles == expected);
}

TEST_CASE("match_pattern: lone noun and lone adjective") {
  PatternMatch noun = MatchPattern(Sentence({{"猫", PosTag::kNoun}}));
  CHECK(noun.pattern_id == PatternId::kLoneNoun);
  CHECK(noun.roles == std::vector<SentenceRole>{SentenceRole::kSingleNoun});

  PatternMatch adj = MatchPattern(Sentence({{"好", PosTag::kAdjective}}));
  CHECK(adj.pattern_id == PatternId::kLoneAdj);

  PatternMatch verb = MatchPattern(Sentence({{"去", PosTag::kVerb}}));
  CHECK(verb.pattern_id == PatternId::kNoPattern);
}

TEST_CASE("match_pattern: subject + adverbials + predicate adjective") {
  PatternMatch m = MatchPattern(HappyToday());
  CHECK(m.pattern_id == PatternId::kSAdvAdvAdj);
  std::vector<SentenceRole> expected{
      SentenceRole::kSubject, SentenceRole::kAdverbial,
      SentenceRole::kAdverbial, SentenceRole::kAttribute};
  CHECK(m.roles == expected);
}

TEST_CASE("match_pattern: plain SVO") {
  PatternMatch m = MatchPattern(Sentence({{"我", PosTag::kPronoun},
                                          {"喜欢", PosTag::kVerb},
                                          {"朋友", PosTag::kNoun}}));
  CHECK(m.pattern_id == PatternId::kSvo);
}

TEST_CASE("match_pattern: attributes attach to their nouns") {
  PatternMatch m = MatchPattern(Sentence({{"漂亮", PosTag::kAdjective},
                                          {"朋友", PosTag::kNoun},
                                          {"喜欢", PosTag::kVerb},
                                          {"我", PosTag::kPronoun}}));
  CHECK(m.pattern_id == PatternId::kSvo);
  std::vector<SentenceRole> expected{
      SentenceRole::kAttribute, SentenceRole::kSubject,
      SentenceRole::kPredicate, SentenceRole::kObject};
  CHECK(m.roles == expected);
}

TEST_CASE("match_pattern: Other tag or leftover tokens yield NoPattern") {
  CHECK(MatchPattern(Sentence({{"我", PosTag::kPronoun},
                               {"嗯", PosTag::kOther},
                               {"猫", PosTag::kNoun}}))
            .pattern_id == PatternId::kNoPattern);
  // Noun after noun: no role for the second one.
  CHECK(MatchPattern(Sentence({{"我", PosTag::kPronoun},
                               {"朋友", PosTag::kNoun},
                               {"喜欢", PosTag::kVerb},
                               {"猫", PosTag::kNoun}}))
            .pattern_id == PatternId::kNoPattern);
  // Verb with nothing after it.
  CHECK(MatchPattern(Sentence({{"我", PosTag::kPronoun},
                               {"去", PosTag::kVerb}}))
            .pattern_id == PatternId::kNoPattern);
}

TEST_CASE("R1 swaps subject and object blocks") {
  auto result = Apply(SyntaxRule::kR1, LikeFriends());
  REQUIRE(result.has_value());
  CHECK(result->sentence.Text() == "朋友很喜欢我");
  CHECK(result->permutation.mapping == std::vector<int32_t>{3, 1, 2, 0});
}

TEST_CASE("R2 fronts the object block") {
  auto result = Apply(SyntaxRule::kR2, GoPark());
  REQUIRE(result.has_value());
  CHECK(result->sentence.Text() == "公园我今天要去");
  CHECK(result->permutation.mapping ==
        std::vector<int32_t>{4, 0, 1, 2, 3});
}

TEST_CASE("R1 twice is the identity") {
  TaggedSentence s = LikeFriends();
  auto first = Apply(SyntaxRule::kR1, s);
  REQUIRE(first.has_value());
  auto second = Apply(SyntaxRule::kR1, first->sentence);
  REQUIRE(second.has_value());
  CHECK(second->sentence.Text() == s.Text());
  TokenPermutation composed = TokenPermutation::Compose(
      first->permutation, second->permutation);
  CHECK(composed.IsIdentity());
}

TEST_CASE("R7 fronts the adverbial per the normative rule text") {
  auto result = Apply(SyntaxRule::kR7, HappyToday());
  REQUIRE(result.has_value());
  CHECK(result->sentence.Text() == "今天我很高兴");
  CHECK(result->permutation.mapping ==
        std::vector<int32_t>{1, 0, 2, 3});
}

TEST_CASE("R7 final-position variant is available behind an option") {
  SyntaxOptions opt;
  opt.r7_final = true;
  auto result = Apply(SyntaxRule::kR7, HappyToday(), opt);
  REQUIRE(result.has_value());
  CHECK(result->sentence.Text() == "我很高兴今天");
}

TEST_CASE("R7 fronts a plain adverb when no time word precedes it") {
  auto result = Apply(SyntaxRule::kR7, LikeFriends());
  REQUIRE(result.has_value());
  CHECK(result->sentence.Text() == "很我喜欢朋友");
}

TEST_CASE("R3 fronts the attribute block") {
  TaggedSentence s = Sentence({{"我", PosTag::kPronoun},
                               {"喜欢", PosTag::kVerb},
                               {"漂亮", PosTag::kAdjective},
                               {"朋友", PosTag::kNoun}});
  auto result = Apply(SyntaxRule::kR3, s);
  REQUIRE(result.has_value());
  CHECK(result->sentence.Text() == "漂亮我喜欢朋友");
  CHECK(result->permutation.mapping == std::vector<int32_t>{2, 0, 1, 3});
}

TEST_CASE("R5 fronts the predicate block, verb compounds move together") {
  auto result = Apply(SyntaxRule::kR5, GoPark());
  REQUIRE(result.has_value());
  CHECK(result->sentence.Text() == "要去我今天公园");
  CHECK(result->permutation.mapping ==
        std::vector<int32_t>{2, 3, 0, 1, 4});
}

TEST_CASE("R4 swaps a sentence-final adverb/adjective pair") {
  auto result = Apply(SyntaxRule::kR4, HappyToday());
  REQUIRE(result.has_value());
  CHECK(result->sentence.Text() == "我今天高兴很");
  auto again = Apply(SyntaxRule::kR4, result->sentence);
  REQUIRE(again.has_value());
  CHECK(again->sentence.Text() == HappyToday().Text());
  CHECK(TokenPermutation::Compose(result->permutation, again->permutation)
            .IsIdentity());
}

TEST_CASE("R4 does not fire without the final pair") {
  CHECK_FALSE(Apply(SyntaxRule::kR4, LikeFriends()).has_value());
  CHECK_FALSE(Apply(SyntaxRule::kR4, GoPark()).has_value());
}

TEST_CASE("R6 swaps the two adjectives when exactly two exist") {
  TaggedSentence s = Sentence({{"高", PosTag::kAdjective},
                               {"人", PosTag::kNoun},
                               {"很", PosTag::kAdverb},
                               {"帅", PosTag::kAdjective}});
  auto result = Apply(SyntaxRule::kR6, s);
  REQUIRE(result.has_value());
  CHECK(result->sentence.Text() == "帅人很高");
  CHECK(result->permutation.mapping == std::vector<int32_t>{3, 1, 2, 0});

  // One adjective only: not applicable.
  CHECK_FALSE(Apply(SyntaxRule::kR6, HappyToday()).has_value());
}

TEST_CASE("R1/R2 not applicable without an object") {
  CHECK_FALSE(Apply(SyntaxRule::kR1, HappyToday()).has_value());
  CHECK_FALSE(Apply(SyntaxRule::kR2, HappyToday()).has_value());
}

TEST_CASE("apply_rule refuses lone and unmatched sentences") {
  TaggedSentence lone = Sentence({{"猫", PosTag::kNoun}});
  for (SyntaxRule rule : AllRules())
    CHECK_FALSE(Apply(rule, lone).has_value());
}

TEST_CASE("transpose_all: lone sentences produce no variants") {
  for (const auto &parts :
       {std::pair<std::string, PosTag>{"猫", PosTag::kNoun},
        std::pair<std::string, PosTag>{"好", PosTag::kAdjective}}) {
    TaggedSentence s = Sentence({parts});
    CHECK(TransposeAll(s, AllRules()).empty());
  }
}

TEST_CASE("transpose_all: R1 on a matched sentence yields one variant") {
  std::vector<Variant> variants =
      TransposeAll(LikeFriends(), {SyntaxRule::kR1});
  REQUIRE(variants.size() == 1);
  CHECK(variants[0].rule == SyntaxRule::kR1);
  CHECK(variants[0].sentence.Text() == "朋友很喜欢我");
}

TEST_CASE("transpose_all: variant equal to the original is dropped") {
  TaggedSentence s = Sentence({{"猫", PosTag::kNoun},
                               {"喜欢", PosTag::kVerb},
                               {"猫", PosTag::kNoun}});
  CHECK(TransposeAll(s, {SyntaxRule::kR1}).empty());
}

TEST_CASE("transpose_all: at most one variant per rule, rules deduplicated") {
  std::vector<SyntaxRule> rules = ParseRuleList("R2,R1,R1,R2");
  std::vector<Variant> variants = TransposeAll(GoPark(), rules);
  CHECK(variants.size() == 2);
  CHECK(variants[0].rule == SyntaxRule::kR1);
  CHECK(variants[1].rule == SyntaxRule::kR2);
}

TEST_CASE("parse_rule_list rejects unknown rules") {
  CHECK_THROWS_AS((void)ParseRuleList("R1,R9"), Error);
}

TEST_CASE("property: variants preserve the surface multiset and emit valid "
          "permutations") {
  Rng rng(4242);
  size_t variants_seen = 0;
  for (int iter = 0; iter < 500; ++iter) {
    TaggedSentence s = testing::RandomSentence(rng, "u" + std::to_string(iter));
    for (const Variant &variant : TransposeAll(s, AllRules())) {
      ++variants_seen;
      CHECK(SurfaceMultiset(variant.sentence) == SurfaceMultiset(s));
      CHECK(variant.permutation.IsBijection());
      REQUIRE(variant.permutation.mapping.size() == s.tokens.size());
      for (size_t i = 0; i < variant.permutation.mapping.size(); ++i) {
        const Token &src = s.tokens[variant.permutation.mapping[i]];
        CHECK(variant.sentence.tokens[i].surface == src.surface);
        CHECK(variant.sentence.tokens[i].pos == src.pos);
        CHECK(variant.sentence.tokens[i].index == static_cast<int32_t>(i));
      }
    }
  }
  CHECK(variants_seen > 200);  // the generator must actually exercise rules
}

TEST_CASE("property: front placement after R2/R3/R5/R7") {
  Rng rng(515);
  size_t checked = 0;
  for (int iter = 0; iter < 400; ++iter) {
    TaggedSentence s = testing::RandomSentence(rng, "u");
    PatternMatch match = MatchPattern(s);
    if (!match.Transposable()) continue;
    struct Case { SyntaxRule rule; SentenceRole role; };
    for (Case c : {Case{SyntaxRule::kR2, SentenceRole::kObject},
                   Case{SyntaxRule::kR3, SentenceRole::kAttribute},
                   Case{SyntaxRule::kR5, SentenceRole::kPredicate},
                   Case{SyntaxRule::kR7, SentenceRole::kAdverbial}}) {
      auto result = ApplyRule(c.rule, match, s);
      if (!result) continue;
      ++checked;
      // Output position 0 must hold the first token of the moved block.
      size_t first = 0;
      while (match.roles[first] != c.role) ++first;
      if (c.rule == SyntaxRule::kR2 || c.rule == SyntaxRule::kR1) {
        // Object block includes attributes in front of the object.
        while (first > 0 && match.roles[first - 1] == SentenceRole::kAttribute)
          --first;
      }
      CHECK(result->permutation.mapping[0] == static_cast<int32_t>(first));
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("property: involution of R1, R4, R6 over a generated corpus") {
  Rng rng(909);
  std::map<SyntaxRule, size_t> applied;
  for (int iter = 0; iter < 1000; ++iter) {
    TaggedSentence s = testing::RandomSentence(rng, "u" + std::to_string(iter));
    PatternMatch match = MatchPattern(s);
    if (!match.Transposable()) continue;
    for (SyntaxRule rule :
         {SyntaxRule::kR1, SyntaxRule::kR4, SyntaxRule::kR6}) {
      auto first = ApplyRule(rule, match, s);
      if (!first) continue;
      ++applied[rule];
      PatternMatch rematch = MatchPattern(first->sentence);
      REQUIRE(rematch.Transposable());
      auto second = ApplyRule(rule, rematch, first->sentence);
      REQUIRE(second.has_value());
      CHECK(TokenPermutation::Compose(first->permutation,
                                      second->permutation)
                .IsIdentity());
      CHECK(second->sentence.Text() == s.Text());
    }
  }
  CHECK(applied[SyntaxRule::kR1] > 50);
  CHECK(applied[SyntaxRule::kR4] > 20);
  CHECK(applied[SyntaxRule::kR6] > 20);
}
