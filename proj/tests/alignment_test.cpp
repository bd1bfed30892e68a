// tests/alignment_test.cpp

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

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "spliceaug/alignment.hpp"
#include "test_util.hpp"

using namespace spliceaug;

namespace {

ErrorCode CodeOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kIoError;
}

std::map<std::string, std::vector<CtmEntry>> Parse(const std::string &text) {
  std::istringstream in(text);
  return ParseCtm(in);
}

TaggedSentence TwoTokens() {
  return testing::Finish(
      {Token{"我", PosTag::kPronoun, 0}, Token{"今天", PosTag::kTimeNoun, 0}},
      "u1");
}

}  // namespace

TEST_CASE("parse_ctm groups and orders entries") {
  auto by_utt = Parse("u1 1 0.00 0.30 我\nu1 1 0.30 0.42 今天\n");
  REQUIRE(by_utt.count("u1") == 1);
  const auto &entries = by_utt["u1"];
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].word == "我");
  CHECK(entries[0].start_sec == doctest::Approx(0.0));
  CHECK(entries[1].word == "今天");
  CHECK(entries[1].dur_sec == doctest::Approx(0.42));
}

TEST_CASE("parse_ctm sorts by start time") {
  auto sorted = Parse("u1 1 0.30 0.42 今天\nu1 1 0.00 0.30 我\n");
  const auto &entries = sorted["u1"];
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].word == "我");
  CHECK(entries[1].word == "今天");
}

TEST_CASE("parse_ctm rejects overlapping entries") {
  CHECK(CodeOf([] {
          Parse("u1 1 0.00 0.50 我\nu1 1 0.30 0.42 今天\n");
        }) == ErrorCode::kOverlappingEntries);
}

TEST_CASE("parse_ctm accepts touching entries and comments") {
  auto by_utt = Parse("# comment\nu1 1 0.00 0.30 我 0.95\nu1 1 0.30 0.10 你\n");
  REQUIRE(by_utt["u1"].size() == 2);
  CHECK(by_utt["u1"][0].confidence == doctest::Approx(0.95));
  CHECK_FALSE(by_utt["u1"][1].confidence.has_value());
}

TEST_CASE("parse_ctm malformed lines and bad times") {
  CHECK(CodeOf([] { Parse("u1 1 0.0 我\n"); }) ==
        ErrorCode::kMalformedCtmLine);
  CHECK(CodeOf([] { Parse("u1 1 x 0.3 我\n"); }) ==
        ErrorCode::kMalformedCtmLine);
  CHECK(CodeOf([] { Parse("u1 1 0.0 0.3 我 1.5\n"); }) ==
        ErrorCode::kMalformedCtmLine);
  CHECK(CodeOf([] { Parse("u1 1 -0.1 0.3 我\n"); }) ==
        ErrorCode::kNegativeTime);
  CHECK(CodeOf([] { Parse("u1 1 0.1 0 我\n"); }) == ErrorCode::kNegativeTime);
}

TEST_CASE("group_to_tokens merges character entries into a word") {
  TaggedSentence s =
      testing::Finish({Token{"公园", PosTag::kNoun, 0}}, "u1");
  std::vector<CtmEntry> entries{{"u1", 1, 0.9, 0.1, "公", {}},
                                {"u1", 1, 1.0, 0.2, "园", {}}};
  auto groups = GroupToTokens(entries, s);
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].token_index == 0);
  CHECK(groups[0].start_sec == doctest::Approx(0.9));
  CHECK(groups[0].end_sec == doctest::Approx(1.2));
}

TEST_CASE("group_to_tokens passes word-level entries through") {
  TaggedSentence s =
      testing::Finish({Token{"公园", PosTag::kNoun, 0}}, "u1");
  std::vector<CtmEntry> entries{{"u1", 1, 0.9, 0.3, "公园", {}}};
  auto groups = GroupToTokens(entries, s);
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].start_sec == doctest::Approx(0.9));
  CHECK(groups[0].end_sec == doctest::Approx(1.2));
}

TEST_CASE("group_to_tokens detects text mismatches") {
  TaggedSentence s =
      testing::Finish({Token{"公园", PosTag::kNoun, 0}}, "u1");
  std::vector<CtmEntry> wrong{{"u1", 1, 0.9, 0.1, "公", {}},
                              {"u1", 1, 1.0, 0.2, "圆", {}}};
  CHECK(CodeOf([&] { GroupToTokens(wrong, s); }) ==
        ErrorCode::kAlignmentTextMismatch);

  std::vector<CtmEntry> leftover{{"u1", 1, 0.9, 0.3, "公园", {}},
                                 {"u1", 1, 1.2, 0.1, "啊", {}}};
  CHECK(CodeOf([&] { GroupToTokens(leftover, s); }) ==
        ErrorCode::kAlignmentTextMismatch);

  CHECK(CodeOf([&] { GroupToTokens({}, s); }) ==
        ErrorCode::kAlignmentTextMismatch);
}

TEST_CASE("to_frame_spans: boundaries at rounded starts") {
  std::vector<TokenInterval> groups{{0, 0.00, 0.30}, {1, 0.30, 0.42}};
  UtteranceAlignment a = ToFrameSpans(groups, 42, 10.0, "u1");
  REQUIRE(a.spans.size() == 2);
  CHECK(a.spans[0] == WordSpan{0, 0, 30});
  CHECK(a.spans[1] == WordSpan{1, 30, 12});
  CHECK(a.total_frames == 42);
}

TEST_CASE("to_frame_spans absorbs leading and trailing gaps") {
  std::vector<TokenInterval> groups{{0, 0.05, 0.35}};
  UtteranceAlignment a = ToFrameSpans(groups, 50, 10.0, "u1");
  REQUIRE(a.spans.size() == 1);
  CHECK(a.spans[0] == WordSpan{0, 0, 50});
}

TEST_CASE("to_frame_spans attaches inter-word gaps to the following token") {
  // Gap between 0.30 and 0.50: frames 30..49 belong to token 1.
  std::vector<TokenInterval> groups{{0, 0.00, 0.30}, {1, 0.50, 0.80}};
  UtteranceAlignment a = ToFrameSpans(groups, 80, 10.0, "u1");
  CHECK(a.spans[0] == WordSpan{0, 0, 50});
  CHECK(a.spans[1] == WordSpan{1, 50, 30});
}

TEST_CASE("to_frame_spans tolerates a small overshoot and rejects a large "
          "one") {
  std::vector<TokenInterval> groups{{0, 0.00, 0.30}, {1, 0.30, 0.42}};
  // Ends at frame 42 but features have only 40: overshoot 2, truncated.
  UtteranceAlignment a = ToFrameSpans(groups, 40, 10.0, "u1");
  CHECK(a.spans[1] == WordSpan{1, 30, 10});
  // Overshoot 3: error.
  CHECK(CodeOf([&] { ToFrameSpans(groups, 39, 10.0, "u1"); }) ==
        ErrorCode::kSpanOverflow);
}

TEST_CASE("to_frame_spans rejects starts beyond the feature length") {
  std::vector<TokenInterval> groups{{0, 0.00, 0.30}, {1, 0.30, 0.12}};
  CHECK(CodeOf([&] { ToFrameSpans(groups, 30, 10.0, "u1"); }) ==
        ErrorCode::kSpanOverflow);
}

TEST_CASE("to_frame_spans rejects spans that round to nothing") {
  std::vector<TokenInterval> groups{{0, 0.000, 0.004}, {1, 0.004, 0.300}};
  CHECK(CodeOf([&] { ToFrameSpans(groups, 30, 10.0, "u1"); }) ==
        ErrorCode::kSpanOverflow);
}

TEST_CASE("to_frame_spans honors a non-default frame shift") {
  // 12.5 ms shift: 0.30 s is frame 24.
  std::vector<TokenInterval> groups{{0, 0.00, 0.30}, {1, 0.30, 0.50}};
  UtteranceAlignment a = ToFrameSpans(groups, 40, 12.5, "u1");
  CHECK(a.spans[0] == WordSpan{0, 0, 24});
  CHECK(a.spans[1] == WordSpan{1, 24, 16});
}

TEST_CASE("to_frame_spans rounding is monotone in start time") {
  Rng rng(31);
  for (int iter = 0; iter < 100; ++iter) {
    double t = 0;
    std::vector<TokenInterval> groups;
    for (int k = 0; k < 5; ++k) {
      double dur = 0.05 + rng.NextDouble();
      groups.push_back({k, t, t + dur});
      t += dur;
    }
    int64_t total = static_cast<int64_t>(std::ceil(t * 100)) + 1;
    UtteranceAlignment a = ToFrameSpans(groups, total, 10.0, "u");
    for (size_t i = 0; i + 1 < a.spans.size(); ++i)
      CHECK(a.spans[i].start_frame < a.spans[i + 1].start_frame);
    CHECK(a.spans.back().EndFrame() == total);
  }
}

TEST_CASE("group then span conversion keeps token order intact") {
  TaggedSentence s = TwoTokens();
  auto by_utt = Parse("u1 1 0.00 0.30 我\nu1 1 0.30 0.21 今\nu1 1 0.51 0.21 天\n");
  auto groups = GroupToTokens(by_utt["u1"], s);
  REQUIRE(groups.size() == 2);
  UtteranceAlignment a = ToFrameSpans(groups, 72, 10.0, "u1");
  CHECK(a.spans[0].token_index == 0);
  CHECK(a.spans[1].token_index == 1);
  CHECK(a.spans[0].num_frames + a.spans[1].num_frames == 72);
}

TEST_CASE("synth_alignment: zero jitter gives frames_per_char * chars") {
  TaggedSentence s = TwoTokens();  // 1 char + 2 chars
  UtteranceAlignment a = SynthAlignment(s, 10, 7);
  REQUIRE(a.spans.size() == 2);
  CHECK(a.spans[0] == WordSpan{0, 0, 10});
  CHECK(a.spans[1] == WordSpan{1, 10, 20});
  CHECK(a.total_frames == 30);
}

TEST_CASE("synth_alignment is deterministic in the seed") {
  TaggedSentence s = TwoTokens();
  UtteranceAlignment a = SynthAlignment(s, 10, 99, 4);
  UtteranceAlignment b = SynthAlignment(s, 10, 99, 4);
  CHECK(a.spans == b.spans);
  UtteranceAlignment c = SynthAlignment(s, 10, 100, 4);
  bool same = a.spans == c.spans;
  CHECK_FALSE(same);
}

TEST_CASE("synth_alignment spans always partition the total") {
  Rng rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    TaggedSentence s = testing::RandomSentence(rng, "u" + std::to_string(iter));
    UtteranceAlignment a = SynthAlignment(s, 1 + rng.Bounded(12), iter,
                                          rng.Bounded(6));
    int64_t sum = 0;
    for (const WordSpan &span : a.spans) {
      CHECK(span.start_frame == sum);
      CHECK(span.num_frames >= 1);
      sum += span.num_frames;
    }
    CHECK(sum == a.total_frames);
    CHECK(a.spans.size() == s.tokens.size());
  }
}
