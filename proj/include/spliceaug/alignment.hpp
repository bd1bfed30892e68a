// spliceaug/alignment.hpp
//
// Forced-alignment ingestion. CTM files from an external aligner are parsed,
// grouped into word tokens (character-level and word-level CTMs both work),
// and converted to frame spans that exactly partition [0, total_frames).
// A deterministic synthetic alignment generator is included for test
// corpora; the aligner itself is external.

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

#ifndef SPLICEAUG_ALIGNMENT_HPP_
#define SPLICEAUG_ALIGNMENT_HPP_

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spliceaug/common.hpp"
#include "spliceaug/lexicon.hpp"

namespace spliceaug {

struct CtmEntry {
  std::string utt_id;
  int32_t channel = 1;
  double start_sec = 0;
  double dur_sec = 0;
  std::string word;
  std::optional<double> confidence;

  double EndSec() const { return start_sec + dur_sec; }
};

// CTM: `utt channel start dur word [conf]`, space separated, `#` comments.
// Entries are grouped per utterance and sorted by start time; overlapping
// entries within one utterance are an error.
inline std::map<std::string, std::vector<CtmEntry>> ParseCtm(
    std::istream &in) {
  std::map<std::string, std::vector<CtmEntry>> by_utt;
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = TrimCr(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields = SplitWhitespace(line);
    if (fields.size() < 5 || fields.size() > 6)
      throw Error(ErrorCode::kMalformedCtmLine,
                  "ctm line " + std::to_string(line_no) +
                      ": expected `utt channel start dur word [conf]`");
    CtmEntry entry;
    entry.utt_id = fields[0];
    try {
      entry.channel = std::stoi(fields[1]);
      entry.start_sec = std::stod(fields[2]);
      entry.dur_sec = std::stod(fields[3]);
    } catch (const std::exception &) {
      throw Error(ErrorCode::kMalformedCtmLine,
                  "ctm line " + std::to_string(line_no) + ": bad number");
    }
    entry.word = fields[4];
    if (fields.size() == 6) {
      double conf = 0;
      try {
        conf = std::stod(fields[5]);
      } catch (const std::exception &) {
        throw Error(ErrorCode::kMalformedCtmLine,
                    "ctm line " + std::to_string(line_no) + ": bad confidence");
      }
      if (conf < 0.0 || conf > 1.0)
        throw Error(ErrorCode::kMalformedCtmLine,
                    "ctm line " + std::to_string(line_no) +
                        ": confidence outside [0,1]");
      entry.confidence = conf;
    }
    if (entry.start_sec < 0 || entry.dur_sec <= 0)
      throw Error(ErrorCode::kNegativeTime,
                  "ctm line " + std::to_string(line_no) + ": start " +
                      fields[2] + " dur " + fields[3]);
    by_utt[entry.utt_id].push_back(std::move(entry));
  }
  constexpr double kOverlapEps = 1e-9;
  for (auto &[utt, entries] : by_utt) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const CtmEntry &a, const CtmEntry &b) {
                       return a.start_sec < b.start_sec;
                     });
    for (size_t i = 0; i + 1 < entries.size(); ++i) {
      if (entries[i].EndSec() > entries[i + 1].start_sec + kOverlapEps)
        throw Error(ErrorCode::kOverlappingEntries,
                    "utterance `" + utt + "`: entry ending at " +
                        std::to_string(entries[i].EndSec()) +
                        " overlaps entry starting at " +
                        std::to_string(entries[i + 1].start_sec));
    }
  }
  return by_utt;
}

struct TokenInterval {
  int32_t token_index = 0;
  double start_sec = 0;
  double end_sec = 0;
};

// Greedy left-to-right grouping of CTM entries into sentence tokens:
// consecutive entries merge until their concatenated surface equals the
// next token. Works for word-level CTMs (1:1) and character-level CTMs
// (n:1); an entry crossing a token boundary cannot be reconciled.
inline std::vector<TokenInterval> GroupToTokens(
    const std::vector<CtmEntry> &entries, const TaggedSentence &sentence) {
  std::vector<TokenInterval> groups;
  size_t e = 0;
  for (const Token &token : sentence.tokens) {
    if (e >= entries.size())
      throw Error(ErrorCode::kAlignmentTextMismatch,
                  "utterance `" + sentence.utt_id +
                      "`: ran out of ctm entries at token `" + token.surface +
                      "`");
    TokenInterval group{token.index, entries[e].start_sec, 0};
    std::string acc;
    while (e < entries.size()) {
      acc += entries[e].word;
      group.end_sec = entries[e].EndSec();
      ++e;
      if (acc == token.surface) break;
      if (acc.size() >= token.surface.size())
        throw Error(ErrorCode::kAlignmentTextMismatch,
                    "utterance `" + sentence.utt_id + "`: ctm text `" + acc +
                        "` does not match token `" + token.surface + "`");
    }
    if (acc != token.surface)
      throw Error(ErrorCode::kAlignmentTextMismatch,
                  "utterance `" + sentence.utt_id + "`: ctm text `" + acc +
                      "` does not match token `" + token.surface + "`");
    groups.push_back(group);
  }
  if (e != entries.size())
    throw Error(ErrorCode::kAlignmentTextMismatch,
                "utterance `" + sentence.utt_id + "`: " +
                    std::to_string(entries.size() - e) +
                    " ctm entries left over");
  return groups;
}

struct WordSpan {
  int32_t token_index = 0;
  int64_t start_frame = 0;
  int64_t num_frames = 0;

  int64_t EndFrame() const { return start_frame + num_frames; }
  bool operator==(const WordSpan &) const = default;
};

struct UtteranceAlignment {
  std::string utt_id;
  std::vector<WordSpan> spans;
  int64_t total_frames = 0;
  double frame_shift_ms = 10.0;
  double frame_len_ms = 25.0;

  // Spans must be sorted, contiguous, and cover [0, total_frames) exactly.
  void Validate() const {
    if (total_frames <= 0 || spans.empty())
      throw Error(ErrorCode::kInvalidArgument,
                  "alignment `" + utt_id + "` is empty");
    int64_t expected_start = 0;
    for (const WordSpan &span : spans) {
      if (span.start_frame != expected_start || span.num_frames <= 0)
        throw Error(ErrorCode::kInvalidArgument,
                    "alignment `" + utt_id +
                        "` does not partition its frames");
      expected_start = span.EndFrame();
    }
    if (expected_start != total_frames)
      throw Error(ErrorCode::kInvalidArgument,
                  "alignment `" + utt_id + "` covers " +
                      std::to_string(expected_start) + " of " +
                      std::to_string(total_frames) + " frames");
  }
};

// Converts token intervals (seconds) to frame spans partitioning
// [0, total_frames). Boundaries are the rounded group starts; silence
// between groups is attached to the following token, leading silence to
// token 0, trailing silence to the last token. A rounded end overshooting
// total_frames by more than `overshoot_tolerance` frames is an error.
inline UtteranceAlignment ToFrameSpans(const std::vector<TokenInterval> &groups,
                                       int64_t total_frames,
                                       double frame_shift_ms = 10.0,
                                       const std::string &utt_id = "",
                                       int64_t overshoot_tolerance = 2) {
  if (groups.empty())
    throw Error(ErrorCode::kInvalidArgument,
                "utterance `" + utt_id + "`: no token intervals");
  if (total_frames <= 0)
    throw Error(ErrorCode::kSpanOverflow,
                "utterance `" + utt_id + "`: no frames");
  auto to_frame = [frame_shift_ms](double sec) {
    return static_cast<int64_t>(std::llround(sec * 1000.0 / frame_shift_ms));
  };

  std::vector<int64_t> starts(groups.size());
  for (size_t i = 0; i < groups.size(); ++i) {
    starts[i] = to_frame(groups[i].start_sec);
    if (i > 0 && starts[i] <= starts[i - 1])
      throw Error(ErrorCode::kSpanOverflow,
                  "utterance `" + utt_id + "`: token " +
                      std::to_string(groups[i].token_index) +
                      " rounds to an empty span");
    if (starts[i] >= total_frames)
      throw Error(ErrorCode::kSpanOverflow,
                  "utterance `" + utt_id + "`: token " +
                      std::to_string(groups[i].token_index) + " starts at " +
                      std::to_string(starts[i]) + " of " +
                      std::to_string(total_frames) + " frames");
  }
  int64_t end = to_frame(groups.back().end_sec);
  if (end > total_frames + overshoot_tolerance)
    throw Error(ErrorCode::kSpanOverflow,
                "utterance `" + utt_id + "`: alignment ends at frame " +
                    std::to_string(end) + " but features have " +
                    std::to_string(total_frames));

  UtteranceAlignment alignment;
  alignment.utt_id = utt_id;
  alignment.total_frames = total_frames;
  alignment.frame_shift_ms = frame_shift_ms;
  alignment.spans.reserve(groups.size());
  for (size_t i = 0; i < groups.size(); ++i) {
    int64_t begin = i == 0 ? 0 : starts[i];
    int64_t finish = i + 1 < groups.size() ? starts[i + 1] : total_frames;
    alignment.spans.push_back(
        WordSpan{groups[i].token_index, begin, finish - begin});
  }
  alignment.Validate();
  return alignment;
}

// Deterministic synthetic alignment: each token gets about frames_per_char
// frames per character, jittered by at most max_jitter frames; spans always
// partition [0, total). Used to build test corpora without a real aligner.
inline UtteranceAlignment SynthAlignment(const TaggedSentence &sentence,
                                         int64_t frames_per_char,
                                         uint64_t seed,
                                         int64_t max_jitter = 0) {
  if (sentence.tokens.empty() || frames_per_char <= 0)
    throw Error(ErrorCode::kInvalidArgument,
                "synthetic alignment needs tokens and frames_per_char > 0");
  Rng rng(seed ^ HashString(sentence.utt_id));
  UtteranceAlignment alignment;
  alignment.utt_id = sentence.utt_id;
  int64_t cursor = 0;
  for (const Token &token : sentence.tokens) {
    int64_t chars = static_cast<int64_t>(Utf8Length(token.surface));
    int64_t frames = frames_per_char * std::max<int64_t>(chars, 1);
    if (max_jitter > 0) {
      int64_t jitter =
          static_cast<int64_t>(rng.Bounded(2 * max_jitter + 1)) - max_jitter;
      frames = std::max<int64_t>(1, frames + jitter);
    }
    alignment.spans.push_back(WordSpan{token.index, cursor, frames});
    cursor += frames;
  }
  alignment.total_frames = cursor;
  alignment.Validate();
  return alignment;
}

}  // namespace spliceaug

#endif  // SPLICEAUG_ALIGNMENT_HPP_
