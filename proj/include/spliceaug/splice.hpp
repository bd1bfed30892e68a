// spliceaug/splice.hpp
//
// Feature-frame reassembly. A token permutation from the syntax engine is
// replayed on the acoustic side by concatenating the per-token frame spans
// in permuted order; frames are copied verbatim, with no cross-fade at the
// joins. The corpus driver applies this to every transposable utterance and
// emits augmented records plus a variant log and a skip report.

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

#ifndef SPLICEAUG_SPLICE_HPP_
#define SPLICEAUG_SPLICE_HPP_

#include <cstring>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spliceaug/alignment.hpp"
#include "spliceaug/archive.hpp"
#include "spliceaug/common.hpp"
#include "spliceaug/manifest.hpp"
#include "spliceaug/matrix.hpp"
#include "spliceaug/syntax.hpp"

namespace spliceaug {

// Reorders the alignment's frame spans according to the permutation. The
// output has the same frame count; every input frame appears exactly once.
inline FeatureMatrix Splice(const FeatureMatrix &feats,
                            const UtteranceAlignment &alignment,
                            const TokenPermutation &perm) {
  alignment.Validate();
  if (alignment.total_frames != feats.rows)
    throw Error(ErrorCode::kSpanMismatch,
                "alignment covers " + std::to_string(alignment.total_frames) +
                    " frames, features have " + std::to_string(feats.rows));
  if (perm.mapping.size() != alignment.spans.size())
    throw Error(ErrorCode::kPermLengthMismatch,
                "permutation of " + std::to_string(perm.mapping.size()) +
                    " against " + std::to_string(alignment.spans.size()) +
                    " spans");
  if (!perm.IsBijection())
    throw Error(ErrorCode::kPermLengthMismatch,
                "permutation is not a bijection");

  FeatureMatrix out(feats.rows, feats.cols, feats.utt_id);
  int64_t cursor = 0;
  for (int32_t src_index : perm.mapping) {
    const WordSpan &span = alignment.spans[src_index];
    std::memcpy(out.data.data() + cursor * feats.cols,
                feats.data.data() + span.start_frame * feats.cols,
                static_cast<size_t>(span.num_frames) * feats.cols *
                    sizeof(float));
    cursor += span.num_frames;
  }
  return out;
}

// Spans of the spliced utterance, in output order, with the surfaces that
// now occupy them. Used for boundary sidecars.
inline std::vector<WordSpan> PermutedSpans(const UtteranceAlignment &alignment,
                                           const TokenPermutation &perm) {
  std::vector<WordSpan> out;
  out.reserve(perm.mapping.size());
  int64_t cursor = 0;
  for (size_t i = 0; i < perm.mapping.size(); ++i) {
    const WordSpan &src = alignment.spans[perm.mapping[i]];
    out.push_back(WordSpan{src.token_index, cursor, src.num_frames});
    cursor += src.num_frames;
  }
  return out;
}

struct VariantLogEntry {
  std::string utt_id;  // original id
  SyntaxRule rule;
  std::string original;
  std::string transposed;
  TokenPermutation permutation;

  // `utt_id<TAB>rule<TAB>original<TAB>transposed<TAB>permutation`
  std::string ToLine() const {
    return utt_id + "\t" + RuleName(rule) + "\t" + original + "\t" +
           transposed + "\t" + permutation.ToString();
  }
};

inline VariantLogEntry ParseVariantLogLine(std::string_view line) {
  std::vector<std::string> fields = SplitFields(TrimCr(line), '\t');
  if (fields.size() != 5)
    throw Error(ErrorCode::kMalformedLine, "variant log line");
  std::optional<SyntaxRule> rule = ParseRule(fields[1]);
  if (!rule)
    throw Error(ErrorCode::kMalformedLine,
                "variant log rule `" + fields[1] + "`");
  VariantLogEntry entry;
  entry.utt_id = fields[0];
  entry.rule = *rule;
  entry.original = fields[2];
  entry.transposed = fields[3];
  for (const std::string &s : SplitFields(fields[4], ','))
    entry.permutation.mapping.push_back(std::stoi(s));
  return entry;
}

struct SkipEntry {
  std::string utt_id;
  std::string reason;
};

struct AugmentItem {
  std::string utt_id;
  TaggedSentence sentence;
  std::optional<UtteranceAlignment> alignment;
  // Where the raw features live.
  std::string archive_path;
  int64_t offset = -1;
  int32_t num_frames = 0;
};

struct AugmentOptions {
  std::vector<SyntaxRule> rules;
  SyntaxOptions syntax;
  int num_workers = 1;
};

using FeatureLoader = std::function<FeatureMatrix(const AugmentItem &)>;

struct AugmentOutput {
  std::vector<UtteranceRecord> raw_records;
  std::vector<UtteranceRecord> augmented_records;
  std::vector<VariantLogEntry> variants;
  std::vector<SkipEntry> skips;
  std::map<SourceTag, size_t> variant_counts;
  size_t utterances_in = 0;
};

// Runs the augmentation over a corpus: transpose each sentence, splice the
// matching feature spans per variant, and append the spliced features to
// `out`. Items lacking an alignment or matching no pattern pass through with
// zero variants and land in the skip report; per-utterance errors are
// recorded the same way and never stop the corpus. Variant computation is
// data-parallel; writes happen in input order, so outputs are deterministic
// for any worker count.
inline AugmentOutput AugmentCorpus(const std::vector<AugmentItem> &items,
                                   const FeatureLoader &load_features,
                                   ArchiveWriter &out,
                                   const AugmentOptions &options) {
  struct ItemResult {
    std::vector<Variant> variants;
    std::vector<FeatureMatrix> spliced;
    std::optional<SkipEntry> skip;
  };
  std::vector<ItemResult> results(items.size());

  ParallelFor(options.num_workers, items.size(), [&](size_t i) {
    const AugmentItem &item = items[i];
    ItemResult &res = results[i];
    PatternMatch match = MatchPattern(item.sentence);
    if (!match.Transposable()) {
      res.skip = SkipEntry{item.utt_id, "no_pattern"};
      return;
    }
    if (!item.alignment) {
      res.skip = SkipEntry{item.utt_id, "no_alignment"};
      return;
    }
    if (item.alignment->spans.size() != item.sentence.tokens.size()) {
      res.skip = SkipEntry{item.utt_id, "alignment_token_mismatch"};
      return;
    }
    res.variants = TransposeAll(item.sentence, options.rules, options.syntax);
    if (res.variants.empty()) return;
    try {
      FeatureMatrix feats = load_features(item);
      res.spliced.reserve(res.variants.size());
      for (const Variant &variant : res.variants)
        res.spliced.push_back(
            Splice(feats, *item.alignment, variant.permutation));
    } catch (const Error &e) {
      res.variants.clear();
      res.spliced.clear();
      res.skip = SkipEntry{item.utt_id, ErrorCodeName(e.code())};
    }
  });

  AugmentOutput output;
  output.utterances_in = items.size();
  for (size_t i = 0; i < items.size(); ++i) {
    const AugmentItem &item = items[i];
    ItemResult &res = results[i];

    UtteranceRecord raw;
    raw.utt_id = item.utt_id;
    raw.transcript = item.sentence.Text();
    raw.archive_path = item.archive_path;
    raw.offset = item.offset;
    raw.num_frames = item.num_frames;
    raw.source_tag = SourceTag::kRaw;
    output.raw_records.push_back(std::move(raw));

    if (res.skip) {
      output.skips.push_back(*res.skip);
      continue;
    }
    for (size_t v = 0; v < res.variants.size(); ++v) {
      const Variant &variant = res.variants[v];
      std::string aug_id =
          item.utt_id + "#" + RuleName(variant.rule);
      int64_t offset = out.Write(aug_id, res.spliced[v]);

      UtteranceRecord record;
      record.utt_id = aug_id;
      record.transcript = variant.sentence.Text();
      record.archive_path = out.DataPath();
      record.offset = offset;
      record.num_frames = res.spliced[v].rows;
      record.source_tag = RuleToSourceTag(variant.rule);
      output.augmented_records.push_back(std::move(record));

      output.variants.push_back(VariantLogEntry{
          item.utt_id, variant.rule, item.sentence.Text(),
          variant.sentence.Text(), variant.permutation});
      ++output.variant_counts[RuleToSourceTag(variant.rule)];
    }
  }
  return output;
}

}  // namespace spliceaug

#endif  // SPLICEAUG_SPLICE_HPP_
