// spliceaug/manifest.hpp
//
// Training manifests and ratio-controlled data combination. A manifest line
// is `utt_id<TAB>archive:offset<TAB>num_frames<TAB>source_tag<TAB>transcript`.
// Combine() draws a seeded sample without replacement from each source pool
// (counts allocated by the largest-remainder method, so they always sum to
// the target) and shuffles the result deterministically.

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

#ifndef SPLICEAUG_MANIFEST_HPP_
#define SPLICEAUG_MANIFEST_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "spliceaug/common.hpp"
#include "spliceaug/syntax.hpp"

namespace spliceaug {

enum class SourceTag { kRaw, kR1, kR2, kR3, kR4, kR5, kR6, kR7 };

inline const char *SourceTagName(SourceTag tag) {
  switch (tag) {
    case SourceTag::kRaw: return "Raw";
    case SourceTag::kR1: return "R1";
    case SourceTag::kR2: return "R2";
    case SourceTag::kR3: return "R3";
    case SourceTag::kR4: return "R4";
    case SourceTag::kR5: return "R5";
    case SourceTag::kR6: return "R6";
    case SourceTag::kR7: return "R7";
  }
  return "Raw";
}

inline std::optional<SourceTag> ParseSourceTag(std::string_view name) {
  for (SourceTag tag :
       {SourceTag::kRaw, SourceTag::kR1, SourceTag::kR2, SourceTag::kR3,
        SourceTag::kR4, SourceTag::kR5, SourceTag::kR6, SourceTag::kR7}) {
    if (name == SourceTagName(tag)) return tag;
  }
  return std::nullopt;
}

inline SourceTag RuleToSourceTag(SyntaxRule rule) {
  return static_cast<SourceTag>(static_cast<int>(rule) + 1);
}

struct UtteranceRecord {
  std::string utt_id;
  std::string transcript;
  std::string archive_path;
  int64_t offset = 0;
  int64_t num_frames = 0;
  SourceTag source_tag = SourceTag::kRaw;

  std::string ToLine() const {
    return utt_id + "\t" + archive_path + ":" + std::to_string(offset) + "\t" +
           std::to_string(num_frames) + "\t" + SourceTagName(source_tag) +
           "\t" + transcript;
  }

  bool operator==(const UtteranceRecord &) const = default;
};

struct Manifest {
  std::vector<UtteranceRecord> records;

  void CheckUniqueIds() const {
    std::unordered_set<std::string_view> seen;
    for (const UtteranceRecord &r : records)
      if (!seen.insert(r.utt_id).second)
        throw Error(ErrorCode::kInvalidArgument,
                    "duplicate utterance id `" + r.utt_id + "` in manifest");
  }

  bool operator==(const Manifest &) const = default;
};

inline UtteranceRecord ParseManifestLine(std::string_view line,
                                         size_t line_no = 0) {
  std::vector<std::string> fields = SplitFields(TrimCr(line), '\t');
  if (fields.size() != 5)
    throw Error(ErrorCode::kMalformedLine,
                "manifest line " + std::to_string(line_no) +
                    ": expected 5 tab-separated fields");
  UtteranceRecord record;
  record.utt_id = fields[0];
  size_t colon = fields[1].rfind(':');
  if (colon == std::string::npos || colon == 0)
    throw Error(ErrorCode::kMalformedLine,
                "manifest line " + std::to_string(line_no) +
                    ": feature ref must be archive:offset");
  record.archive_path = fields[1].substr(0, colon);
  try {
    record.offset = std::stoll(fields[1].substr(colon + 1));
    record.num_frames = std::stoll(fields[2]);
  } catch (const std::exception &) {
    throw Error(ErrorCode::kMalformedLine,
                "manifest line " + std::to_string(line_no) + ": bad number");
  }
  std::optional<SourceTag> tag = ParseSourceTag(fields[3]);
  if (!tag)
    throw Error(ErrorCode::kMalformedLine,
                "manifest line " + std::to_string(line_no) +
                    ": unknown source tag `" + fields[3] + "`");
  record.source_tag = *tag;
  record.transcript = fields[4];
  return record;
}

inline Manifest LoadManifest(std::istream &in) {
  Manifest manifest;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (TrimCr(line).empty()) continue;
    manifest.records.push_back(ParseManifestLine(line, line_no));
  }
  manifest.CheckUniqueIds();
  return manifest;
}

inline Manifest LoadManifestFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open `" + path + "`");
  return LoadManifest(in);
}

inline void SaveManifest(const Manifest &manifest, std::ostream &out) {
  for (const UtteranceRecord &r : manifest.records) out << r.ToLine() << '\n';
}

inline void SaveManifestFile(const Manifest &manifest,
                             const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write `" + path + "`");
  SaveManifest(manifest, out);
}

struct CombinationSpec {
  std::vector<std::pair<SourceTag, double>> ratios;
  uint64_t seed = 0;
  size_t target_size = 0;

  void Validate() const {
    if (target_size == 0)
      throw Error(ErrorCode::kInvalidConfig, "target_size must be positive");
    if (ratios.empty())
      throw Error(ErrorCode::kInvalidConfig, "no combination ratios");
    double sum = 0;
    bool seen[8] = {};
    for (const auto &[tag, weight] : ratios) {
      if (weight < 0 || weight > 1)
        throw Error(ErrorCode::kInvalidConfig,
                    std::string("weight for ") + SourceTagName(tag) +
                        " outside [0,1]");
      if (seen[static_cast<int>(tag)])
        throw Error(ErrorCode::kInvalidConfig,
                    std::string("duplicate ratio for ") + SourceTagName(tag));
      seen[static_cast<int>(tag)] = true;
      sum += weight;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw Error(ErrorCode::kInvalidConfig,
                  "combination weights sum to " + std::to_string(sum) +
                      ", expected 1");
  }
};

// `Raw:0.8,R1:0.05,R2:0.05,R3:0.05,R4:0.05`
inline std::vector<std::pair<SourceTag, double>> ParseRatios(
    std::string_view text) {
  std::vector<std::pair<SourceTag, double>> ratios;
  for (const std::string &part : SplitFields(text, ',')) {
    if (part.empty()) continue;
    size_t colon = part.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorCode::kInvalidConfig,
                  "ratio `" + part + "` is not tag:weight");
    std::optional<SourceTag> tag = ParseSourceTag(part.substr(0, colon));
    if (!tag)
      throw Error(ErrorCode::kInvalidConfig,
                  "unknown source tag in ratio `" + part + "`");
    double weight = 0;
    try {
      weight = std::stod(part.substr(colon + 1));
    } catch (const std::exception &) {
      throw Error(ErrorCode::kInvalidConfig,
                  "bad weight in ratio `" + part + "`");
    }
    ratios.emplace_back(*tag, weight);
  }
  return ratios;
}

// Largest-remainder allocation: per-tag counts are floor(weight * target)
// plus one extra for the biggest fractional remainders until the counts sum
// to target. Ties break toward the earlier ratio entry.
inline std::vector<size_t> AllocateCounts(const CombinationSpec &spec) {
  spec.Validate();
  size_t n = spec.ratios.size();
  std::vector<size_t> counts(n);
  std::vector<double> remainders(n);
  size_t assigned = 0;
  for (size_t i = 0; i < n; ++i) {
    double quota = spec.ratios[i].second * static_cast<double>(spec.target_size);
    counts[i] = static_cast<size_t>(std::floor(quota));
    remainders[i] = quota - std::floor(quota);
    assigned += counts[i];
  }
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return remainders[a] > remainders[b];
  });
  for (size_t k = 0; assigned < spec.target_size; ++k, ++assigned)
    ++counts[order[k % n]];
  return counts;
}

namespace manifest_detail {

// First `count` elements of a seeded Fisher-Yates shuffle, in draw order.
inline std::vector<const UtteranceRecord *> SampleWithoutReplacement(
    const std::vector<const UtteranceRecord *> &pool, size_t count,
    Rng &rng) {
  std::vector<const UtteranceRecord *> scratch = pool;
  for (size_t i = 0; i < count; ++i) {
    size_t j = i + static_cast<size_t>(rng.Bounded(scratch.size() - i));
    std::swap(scratch[i], scratch[j]);
  }
  scratch.resize(count);
  return scratch;
}

}  // namespace manifest_detail

// Mixes raw and augmented records under the requested ratios. Sampling is
// without replacement (duplicated utt_ids would corrupt the manifest), and
// both the per-tag draws and the final shuffle are functions of the seed
// alone, so one spec always produces one manifest.
inline Manifest Combine(const Manifest &raw, const Manifest &augmented,
                        const CombinationSpec &spec) {
  std::vector<size_t> counts = AllocateCounts(spec);

  std::vector<const UtteranceRecord *> picked;
  picked.reserve(spec.target_size);
  for (size_t i = 0; i < spec.ratios.size(); ++i) {
    SourceTag tag = spec.ratios[i].first;
    if (counts[i] == 0) continue;
    std::vector<const UtteranceRecord *> pool;
    const Manifest &source = tag == SourceTag::kRaw ? raw : augmented;
    for (const UtteranceRecord &r : source.records)
      if (r.source_tag == tag) pool.push_back(&r);
    if (pool.size() < counts[i])
      throw Error(ErrorCode::kInsufficientSource,
                  std::string(SourceTagName(tag)) + ": need " +
                      std::to_string(counts[i]) + ", have " +
                      std::to_string(pool.size()));
    Rng rng(spec.seed ^ HashString(SourceTagName(tag)));
    for (const UtteranceRecord *r :
         manifest_detail::SampleWithoutReplacement(pool, counts[i], rng))
      picked.push_back(r);
  }

  Rng shuffle_rng(spec.seed ^ 0x9D2C5680CA876223ULL);
  for (size_t i = 0; i + 1 < picked.size(); ++i) {
    size_t j = i + static_cast<size_t>(shuffle_rng.Bounded(picked.size() - i));
    std::swap(picked[i], picked[j]);
  }

  Manifest out;
  out.records.reserve(picked.size());
  for (const UtteranceRecord *r : picked) out.records.push_back(*r);
  out.CheckUniqueIds();
  return out;
}

}  // namespace spliceaug

#endif  // SPLICEAUG_MANIFEST_HPP_
