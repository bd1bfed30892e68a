// tools/spliceaug.cpp
//
// Pipeline driver. Subcommands:
//
//   tag      segment + POS-tag a transcript file against a lexicon
//   fbank    extract log-Mel features from a wav list into an archive
//   cmvn     accumulate global CMVN stats over an archive (optionally apply)
//   align    convert a CTM + tagged text into frame spans, with a join report
//   augment  transpose sentences, splice features, emit manifests and logs
//   combine  mix raw and augmented manifests under ratio weights
//   inspect  render a spectrogram PPM and a word-boundary sidecar
//
// Options come from --config (flat key=value file) with command-line flags
// taking precedence. Exit codes: 0 success, 1 partial (some utterances
// skipped but outputs produced), 2 fatal.

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

#include <CLI11.hpp>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spliceaug/alignment.hpp"
#include "spliceaug/archive.hpp"
#include "spliceaug/cmvn.hpp"
#include "spliceaug/config.hpp"
#include "spliceaug/fbank.hpp"
#include "spliceaug/inspect.hpp"
#include "spliceaug/lexicon.hpp"
#include "spliceaug/manifest.hpp"
#include "spliceaug/matrix.hpp"
#include "spliceaug/splice.hpp"
#include "spliceaug/syntax.hpp"
#include "spliceaug/wav.hpp"

namespace fs = std::filesystem;
using namespace spliceaug;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitFatal = 2;

void RequireInput(const std::string &path, const std::string &key) {
  if (path.empty())
    throw Error(ErrorCode::kInvalidConfig, "`" + key + "` is required");
  if (!fs::exists(path))
    throw Error(ErrorCode::kInvalidConfig,
                "`" + key + "` path does not exist: " + path);
}

std::string EnsureOutDir(const PipelineConfig &config) {
  fs::path dir = config.out_dir.empty() ? "." : config.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Error(ErrorCode::kInvalidConfig,
                "cannot create output dir `" + dir.string() + "`");
  return dir.string();
}

std::string OutPath(const PipelineConfig &config, const std::string &name) {
  return (fs::path(EnsureOutDir(config)) / name).string();
}

struct TsvLine {
  std::string key;
  std::string rest;
};

// `key<TAB>rest` lines; blank lines skipped.
std::vector<TsvLine> ReadTsv(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open `" + path + "`");
  std::vector<TsvLine> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view line = TrimCr(raw);
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string_view::npos)
      lines.push_back(TsvLine{std::string(line), ""});
    else
      lines.push_back(TsvLine{std::string(line.substr(0, tab)),
                              std::string(line.substr(tab + 1))});
  }
  return lines;
}

TagsetMap LoadTagsetMapOrDefault(const PipelineConfig &config) {
  if (config.tagset_map.empty()) return DefaultTagsetMap();
  RequireInput(config.tagset_map, "tagset_map");
  std::ifstream in(config.tagset_map, std::ios::binary);
  return LoadTagsetMap(in);
}

std::map<std::string, TaggedSentence> LoadTaggedText(
    const PipelineConfig &config) {
  RequireInput(config.tagged_text, "tagged_text");
  TagsetMap map = LoadTagsetMapOrDefault(config);
  std::ifstream in(config.tagged_text, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::kIoError,
                "cannot open `" + config.tagged_text + "`");
  std::map<std::string, TaggedSentence> sentences;
  std::string raw;
  while (std::getline(in, raw)) {
    if (TrimCr(raw).empty()) continue;
    TaggedSentence s = ParseTagged(raw, map);
    sentences[s.utt_id] = std::move(s);
  }
  if (sentences.empty())
    throw Error(ErrorCode::kEmptyInput,
                "`" + config.tagged_text + "` has no sentences");
  return sentences;
}

// ---------------------------------------------------------------------------
// tag

int CmdTag(const PipelineConfig &config, const std::string &out_flag) {
  RequireInput(config.lexicon, "lexicon");
  RequireInput(config.transcripts, "transcripts");
  std::ifstream lex_in(config.lexicon, std::ios::binary);
  Lexicon lexicon = LoadLexicon(lex_in);

  std::vector<TsvLine> lines = ReadTsv(config.transcripts);
  if (lines.empty())
    throw Error(ErrorCode::kEmptyInput,
                "`" + config.transcripts + "` has no transcripts");

  std::string out_path =
      out_flag.empty() ? OutPath(config, "tagged.txt") : out_flag;
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorCode::kIoError, "cannot write `" + out_path + "`");

  size_t errors = 0;
  for (const TsvLine &line : lines) {
    if (line.key.empty() || StripWhitespace(line.rest).empty()) {
      std::cerr << "tag: skipping malformed line for `" << line.key << "`\n";
      ++errors;
      continue;
    }
    out << SerializeTagged(SegmentAndTag(line.rest, lexicon, line.key))
        << '\n';
  }
  std::cout << "tag: wrote " << lines.size() - errors << " sentences to "
            << out_path << " (" << errors << " errors)\n";
  return errors ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------
// fbank

int CmdFbank(const PipelineConfig &config, const std::string &ark_flag,
             const std::string &index_flag) {
  RequireInput(config.wav_list, "wav_list");
  config.fbank.Validate();
  std::vector<TsvLine> wavs = ReadTsv(config.wav_list);
  if (wavs.empty())
    throw Error(ErrorCode::kEmptyInput,
                "`" + config.wav_list + "` has no entries");

  std::string ark_path =
      ark_flag.empty() ? OutPath(config, "feats.ark") : ark_flag;
  std::string index_path =
      index_flag.empty() ? OutPath(config, "feats.idx") : index_flag;

  struct Result {
    std::optional<FeatureMatrix> feats;
    std::string error;
  };
  std::vector<Result> results(wavs.size());
  ParallelFor(config.workers, wavs.size(), [&](size_t i) {
    try {
      WavData wav = ParseWavFile(wavs[i].rest);
      if (wav.sample_rate_hz != config.fbank.sample_rate_hz)
        throw Error(ErrorCode::kInvalidConfig,
                    "`" + wavs[i].key + "` is " +
                        std::to_string(wav.sample_rate_hz) +
                        " Hz but config expects " +
                        std::to_string(config.fbank.sample_rate_hz));
      results[i].feats = ComputeFbank(wav.samples, config.fbank, wavs[i].key);
    } catch (const Error &e) {
      results[i].error = e.what();
    }
  });

  ArchiveWriter writer(ark_path, index_path);
  size_t errors = 0;
  int64_t frames = 0;
  for (size_t i = 0; i < wavs.size(); ++i) {
    if (!results[i].feats) {
      std::cerr << "fbank: " << results[i].error << '\n';
      ++errors;
      continue;
    }
    writer.Write(wavs[i].key, *results[i].feats);
    frames += results[i].feats->rows;
  }
  writer.Flush();
  std::cout << "fbank: " << writer.NumRecords() << " utterances, " << frames
            << " frames -> " << ark_path << " (" << errors << " errors)\n";
  if (writer.NumRecords() == 0)
    throw Error(ErrorCode::kEmptyInput, "no wav file could be processed");
  return errors ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------
// cmvn

CmvnStats AccumulateOverIndex(const std::vector<IndexEntry> &index) {
  CmvnStats total;
  for (const IndexEntry &entry : index) {
    CmvnStats partial;
    AccumulateCmvn(&partial, ReadRecordAt(entry));
    total = MergeCmvn(total, partial);
  }
  return total;
}

int CmdCmvn(const PipelineConfig &config, bool apply,
            const std::string &stats_flag) {
  RequireInput(config.feature_index, "feature_index");
  std::vector<IndexEntry> index = LoadIndex(config.feature_index);
  if (index.empty())
    throw Error(ErrorCode::kEmptyInput,
                "`" + config.feature_index + "` is empty");

  CmvnStats stats = AccumulateOverIndex(index);
  std::string stats_path =
      stats_flag.empty() ? OutPath(config, "cmvn.ark") : stats_flag;
  {
    ArchiveWriter writer(stats_path, stats_path + ".idx");
    writer.Write("global", CmvnStatsToMatrix(stats));
  }
  std::cout << "cmvn: " << static_cast<int64_t>(stats.count) << " frames, "
            << stats.Dim() << " dims -> " << stats_path << '\n';

  if (apply) {
    std::string ark = OutPath(config, "feats_cmvn.ark");
    std::string idx = OutPath(config, "feats_cmvn.idx");
    ArchiveWriter writer(ark, idx);
    for (const IndexEntry &entry : index)
      writer.Write(entry.utt_id, ApplyCmvn(ReadRecordAt(entry), stats));
    std::cout << "cmvn: wrote normalized archive " << ark << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// align

struct JoinedCorpus {
  // Index entries that have a transcript, in index order.
  std::vector<IndexEntry> entries;
  std::map<std::string, TaggedSentence> sentences;
  std::map<std::string, std::vector<CtmEntry>> ctm;
  std::vector<std::string> missing_transcript;  // in index, no tagged text
  std::vector<std::string> missing_features;    // tagged, not in index
  std::vector<std::string> missing_ctm;         // joined, but no ctm entries
};

JoinedCorpus JoinInputs(const PipelineConfig &config) {
  JoinedCorpus joined;
  joined.sentences = LoadTaggedText(config);

  RequireInput(config.ctm, "ctm");
  std::ifstream ctm_in(config.ctm, std::ios::binary);
  joined.ctm = ParseCtm(ctm_in);

  RequireInput(config.feature_index, "feature_index");
  std::vector<IndexEntry> index = LoadIndex(config.feature_index);

  std::set<std::string> indexed;
  for (IndexEntry &entry : index) {
    indexed.insert(entry.utt_id);
    if (!joined.sentences.count(entry.utt_id)) {
      joined.missing_transcript.push_back(entry.utt_id);
      continue;
    }
    if (!joined.ctm.count(entry.utt_id))
      joined.missing_ctm.push_back(entry.utt_id);
    joined.entries.push_back(std::move(entry));
  }
  for (const auto &[utt, sentence] : joined.sentences)
    if (!indexed.count(utt)) joined.missing_features.push_back(utt);

  if (joined.entries.empty())
    throw Error(ErrorCode::kKeyMismatch,
                "no utterance appears in both the feature index and the "
                "tagged text");
  return joined;
}

void PrintJoinReport(const JoinedCorpus &joined) {
  std::cout << "join: " << joined.entries.size() << " usable utterances, "
            << joined.missing_transcript.size() << " without transcript, "
            << joined.missing_features.size() << " without features, "
            << joined.missing_ctm.size() << " without ctm\n";
}

// Alignment or the reason it could not be built.
struct AlignmentResult {
  std::optional<UtteranceAlignment> alignment;
  std::string error;
};

AlignmentResult BuildAlignment(
    const std::map<std::string, TaggedSentence> &sentences,
    const std::map<std::string, std::vector<CtmEntry>> &ctm,
    const IndexEntry &entry, double frame_shift_ms) {
  AlignmentResult result;
  auto ctm_it = ctm.find(entry.utt_id);
  if (ctm_it == ctm.end()) {
    result.error = "no_alignment";
    return result;
  }
  try {
    const TaggedSentence &sentence = sentences.at(entry.utt_id);
    auto [rows, cols] = ReadRecordShapeAt(entry.archive_path, entry.offset);
    (void)cols;
    std::vector<TokenInterval> groups = GroupToTokens(ctm_it->second, sentence);
    result.alignment = ToFrameSpans(groups, rows, frame_shift_ms,
                                    entry.utt_id);
  } catch (const Error &e) {
    result.error = ErrorCodeName(e.code());
  }
  return result;
}

AlignmentResult BuildAlignment(const JoinedCorpus &joined,
                               const IndexEntry &entry,
                               double frame_shift_ms) {
  return BuildAlignment(joined.sentences, joined.ctm, entry, frame_shift_ms);
}

int CmdAlign(const PipelineConfig &config, const std::string &spans_flag) {
  JoinedCorpus joined = JoinInputs(config);
  PrintJoinReport(joined);

  std::string spans_path =
      spans_flag.empty() ? OutPath(config, "spans.txt") : spans_flag;
  std::ofstream out(spans_path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorCode::kIoError, "cannot write `" + spans_path + "`");

  std::string report_path = OutPath(config, "align_report.txt");
  std::ofstream report(report_path, std::ios::binary | std::ios::trunc);
  for (const std::string &utt : joined.missing_transcript)
    report << utt << "\tno_transcript\n";
  for (const std::string &utt : joined.missing_features)
    report << utt << "\tno_features\n";

  size_t aligned = 0, failed = 0;
  for (const IndexEntry &entry : joined.entries) {
    AlignmentResult result =
        BuildAlignment(joined, entry, config.fbank.frame_shift_ms);
    if (!result.alignment) {
      report << entry.utt_id << '\t' << result.error << '\n';
      ++failed;
      continue;
    }
    out << entry.utt_id << '\t' << result.alignment->total_frames << '\t';
    const std::vector<WordSpan> &spans = result.alignment->spans;
    for (size_t i = 0; i < spans.size(); ++i) {
      if (i) out << ',';
      out << spans[i].start_frame << ':' << spans[i].num_frames;
    }
    out << '\n';
    ++aligned;
  }
  std::cout << "align: " << aligned << " aligned, " << failed << " failed -> "
            << spans_path << '\n';
  if (aligned == 0)
    throw Error(ErrorCode::kKeyMismatch, "no utterance could be aligned");
  bool partial = failed > 0 || !joined.missing_transcript.empty() ||
                 !joined.missing_features.empty();
  return partial ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------
// augment

int CmdAugment(const PipelineConfig &config) {
  JoinedCorpus joined = JoinInputs(config);
  PrintJoinReport(joined);

  // Per-utterance alignments; conversion failures become skip reasons.
  std::vector<AugmentItem> items;
  std::map<std::string, std::string> alignment_errors;
  items.reserve(joined.entries.size());
  for (const IndexEntry &entry : joined.entries) {
    AugmentItem item;
    item.utt_id = entry.utt_id;
    item.sentence = joined.sentences.at(entry.utt_id);
    item.archive_path = entry.archive_path;
    item.offset = entry.offset;
    AlignmentResult result =
        BuildAlignment(joined, entry, config.fbank.frame_shift_ms);
    if (result.alignment) {
      item.num_frames = static_cast<int32_t>(result.alignment->total_frames);
      item.alignment = std::move(result.alignment);
    } else {
      alignment_errors[entry.utt_id] = result.error;
      auto [rows, cols] = ReadRecordShapeAt(entry.archive_path, entry.offset);
      (void)cols;
      item.num_frames = rows;
    }
    items.push_back(std::move(item));
  }

  AugmentOptions options;
  options.rules = config.RuleSet();
  options.syntax.r7_final = config.r7_final;
  options.num_workers = config.workers;

  std::string ark = OutPath(config, "augmented.ark");
  std::string idx = OutPath(config, "augmented.idx");
  ArchiveWriter writer(ark, idx);
  AugmentOutput output = AugmentCorpus(
      items,
      [](const AugmentItem &item) {
        return ReadRecordAt(item.archive_path, item.offset, item.utt_id);
      },
      writer, options);
  writer.Flush();

  // The generic no_alignment reason is replaced by what actually failed.
  for (SkipEntry &skip : output.skips) {
    auto it = alignment_errors.find(skip.utt_id);
    if (it != alignment_errors.end() && skip.reason == "no_alignment" &&
        it->second != "no_alignment")
      skip.reason = it->second;
  }

  Manifest raw_manifest{std::move(output.raw_records)};
  SaveManifestFile(raw_manifest, OutPath(config, "raw.manifest"));
  Manifest aug_manifest{std::move(output.augmented_records)};
  SaveManifestFile(aug_manifest, OutPath(config, "augmented.manifest"));

  {
    std::string path = OutPath(config, "variants.log");
    std::ofstream log(path, std::ios::binary | std::ios::trunc);
    if (!log) throw Error(ErrorCode::kIoError, "cannot write `" + path + "`");
    for (const VariantLogEntry &entry : output.variants)
      log << entry.ToLine() << '\n';
  }
  {
    std::string path = OutPath(config, "skips.txt");
    std::ofstream skips(path, std::ios::binary | std::ios::trunc);
    if (!skips)
      throw Error(ErrorCode::kIoError, "cannot write `" + path + "`");
    for (const SkipEntry &skip : output.skips)
      skips << skip.utt_id << '\t' << skip.reason << '\n';
    for (const std::string &utt : joined.missing_transcript)
      skips << utt << "\tno_transcript\n";
  }

  std::cout << "augment: " << output.utterances_in << " utterances in, "
            << aug_manifest.records.size() << " variants out\n";
  for (const auto &[tag, count] : output.variant_counts)
    std::cout << "  " << SourceTagName(tag) << ": " << count << '\n';
  std::map<std::string, size_t> skip_reasons;
  for (const SkipEntry &skip : output.skips) ++skip_reasons[skip.reason];
  for (const auto &[reason, count] : skip_reasons)
    std::cout << "  skipped " << count << " (" << reason << ")\n";

  bool partial = !output.skips.empty() || !joined.missing_transcript.empty();
  return partial ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------
// combine

int CmdCombine(const PipelineConfig &config) {
  RequireInput(config.raw_manifest, "raw_manifest");
  RequireInput(config.aug_manifest, "aug_manifest");
  Manifest raw = LoadManifestFile(config.raw_manifest);
  Manifest augmented = LoadManifestFile(config.aug_manifest);

  CombinationSpec spec = config.Combination();
  Manifest combined = Combine(raw, augmented, spec);
  std::string manifest_path = OutPath(config, "combined.manifest");
  SaveManifestFile(combined, manifest_path);

  // Global stats are recomputed over the combined corpus, not reused from
  // the raw one: the corpus composition changed.
  CmvnStats stats;
  for (const UtteranceRecord &record : combined.records) {
    CmvnStats partial;
    AccumulateCmvn(
        &partial,
        ReadRecordAt(record.archive_path, record.offset, record.utt_id));
    stats = MergeCmvn(stats, partial);
  }
  std::string stats_path = OutPath(config, "combined_cmvn.ark");
  {
    ArchiveWriter writer(stats_path, stats_path + ".idx");
    writer.Write("global", CmvnStatsToMatrix(stats));
  }

  std::map<SourceTag, size_t> counts;
  for (const UtteranceRecord &record : combined.records)
    ++counts[record.source_tag];
  std::cout << "combine: " << combined.records.size() << " records -> "
            << manifest_path << '\n';
  for (const auto &[tag, count] : counts)
    std::cout << "  " << SourceTagName(tag) << ": " << count << '\n';
  std::cout << "combine: cmvn over " << static_cast<int64_t>(stats.count)
            << " frames -> " << stats_path << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// inspect

std::string SanitizeFilename(std::string name) {
  for (char &c : name)
    if (c == '#' || c == '/' || c == '\\') c = '_';
  return name;
}

int CmdInspect(const PipelineConfig &config, const std::string &utt,
               const std::vector<std::string> &index_flags) {
  if (utt.empty())
    throw Error(ErrorCode::kInvalidConfig, "--utt is required");

  // Merge the given indexes (first occurrence of an id wins).
  std::vector<std::string> index_paths = index_flags;
  if (index_paths.empty() && !config.feature_index.empty())
    index_paths.push_back(config.feature_index);
  if (index_paths.empty())
    throw Error(ErrorCode::kInvalidConfig, "no feature index given");
  std::map<std::string, IndexEntry> merged;
  for (const std::string &path : index_paths) {
    RequireInput(path, "index");
    for (IndexEntry &entry : LoadIndex(path))
      merged.emplace(entry.utt_id, std::move(entry));
  }
  auto found = merged.find(utt);
  if (found == merged.end())
    throw Error(ErrorCode::kUnknownUtterance,
                "`" + utt + "` is not in any given index");

  FeatureMatrix feats = ReadRecordAt(found->second);
  std::string image_path = OutPath(config, SanitizeFilename(utt) + ".ppm");
  WriteSpectrogramPpm(image_path, feats);
  std::cout << "inspect: " << feats.rows << "x" << feats.cols << " -> "
            << image_path << '\n';

  // Boundaries for the base utterance and, when a variant log is present,
  // for each of its variants.
  std::string base = utt.substr(0, utt.find('#'));
  std::string sidecar_path =
      OutPath(config, SanitizeFilename(utt) + ".boundaries.txt");
  std::ofstream sidecar(sidecar_path, std::ios::binary | std::ios::trunc);
  if (!sidecar)
    throw Error(ErrorCode::kIoError, "cannot write `" + sidecar_path + "`");

  std::map<std::string, TaggedSentence> sentences = LoadTaggedText(config);
  RequireInput(config.ctm, "ctm");
  std::ifstream ctm_in(config.ctm, std::ios::binary);
  std::map<std::string, std::vector<CtmEntry>> ctm = ParseCtm(ctm_in);

  if (!sentences.count(base))
    throw Error(ErrorCode::kUnknownUtterance,
                "base utterance `" + base + "` is not in the tagged text");
  // Splicing preserves the frame count, so when only the augmented archive
  // is at hand the variant's own record supplies the base's shape.
  IndexEntry base_entry{base, found->second.archive_path,
                        found->second.offset};
  auto entry_it = merged.find(base);
  if (entry_it != merged.end()) base_entry = entry_it->second;
  AlignmentResult result = BuildAlignment(sentences, ctm, base_entry,
                                          config.fbank.frame_shift_ms);
  if (!result.alignment)
    throw Error(ErrorCode::kAlignmentTextMismatch,
                "cannot align `" + base + "`: " + result.error);
  const TaggedSentence &sentence = sentences.at(base);
  sidecar << "# " << base << '\n'
          << FormatBoundaries(sentence, result.alignment->spans);

  if (!config.variant_log.empty()) {
    RequireInput(config.variant_log, "variant_log");
    std::ifstream log(config.variant_log, std::ios::binary);
    std::string raw;
    while (std::getline(log, raw)) {
      if (TrimCr(raw).empty()) continue;
      VariantLogEntry entry = ParseVariantLogLine(raw);
      if (entry.utt_id != base) continue;
      sidecar << "# " << base << '#' << RuleName(entry.rule) << '\n'
              << FormatBoundaries(
                     sentence,
                     PermutedSpans(*result.alignment, entry.permutation));
    }
  }
  std::cout << "inspect: boundaries -> " << sidecar_path << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  PipelineConfig config;

  // The config file loads first so that explicit flags override it.
  try {
    for (int i = 1; i < argc; ++i) {
      if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc)
        LoadConfigFile(&config, argv[i + 1]);
      else if (std::strncmp(argv[i], "--config=", 9) == 0)
        LoadConfigFile(&config, argv[i] + 9);
    }
  } catch (const Error &e) {
    std::cerr << "spliceaug: " << e.what() << '\n';
    return kExitFatal;
  }

  CLI::App app{"Syntax-rule transposition and feature-splicing corpus "
               "augmentation for Mandarin ASR"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "flat key=value config file");
  app.add_option("--seed", config.seed, "seed for all sampling");
  app.add_option("--workers", config.workers, "worker threads");
  app.add_option("--rules", config.rules, "comma list, e.g. R1,R2,R3,R4");
  app.add_option("--out-dir", config.out_dir, "output directory");

  std::string out_flag, ark_flag, index_flag, spans_flag, stats_flag, utt_flag;
  std::vector<std::string> inspect_indexes;
  bool cmvn_apply = false;

  CLI::App *tag = app.add_subcommand("tag", "segment and POS-tag transcripts");
  tag->add_option("--lexicon", config.lexicon, "word<TAB>tag[,tag...] file");
  tag->add_option("--transcripts", config.transcripts, "utt_id<TAB>text file");
  tag->add_option("--out", out_flag, "output tagged-text file");

  CLI::App *fbank = app.add_subcommand("fbank", "extract log-Mel features");
  fbank->add_option("--wav-list", config.wav_list, "utt_id<TAB>wav file");
  fbank->add_option("--sample-rate", config.fbank.sample_rate_hz,
                    "expected sample rate (Hz)");
  fbank->add_option("--num-mel-bins", config.fbank.num_mel_bins,
                    "mel bins per frame");
  fbank->add_option("--out-ark", ark_flag, "output archive");
  fbank->add_option("--out-index", index_flag, "output index");

  CLI::App *cmvn = app.add_subcommand("cmvn", "global CMVN stats");
  cmvn->add_option("--index", config.feature_index, "feature index");
  cmvn->add_option("--out-stats", stats_flag, "stats archive path");
  cmvn->add_flag("--apply", cmvn_apply, "also write a normalized archive");

  CLI::App *align =
      app.add_subcommand("align", "CTM + tagged text -> frame spans");
  align->add_option("--tagged", config.tagged_text, "tagged-text file");
  align->add_option("--ctm", config.ctm, "forced-alignment CTM");
  align->add_option("--index", config.feature_index, "feature index");
  align->add_option("--tagset-map", config.tagset_map,
                    "external tagset mapping");
  align->add_option("--out-spans", spans_flag, "output spans file");

  CLI::App *augment =
      app.add_subcommand("augment", "transpose text and splice features");
  augment->add_option("--tagged", config.tagged_text, "tagged-text file");
  augment->add_option("--ctm", config.ctm, "forced-alignment CTM");
  augment->add_option("--index", config.feature_index, "feature index");
  augment->add_option("--tagset-map", config.tagset_map,
                      "external tagset mapping");
  augment->add_flag("--r7-final", config.r7_final,
                    "R7 moves the adverbial to the end instead");

  CLI::App *combine =
      app.add_subcommand("combine", "mix manifests under ratio weights");
  combine->add_option("--raw-manifest", config.raw_manifest, "raw manifest");
  combine->add_option("--aug-manifest", config.aug_manifest,
                      "augmented manifest");
  combine->add_option("--ratios", config.ratios,
                      "e.g. Raw:0.8,R1:0.05,R2:0.05,R3:0.05,R4:0.05");
  combine->add_option("--target-size", config.target_size,
                      "records in the combined manifest");

  CLI::App *inspect =
      app.add_subcommand("inspect", "spectrogram PPM + boundary sidecar");
  inspect->add_option("--utt", utt_flag, "utterance id (raw or variant)");
  inspect->add_option("--index", inspect_indexes,
                      "feature index (repeatable)");
  inspect->add_option("--tagged", config.tagged_text, "tagged-text file");
  inspect->add_option("--ctm", config.ctm, "forced-alignment CTM");
  inspect->add_option("--tagset-map", config.tagset_map,
                      "external tagset mapping");
  inspect->add_option("--variant-log", config.variant_log,
                      "variants.log from augment");

  for (CLI::App *sub : {tag, fbank, cmvn, align, augment, combine, inspect})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (tag->parsed()) return CmdTag(config, out_flag);
    if (fbank->parsed()) return CmdFbank(config, ark_flag, index_flag);
    if (cmvn->parsed()) return CmdCmvn(config, cmvn_apply, stats_flag);
    if (align->parsed()) return CmdAlign(config, spans_flag);
    if (augment->parsed()) return CmdAugment(config);
    if (combine->parsed()) return CmdCombine(config);
    if (inspect->parsed()) return CmdInspect(config, utt_flag, inspect_indexes);
  } catch (const Error &e) {
    std::cerr << "spliceaug: " << e.what() << '\n';
    return kExitFatal;
  } catch (const std::exception &e) {
    std::cerr << "spliceaug: " << e.what() << '\n';
    return kExitFatal;
  }
  return kExitFatal;
}
