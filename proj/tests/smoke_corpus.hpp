// tests/smoke_corpus.hpp
//
// Builds a small synthetic corpus on disk: a toy lexicon, 20 transcripts
// that all match a sentence pattern, generated WAVs sized so the frame
// counts line up with synthetic alignments, and a CTM derived from those
// alignments (word-level entries for even utterances, character-level for
// odd ones).

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

#ifndef SPLICEAUG_TESTS_SMOKE_CORPUS_HPP_
#define SPLICEAUG_TESTS_SMOKE_CORPUS_HPP_

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "spliceaug/alignment.hpp"
#include "spliceaug/lexicon.hpp"
#include "spliceaug/wav.hpp"
#include "test_util.hpp"

namespace spliceaug::testing {

struct SmokeUtterance {
  std::string utt_id;
  std::string text;
  UtteranceAlignment alignment;
};

struct SmokeCorpus {
  std::filesystem::path dir;
  std::string lexicon_path;
  std::string transcripts_path;
  std::string wav_list_path;
  std::string ctm_path;
  std::vector<SmokeUtterance> utterances;
};

inline std::string FormatSeconds(int64_t frames, double frame_shift_ms) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", frames * frame_shift_ms / 1000.0);
  return buf;
}

// All 20 sentences match a pattern, so augmentation skips nothing and the
// pipeline exits 0.
inline const std::vector<std::pair<std::string, std::string>> &
SmokeTranscripts() {
  static const std::vector<std::pair<std::string, std::string>> utts{
      {"u01", "我很喜欢朋友"},    {"u02", "我今天要去公园"},
      {"u03", "他喜欢猫"},        {"u04", "老师看书"},
      {"u05", "我今天很高兴"},    {"u06", "你也很聪明"},
      {"u07", "漂亮朋友喜欢我"},  {"u08", "他买漂亮手机"},
      {"u09", "她找狗"},          {"u10", "猫吃苹果"},
      {"u11", "我昨天买书"},      {"u12", "他现在去学校"},
      {"u13", "狗非常喜欢人"},    {"u14", "你真好"},
      {"u15", "我都要去公园"},    {"u16", "她明天看猫"},
      {"u17", "大猫吃小苹果"},    {"u18", "他也买苹果"},
      {"u19", "聪明人学手机"},    {"u20", "我非常喜欢学校"}};
  return utts;
}

inline SmokeCorpus BuildSmokeCorpus(const std::filesystem::path &dir,
                                    int sample_rate = 16000,
                                    uint64_t seed = 20260101) {
  namespace fs = std::filesystem;
  SmokeCorpus corpus;
  corpus.dir = dir;
  fs::create_directories(dir / "wav");

  corpus.lexicon_path = (dir / "lexicon.txt").string();
  {
    std::ofstream lex(corpus.lexicon_path, std::ios::binary);
    lex << ToyLexiconText();
  }

  Lexicon lexicon = ToyLexicon();
  const double frame_shift_ms = 10.0;
  const int frame_len = sample_rate * 25 / 1000;
  const int frame_shift = sample_rate * 10 / 1000;

  std::ofstream transcripts((dir / "transcripts.txt").string(),
                            std::ios::binary);
  std::ofstream wav_list((dir / "wav_list.txt").string(), std::ios::binary);
  std::ofstream ctm((dir / "ctm.txt").string(), std::ios::binary);
  corpus.transcripts_path = (dir / "transcripts.txt").string();
  corpus.wav_list_path = (dir / "wav_list.txt").string();
  corpus.ctm_path = (dir / "ctm.txt").string();

  Rng signal_rng(seed);
  size_t n = 0;
  for (const auto &[utt_id, text] : SmokeTranscripts()) {
    ++n;
    transcripts << utt_id << '\t' << text << '\n';

    TaggedSentence sentence = SegmentAndTag(text, lexicon, utt_id);
    UtteranceAlignment alignment = SynthAlignment(sentence, 8, seed + n, 2);

    // A wav whose frame count equals the alignment's total.
    size_t samples_needed =
        static_cast<size_t>(alignment.total_frames - 1) * frame_shift +
        frame_len;
    std::vector<float> samples = RandomSignal(signal_rng, samples_needed, 0.6);
    std::string wav_path = (dir / "wav" / (utt_id + ".wav")).string();
    WriteWavFile(wav_path, sample_rate, samples);
    wav_list << utt_id << '\t' << wav_path << '\n';

    // Word-level CTM for even utterances, character-level for odd ones.
    bool char_level = n % 2 == 1;
    for (size_t t = 0; t < sentence.tokens.size(); ++t) {
      const WordSpan &span = alignment.spans[t];
      const std::string &surface = sentence.tokens[t].surface;
      if (!char_level) {
        ctm << utt_id << " 1 " << FormatSeconds(span.start_frame,
                                                frame_shift_ms)
            << ' ' << FormatSeconds(span.num_frames, frame_shift_ms) << ' '
            << surface << '\n';
        continue;
      }
      std::vector<std::string_view> chars = Utf8Chars(surface);
      int64_t consumed = 0;
      for (size_t c = 0; c < chars.size(); ++c) {
        int64_t begin = span.start_frame + consumed;
        int64_t len = c + 1 == chars.size()
                          ? span.num_frames - consumed
                          : span.num_frames / static_cast<int64_t>(
                                                  chars.size());
        if (len <= 0) len = 1;
        ctm << utt_id << " 1 " << FormatSeconds(begin, frame_shift_ms) << ' '
            << FormatSeconds(len, frame_shift_ms) << ' ' << chars[c] << '\n';
        consumed += len;
      }
    }
    corpus.utterances.push_back(
        SmokeUtterance{utt_id, text, std::move(alignment)});
  }
  return corpus;
}

// Runs a command, capturing stdout+stderr to a log; returns the exit code.
inline int RunCommand(const std::string &command, const std::string &log_path) {
  std::string full = command + " > " + log_path + " 2>&1";
  int status = std::system(full.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

inline std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

inline size_t CountLines(const std::string &blob) {
  size_t lines = 0;
  for (char c : blob)
    if (c == '\n') ++lines;
  return lines;
}

}  // namespace spliceaug::testing

#endif  // SPLICEAUG_TESTS_SMOKE_CORPUS_HPP_
