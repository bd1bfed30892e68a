// spliceaug/config.hpp
//
// Flat key=value pipeline configuration shared by the CLI subcommands.
// Command-line flags override file values.

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

#ifndef SPLICEAUG_CONFIG_HPP_
#define SPLICEAUG_CONFIG_HPP_

#include <fstream>
#include <string>
#include <type_traits>

#include "spliceaug/common.hpp"
#include "spliceaug/fbank.hpp"
#include "spliceaug/manifest.hpp"
#include "spliceaug/syntax.hpp"

namespace spliceaug {

struct PipelineConfig {
  // Inputs.
  std::string lexicon;
  std::string tagset_map;
  std::string transcripts;    // utt_id<TAB>text
  std::string tagged_text;    // utt_id<TAB>word/TAG ...
  std::string ctm;
  std::string wav_list;       // utt_id<TAB>wav_path
  std::string feature_index;
  std::string raw_manifest;
  std::string aug_manifest;
  std::string variant_log;
  // Outputs.
  std::string out_dir = ".";
  // Processing.
  FbankConfig fbank;
  std::string rules = "R1,R2,R3,R4";
  bool r7_final = false;
  std::string ratios = "Raw:0.8,R1:0.05,R2:0.05,R3:0.05,R4:0.05";
  uint64_t target_size = 0;
  uint64_t seed = 0;
  int workers = 1;

  std::vector<SyntaxRule> RuleSet() const { return ParseRuleList(rules); }

  CombinationSpec Combination() const {
    CombinationSpec spec;
    spec.ratios = ParseRatios(ratios);
    spec.seed = seed;
    spec.target_size = static_cast<size_t>(target_size);
    return spec;
  }
};

namespace config_detail {

inline bool ParseBool(const std::string &key, const std::string &value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(ErrorCode::kInvalidConfig,
              "key `" + key + "`: bad boolean `" + value + "`");
}

template <typename T>
T ParseNumber(const std::string &key, const std::string &value) {
  try {
    if constexpr (std::is_floating_point_v<T>)
      return static_cast<T>(std::stod(value));
    else if constexpr (std::is_signed_v<T>)
      return static_cast<T>(std::stoll(value));
    else
      return static_cast<T>(std::stoull(value));
  } catch (const std::exception &) {
    throw Error(ErrorCode::kInvalidConfig,
                "key `" + key + "`: bad number `" + value + "`");
  }
}

}  // namespace config_detail

inline void ApplyConfigKey(PipelineConfig *config, const std::string &key,
                           const std::string &value) {
  using config_detail::ParseBool;
  using config_detail::ParseNumber;
  if (key == "lexicon") config->lexicon = value;
  else if (key == "tagset_map") config->tagset_map = value;
  else if (key == "transcripts") config->transcripts = value;
  else if (key == "tagged_text") config->tagged_text = value;
  else if (key == "ctm") config->ctm = value;
  else if (key == "wav_list") config->wav_list = value;
  else if (key == "feature_index") config->feature_index = value;
  else if (key == "raw_manifest") config->raw_manifest = value;
  else if (key == "aug_manifest") config->aug_manifest = value;
  else if (key == "variant_log") config->variant_log = value;
  else if (key == "out_dir") config->out_dir = value;
  else if (key == "rules") config->rules = value;
  else if (key == "r7_final") config->r7_final = ParseBool(key, value);
  else if (key == "ratios") config->ratios = value;
  else if (key == "target_size")
    config->target_size = ParseNumber<uint64_t>(key, value);
  else if (key == "seed") config->seed = ParseNumber<uint64_t>(key, value);
  else if (key == "workers") config->workers = ParseNumber<int>(key, value);
  else if (key == "sample_rate_hz")
    config->fbank.sample_rate_hz = ParseNumber<int32_t>(key, value);
  else if (key == "frame_len_ms")
    config->fbank.frame_len_ms = ParseNumber<double>(key, value);
  else if (key == "frame_shift_ms")
    config->fbank.frame_shift_ms = ParseNumber<double>(key, value);
  else if (key == "num_mel_bins")
    config->fbank.num_mel_bins = ParseNumber<int32_t>(key, value);
  else if (key == "fft_size")
    config->fbank.fft_size = ParseNumber<int32_t>(key, value);
  else if (key == "preemphasis")
    config->fbank.preemphasis = ParseNumber<double>(key, value);
  else if (key == "low_freq_hz")
    config->fbank.low_freq_hz = ParseNumber<double>(key, value);
  else if (key == "high_freq_hz")
    config->fbank.high_freq_hz = ParseNumber<double>(key, value);
  else if (key == "dither")
    config->fbank.dither = ParseNumber<double>(key, value);
  else if (key == "log_floor")
    config->fbank.log_floor = ParseNumber<double>(key, value);
  else
    throw Error(ErrorCode::kInvalidConfig, "unknown config key `" + key + "`");
}

inline void LoadConfigFile(PipelineConfig *config, const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::kIoError, "cannot open config `" + path + "`");
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = TrimCr(raw);
    if (line.empty() || line.front() == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw Error(ErrorCode::kInvalidConfig,
                  "config line " + std::to_string(line_no) +
                      ": expected key=value");
    ApplyConfigKey(config, std::string(line.substr(0, eq)),
                   std::string(line.substr(eq + 1)));
  }
}

}  // namespace spliceaug

#endif  // SPLICEAUG_CONFIG_HPP_
