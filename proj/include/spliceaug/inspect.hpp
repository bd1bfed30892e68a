// spliceaug/inspect.hpp
//
// Visualization helpers: a grayscale spectrogram image (binary PPM, one
// column per frame, one row per mel bin, low bins at the bottom) and a text
// sidecar listing word boundaries in frames.

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

#ifndef SPLICEAUG_INSPECT_HPP_
#define SPLICEAUG_INSPECT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "spliceaug/alignment.hpp"
#include "spliceaug/common.hpp"
#include "spliceaug/lexicon.hpp"
#include "spliceaug/matrix.hpp"

namespace spliceaug {

// P6 image, width = frames, height = feature dims. Values are rescaled
// linearly over the matrix's [min, max]; a constant matrix renders mid-gray.
inline std::vector<uint8_t> RenderSpectrogramPpm(const FeatureMatrix &feats) {
  if (feats.rows <= 0 || feats.cols <= 0)
    throw Error(ErrorCode::kInvalidArgument, "empty feature matrix");
  float lo = feats.data[0], hi = feats.data[0];
  for (float v : feats.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const bool flat = !(hi > lo);
  const float scale = flat ? 0.0f : 255.0f / (hi - lo);

  std::string header = "P6\n" + std::to_string(feats.rows) + " " +
                       std::to_string(feats.cols) + "\n255\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + static_cast<size_t>(feats.rows) * feats.cols * 3);
  for (int32_t row = 0; row < feats.cols; ++row) {
    int32_t bin = feats.cols - 1 - row;  // low frequencies at the bottom
    for (int32_t frame = 0; frame < feats.rows; ++frame) {
      uint8_t gray =
          flat ? 128
               : static_cast<uint8_t>(std::lround(
                     (feats.At(frame, bin) - lo) * scale));
      out.push_back(gray);
      out.push_back(gray);
      out.push_back(gray);
    }
  }
  return out;
}

inline void WriteSpectrogramPpm(const std::string &path,
                                const FeatureMatrix &feats) {
  std::vector<uint8_t> bytes = RenderSpectrogramPpm(feats);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write `" + path + "`");
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

// `token<TAB>start_frame<TAB>end_frame` lines (end exclusive). `spans` must
// be in output order; surfaces come from the sentence by token index.
inline std::string FormatBoundaries(const TaggedSentence &sentence,
                                    const std::vector<WordSpan> &spans) {
  std::string out;
  for (const WordSpan &span : spans) {
    out += sentence.tokens[span.token_index].surface;
    out += '\t';
    out += std::to_string(span.start_frame);
    out += '\t';
    out += std::to_string(span.EndFrame());
    out += '\n';
  }
  return out;
}

}  // namespace spliceaug

#endif  // SPLICEAUG_INSPECT_HPP_
