// spliceaug/matrix.hpp

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

#ifndef SPLICEAUG_MATRIX_HPP_
#define SPLICEAUG_MATRIX_HPP_

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "spliceaug/common.hpp"

namespace spliceaug {

// Row-major float matrix of acoustic features: rows are frames, columns are
// feature dimensions. Stored as float32, matching the on-disk archive
// format; heavier accumulation (CMVN) happens in double.
struct FeatureMatrix {
  std::string utt_id;
  int32_t rows = 0;
  int32_t cols = 0;
  std::vector<float> data;

  FeatureMatrix() = default;
  FeatureMatrix(int32_t r, int32_t c, std::string id = "")
      : utt_id(std::move(id)), rows(r), cols(c),
        data(static_cast<size_t>(r) * c, 0.0f) {}

  float &At(int32_t r, int32_t c) {
    return data[static_cast<size_t>(r) * cols + c];
  }
  float At(int32_t r, int32_t c) const {
    return data[static_cast<size_t>(r) * cols + c];
  }
  std::span<float> Row(int32_t r) {
    return {data.data() + static_cast<size_t>(r) * cols,
            static_cast<size_t>(cols)};
  }
  std::span<const float> Row(int32_t r) const {
    return {data.data() + static_cast<size_t>(r) * cols,
            static_cast<size_t>(cols)};
  }

  bool SameValues(const FeatureMatrix &other) const {
    return rows == other.rows && cols == other.cols &&
           (data.empty() ||
            std::memcmp(data.data(), other.data.data(),
                        data.size() * sizeof(float)) == 0);
  }

  uint64_t RowHash(int32_t r) const {
    return Fnv1a64(data.data() + static_cast<size_t>(r) * cols,
                   static_cast<size_t>(cols) * sizeof(float));
  }
};

}  // namespace spliceaug

#endif  // SPLICEAUG_MATRIX_HPP_
