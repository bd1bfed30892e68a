// spliceaug/cmvn.hpp
//
// Global mean and variance normalization. Stats accumulate in double
// (per-dimension sum, sum of squares, frame count) and merge field-wise, so
// partial stats from parallel workers combine deterministically when merged
// in a fixed order.

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

#ifndef SPLICEAUG_CMVN_HPP_
#define SPLICEAUG_CMVN_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "spliceaug/common.hpp"
#include "spliceaug/matrix.hpp"

namespace spliceaug {

struct CmvnStats {
  std::vector<double> sum;
  std::vector<double> sum_sq;
  double count = 0;

  int32_t Dim() const { return static_cast<int32_t>(sum.size()); }

  void Resize(int32_t dim) {
    sum.assign(dim, 0.0);
    sum_sq.assign(dim, 0.0);
    count = 0;
  }

  double Mean(int32_t d) const { return sum[d] / count; }

  double Var(int32_t d) const {
    double mean = Mean(d);
    return std::max(sum_sq[d] / count - mean * mean, 0.0);
  }
};

inline void AccumulateCmvn(CmvnStats *stats, const FeatureMatrix &feats) {
  if (stats->Dim() == 0) stats->Resize(feats.cols);
  if (stats->Dim() != feats.cols)
    throw Error(ErrorCode::kDimensionMismatch,
                "stats have " + std::to_string(stats->Dim()) +
                    " dims, matrix has " + std::to_string(feats.cols));
  for (int32_t r = 0; r < feats.rows; ++r) {
    std::span<const float> row = feats.Row(r);
    for (int32_t d = 0; d < feats.cols; ++d) {
      double v = row[d];
      stats->sum[d] += v;
      stats->sum_sq[d] += v * v;
    }
  }
  stats->count += feats.rows;
}

// Stats form a commutative monoid under field-wise addition.
inline CmvnStats MergeCmvn(const CmvnStats &a, const CmvnStats &b) {
  if (a.Dim() == 0) return b;
  if (b.Dim() == 0) return a;
  if (a.Dim() != b.Dim())
    throw Error(ErrorCode::kDimensionMismatch, "merging stats of " +
                                                   std::to_string(a.Dim()) +
                                                   " and " +
                                                   std::to_string(b.Dim()) +
                                                   " dims");
  CmvnStats out = a;
  for (int32_t d = 0; d < a.Dim(); ++d) {
    out.sum[d] += b.sum[d];
    out.sum_sq[d] += b.sum_sq[d];
  }
  out.count += b.count;
  return out;
}

// x' = (x - mean) / sqrt(var + eps), per dimension.
inline FeatureMatrix ApplyCmvn(const FeatureMatrix &feats,
                               const CmvnStats &stats, double eps = 1e-8) {
  if (stats.count <= 0)
    throw Error(ErrorCode::kEmptyStats, "no frames accumulated");
  if (stats.Dim() != feats.cols)
    throw Error(ErrorCode::kDimensionMismatch,
                "stats have " + std::to_string(stats.Dim()) +
                    " dims, matrix has " + std::to_string(feats.cols));
  std::vector<double> mean(feats.cols), inv_std(feats.cols);
  for (int32_t d = 0; d < feats.cols; ++d) {
    mean[d] = stats.Mean(d);
    inv_std[d] = 1.0 / std::sqrt(stats.Var(d) + eps);
  }
  FeatureMatrix out(feats.rows, feats.cols, feats.utt_id);
  for (int32_t r = 0; r < feats.rows; ++r) {
    std::span<const float> src = feats.Row(r);
    std::span<float> dst = out.Row(r);
    for (int32_t d = 0; d < feats.cols; ++d)
      dst[d] = static_cast<float>((src[d] - mean[d]) * inv_std[d]);
  }
  return out;
}

// On-disk form: one 2 x (dim + 1) matrix record. Row 0 is the sums followed
// by the frame count, row 1 the sums of squares followed by 0.
inline FeatureMatrix CmvnStatsToMatrix(const CmvnStats &stats,
                                       const std::string &utt_id = "global") {
  FeatureMatrix m(2, stats.Dim() + 1, utt_id);
  for (int32_t d = 0; d < stats.Dim(); ++d) {
    m.At(0, d) = static_cast<float>(stats.sum[d]);
    m.At(1, d) = static_cast<float>(stats.sum_sq[d]);
  }
  m.At(0, stats.Dim()) = static_cast<float>(stats.count);
  m.At(1, stats.Dim()) = 0.0f;
  return m;
}

inline CmvnStats CmvnStatsFromMatrix(const FeatureMatrix &m) {
  if (m.rows != 2 || m.cols < 2)
    throw Error(ErrorCode::kDimensionMismatch,
                "cmvn stats record must be 2 x (dim + 1)");
  CmvnStats stats;
  stats.Resize(m.cols - 1);
  for (int32_t d = 0; d + 1 < m.cols; ++d) {
    stats.sum[d] = m.At(0, d);
    stats.sum_sq[d] = m.At(1, d);
  }
  stats.count = m.At(0, m.cols - 1);
  return stats;
}

}  // namespace spliceaug

#endif  // SPLICEAUG_CMVN_HPP_
