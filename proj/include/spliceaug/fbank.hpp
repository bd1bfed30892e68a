// spliceaug/fbank.hpp
//
// Log-Mel filterbank extraction. Frames are snipped from the signal
// (floor((N - frame_len) / shift) + 1 full windows, no padding), each frame
// is DC-removed, pre-emphasized, Hamming-windowed and zero-padded to
// fft_size; triangular mel filters (HTK scale) are applied to the power
// spectrum and the result is log-compressed.

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

#ifndef SPLICEAUG_FBANK_HPP_
#define SPLICEAUG_FBANK_HPP_

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "spliceaug/common.hpp"
#include "spliceaug/matrix.hpp"

namespace spliceaug {

struct FbankConfig {
  int32_t sample_rate_hz = 16000;
  double frame_len_ms = 25.0;
  double frame_shift_ms = 10.0;
  int32_t num_mel_bins = 40;
  int32_t fft_size = 512;
  double preemphasis = 0.97;
  double low_freq_hz = 20.0;
  double high_freq_hz = 0.0;  // 0 means Nyquist
  double dither = 0.0;
  double log_floor = 1e-10;

  int32_t FrameLenSamples() const {
    return static_cast<int32_t>(frame_len_ms * sample_rate_hz / 1000.0);
  }
  int32_t FrameShiftSamples() const {
    return static_cast<int32_t>(frame_shift_ms * sample_rate_hz / 1000.0);
  }
  double ResolvedHighFreq() const {
    return high_freq_hz > 0 ? high_freq_hz : sample_rate_hz / 2.0;
  }

  void Validate() const {
    if (sample_rate_hz <= 0 || frame_len_ms <= 0 || frame_shift_ms <= 0 ||
        num_mel_bins <= 0 || log_floor <= 0)
      throw Error(ErrorCode::kInvalidConfig, "bad fbank config");
    if (fft_size <= 0 || (fft_size & (fft_size - 1)) != 0)
      throw Error(ErrorCode::kInvalidConfig,
                  "fft_size must be a power of two");
    if (FrameLenSamples() < 2)
      throw Error(ErrorCode::kInvalidConfig,
                  "frame of " + std::to_string(FrameLenSamples()) +
                      " samples cannot be windowed");
    if (FrameLenSamples() > fft_size)
      throw Error(ErrorCode::kInvalidConfig,
                  "frame of " + std::to_string(FrameLenSamples()) +
                      " samples does not fit fft_size " +
                      std::to_string(fft_size));
    if (FrameShiftSamples() <= 0)
      throw Error(ErrorCode::kInvalidConfig, "frame shift under one sample");
    if (preemphasis < 0 || preemphasis >= 1)
      throw Error(ErrorCode::kInvalidConfig, "preemphasis outside [0,1)");
    if (low_freq_hz < 0 || ResolvedHighFreq() <= low_freq_hz ||
        ResolvedHighFreq() > sample_rate_hz / 2.0)
      throw Error(ErrorCode::kInvalidConfig, "bad mel frequency range");
    if (dither < 0)
      throw Error(ErrorCode::kInvalidConfig, "negative dither");
  }
};

inline int64_t NumFrames(size_t num_samples, const FbankConfig &config) {
  int64_t len = config.FrameLenSamples();
  int64_t shift = config.FrameShiftSamples();
  if (static_cast<int64_t>(num_samples) < len) return 0;
  return (static_cast<int64_t>(num_samples) - len) / shift + 1;
}

inline double MelScale(double hz) {
  return 2595.0 * std::log10(1.0 + hz / 700.0);
}

inline double InverseMelScale(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

// Triangular mel filterbank over the one-sided power spectrum. Triangles are
// built in the mel domain (HTK style): num_mel_bins + 2 equally spaced mel
// points between low and high frequency.
struct MelBanks {
  int32_t num_bins = 0;
  int32_t num_fft_bins = 0;  // fft_size / 2 + 1
  std::vector<double> weights;  // num_bins x num_fft_bins, row-major
  std::vector<double> center_freqs_hz;

  static MelBanks Create(const FbankConfig &config) {
    MelBanks banks;
    banks.num_bins = config.num_mel_bins;
    banks.num_fft_bins = config.fft_size / 2 + 1;
    banks.weights.assign(
        static_cast<size_t>(banks.num_bins) * banks.num_fft_bins, 0.0);
    banks.center_freqs_hz.resize(banks.num_bins);

    double mel_low = MelScale(config.low_freq_hz);
    double mel_high = MelScale(config.ResolvedHighFreq());
    double mel_step = (mel_high - mel_low) / (config.num_mel_bins + 1);
    double bin_width_hz =
        static_cast<double>(config.sample_rate_hz) / config.fft_size;

    for (int32_t b = 0; b < banks.num_bins; ++b) {
      double left = mel_low + b * mel_step;
      double center = mel_low + (b + 1) * mel_step;
      double right = mel_low + (b + 2) * mel_step;
      banks.center_freqs_hz[b] = InverseMelScale(center);
      for (int32_t k = 0; k < banks.num_fft_bins; ++k) {
        double mel = MelScale(k * bin_width_hz);
        double w = 0.0;
        if (mel > left && mel < right)
          w = mel <= center ? (mel - left) / (center - left)
                            : (right - mel) / (right - center);
        banks.weights[static_cast<size_t>(b) * banks.num_fft_bins + k] = w;
      }
    }
    return banks;
  }

  double Weight(int32_t bin, int32_t fft_bin) const {
    return weights[static_cast<size_t>(bin) * num_fft_bins + fft_bin];
  }
};

namespace fbank_detail {

// Iterative radix-2 Cooley-Tukey FFT, in place. Size must be a power of two.
inline void Fft(std::vector<std::complex<double>> &x) {
  const size_t n = x.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
    std::complex<double> step(std::cos(angle), std::sin(angle));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = x[i + k];
        std::complex<double> v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= step;
      }
    }
  }
}

}  // namespace fbank_detail

inline FeatureMatrix ComputeFbank(std::span<const float> samples,
                                  const FbankConfig &config,
                                  const std::string &utt_id = "") {
  config.Validate();
  const int32_t frame_len = config.FrameLenSamples();
  const int32_t shift = config.FrameShiftSamples();
  const int64_t num_frames = NumFrames(samples.size(), config);
  if (num_frames == 0)
    throw Error(ErrorCode::kTooShort,
                "signal of " + std::to_string(samples.size()) +
                    " samples is shorter than one " +
                    std::to_string(frame_len) + "-sample frame");

  static thread_local MelBanks banks;
  static thread_local FbankConfig banks_config;
  if (banks.num_bins != config.num_mel_bins ||
      banks.num_fft_bins != config.fft_size / 2 + 1 ||
      banks_config.sample_rate_hz != config.sample_rate_hz ||
      banks_config.low_freq_hz != config.low_freq_hz ||
      banks_config.high_freq_hz != config.high_freq_hz ||
      banks_config.num_mel_bins != config.num_mel_bins ||
      banks_config.fft_size != config.fft_size) {
    banks = MelBanks::Create(config);
    banks_config = config;
  }

  std::vector<double> window(frame_len);
  std::vector<double> hamming(frame_len);
  for (int32_t i = 0; i < frame_len; ++i)
    hamming[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i /
                                        (frame_len - 1));

  FeatureMatrix feats(static_cast<int32_t>(num_frames), config.num_mel_bins,
                      utt_id);
  std::vector<std::complex<double>> spectrum(config.fft_size);
  Rng dither_rng(0x5EEDD17E);  // fixed seed keeps extraction deterministic

  for (int64_t f = 0; f < num_frames; ++f) {
    const float *src = samples.data() + f * shift;
    for (int32_t i = 0; i < frame_len; ++i) window[i] = src[i];

    if (config.dither > 0)
      for (int32_t i = 0; i < frame_len; ++i)
        window[i] += config.dither * (2.0 * dither_rng.NextDouble() - 1.0);

    double mean = 0;
    for (double v : window) mean += v;
    mean /= frame_len;
    for (double &v : window) v -= mean;

    if (config.preemphasis > 0) {
      for (int32_t i = frame_len - 1; i > 0; --i)
        window[i] -= config.preemphasis * window[i - 1];
      window[0] *= 1.0 - config.preemphasis;
    }

    for (int32_t i = 0; i < frame_len; ++i) window[i] *= hamming[i];

    for (int32_t i = 0; i < config.fft_size; ++i)
      spectrum[i] = i < frame_len ? std::complex<double>(window[i], 0.0)
                                  : std::complex<double>(0.0, 0.0);
    fbank_detail::Fft(spectrum);

    for (int32_t b = 0; b < config.num_mel_bins; ++b) {
      double energy = 0;
      for (int32_t k = 0; k < banks.num_fft_bins; ++k) {
        double w = banks.Weight(b, k);
        if (w > 0) energy += w * std::norm(spectrum[k]);
      }
      feats.At(static_cast<int32_t>(f), b) =
          static_cast<float>(std::log(std::max(energy, config.log_floor)));
    }
  }
  return feats;
}

}  // namespace spliceaug

#endif  // SPLICEAUG_FBANK_HPP_
