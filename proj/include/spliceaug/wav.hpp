// spliceaug/wav.hpp
//
// Minimal RIFF/WAVE reader and writer for PCM 16-bit mono audio. Samples
// are exchanged as floats scaled by 1/32768.

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

#ifndef SPLICEAUG_WAV_HPP_
#define SPLICEAUG_WAV_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "spliceaug/common.hpp"

namespace spliceaug {

struct WavData {
  int32_t sample_rate_hz = 0;
  std::vector<float> samples;  // in [-1, 1]
};

namespace wav_detail {

inline uint32_t ReadU32(const uint8_t *p) {
  return static_cast<uint32_t>(p[0]) | static_cast<uint32_t>(p[1]) << 8 |
         static_cast<uint32_t>(p[2]) << 16 | static_cast<uint32_t>(p[3]) << 24;
}

inline uint16_t ReadU16(const uint8_t *p) {
  return static_cast<uint16_t>(p[0] | p[1] << 8);
}

inline void PutU32(std::vector<uint8_t> *out, uint32_t v) {
  out->push_back(v & 0xFF);
  out->push_back((v >> 8) & 0xFF);
  out->push_back((v >> 16) & 0xFF);
  out->push_back((v >> 24) & 0xFF);
}

inline void PutU16(std::vector<uint8_t> *out, uint16_t v) {
  out->push_back(v & 0xFF);
  out->push_back((v >> 8) & 0xFF);
}

}  // namespace wav_detail

inline WavData ParseWav(std::span<const uint8_t> bytes) {
  using wav_detail::ReadU16;
  using wav_detail::ReadU32;
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw Error(ErrorCode::kNotRiff, "not a RIFF/WAVE file");

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  const uint8_t *pcm = nullptr;
  size_t pcm_bytes = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const uint8_t *chunk = bytes.data() + pos;
    uint32_t size = ReadU32(chunk + 4);
    const uint8_t *body = chunk + 8;
    if (pos + 8 + size > bytes.size())
      throw Error(ErrorCode::kNotRiff, "truncated chunk");
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw Error(ErrorCode::kNotRiff, "short fmt chunk");
      format = ReadU16(body);
      channels = ReadU16(body + 2);
      sample_rate = ReadU32(body + 4);
      bits = ReadU16(body + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      pcm = body;
      pcm_bytes = size;
    }
    pos += 8 + size + (size & 1);  // chunks are word aligned
  }
  if (!have_fmt || pcm == nullptr)
    throw Error(ErrorCode::kNotRiff, "missing fmt or data chunk");
  if (format != 1 || bits != 16)
    throw Error(ErrorCode::kUnsupportedEncoding,
                "only PCM 16-bit is supported (format " +
                    std::to_string(format) + ", " + std::to_string(bits) +
                    " bits)");
  if (channels != 1)
    throw Error(ErrorCode::kUnsupportedChannels,
                std::to_string(channels) + " channels; expected mono");

  WavData wav;
  wav.sample_rate_hz = static_cast<int32_t>(sample_rate);
  size_t num_samples = pcm_bytes / 2;
  wav.samples.resize(num_samples);
  for (size_t i = 0; i < num_samples; ++i) {
    int16_t s = static_cast<int16_t>(ReadU16(pcm + 2 * i));
    wav.samples[i] = static_cast<float>(s) / 32768.0f;
  }
  return wav;
}

inline WavData ParseWavFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open `" + path + "`");
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return ParseWav(bytes);
}

inline std::vector<uint8_t> EncodeWav(int32_t sample_rate_hz,
                                      std::span<const float> samples) {
  using wav_detail::PutU16;
  using wav_detail::PutU32;
  std::vector<uint8_t> out;
  uint32_t data_bytes = static_cast<uint32_t>(samples.size() * 2);
  out.reserve(44 + data_bytes);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  PutU32(&out, 36 + data_bytes);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  PutU32(&out, 16);
  PutU16(&out, 1);  // PCM
  PutU16(&out, 1);  // mono
  PutU32(&out, static_cast<uint32_t>(sample_rate_hz));
  PutU32(&out, static_cast<uint32_t>(sample_rate_hz) * 2);
  PutU16(&out, 2);   // block align
  PutU16(&out, 16);  // bits
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  PutU32(&out, data_bytes);
  for (float s : samples) {
    double scaled = std::lround(std::clamp(s, -1.0f, 1.0f) * 32767.0);
    PutU16(&out, static_cast<uint16_t>(static_cast<int16_t>(scaled)));
  }
  return out;
}

inline void WriteWavFile(const std::string &path, int32_t sample_rate_hz,
                         std::span<const float> samples) {
  std::vector<uint8_t> bytes = EncodeWav(sample_rate_hz, samples);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write `" + path + "`");
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace spliceaug

#endif  // SPLICEAUG_WAV_HPP_
