// spliceaug/common.hpp

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

#ifndef SPLICEAUG_COMMON_HPP_
#define SPLICEAUG_COMMON_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace spliceaug {

enum class ErrorCode {
  // lexicon / tagged text
  kMalformedLine,
  kUnknownTag,
  kEmptyLexicon,
  kMalformedToken,
  kEmptyTranscript,
  // ctm / alignment
  kMalformedCtmLine,
  kNegativeTime,
  kOverlappingEntries,
  kAlignmentTextMismatch,
  kSpanOverflow,
  // wav / features
  kNotRiff,
  kUnsupportedEncoding,
  kUnsupportedChannels,
  kTooShort,
  kEmptyStats,
  kDimensionMismatch,
  // archive
  kCorruptHeader,
  kTruncatedMatrix,
  kDanglingIndexEntry,
  // splice / manifest
  kSpanMismatch,
  kPermLengthMismatch,
  kInsufficientSource,
  // cli
  kKeyMismatch,
  kUnknownUtterance,
  kEmptyInput,
  kInvalidConfig,
  kInvalidArgument,
  kIoError,
};

inline const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kUnknownTag: return "UnknownTag";
    case ErrorCode::kEmptyLexicon: return "EmptyLexicon";
    case ErrorCode::kMalformedToken: return "MalformedToken";
    case ErrorCode::kEmptyTranscript: return "EmptyTranscript";
    case ErrorCode::kMalformedCtmLine: return "MalformedCtmLine";
    case ErrorCode::kNegativeTime: return "NegativeTime";
    case ErrorCode::kOverlappingEntries: return "OverlappingEntries";
    case ErrorCode::kAlignmentTextMismatch: return "AlignmentTextMismatch";
    case ErrorCode::kSpanOverflow: return "SpanOverflow";
    case ErrorCode::kNotRiff: return "NotRiff";
    case ErrorCode::kUnsupportedEncoding: return "UnsupportedEncoding";
    case ErrorCode::kUnsupportedChannels: return "UnsupportedChannels";
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kEmptyStats: return "EmptyStats";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kCorruptHeader: return "CorruptHeader";
    case ErrorCode::kTruncatedMatrix: return "TruncatedMatrix";
    case ErrorCode::kDanglingIndexEntry: return "DanglingIndexEntry";
    case ErrorCode::kSpanMismatch: return "SpanMismatch";
    case ErrorCode::kPermLengthMismatch: return "PermLengthMismatch";
    case ErrorCode::kInsufficientSource: return "InsufficientSource";
    case ErrorCode::kKeyMismatch: return "KeyMismatch";
    case ErrorCode::kUnknownUtterance: return "UnknownUtterance";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &msg)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + msg),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// UTF-8 helpers. Sequence boundaries are all we need: a byte starts a new
// character unless it is a continuation byte (10xxxxxx).

inline bool IsUtf8Continuation(unsigned char b) { return (b & 0xC0) == 0x80; }

// Splits a UTF-8 string into per-character views (invalid bytes pass through
// as single-byte characters).
inline std::vector<std::string_view> Utf8Chars(std::string_view s) {
  std::vector<std::string_view> chars;
  size_t i = 0;
  while (i < s.size()) {
    size_t j = i + 1;
    while (j < s.size() && IsUtf8Continuation(static_cast<unsigned char>(s[j])))
      ++j;
    chars.push_back(s.substr(i, j - i));
    i = j;
  }
  return chars;
}

inline size_t Utf8Length(std::string_view s) {
  size_t n = 0;
  for (size_t i = 0; i < s.size(); ++i)
    if (!IsUtf8Continuation(static_cast<unsigned char>(s[i]))) ++n;
  return n;
}

// Removes ASCII whitespace and U+3000 (ideographic space).
inline std::string StripWhitespace(std::string_view s) {
  static constexpr std::string_view kIdeographicSpace = "\xe3\x80\x80";
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
        c == '\v') {
      ++i;
      continue;
    }
    if (s.substr(i, 3) == kIdeographicSpace) {
      i += 3;
      continue;
    }
    out.push_back(s[i]);
    ++i;
  }
  return out;
}

inline std::string_view TrimCr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline std::vector<std::string> SplitFields(std::string_view s, char delim) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      fields.emplace_back(s.substr(start));
      break;
    }
    fields.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

inline std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> fields;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) fields.emplace_back(s.substr(start, i - start));
  }
  return fields;
}

// Deterministic PRNG (splitmix64). std::mt19937 distributions are
// implementation-defined; outputs here must be byte-identical across
// platforms, so bounded draws are spelled out explicitly.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), n > 0. Rejection sampling keeps it unbiased.
  uint64_t Bounded(uint64_t n) {
    uint64_t threshold = (0 - n) % n;
    while (true) {
      uint64_t r = Next();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform in [0, 1).
  double NextDouble() { return (Next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

// FNV-1a over raw bytes; used for frame-content hashing in tests and tools.
inline uint64_t Fnv1a64(const void *data, size_t len,
                        uint64_t h = 0xCBF29CE484222325ULL) {
  const unsigned char *p = static_cast<const unsigned char *>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline uint64_t HashString(std::string_view s) {
  return Fnv1a64(s.data(), s.size());
}

// Runs fn(i) for i in [0, n) on num_workers threads. Work items must be
// independent; the first exception is rethrown after all threads join.
inline void ParallelFor(int num_workers, size_t n,
                        const std::function<void(size_t)> &fn) {
  if (num_workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  int count = static_cast<int>(std::min<size_t>(num_workers, n));
  threads.reserve(count);
  for (int t = 0; t < count; ++t) threads.emplace_back(worker);
  for (auto &t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace spliceaug

#endif  // SPLICEAUG_COMMON_HPP_
