// spliceaug/archive.hpp
//
// Binary feature archive with a text index. One record per utterance:
//
//   utt_id ' ' 0x00 'B' 'F' 'M' ' ' 0x04 <int32 rows> 0x04 <int32 cols>
//   <rows*cols float32, row-major>
//
// Integers and floats are little-endian. Index lines are
// `utt_id<SPACE>data_path:byte_offset`, the offset pointing at the 0x00
// byte, so records can be read back either sequentially (parsing utt_ids
// from the data file) or randomly through the index. Read-after-write is
// bit-exact.

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

#ifndef SPLICEAUG_ARCHIVE_HPP_
#define SPLICEAUG_ARCHIVE_HPP_

#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "spliceaug/common.hpp"
#include "spliceaug/matrix.hpp"

namespace spliceaug {

static_assert(std::endian::native == std::endian::little,
              "archive I/O assumes a little-endian host");

namespace archive_detail {

constexpr char kBinaryMark[] = {'\0', 'B'};
constexpr char kMatrixToken[] = {'F', 'M', ' '};
constexpr char kIntSize = '\x04';

inline void WriteInt32(std::ostream &out, int32_t v) {
  out.put(kIntSize);
  out.write(reinterpret_cast<const char *>(&v), 4);
}

}  // namespace archive_detail

struct IndexEntry {
  std::string utt_id;
  std::string archive_path;
  int64_t offset = 0;
};

class ArchiveWriter {
 public:
  ArchiveWriter(const std::string &data_path, const std::string &index_path)
      : data_path_(data_path),
        data_(data_path, std::ios::binary | std::ios::trunc),
        index_(index_path, std::ios::binary | std::ios::trunc) {
    if (!data_)
      throw Error(ErrorCode::kIoError, "cannot write `" + data_path + "`");
    if (!index_)
      throw Error(ErrorCode::kIoError, "cannot write `" + index_path + "`");
  }

  // Returns the byte offset recorded in the index for this record.
  int64_t Write(const std::string &utt_id, const FeatureMatrix &feats) {
    using namespace archive_detail;
    if (utt_id.empty() ||
        utt_id.find_first_of(" \t\n") != std::string::npos)
      throw Error(ErrorCode::kInvalidArgument,
                  "bad utterance id `" + utt_id + "`");
    if (feats.cols <= 0)
      throw Error(ErrorCode::kInvalidArgument,
                  "matrix for `" + utt_id + "` has no columns");
    if (cols_ >= 0 && feats.cols != cols_)
      throw Error(ErrorCode::kDimensionMismatch,
                  "archive holds " + std::to_string(cols_) +
                      "-dim records, got " + std::to_string(feats.cols));
    cols_ = feats.cols;

    data_.write(utt_id.data(), static_cast<std::streamsize>(utt_id.size()));
    data_.put(' ');
    int64_t offset = pos_ + static_cast<int64_t>(utt_id.size()) + 1;
    data_.write(kBinaryMark, 2);
    data_.write(kMatrixToken, 3);
    WriteInt32(data_, feats.rows);
    WriteInt32(data_, feats.cols);
    data_.write(reinterpret_cast<const char *>(feats.data.data()),
                static_cast<std::streamsize>(feats.data.size() * 4));
    if (!data_)
      throw Error(ErrorCode::kIoError, "write failed on `" + data_path_ + "`");
    pos_ = offset + 15 + static_cast<int64_t>(feats.data.size() * 4);

    index_ << utt_id << ' ' << data_path_ << ':' << offset << '\n';
    if (!index_)
      throw Error(ErrorCode::kIoError, "index write failed");
    ++num_records_;
    return offset;
  }

  size_t NumRecords() const { return num_records_; }

  const std::string &DataPath() const { return data_path_; }

  void Flush() {
    data_.flush();
    index_.flush();
  }

 private:
  std::string data_path_;
  std::ofstream data_;
  std::ofstream index_;
  int64_t pos_ = 0;
  int32_t cols_ = -1;
  size_t num_records_ = 0;
};

inline std::vector<IndexEntry> LoadIndex(const std::string &index_path) {
  std::ifstream in(index_path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::kIoError, "cannot open `" + index_path + "`");
  std::vector<IndexEntry> entries;
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = TrimCr(raw);
    if (line.empty()) continue;
    size_t space = line.find(' ');
    size_t colon = line.rfind(':');
    if (space == std::string_view::npos || colon == std::string_view::npos ||
        colon <= space + 1 || colon + 1 >= line.size())
      throw Error(ErrorCode::kMalformedLine,
                  "index line " + std::to_string(line_no) + " in `" +
                      index_path + "`");
    IndexEntry entry;
    entry.utt_id = std::string(line.substr(0, space));
    entry.archive_path = std::string(line.substr(space + 1, colon - space - 1));
    try {
      entry.offset = std::stoll(std::string(line.substr(colon + 1)));
    } catch (const std::exception &) {
      throw Error(ErrorCode::kMalformedLine,
                  "index line " + std::to_string(line_no) + ": bad offset");
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

namespace archive_detail {

// Parses '\0' 'B' "FM " and the two size-prefixed int32 dimensions.
inline void ReadRecordHeader(std::istream &in, const std::string &what,
                             int32_t *rows, int32_t *cols) {
  char header[5];
  if (!in.read(header, 5))
    throw Error(ErrorCode::kCorruptHeader, what + ": record header truncated");
  if (header[0] != '\0' || header[1] != 'B' || header[2] != 'F' ||
      header[3] != 'M' || header[4] != ' ')
    throw Error(ErrorCode::kCorruptHeader,
                what + ": bad record marker (expected \\0B FM )");
  auto read_int = [&](int32_t *v) {
    char size_byte;
    if (!in.get(size_byte) || size_byte != kIntSize)
      throw Error(ErrorCode::kCorruptHeader, what + ": bad int marker");
    if (!in.read(reinterpret_cast<char *>(v), 4))
      throw Error(ErrorCode::kCorruptHeader, what + ": dimensions truncated");
  };
  read_int(rows);
  read_int(cols);
  if (*rows < 0 || *cols <= 0)
    throw Error(ErrorCode::kCorruptHeader,
                what + ": implausible shape " + std::to_string(*rows) + "x" +
                    std::to_string(*cols));
}

// Reads the binary part of a record from the current stream position.
inline FeatureMatrix ReadBinaryRecord(std::istream &in,
                                      const std::string &what) {
  FeatureMatrix feats;
  ReadRecordHeader(in, what, &feats.rows, &feats.cols);
  feats.data.resize(static_cast<size_t>(feats.rows) * feats.cols);
  if (!feats.data.empty() &&
      !in.read(reinterpret_cast<char *>(feats.data.data()),
               static_cast<std::streamsize>(feats.data.size() * 4)))
    throw Error(ErrorCode::kTruncatedMatrix,
                what + ": expected " + std::to_string(feats.data.size()) +
                    " floats");
  return feats;
}

}  // namespace archive_detail

// Random access through an index entry. The offset points at the 0x00 byte.
inline FeatureMatrix ReadRecordAt(const std::string &archive_path,
                                  int64_t offset,
                                  const std::string &utt_id = "") {
  std::ifstream in(archive_path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::kIoError, "cannot open `" + archive_path + "`");
  in.seekg(0, std::ios::end);
  int64_t size = in.tellg();
  if (offset < 0 || offset >= size)
    throw Error(ErrorCode::kDanglingIndexEntry,
                "offset " + std::to_string(offset) + " outside `" +
                    archive_path + "` (" + std::to_string(size) + " bytes)");
  in.seekg(offset);
  FeatureMatrix feats = archive_detail::ReadBinaryRecord(
      in, "`" + archive_path + "` @" + std::to_string(offset));
  feats.utt_id = utt_id;
  return feats;
}

inline FeatureMatrix ReadRecordAt(const IndexEntry &entry) {
  return ReadRecordAt(entry.archive_path, entry.offset, entry.utt_id);
}

// Shape only; reads the 15 header bytes, not the payload.
inline std::pair<int32_t, int32_t> ReadRecordShapeAt(
    const std::string &archive_path, int64_t offset) {
  std::ifstream in(archive_path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::kIoError, "cannot open `" + archive_path + "`");
  in.seekg(0, std::ios::end);
  int64_t size = in.tellg();
  if (offset < 0 || offset >= size)
    throw Error(ErrorCode::kDanglingIndexEntry,
                "offset " + std::to_string(offset) + " outside `" +
                    archive_path + "` (" + std::to_string(size) + " bytes)");
  in.seekg(offset);
  int32_t rows = 0, cols = 0;
  archive_detail::ReadRecordHeader(
      in, "`" + archive_path + "` @" + std::to_string(offset), &rows, &cols);
  return {rows, cols};
}

// Sequential reader over a data file; parses utt_ids inline.
class ArchiveReader {
 public:
  explicit ArchiveReader(const std::string &data_path)
      : path_(data_path), in_(data_path, std::ios::binary) {
    if (!in_)
      throw Error(ErrorCode::kIoError, "cannot open `" + data_path + "`");
  }

  // False at clean end of archive.
  bool Next(std::string *utt_id, FeatureMatrix *feats) {
    utt_id->clear();
    char c;
    while (in_.get(c)) {
      if (c == ' ') break;
      utt_id->push_back(c);
    }
    if (utt_id->empty() && in_.eof()) return false;
    if (in_.eof())
      throw Error(ErrorCode::kCorruptHeader,
                  "`" + path_ + "`: truncated utterance id");
    *feats = archive_detail::ReadBinaryRecord(in_, "`" + path_ + "`");
    feats->utt_id = *utt_id;
    return true;
  }

 private:
  std::string path_;
  std::ifstream in_;
};

}  // namespace spliceaug

#endif  // SPLICEAUG_ARCHIVE_HPP_
