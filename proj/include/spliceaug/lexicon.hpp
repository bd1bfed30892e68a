// spliceaug/lexicon.hpp
//
// Dictionary-driven word segmentation and part-of-speech tagging for
// Mandarin transcripts. Segmentation is forward maximum matching over a
// user-supplied lexicon; characters not covered by the lexicon fall back to
// single-character out-of-vocabulary words tagged Other. Externally tagged
// text (one word/TAG pair per token) can be ingested through a configurable
// tagset mapping instead.

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

#ifndef SPLICEAUG_LEXICON_HPP_
#define SPLICEAUG_LEXICON_HPP_

#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "spliceaug/common.hpp"

namespace spliceaug {

enum class PosTag {
  kNoun,
  kPronoun,
  kTimeNoun,
  kVerb,
  kAdjective,
  kAdverb,
  kOther,
};

inline const char *PosTagName(PosTag tag) {
  switch (tag) {
    case PosTag::kNoun: return "Noun";
    case PosTag::kPronoun: return "Pronoun";
    case PosTag::kTimeNoun: return "TimeNoun";
    case PosTag::kVerb: return "Verb";
    case PosTag::kAdjective: return "Adjective";
    case PosTag::kAdverb: return "Adverb";
    case PosTag::kOther: return "Other";
  }
  return "Other";
}

inline std::optional<PosTag> ParsePosTag(std::string_view name) {
  if (name == "Noun") return PosTag::kNoun;
  if (name == "Pronoun") return PosTag::kPronoun;
  if (name == "TimeNoun") return PosTag::kTimeNoun;
  if (name == "Verb") return PosTag::kVerb;
  if (name == "Adjective") return PosTag::kAdjective;
  if (name == "Adverb") return PosTag::kAdverb;
  if (name == "Other") return PosTag::kOther;
  return std::nullopt;
}

// Pronoun and TimeNoun fill noun slots in the sentence patterns.
inline bool IsNounLike(PosTag tag) {
  return tag == PosTag::kNoun || tag == PosTag::kPronoun ||
         tag == PosTag::kTimeNoun;
}

struct Token {
  std::string surface;
  PosTag pos = PosTag::kOther;
  int32_t index = 0;

  bool operator==(const Token &) const = default;
};

struct TaggedSentence {
  std::string utt_id;
  std::vector<Token> tokens;

  // Whitespace-free transcript: concatenation of surfaces in index order.
  std::string Text() const {
    std::string out;
    for (const Token &t : tokens) out += t.surface;
    return out;
  }

  bool operator==(const TaggedSentence &) const = default;
};

// Word -> ordered tag list (first entry wins at tagging time).
struct Lexicon {
  std::unordered_map<std::string, std::vector<PosTag>> entries;
  size_t max_word_len = 0;  // characters, not bytes

  const std::vector<PosTag> *Find(const std::string &word) const {
    auto it = entries.find(word);
    return it == entries.end() ? nullptr : &it->second;
  }
};

// Lexicon file: `word<TAB>tag[,tag...]`, `#` comments, UTF-8.
// Duplicate words merge tag lists, keeping first-seen order.
inline Lexicon LoadLexicon(std::istream &in) {
  Lexicon lex;
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = TrimCr(raw);
    if (line.empty() || line.front() == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 >= line.size())
      throw Error(ErrorCode::kMalformedLine,
                  "lexicon line " + std::to_string(line_no) +
                      ": expected `word<TAB>tag[,tag...]`");
    std::string word(line.substr(0, tab));
    std::vector<PosTag> tags;
    for (const std::string &name : SplitFields(line.substr(tab + 1), ',')) {
      std::optional<PosTag> tag = ParsePosTag(name);
      if (!tag)
        throw Error(ErrorCode::kUnknownTag, "lexicon line " +
                                                std::to_string(line_no) +
                                                ": unknown tag `" + name + "`");
      tags.push_back(*tag);
    }
    auto [it, inserted] = lex.entries.try_emplace(word, tags);
    if (!inserted) {
      for (PosTag t : tags) {
        bool seen = false;
        for (PosTag have : it->second) seen = seen || have == t;
        if (!seen) it->second.push_back(t);
      }
    }
    lex.max_word_len = std::max(lex.max_word_len, Utf8Length(word));
  }
  if (lex.entries.empty())
    throw Error(ErrorCode::kEmptyLexicon, "lexicon has no entries");
  return lex;
}

inline Lexicon LoadLexiconFromString(const std::string &text) {
  std::istringstream in(text);
  return LoadLexicon(in);
}

// Forward maximum matching. Whitespace is stripped first (Mandarin text is
// unspaced); at each position the longest lexicon word wins, and a position
// with no match emits its single character as an OOV word. The concatenated
// output always equals the stripped input.
inline std::vector<std::string> Segment(std::string_view text,
                                        const Lexicon &lexicon) {
  std::string stripped = StripWhitespace(text);
  std::vector<std::string_view> chars = Utf8Chars(stripped);
  std::vector<std::string> words;
  size_t i = 0;
  while (i < chars.size()) {
    size_t limit = std::min(lexicon.max_word_len, chars.size() - i);
    size_t best = 0;
    for (size_t len = limit; len >= 1; --len) {
      size_t bytes = 0;
      for (size_t k = 0; k < len; ++k) bytes += chars[i + k].size();
      std::string candidate(chars[i].data(), bytes);
      if (lexicon.entries.count(candidate)) {
        best = len;
        words.push_back(std::move(candidate));
        break;
      }
    }
    if (best == 0) {
      words.emplace_back(chars[i]);
      best = 1;
    }
    i += best;
  }
  return words;
}

// First lexicon tag wins; OOV words get Other.
inline TaggedSentence Tag(const std::vector<std::string> &words,
                          const Lexicon &lexicon,
                          const std::string &utt_id = "") {
  TaggedSentence sentence;
  sentence.utt_id = utt_id;
  sentence.tokens.reserve(words.size());
  for (size_t i = 0; i < words.size(); ++i) {
    const std::vector<PosTag> *tags = lexicon.Find(words[i]);
    PosTag pos = tags ? tags->front() : PosTag::kOther;
    sentence.tokens.push_back(
        Token{words[i], pos, static_cast<int32_t>(i)});
  }
  return sentence;
}

inline TaggedSentence SegmentAndTag(std::string_view text,
                                    const Lexicon &lexicon,
                                    const std::string &utt_id = "") {
  return Tag(Segment(text, lexicon), lexicon, utt_id);
}

// External tag name -> PosTag. Used when ingesting pre-tagged text.
using TagsetMap = std::map<std::string, PosTag>;

// CTB-style defaults plus identity entries for our own tag names, so files
// produced by SerializeTagged() round-trip.
inline TagsetMap DefaultTagsetMap() {
  TagsetMap map;
  map["NN"] = PosTag::kNoun;
  map["PN"] = PosTag::kPronoun;
  map["NT"] = PosTag::kTimeNoun;
  map["VV"] = PosTag::kVerb;
  map["VA"] = PosTag::kAdjective;
  map["JJ"] = PosTag::kAdjective;
  map["AD"] = PosTag::kAdverb;
  map["Noun"] = PosTag::kNoun;
  map["Pronoun"] = PosTag::kPronoun;
  map["TimeNoun"] = PosTag::kTimeNoun;
  map["Verb"] = PosTag::kVerb;
  map["Adjective"] = PosTag::kAdjective;
  map["Adverb"] = PosTag::kAdverb;
  map["Other"] = PosTag::kOther;
  return map;
}

// Mapping file: `external_tag<TAB>internal_tag`, `#` comments.
inline TagsetMap LoadTagsetMap(std::istream &in) {
  TagsetMap map;
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = TrimCr(raw);
    if (line.empty() || line.front() == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 >= line.size())
      throw Error(ErrorCode::kMalformedLine,
                  "tagset map line " + std::to_string(line_no));
    std::optional<PosTag> tag = ParsePosTag(line.substr(tab + 1));
    if (!tag)
      throw Error(ErrorCode::kUnknownTag,
                  "tagset map line " + std::to_string(line_no) +
                      ": unknown internal tag");
    map[std::string(line.substr(0, tab))] = *tag;
  }
  return map;
}

// Tagged-text line: `utt_id<TAB>word/TAG word/TAG ...`. The tag is taken
// after the last `/` so surfaces containing slashes survive. Tags missing
// from the map fall back to Other.
inline TaggedSentence ParseTagged(std::string_view line,
                                  const TagsetMap &map) {
  line = TrimCr(line);
  size_t tab = line.find('\t');
  if (tab == std::string_view::npos || tab + 1 >= line.size())
    throw Error(ErrorCode::kEmptyTranscript,
                "tagged line has no transcript: `" + std::string(line) + "`");
  TaggedSentence sentence;
  sentence.utt_id = std::string(line.substr(0, tab));
  std::vector<std::string> pairs = SplitWhitespace(line.substr(tab + 1));
  if (pairs.empty())
    throw Error(ErrorCode::kEmptyTranscript,
                "tagged line has no tokens: `" + sentence.utt_id + "`");
  for (const std::string &pair : pairs) {
    size_t slash = pair.rfind('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 >= pair.size())
      throw Error(ErrorCode::kMalformedToken,
                  "token `" + pair + "` in `" + sentence.utt_id +
                      "` is not word/TAG");
    std::string surface = pair.substr(0, slash);
    std::string tag_name = pair.substr(slash + 1);
    auto it = map.find(tag_name);
    PosTag pos = it == map.end() ? PosTag::kOther : it->second;
    sentence.tokens.push_back(
        Token{surface, pos, static_cast<int32_t>(sentence.tokens.size())});
  }
  return sentence;
}

inline TaggedSentence ParseTagged(std::string_view line) {
  static const TagsetMap kDefault = DefaultTagsetMap();
  return ParseTagged(line, kDefault);
}

inline std::string SerializeTagged(const TaggedSentence &sentence) {
  std::string out = sentence.utt_id;
  out += '\t';
  for (size_t i = 0; i < sentence.tokens.size(); ++i) {
    if (i) out += ' ';
    out += sentence.tokens[i].surface;
    out += '/';
    out += PosTagName(sentence.tokens[i].pos);
  }
  return out;
}

}  // namespace spliceaug

#endif  // SPLICEAUG_LEXICON_HPP_
