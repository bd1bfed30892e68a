// spliceaug/syntax.hpp
//
// Sentence-pattern matching and word-order transposition for Mandarin
// transcripts. A tagged sentence is first matched against a small set of
// sentence patterns (subject/predicate/object/adverbial/attribute roles
// assigned in one deterministic left-to-right pass); a transposition rule
// then rewrites the word order and reports the token permutation, which
// downstream code uses to reorder the matching acoustic segments.
//
// Rules:
//   R1  switch subject and object (each moves with its attributes)
//   R2  object to the beginning of the sentence
//   R3  attribute block to the beginning of the sentence
//   R4  swap a sentence-final adjective/adverb pair
//   R5  predicate to the beginning of the sentence
//   R6  swap the two adjectives (when exactly two exist)
//   R7  adverbial block to the beginning of the sentence
//
// Sentences that do not fully match a pattern, or consist of a single noun
// or adjective, are never transposed.

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

#ifndef SPLICEAUG_SYNTAX_HPP_
#define SPLICEAUG_SYNTAX_HPP_

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "spliceaug/common.hpp"
#include "spliceaug/lexicon.hpp"

namespace spliceaug {

enum class SentenceRole {
  kSubject,
  kPredicate,
  kObject,
  kAdverbial,
  kAttribute,
  kSingleNoun,
  kSingleAdjective,
  kUnassigned,  // internal; never present in a successful match
};

enum class PatternId {
  kSvo,          // subject + predicate + object
  kSAdvAdvAdj,   // subject + adverbial(s) + predicate-adjective
  kSAdvVO,       // subject + adverbial(s) + predicate + object
  kLoneNoun,
  kLoneAdj,
  kNoPattern,
};

inline const char *PatternIdName(PatternId id) {
  switch (id) {
    case PatternId::kSvo: return "SVO";
    case PatternId::kSAdvAdvAdj: return "SAdvAdvAdj";
    case PatternId::kSAdvVO: return "SAdvVO";
    case PatternId::kLoneNoun: return "LoneNoun";
    case PatternId::kLoneAdj: return "LoneAdj";
    case PatternId::kNoPattern: return "NoPattern";
  }
  return "NoPattern";
}

struct PatternMatch {
  PatternId pattern_id = PatternId::kNoPattern;
  // roles[i] is the role of token i; covers all tokens unless NoPattern.
  std::vector<SentenceRole> roles;

  bool Transposable() const {
    return pattern_id == PatternId::kSvo ||
           pattern_id == PatternId::kSAdvAdvAdj ||
           pattern_id == PatternId::kSAdvVO;
  }
};

enum class SyntaxRule { kR1, kR2, kR3, kR4, kR5, kR6, kR7 };

inline const char *RuleName(SyntaxRule rule) {
  switch (rule) {
    case SyntaxRule::kR1: return "R1";
    case SyntaxRule::kR2: return "R2";
    case SyntaxRule::kR3: return "R3";
    case SyntaxRule::kR4: return "R4";
    case SyntaxRule::kR5: return "R5";
    case SyntaxRule::kR6: return "R6";
    case SyntaxRule::kR7: return "R7";
  }
  return "R1";
}

inline std::optional<SyntaxRule> ParseRule(std::string_view name) {
  for (SyntaxRule rule : {SyntaxRule::kR1, SyntaxRule::kR2, SyntaxRule::kR3,
                          SyntaxRule::kR4, SyntaxRule::kR5, SyntaxRule::kR6,
                          SyntaxRule::kR7}) {
    if (name == RuleName(rule)) return rule;
  }
  return std::nullopt;
}

// Comma list, e.g. "R1,R2,R3,R4". Deduplicated, kept in R1..R7 order.
inline std::vector<SyntaxRule> ParseRuleList(std::string_view list) {
  bool selected[7] = {};
  for (const std::string &name : SplitFields(list, ',')) {
    if (name.empty()) continue;
    std::optional<SyntaxRule> rule = ParseRule(name);
    if (!rule)
      throw Error(ErrorCode::kInvalidConfig, "unknown rule `" + name + "`");
    selected[static_cast<int>(*rule)] = true;
  }
  std::vector<SyntaxRule> rules;
  for (int i = 0; i < 7; ++i)
    if (selected[i]) rules.push_back(static_cast<SyntaxRule>(i));
  return rules;
}

// mapping[i] is the source token index placed at output position i.
struct TokenPermutation {
  std::vector<int32_t> mapping;

  bool IsIdentity() const {
    for (size_t i = 0; i < mapping.size(); ++i)
      if (mapping[i] != static_cast<int32_t>(i)) return false;
    return true;
  }

  bool IsBijection() const {
    std::vector<bool> seen(mapping.size(), false);
    for (int32_t m : mapping) {
      if (m < 0 || m >= static_cast<int32_t>(mapping.size()) || seen[m])
        return false;
      seen[m] = true;
    }
    return true;
  }

  // Permutation that applies `first` and then `second`.
  static TokenPermutation Compose(const TokenPermutation &first,
                                  const TokenPermutation &second) {
    TokenPermutation out;
    out.mapping.resize(second.mapping.size());
    for (size_t i = 0; i < second.mapping.size(); ++i)
      out.mapping[i] = first.mapping[second.mapping[i]];
    return out;
  }

  std::string ToString() const {
    std::string out;
    for (size_t i = 0; i < mapping.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(mapping[i]);
    }
    return out;
  }

  bool operator==(const TokenPermutation &) const = default;
};

// Role assignment, one left-to-right pass:
//   [attribute adjectives] subject [adverbials] predicate-verbs
//   [attribute adjectives] object            (object must end the sentence)
// or, with no verb, the adjective-predicate close:
//   [attribute adjectives] subject adverbial+ adjective
//   [attribute adjectives] subject adverbial* adjective adverb
// (the second form is the R4-swapped image of the first, so transposed
// sentences still match). Adverbial slots accept Adverb and TimeNoun tokens.
// Single-token sentences map to LoneNoun/LoneAdj; any leftover token or any
// Other tag yields NoPattern.
inline PatternMatch MatchPattern(const TaggedSentence &sentence) {
  const std::vector<Token> &toks = sentence.tokens;
  const size_t n = toks.size();
  PatternMatch none;
  if (n == 0) return none;
  for (const Token &t : toks)
    if (t.pos == PosTag::kOther) return none;

  if (n == 1) {
    if (IsNounLike(toks[0].pos))
      return {PatternId::kLoneNoun, {SentenceRole::kSingleNoun}};
    if (toks[0].pos == PosTag::kAdjective)
      return {PatternId::kLoneAdj, {SentenceRole::kSingleAdjective}};
    return none;
  }

  std::vector<SentenceRole> roles(n, SentenceRole::kUnassigned);
  size_t i = 0;

  // Subject, with any attribute adjectives directly in front of it.
  size_t attr_begin = i;
  while (i < n && toks[i].pos == PosTag::kAdjective) ++i;
  if (i >= n || !IsNounLike(toks[i].pos)) return none;
  for (size_t k = attr_begin; k < i; ++k) roles[k] = SentenceRole::kAttribute;
  roles[i] = SentenceRole::kSubject;
  ++i;

  // Adverbials between subject and predicate.
  size_t num_adverbials = 0;
  while (i < n &&
         (toks[i].pos == PosTag::kAdverb || toks[i].pos == PosTag::kTimeNoun)) {
    roles[i] = SentenceRole::kAdverbial;
    ++num_adverbials;
    ++i;
  }

  if (i < n && toks[i].pos == PosTag::kVerb) {
    // Verb compounds form one predicate block.
    while (i < n && toks[i].pos == PosTag::kVerb) {
      roles[i] = SentenceRole::kPredicate;
      ++i;
    }
    size_t obj_attr_begin = i;
    while (i < n && toks[i].pos == PosTag::kAdjective) ++i;
    if (i == n - 1 && IsNounLike(toks[i].pos)) {
      for (size_t k = obj_attr_begin; k < i; ++k)
        roles[k] = SentenceRole::kAttribute;
      roles[i] = SentenceRole::kObject;
      return {num_adverbials ? PatternId::kSAdvVO : PatternId::kSvo,
              std::move(roles)};
    }
    return none;
  }

  if (i < n && toks[i].pos == PosTag::kAdjective) {
    if (i == n - 1 && num_adverbials >= 1) {
      roles[i] = SentenceRole::kAttribute;
      return {PatternId::kSAdvAdvAdj, std::move(roles)};
    }
    if (i == n - 2 && toks[n - 1].pos == PosTag::kAdverb) {
      roles[i] = SentenceRole::kAttribute;
      roles[n - 1] = SentenceRole::kAdverbial;
      return {PatternId::kSAdvAdvAdj, std::move(roles)};
    }
  }
  return none;
}

struct SyntaxOptions {
  // Reproduces the adverbial-to-the-end variant of R7 instead of the
  // normative front placement. Off by default.
  bool r7_final = false;
};

namespace syntax_detail {

struct Block {
  size_t begin = 0;
  size_t end = 0;  // exclusive
  bool empty() const { return begin >= end; }
};

// Maximal run of `role` containing the role's first occurrence.
inline Block FindRoleRun(const std::vector<SentenceRole> &roles,
                         SentenceRole role) {
  for (size_t i = 0; i < roles.size(); ++i) {
    if (roles[i] == role) {
      size_t j = i;
      while (j < roles.size() && roles[j] == role) ++j;
      return {i, j};
    }
  }
  return {};
}

// A noun block moves together with the attribute adjectives attached in
// front of it.
inline Block WithLeadingAttributes(const std::vector<SentenceRole> &roles,
                                   Block block) {
  while (block.begin > 0 &&
         roles[block.begin - 1] == SentenceRole::kAttribute)
    --block.begin;
  return block;
}

inline void AppendRange(std::vector<int32_t> *order, size_t begin,
                        size_t end) {
  for (size_t i = begin; i < end; ++i)
    order->push_back(static_cast<int32_t>(i));
}

inline TaggedSentence Reorder(const TaggedSentence &sentence,
                              const std::vector<int32_t> &order) {
  TaggedSentence out;
  out.utt_id = sentence.utt_id;
  out.tokens.reserve(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    Token t = sentence.tokens[order[i]];
    t.index = static_cast<int32_t>(i);
    out.tokens.push_back(std::move(t));
  }
  return out;
}

}  // namespace syntax_detail

struct TransposedSentence {
  TaggedSentence sentence;
  TokenPermutation permutation;
};

// Applies one rule to a matched sentence. Returns nullopt when the rule's
// required roles are absent (expected, not fatal). The returned permutation
// maps output position -> source token index.
inline std::optional<TransposedSentence> ApplyRule(
    SyntaxRule rule, const PatternMatch &match, const TaggedSentence &sentence,
    const SyntaxOptions &options = {}) {
  using syntax_detail::AppendRange;
  using syntax_detail::Block;
  using syntax_detail::FindRoleRun;
  using syntax_detail::Reorder;
  using syntax_detail::WithLeadingAttributes;

  if (!match.Transposable()) return std::nullopt;
  const size_t n = sentence.tokens.size();
  if (match.roles.size() != n)
    throw Error(ErrorCode::kInvalidArgument,
                "pattern match does not cover the sentence");

  const std::vector<SentenceRole> &roles = match.roles;
  std::vector<int32_t> order;
  order.reserve(n);

  switch (rule) {
    case SyntaxRule::kR1: {
      Block subj = FindRoleRun(roles, SentenceRole::kSubject);
      Block obj = FindRoleRun(roles, SentenceRole::kObject);
      if (subj.empty() || obj.empty()) return std::nullopt;
      subj = WithLeadingAttributes(roles, subj);
      obj = WithLeadingAttributes(roles, obj);
      AppendRange(&order, obj.begin, obj.end);
      AppendRange(&order, subj.end, obj.begin);
      AppendRange(&order, subj.begin, subj.end);
      break;
    }
    case SyntaxRule::kR2: {
      Block obj = FindRoleRun(roles, SentenceRole::kObject);
      if (obj.empty()) return std::nullopt;
      obj = WithLeadingAttributes(roles, obj);
      AppendRange(&order, obj.begin, obj.end);
      AppendRange(&order, 0, obj.begin);
      AppendRange(&order, obj.end, n);
      break;
    }
    case SyntaxRule::kR3: {
      Block attr = FindRoleRun(roles, SentenceRole::kAttribute);
      if (attr.empty()) return std::nullopt;
      AppendRange(&order, attr.begin, attr.end);
      AppendRange(&order, 0, attr.begin);
      AppendRange(&order, attr.end, n);
      break;
    }
    case SyntaxRule::kR4: {
      // Sentence-final adjective/adverb pair, either order. Restricting the
      // swap to the last two tokens keeps the rule an involution.
      if (n < 2) return std::nullopt;
      PosTag a = sentence.tokens[n - 2].pos;
      PosTag b = sentence.tokens[n - 1].pos;
      bool pair = (a == PosTag::kAdverb && b == PosTag::kAdjective) ||
                  (a == PosTag::kAdjective && b == PosTag::kAdverb);
      if (!pair) return std::nullopt;
      AppendRange(&order, 0, n - 2);
      order.push_back(static_cast<int32_t>(n - 1));
      order.push_back(static_cast<int32_t>(n - 2));
      break;
    }
    case SyntaxRule::kR5: {
      Block pred = FindRoleRun(roles, SentenceRole::kPredicate);
      if (pred.empty()) return std::nullopt;
      AppendRange(&order, pred.begin, pred.end);
      AppendRange(&order, 0, pred.begin);
      AppendRange(&order, pred.end, n);
      break;
    }
    case SyntaxRule::kR6: {
      std::vector<size_t> adjectives;
      for (size_t i = 0; i < n; ++i)
        if (sentence.tokens[i].pos == PosTag::kAdjective)
          adjectives.push_back(i);
      if (adjectives.size() != 2) return std::nullopt;
      AppendRange(&order, 0, n);
      std::swap(order[adjectives[0]], order[adjectives[1]]);
      break;
    }
    case SyntaxRule::kR7: {
      Block adv = FindRoleRun(roles, SentenceRole::kAdverbial);
      if (adv.empty()) return std::nullopt;
      // Within a run of adverbials, tokens of one POS form the moved block
      // (a TimeNoun adverbial moves without dragging a following degree
      // adverb along).
      PosTag lead = sentence.tokens[adv.begin].pos;
      size_t end = adv.begin + 1;
      while (end < adv.end && sentence.tokens[end].pos == lead) ++end;
      adv.end = end;
      if (options.r7_final) {
        AppendRange(&order, 0, adv.begin);
        AppendRange(&order, adv.end, n);
        AppendRange(&order, adv.begin, adv.end);
      } else {
        AppendRange(&order, adv.begin, adv.end);
        AppendRange(&order, 0, adv.begin);
        AppendRange(&order, adv.end, n);
      }
      break;
    }
  }

  TokenPermutation perm{std::move(order)};
  return TransposedSentence{Reorder(sentence, perm.mapping), std::move(perm)};
}

struct Variant {
  SyntaxRule rule;
  TaggedSentence sentence;
  TokenPermutation permutation;
};

// Applies every selected rule to one sentence. Lone nouns/adjectives and
// unmatched sentences produce nothing; variants whose surface equals the
// original are dropped so augmented data never duplicates raw data.
inline std::vector<Variant> TransposeAll(const TaggedSentence &sentence,
                                         const std::vector<SyntaxRule> &rules,
                                         const SyntaxOptions &options = {}) {
  std::vector<Variant> variants;
  PatternMatch match = MatchPattern(sentence);
  if (!match.Transposable()) return variants;
  const std::string original = sentence.Text();
  for (SyntaxRule rule : rules) {
    std::optional<TransposedSentence> result =
        ApplyRule(rule, match, sentence, options);
    if (!result) continue;
    if (result->sentence.Text() == original) continue;
    variants.push_back(Variant{rule, std::move(result->sentence),
                               std::move(result->permutation)});
  }
  return variants;
}

}  // namespace spliceaug

#endif  // SPLICEAUG_SYNTAX_HPP_
