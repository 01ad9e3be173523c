// Copyright (c) 2026 The gazelab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gazelab/tree.hpp"

namespace gazelab {

struct Token {
  std::string form;
  std::string lemma;
  std::string pos;        // Penn Treebank tag
  int syllables = 0;      // 0 only for tokens without letters
  int char_len = 0;       // letters in `form`
  bool syllables_given = false;

  /// True for tokens that count as words: at least one letter or digit.
  bool is_word() const;

  friend bool operator==(const Token&, const Token&) = default;
};

struct AnnotatedSentence {
  std::string id;
  std::vector<Token> tokens;
  ParseTree parse;
  std::string doc_id;
  std::size_t index_in_doc = 0;

  /// Number of tokens for which is_word() holds.
  std::size_t word_count() const;

  friend bool operator==(const AnnotatedSentence&, const AnnotatedSentence&) = default;
};

/// Sentences in reading order.
struct Document {
  std::string id;
  std::vector<AnnotatedSentence> sentences;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Counts letters (ASCII letters plus every non-ASCII code point).
int count_letters(std::string_view form);

/// Orthographic syllable estimate: groups of vowels (a, e, i, o, u, y),
/// minus a silent final 'e', plus one for a consonant + "le" ending.
/// Never less than 1. Throws ValidationError when `word` has no letter.
int count_syllables(std::string_view word);

/// Builds a Token, filling syllables/char_len from the form.
Token make_token(std::string form, std::string lemma, std::string pos,
                 int syllables = 0);

/// Checks the sentence invariants (non-empty, leaf forms equal token forms)
/// and throws ValidationError naming the sentence id on failure.
void validate(const AnnotatedSentence& sentence);

/// Parses one JSON-lines record. `line_no` is used in error messages.
Document parse_document(std::string_view json_line, std::size_t line_no = 1);
std::string serialize_document(const Document& doc);

std::vector<Document> read_corpus(std::istream& in);
/// Loads a JSON-lines corpus file, one document per line. Throws
/// ParseError with the line number for malformed JSON and ValidationError
/// naming the sentence id for invariant violations.
std::vector<Document> load_corpus(const std::string& path);
void write_corpus(std::ostream& out, const std::vector<Document>& corpus);

std::size_t sentence_count(const std::vector<Document>& corpus);

/// Position of a sentence inside a corpus.
struct SentenceRef {
  std::size_t doc = 0;
  std::size_t sentence = 0;

  friend auto operator<=>(const SentenceRef&, const SentenceRef&) = default;
};

struct SplitRatios {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
};

enum class SplitMode { kRandom, kContiguous };

struct CorpusSplit {
  std::vector<SentenceRef> train;
  std::vector<SentenceRef> dev;
  std::vector<SentenceRef> test;
};

/// Part sizes: floor of each exact share, then the leftover sentences go
/// one each to the parts with the largest fractional remainders (earlier
/// parts win ties).
std::vector<std::size_t> split_sizes(std::size_t n, const SplitRatios& ratios);

/// Partitions all sentences. kRandom shuffles with `seed` first; kContiguous
/// keeps reading order so each part is a run of consecutive sentences.
CorpusSplit split(const std::vector<Document>& corpus, const SplitRatios& ratios,
                  std::uint64_t seed, SplitMode mode = SplitMode::kRandom);

}  // namespace gazelab
