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

#include "gazelab/corpus.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "gazelab/error.hpp"

namespace gazelab {

namespace {

bool is_ascii_letter(unsigned char c) { return std::isalpha(c) != 0; }

bool is_vowel(char c) {
  switch (c) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
      return true;
    default:
      return false;
  }
}

}  // namespace

bool Token::is_word() const {
  for (unsigned char c : form) {
    if (std::isalnum(c) || c >= 0x80) return true;
  }
  return false;
}

std::size_t AnnotatedSentence::word_count() const {
  std::size_t n = 0;
  for (const auto& t : tokens) n += t.is_word();
  return n;
}

int count_letters(std::string_view form) {
  int n = 0;
  for (unsigned char c : form) {
    // UTF-8 continuation bytes (10xxxxxx) do not start a code point.
    if (is_ascii_letter(c) || c >= 0xC0) ++n;
  }
  return n;
}

int count_syllables(std::string_view word) {
  std::string w;
  for (unsigned char c : word) {
    if (is_ascii_letter(c)) w += static_cast<char>(std::tolower(c));
  }
  if (w.empty()) {
    // Non-ASCII words still count as one syllable.
    if (count_letters(word) > 0) return 1;
    throw ValidationError("count_syllables: no letters in '" + std::string(word) + "'");
  }
  int groups = 0;
  bool in_group = false;
  for (char c : w) {
    const bool v = is_vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  const std::size_t n = w.size();
  if (n >= 2 && w[n - 1] == 'e') {
    const bool consonant_le = n >= 3 && w[n - 2] == 'l' && !is_vowel(w[n - 3]);
    if (consonant_le) {
      // "table", "little": the final "le" is its own syllable and was
      // already counted by the 'e' group.
    } else if (!is_vowel(w[n - 2])) {
      --groups;  // silent final e: "make", "time"
    }
  }
  return groups < 1 ? 1 : groups;
}

Token make_token(std::string form, std::string lemma, std::string pos,
                 int syllables) {
  Token t;
  t.form = std::move(form);
  t.lemma = std::move(lemma);
  t.pos = std::move(pos);
  t.char_len = count_letters(t.form);
  t.syllables_given = syllables > 0;
  if (syllables > 0) {
    t.syllables = syllables;
  } else if (t.char_len > 0) {
    t.syllables = count_syllables(t.form);
  } else if (t.is_word()) {
    t.syllables = 1;  // digits only
  }
  return t;
}

void validate(const AnnotatedSentence& s) {
  if (s.tokens.empty()) {
    throw ValidationError("sentence '" + s.id + "' has no tokens");
  }
  const auto leaves = s.parse.yield();
  if (leaves.size() != s.tokens.size()) {
    throw ValidationError("sentence '" + s.id + "': parse has " +
                          std::to_string(leaves.size()) + " leaves but " +
                          std::to_string(s.tokens.size()) + " tokens");
  }
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (s.tokens[i].form.empty()) {
      throw ValidationError("sentence '" + s.id + "': empty token form at " +
                            std::to_string(i));
    }
    if (unescape_ptb(leaves[i]) != unescape_ptb(s.tokens[i].form)) {
      throw ValidationError("sentence '" + s.id + "': leaf " + std::to_string(i) +
                            " '" + leaves[i] + "' does not match token '" +
                            s.tokens[i].form + "'");
    }
  }
}

Document parse_document(std::string_view json_line, std::size_t line_no) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_line);
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
  }
  Document doc;
  try {
    doc.id = j.at("id").get<std::string>();
    std::size_t index = 0;
    for (const auto& js : j.at("sentences")) {
      AnnotatedSentence s;
      s.id = js.at("id").get<std::string>();
      s.doc_id = doc.id;
      s.index_in_doc = index++;
      for (const auto& jt : js.at("tokens")) {
        const int syl = jt.contains("syl") ? jt.at("syl").get<int>() : 0;
        if (jt.contains("syl") && syl < 1) {
          throw ValidationError("sentence '" + s.id + "': syl must be >= 1");
        }
        s.tokens.push_back(make_token(jt.at("form").get<std::string>(),
                                      jt.value("lemma", std::string()),
                                      jt.value("pos", std::string()), syl));
      }
      try {
        s.parse = parse_ptb(js.at("parse").get<std::string>());
      } catch (const ParseError& e) {
        throw ValidationError("sentence '" + s.id + "': " + e.what());
      }
      validate(s);
      doc.sentences.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
  }
  return doc;
}

std::string serialize_document(const Document& doc) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["id"] = doc.id;
  j["sentences"] = ordered_json::array();
  for (const auto& s : doc.sentences) {
    ordered_json js;
    js["id"] = s.id;
    js["tokens"] = ordered_json::array();
    for (const auto& t : s.tokens) {
      ordered_json jt;
      jt["form"] = t.form;
      jt["lemma"] = t.lemma;
      jt["pos"] = t.pos;
      if (t.syllables_given) jt["syl"] = t.syllables;
      js["tokens"].push_back(std::move(jt));
    }
    js["parse"] = to_ptb(s.parse);
    j["sentences"].push_back(std::move(js));
  }
  return j.dump();
}

std::vector<Document> read_corpus(std::istream& in) {
  std::vector<Document> corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    corpus.push_back(parse_document(line, line_no));
  }
  return corpus;
}

std::vector<Document> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus " + path);
  return read_corpus(in);
}

void write_corpus(std::ostream& out, const std::vector<Document>& corpus) {
  for (const auto& d : corpus) out << serialize_document(d) << '\n';
}

std::size_t sentence_count(const std::vector<Document>& corpus) {
  std::size_t n = 0;
  for (const auto& d : corpus) n += d.sentences.size();
  return n;
}

}  // namespace gazelab
