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

#include "gazelab/tree.hpp"

#include <cctype>

#include "gazelab/error.hpp"

namespace gazelab {

std::size_t ParseTree::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

std::size_t ParseTree::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

namespace {

void collect_yield(const ParseTree& t, std::vector<std::string>& out) {
  if (t.is_leaf()) {
    out.push_back(t.label);
    return;
  }
  for (const auto& c : t.children) collect_yield(c, out);
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }

class PtbReader {
 public:
  explicit PtbReader(std::string_view text) : text_(text) {}

  ParseTree read_tree() {
    skip_space();
    if (pos_ >= text_.size()) fail("empty tree");
    ParseTree tree = read_node();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters after tree");
    return tree;
  }

 private:
  // Positions are reported 1-based, so a missing ')' at the end of "(S (NP"
  // is byte 7.
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("PTB parse error at byte " + std::to_string(pos_ + 1) +
                         ": " + why,
                     pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string read_atom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  ParseTree read_node() {
    if (text_[pos_] != '(') fail("expected '('");
    ++pos_;
    skip_space();
    ParseTree node;
    if (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')') {
      node.label = read_atom();
    }
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) fail("unexpected end of input");
      const char c = text_[pos_];
      if (c == ')') {
        if (node.children.empty()) fail("node without children");
        ++pos_;
        return node;
      }
      if (c == '(') {
        node.children.push_back(read_node());
      } else {
        node.children.push_back(ParseTree{read_atom(), {}});
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print(const ParseTree& t, std::string& out) {
  if (t.is_leaf()) {
    out += t.label;
    return;
  }
  out += '(';
  out += t.label;
  for (const auto& c : t.children) {
    out += ' ';
    print(c, out);
  }
  out += ')';
}

}  // namespace

std::vector<std::string> ParseTree::yield() const {
  std::vector<std::string> out;
  collect_yield(*this, out);
  return out;
}

ParseTree parse_ptb(std::string_view text) { return PtbReader(text).read_tree(); }

std::string to_ptb(const ParseTree& tree) {
  std::string out;
  print(tree, out);
  return out;
}

std::string unescape_ptb(std::string_view form) {
  if (form == "-LRB-") return "(";
  if (form == "-RRB-") return ")";
  if (form == "-LCB-") return "{";
  if (form == "-RCB-") return "}";
  if (form == "-LSB-") return "[";
  if (form == "-RSB-") return "]";
  return std::string(form);
}

}  // namespace gazelab
