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

#include "gazelab/tree_pattern.hpp"

#include <cctype>

#include "gazelab/error.hpp"

namespace gazelab {

TreeIndex::TreeIndex(const ParseTree& root) {
  nodes_.reserve(root.node_count());
  std::size_t leaf = 0;
  build(root, -1, 0, leaf);
}

void TreeIndex::build(const ParseTree& t, int parent, int rank,
                      std::size_t& leaf) {
  const std::size_t self = nodes_.size();
  nodes_.push_back(Node{&t, parent, rank, 0, leaf, leaf});
  if (t.is_leaf()) {
    ++leaf;
  } else {
    int r = 0;
    for (const auto& c : t.children) build(c, static_cast<int>(self), r++, leaf);
  }
  nodes_[self].end = nodes_.size();
  nodes_[self].last_leaf = leaf - 1;
}

// ---------------------------------------------------------------------------

LabelPredicate LabelPredicate::any() { return LabelPredicate{}; }

LabelPredicate LabelPredicate::names(std::vector<std::string> alternatives) {
  LabelPredicate p;
  p.kind_ = Kind::kNames;
  p.source_.clear();
  for (std::size_t i = 0; i < alternatives.size(); ++i) {
    if (i) p.source_ += '|';
    p.source_ += alternatives[i];
  }
  p.names_ = std::move(alternatives);
  return p;
}

LabelPredicate LabelPredicate::regex(const std::string& pattern) {
  LabelPredicate p;
  p.kind_ = Kind::kRegex;
  p.regex_ = std::make_shared<const std::regex>(pattern);
  p.source_ = "/" + pattern + "/";
  return p;
}

bool LabelPredicate::matches(std::string_view label) const {
  switch (kind_) {
    case Kind::kAny:
      return true;
    case Kind::kNames:
      for (const auto& n : names_) {
        if (n == label) return true;
      }
      return false;
    case Kind::kRegex:
      return std::regex_search(label.begin(), label.end(), *regex_);
  }
  return false;
}

// ---------------------------------------------------------------------------

namespace {

const char* op_text(RelationOp op) {
  switch (op) {
    case RelationOp::kImmediatelyDominates: return "<";
    case RelationOp::kDominates: return "<<";
    case RelationOp::kImmediatelyDominatedBy: return ">";
    case RelationOp::kDominatedBy: return ">>";
    case RelationOp::kSisterOf: return "$";
    case RelationOp::kLeftSisterOf: return "$++";
    case RelationOp::kRightSisterOf: return "$--";
    case RelationOp::kPrecedes: return "..";
    case RelationOp::kFollows: return ",,";
  }
  return "?";
}

bool holds(RelationOp op, const TreeIndex& ix, std::size_t a, std::size_t b) {
  switch (op) {
    case RelationOp::kImmediatelyDominates: return ix.immediately_dominates(a, b);
    case RelationOp::kDominates: return ix.dominates(a, b);
    case RelationOp::kImmediatelyDominatedBy: return ix.immediately_dominates(b, a);
    case RelationOp::kDominatedBy: return ix.dominates(b, a);
    case RelationOp::kSisterOf: return ix.sisters(a, b);
    case RelationOp::kLeftSisterOf:
      return ix.sisters(a, b) && ix[a].child_rank < ix[b].child_rank;
    case RelationOp::kRightSisterOf:
      return ix.sisters(a, b) && ix[a].child_rank > ix[b].child_rank;
    case RelationOp::kPrecedes: return ix.precedes(a, b);
    case RelationOp::kFollows: return ix.precedes(b, a);
  }
  return false;
}

class PatternReader {
 public:
  explicit PatternReader(std::string_view text) : text_(text) {}

  TreePattern read() {
    TreePattern p = read_pattern();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("tree pattern error at byte " + std::to_string(pos_ + 1) +
                         ": " + why,
                     pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  static bool name_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' &&
           c != ')' && c != '|';
  }

  LabelPredicate read_desc() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected node description");
    if (text_[pos_] == '/') {
      const std::size_t close = text_.find('/', pos_ + 1);
      if (close == std::string_view::npos) fail("unterminated regex");
      std::string re(text_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
      return LabelPredicate::regex(re);
    }
    std::vector<std::string> names;
    for (;;) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
      if (pos_ == start) fail("expected label");
      names.emplace_back(text_.substr(start, pos_ - start));
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        continue;
      }
      break;
    }
    if (names.size() == 1 && names.front() == "__") return LabelPredicate::any();
    return LabelPredicate::names(std::move(names));
  }

  bool starts_relation() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '!' || c == '<' || c == '>' || c == '$' || c == '.' || c == ',';
  }

  RelationOp read_op() {
    static constexpr std::pair<const char*, RelationOp> kOps[] = {
        {"<<", RelationOp::kDominates},
        {">>", RelationOp::kDominatedBy},
        {"$++", RelationOp::kLeftSisterOf},
        {"$--", RelationOp::kRightSisterOf},
        {"..", RelationOp::kPrecedes},
        {",,", RelationOp::kFollows},
        {"<", RelationOp::kImmediatelyDominates},
        {">", RelationOp::kImmediatelyDominatedBy},
        {"$", RelationOp::kSisterOf},
    };
    for (const auto& [text, op] : kOps) {
      const std::string_view t(text);
      if (text_.substr(pos_, t.size()) == t) {
        pos_ += t.size();
        return op;
      }
    }
    fail("unknown relation");
  }

  TreePattern read_pattern() {
    TreePattern p;
    p.node = read_desc();
    while (starts_relation()) {
      Relation r;
      if (text_[pos_] == '!') {
        r.negated = true;
        ++pos_;
        skip_space();
      }
      r.op = read_op();
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        ++pos_;
        r.target = std::make_shared<const TreePattern>(read_pattern());
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
        ++pos_;
      } else {
        TreePattern leaf;
        leaf.node = read_desc();
        r.target = std::make_shared<const TreePattern>(std::move(leaf));
      }
      p.relations.push_back(std::move(r));
    }
    return p;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

TreePattern TreePattern::parse(std::string_view text) {
  return PatternReader(text).read();
}

std::string TreePattern::to_string() const {
  std::string out = node.source();
  for (const auto& r : relations) {
    out += ' ';
    if (r.negated) out += '!';
    out += op_text(r.op);
    out += ' ';
    if (r.target->relations.empty()) {
      out += r.target->node.source();
    } else {
      out += '(' + r.target->to_string() + ')';
    }
  }
  return out;
}

bool matches_at(const TreePattern& pattern, const TreeIndex& index,
                std::size_t at) {
  if (!pattern.node.matches(index.label(at))) return false;
  for (const auto& rel : pattern.relations) {
    bool found = false;
    for (std::size_t b = 0; b < index.size() && !found; ++b) {
      found = holds(rel.op, index, at, b) && matches_at(*rel.target, index, b);
    }
    if (found == rel.negated) return false;
  }
  return true;
}

std::vector<std::size_t> match_indices(const TreePattern& pattern,
                                       const TreeIndex& index) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (matches_at(pattern, index, i)) out.push_back(i);
  }
  return out;
}

std::vector<const ParseTree*> match(const TreePattern& pattern,
                                    const ParseTree& tree) {
  const TreeIndex index(tree);
  std::vector<const ParseTree*> out;
  for (std::size_t i : match_indices(pattern, index)) out.push_back(index[i].tree);
  return out;
}

}  // namespace gazelab
