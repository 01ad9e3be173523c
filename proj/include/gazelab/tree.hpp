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
#include <string>
#include <string_view>
#include <vector>

namespace gazelab {

/// Constituency tree node. A node without children is a leaf whose label is
/// the terminal form; a node whose only child is a leaf is a preterminal
/// (its label is the part-of-speech tag).
struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;

  bool is_leaf() const { return children.empty(); }
  bool is_preterminal() const {
    return children.size() == 1 && children.front().is_leaf();
  }

  std::size_t leaf_count() const;
  std::size_t node_count() const;
  /// Leaf labels in left-to-right order.
  std::vector<std::string> yield() const;

  friend bool operator==(const ParseTree&, const ParseTree&) = default;
};

/// Parses one Penn Treebank bracketed tree, e.g.
/// "(S (NP (DT The) (NN cat)) (VP (VBD sat)))". The outermost label may be
/// empty, as in CoreNLP's "( (S ...))". Throws ParseError whose position()
/// is the 1-based byte position of the offending character (input length + 1
/// when the text ends early).
ParseTree parse_ptb(std::string_view text);

/// Canonical single-line bracketed form: one space between siblings.
std::string to_ptb(const ParseTree& tree);

/// Maps PTB bracket escapes (-LRB-, -RRB-, ...) back to the raw characters.
std::string unescape_ptb(std::string_view form);

}  // namespace gazelab
