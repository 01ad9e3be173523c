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
#include <memory>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "gazelab/tree.hpp"

namespace gazelab {

/// Pre-order flattening of a ParseTree with the bookkeeping the tree
/// relations need. Node 0 is the root. The tree must outlive the index.
class TreeIndex {
 public:
  struct Node {
    const ParseTree* tree = nullptr;
    int parent = -1;
    int child_rank = 0;     // position among the parent's children
    std::size_t end = 0;    // one past the last pre-order index in the subtree
    std::size_t first_leaf = 0;
    std::size_t last_leaf = 0;
  };

  explicit TreeIndex(const ParseTree& root);

  std::size_t size() const { return nodes_.size(); }
  const Node& operator[](std::size_t i) const { return nodes_[i]; }
  const std::string& label(std::size_t i) const { return nodes_[i].tree->label; }

  bool dominates(std::size_t a, std::size_t b) const {
    return b > a && b < nodes_[a].end;
  }
  bool immediately_dominates(std::size_t a, std::size_t b) const {
    return nodes_[b].parent == static_cast<int>(a);
  }
  bool sisters(std::size_t a, std::size_t b) const {
    return a != b && nodes_[a].parent >= 0 && nodes_[a].parent == nodes_[b].parent;
  }
  bool precedes(std::size_t a, std::size_t b) const {
    return nodes_[a].last_leaf < nodes_[b].first_leaf;
  }
  /// Number of leaves in the subtree of node i.
  std::size_t leaf_span(std::size_t i) const {
    return nodes_[i].last_leaf - nodes_[i].first_leaf + 1;
  }

 private:
  void build(const ParseTree& t, int parent, int rank, std::size_t& leaf);
  std::vector<Node> nodes_;
};

/// Node label test: `__` (any), `NP|VP` (alternatives), or `/regex/`.
class LabelPredicate {
 public:
  static LabelPredicate any();
  static LabelPredicate names(std::vector<std::string> alternatives);
  static LabelPredicate regex(const std::string& pattern);

  bool matches(std::string_view label) const;
  const std::string& source() const { return source_; }

 private:
  enum class Kind { kAny, kNames, kRegex };
  Kind kind_ = Kind::kAny;
  std::vector<std::string> names_;
  std::shared_ptr<const std::regex> regex_;
  std::string source_ = "__";
};

/// Relation from the constrained node A to a related node B.
enum class RelationOp {
  kImmediatelyDominates,    // A < B
  kDominates,               // A << B  (proper dominance)
  kImmediatelyDominatedBy,  // A > B
  kDominatedBy,             // A >> B
  kSisterOf,                // A $ B
  kLeftSisterOf,            // A $++ B  (A precedes its sister B)
  kRightSisterOf,           // A $-- B  (A follows its sister B)
  kPrecedes,                // A .. B  (A's yield ends before B's begins)
  kFollows,                 // A ,, B
};

struct TreePattern;

struct Relation {
  RelationOp op;
  bool negated = false;
  std::shared_ptr<const TreePattern> target;
};

/// A Tregex-style pattern: one target node predicate plus a conjunction of
/// (possibly negated) relations to other nodes, each described by a nested
/// pattern.
///
/// Grammar:
///   pattern  := desc relation*
///   relation := ['!'] op (desc | '(' pattern ')')
///   desc     := '__' | '/' regex '/' | label ('|' label)*
///   op       := '<' | '<<' | '>' | '>>' | '$' | '$++' | '$--' | '..' | ',,'
/// Relations attach to the outermost node of their pattern, so
/// `S < NP < VP` requires both children and `S < (VP < VBD)` nests.
struct TreePattern {
  LabelPredicate node = LabelPredicate::any();
  std::vector<Relation> relations;

  static TreePattern parse(std::string_view text);
  std::string to_string() const;
};

/// Pre-order indices of nodes where `pattern` matches. Each node appears at
/// most once.
std::vector<std::size_t> match_indices(const TreePattern& pattern,
                                       const TreeIndex& index);

/// Whether `pattern` matches at node `at`.
bool matches_at(const TreePattern& pattern, const TreeIndex& index,
                std::size_t at);

/// Matched nodes in pre-order.
std::vector<const ParseTree*> match(const TreePattern& pattern,
                                    const ParseTree& tree);

}  // namespace gazelab
