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

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "gazelab/corpus.hpp"
#include "gazelab/eval.hpp"
#include "gazelab/features.hpp"
#include "gazelab/gaze.hpp"

namespace gazelab::cli {

namespace fs = std::filesystem;

// ------------------------------------------------------------ table files

/// `sentence_id,<107 feature names>`.
void write_features_csv(std::ostream& out, const std::vector<std::string>& ids,
                        const std::vector<FeatureVector>& rows);
std::unordered_map<std::string, FeatureVector> read_features_csv(const fs::path& path);

/// `sentence_id,part` with part in train|dev|test.
void write_split_csv(std::ostream& out, const std::vector<Document>& corpus,
                     const CorpusSplit& split);
CorpusSplit read_split_csv(const fs::path& path, const std::vector<Document>& corpus);

/// Rows of `path` joined to `reference` on (sentence_id, word_index), in
/// reference order. Throws ValidationError when a word is missing.
std::vector<MeasureValues> align_rows(const GazeTargets& reference, const GazeTargets& other,
                                      const std::string& what);

// ---------------------------------------------------------------- outputs

/// Files written by one command. Each file is staged next to its final
/// name and renamed on success; abort() removes everything written.
class Outputs {
 public:
  explicit Outputs(fs::path dir);
  ~Outputs();

  const fs::path& dir() const { return dir_; }

  /// Writes `name` through `fill`; the file appears only when fill returns.
  void write(const std::string& name, const std::function<void(std::ostream&)>& fill);
  /// Registers a file written by other means (already in place).
  void adopt(const std::string& name);

  void commit() { committed_ = true; }
  const std::vector<std::string>& names() const { return names_; }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
  bool created_dir_ = false;
  bool committed_ = false;
};

/// manifest.json contents.
class Manifest {
 public:
  explicit Manifest(std::string command);

  /// Records a file (sha256) or a directory (sha256 over its sorted files).
  void input(const std::string& role, const fs::path& path);
  void set(const std::string& key, nlohmann::json value) { doc_[key] = std::move(value); }

  void write(Outputs& outputs);

 private:
  nlohmann::json doc_;
};

std::string hash_path(const fs::path& path);

}  // namespace gazelab::cli
