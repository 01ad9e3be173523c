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

#include "gazelab/gaze.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include "gazelab/csv.hpp"
#include "gazelab/error.hpp"

namespace gazelab {

namespace {
constexpr std::array<std::string_view, kMeasureCount> kMeasureNames = {
    "NFX", "MFD", "FXP", "FFD", "FPD", "TFD", "NRFX", "RRDP"};
}

std::string_view measure_name(std::size_t m) { return kMeasureNames.at(m); }

std::size_t measure_index(std::string_view name) {
  for (std::size_t m = 0; m < kMeasureCount; ++m) {
    if (kMeasureNames[m] == name) return m;
  }
  throw ValidationError("unknown eye-tracking measure '" + std::string(name) + "'");
}

std::vector<FixationEvent> read_fixations(std::istream& in) {
  const csv::Table t = csv::read(in);
  const std::size_t cp = t.column("participant"), cs = t.column("sentence_id"),
                    cw = t.column("word_index"), co = t.column("order"),
                    cd = t.column("duration_ms");
  std::vector<FixationEvent> out;
  out.reserve(t.rows.size());
  std::size_t line = 1;
  for (const auto& row : t.rows) {
    ++line;
    const long long w = csv::parse_int(row[cw], line);
    if (w < 0) throw ValidationError("line " + std::to_string(line) + ": negative word_index");
    out.push_back({row[cp], row[cs], static_cast<std::size_t>(w),
                   csv::parse_int(row[co], line), csv::parse_double(row[cd], line)});
  }
  return out;
}

std::vector<FixationEvent> read_fixations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_fixations(in);
}

WordInventory WordInventory::from_corpus(const std::vector<Document>& corpus) {
  WordInventory inv;
  for (const auto& d : corpus) {
    for (const auto& s : d.sentences) inv.add(s.id, s.tokens.size());
  }
  return inv;
}

void WordInventory::add(const std::string& sentence_id, std::size_t words) {
  if (!word_counts.emplace(sentence_id, words).second) {
    throw ValidationError("duplicate sentence id '" + sentence_id + "'");
  }
  sentence_ids.push_back(sentence_id);
}

std::size_t WordInventory::total_words() const {
  std::size_t n = 0;
  for (const auto& [id, c] : word_counts) n += c;
  return n;
}

std::set<std::string> participants_of(std::span<const FixationEvent> events) {
  std::set<std::string> out;
  for (const auto& e : events) out.insert(e.participant);
  return out;
}

GazeTargets aggregate(std::span<const FixationEvent> events,
                      const std::set<std::string>& participants,
                      const WordInventory& words, DurationAveraging averaging) {
  if (participants.empty()) throw ValidationError("aggregate: empty participant set");

  // Trials: (participant, sentence) -> fixations sorted by order.
  std::map<std::pair<std::string, std::string>, std::vector<const FixationEvent*>> trials;
  for (const auto& e : events) {
    const auto it = words.word_counts.find(e.sentence_id);
    if (it == words.word_counts.end()) {
      throw ValidationError("fixation on unknown sentence '" + e.sentence_id + "'");
    }
    if (e.word_index >= it->second) {
      throw ValidationError("word_index " + std::to_string(e.word_index) +
                            " out of range for sentence '" + e.sentence_id + "'");
    }
    if (!participants.count(e.participant)) {
      throw ValidationError("fixation by unknown participant '" + e.participant + "'");
    }
    if (!(e.duration_ms > 0)) {
      throw ValidationError("non-positive fixation duration in sentence '" +
                            e.sentence_id + "'");
    }
    trials[{e.participant, e.sentence_id}].push_back(&e);
  }

  struct PerWord {
    double nfx = 0, fixating = 0, rereading = 0;
    double mfd = 0, ffd = 0, fpd = 0, tfd = 0;
  };
  std::unordered_map<std::string, std::vector<PerWord>> acc;
  for (const auto& id : words.sentence_ids) acc[id].resize(words.word_counts.at(id));

  for (auto& [key, fix] : trials) {
    std::stable_sort(fix.begin(), fix.end(), [](const FixationEvent* a, const FixationEvent* b) {
      return a->order < b->order;
    });
    for (std::size_t i = 1; i < fix.size(); ++i) {
      if (fix[i]->order == fix[i - 1]->order) {
        throw ValidationError("repeated fixation order " + std::to_string(fix[i]->order) +
                              " for participant '" + key.first + "' in sentence '" +
                              key.second + "'");
      }
    }
    const std::size_t n_words = words.word_counts.at(key.second);
    std::vector<double> count(n_words, 0), first(n_words, 0), pass(n_words, 0), total(n_words, 0);
    std::vector<char> pass_closed(n_words, 0);
    std::ptrdiff_t current = -1;  // word of the previous fixation
    for (const FixationEvent* f : fix) {
      const std::size_t w = f->word_index;
      if (current >= 0 && static_cast<std::size_t>(current) != w && count[current] > 0) {
        pass_closed[current] = 1;
      }
      if (count[w] == 0) first[w] = f->duration_ms;
      if (!pass_closed[w]) pass[w] += f->duration_ms;
      count[w] += 1;
      total[w] += f->duration_ms;
      current = static_cast<std::ptrdiff_t>(w);
    }
    auto& per_word = acc[key.second];
    for (std::size_t w = 0; w < n_words; ++w) {
      if (count[w] == 0) continue;
      PerWord& pw = per_word[w];
      pw.nfx += count[w];
      pw.fixating += 1;
      pw.rereading += count[w] > 1;
      pw.ffd += first[w];
      pw.fpd += pass[w];
      pw.tfd += total[w];
      pw.mfd += total[w] / count[w];
    }
  }

  const double n_participants = static_cast<double>(participants.size());
  GazeTargets out;
  out.words.reserve(words.total_words());
  out.values.reserve(words.total_words());
  for (const auto& id : words.sentence_ids) {
    const auto& per_word = acc.at(id);
    for (std::size_t w = 0; w < per_word.size(); ++w) {
      const PerWord& pw = per_word[w];
      const double duration_den =
          averaging == DurationAveraging::kAllParticipants ? n_participants : pw.fixating;
      auto duration = [&](double sum) { return duration_den == 0 ? 0.0 : sum / duration_den; };
      MeasureValues v{};
      v[static_cast<std::size_t>(Measure::kNFX)] = pw.nfx / n_participants;
      v[static_cast<std::size_t>(Measure::kMFD)] = duration(pw.mfd);
      v[static_cast<std::size_t>(Measure::kFXP)] = pw.fixating / n_participants;
      v[static_cast<std::size_t>(Measure::kFFD)] = duration(pw.ffd);
      v[static_cast<std::size_t>(Measure::kFPD)] = duration(pw.fpd);
      v[static_cast<std::size_t>(Measure::kTFD)] = duration(pw.tfd);
      v[static_cast<std::size_t>(Measure::kNRFX)] = (pw.nfx - pw.fixating) / n_participants;
      v[static_cast<std::size_t>(Measure::kRRDP)] = pw.rereading / n_participants;
      out.words.push_back({id, w});
      out.values.push_back(v);
    }
  }
  return out;
}

// ------------------------------------------------------------------ scaling

ScalingParams fit_scaling(std::span<const MeasureValues> train) {
  if (train.empty()) throw ValidationError("fit_scaling: no training targets");
  ScalingParams p;
  p.min = p.max = train.front();
  for (const auto& v : train) {
    for (std::size_t m = 0; m < kMeasureCount; ++m) {
      p.min[m] = std::min(p.min[m], v[m]);
      p.max[m] = std::max(p.max[m], v[m]);
    }
  }
  return p;
}

MeasureValues apply_scaling(const MeasureValues& x, const ScalingParams& p) {
  MeasureValues out{};
  for (std::size_t m = 0; m < kMeasureCount; ++m) {
    const double range = p.max[m] - p.min[m];
    if (range <= 0) continue;
    out[m] = std::clamp(100.0 * (x[m] - p.min[m]) / range, 0.0, 100.0);
  }
  return out;
}

MeasureValues unscale(const MeasureValues& scaled, const ScalingParams& p) {
  MeasureValues out{};
  for (std::size_t m = 0; m < kMeasureCount; ++m) {
    out[m] = p.min[m] + scaled[m] / 100.0 * (p.max[m] - p.min[m]);
  }
  return out;
}

GazeTargets apply_scaling(const GazeTargets& raw, const ScalingParams& p) {
  GazeTargets out;
  out.words = raw.words;
  out.values.reserve(raw.values.size());
  for (const auto& v : raw.values) out.values.push_back(apply_scaling(v, p));
  return out;
}

// ------------------------------------------------------------ descriptives

std::array<Descriptive, kMeasureCount> describe(std::span<const MeasureValues> values) {
  if (values.empty()) throw ValidationError("describe: no values");
  std::array<Descriptive, kMeasureCount> table{};
  const double n = static_cast<double>(values.size());
  for (std::size_t m = 0; m < kMeasureCount; ++m) {
    Descriptive d;
    d.min = d.max = values.front()[m];
    double sum = 0;
    for (const auto& v : values) {
      sum += v[m];
      d.min = std::min(d.min, v[m]);
      d.max = std::max(d.max, v[m]);
    }
    d.mean = sum / n;
    double ss = 0;
    for (const auto& v : values) ss += (v[m] - d.mean) * (v[m] - d.mean);
    d.sd = values.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    table[m] = d;
  }
  return table;
}

void write_describe_csv(std::ostream& out,
                        const std::array<Descriptive, kMeasureCount>& table) {
  csv::write_row(out, {"Feature", "M", "SD", "Min", "Max"});
  for (std::size_t m = 0; m < kMeasureCount; ++m) {
    const auto& d = table[m];
    csv::write_row(out, {std::string(measure_name(m)), csv::format_double(d.mean),
                         csv::format_double(d.sd), csv::format_double(d.min),
                         csv::format_double(d.max)});
  }
}

void write_targets_csv(std::ostream& out, const GazeTargets& targets) {
  csv::Row header = {"sentence_id", "word_index"};
  for (auto n : kMeasureNames) header.emplace_back(n);
  csv::write_row(out, header);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    csv::Row row = {targets.words[i].sentence_id, std::to_string(targets.words[i].word_index)};
    for (double v : targets.values[i]) row.push_back(csv::format_double(v));
    csv::write_row(out, row);
  }
}

GazeTargets read_targets_csv(std::istream& in) {
  const csv::Table t = csv::read(in);
  const std::size_t cs = t.column("sentence_id"), cw = t.column("word_index");
  std::array<std::size_t, kMeasureCount> cols{};
  for (std::size_t m = 0; m < kMeasureCount; ++m) cols[m] = t.column(kMeasureNames[m]);
  GazeTargets out;
  std::size_t line = 1;
  for (const auto& row : t.rows) {
    ++line;
    out.words.push_back({row[cs], static_cast<std::size_t>(csv::parse_int(row[cw], line))});
    MeasureValues v{};
    for (std::size_t m = 0; m < kMeasureCount; ++m) v[m] = csv::parse_double(row[cols[m]], line);
    out.values.push_back(v);
  }
  return out;
}

GazeTargets read_targets_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_targets_csv(in);
}

}  // namespace gazelab
