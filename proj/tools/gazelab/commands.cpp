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

#include "commands.hpp"

#include <fstream>

#include "gazelab/csv.hpp"
#include "gazelab/error.hpp"
#include "gazelab/eval.hpp"
#include "gazelab/parallel.hpp"
#include "gazelab/resources.hpp"
#include "io.hpp"

namespace gazelab::cli {

namespace {

using nlohmann::json;

std::vector<SentenceRef> all_sentences(const std::vector<Document>& corpus) {
  std::vector<SentenceRef> refs;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    for (std::size_t s = 0; s < corpus[d].sentences.size(); ++s) refs.push_back({d, s});
  }
  return refs;
}

const std::vector<SentenceRef>& part_of(const CorpusSplit& split, const std::string& part) {
  if (part == "train") return split.train;
  if (part == "dev") return split.dev;
  if (part == "test") return split.test;
  throw ValidationError("unknown split part '" + part + "' (expected train, dev or test)");
}

json metrics_json(const MetricReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json measures = json::object();
  for (std::size_t m = 0; m < kMeasureCount; ++m) {
    measures[std::string(measure_name(m))] = {{"mae", r.measures[m].mae},
                                              {"accuracy", r.measures[m].accuracy},
                                              {"r2", opt(r.measures[m].r2)}};
  }
  return {{"mae", r.mae}, {"accuracy", r.accuracy}, {"r2", opt(r.r2)}, {"words", r.words},
          {"measures", measures}};
}

// Examples for `refs` built with a trained bundle's scalers. `raw_targets`
// may be null.
std::vector<Example> bundle_examples(const ModelBundle& bundle, const std::vector<Document>& corpus,
                                     const std::unordered_map<std::string, FeatureVector>& features,
                                     const EmbeddingFile& embeddings,
                                     std::span<const SentenceRef> refs,
                                     const GazeTargets* raw_targets) {
  const auto contexts =
      build_contexts(corpus, features, bundle.features, bundle.model.config().context_window);
  if (!raw_targets) return make_examples(corpus, refs, embeddings, contexts, nullptr);
  const GazeTargets scaled = apply_scaling(*raw_targets, bundle.scaling);
  return make_examples(corpus, refs, embeddings, contexts, &scaled);
}

void write_targets(Outputs& out, const std::string& name, const GazeTargets& t) {
  out.write(name, [&](std::ostream& s) { write_targets_csv(s, t); });
}

}  // namespace

TrainConfig TrainArgs::train_config() const {
  TrainConfig c = preset(lm, fine_tuned, parse_variant(variant));
  if (epochs) c.phase1.epochs = *epochs;
  if (lr) c.phase1.peak_lr = *lr;
  if (warmup) c.phase1.warmup = *warmup;
  if (phase2_epochs) c.phase2.epochs = *phase2_epochs;
  if (phase2_lr) c.phase2.peak_lr = *phase2_lr;
  if (phase2_warmup) c.phase2.warmup = *phase2_warmup;
  if (batch_size) c.batch_size = *batch_size;
  if (weight_decay) c.weight_decay = *weight_decay;
  c.seed = seed;
  if (c.phase1.warmup == 0 || (c.phase2.epochs > 0 && c.phase2.warmup == 0)) {
    throw ValidationError("warmup must be at least one epoch");
  }
  if (c.batch_size == 0) throw ValidationError("batch size must be positive");
  if (c.weight_decay < 0) throw ValidationError("weight decay must be non-negative");
  return c;
}

ModelConfig TrainArgs::model_config(std::size_t embedding_dim) const {
  ModelConfig m;
  m.variant = parse_variant(variant);
  m.embedding_dim = embedding_dim;
  m.reduced_dim = reduced_dim;
  m.ctx_hidden = ctx_hidden;
  m.ctx_layers = ctx_layers;
  m.context_window = window;
  m.adaptation = fine_tuned;
  m.dropout = dropout;
  if (reduced_dim == 0 || ctx_hidden == 0 || ctx_layers == 0 || window == 0) {
    throw ValidationError("model dimensions and context window must be positive");
  }
  if (!(dropout >= 0 && dropout < 1)) throw ValidationError("dropout must be in [0, 1)");
  return m;
}

// ------------------------------------------------------------- data prep

void run_features(const Common& c, const FeaturesArgs& a) {
  const auto corpus = load_corpus(a.corpus);
  const auto resources = ResourceBundle::load(a.resources);
  resources.validate();
  std::vector<const AnnotatedSentence*> sentences;
  for (const auto& d : corpus) {
    for (const auto& s : d.sentences) sentences.push_back(&s);
  }
  std::vector<FeatureVector> rows(sentences.size());
  std::vector<std::string> ids;
  for (const auto* s : sentences) ids.push_back(s->id);
  parallel_for(sentences.size(), c.jobs,
               [&](std::size_t k) { rows[k] = extract(*sentences[k], resources); });

  Outputs out(c.out);
  out.write("features.csv", [&](std::ostream& s) { write_features_csv(s, ids, rows); });
  Manifest m("features extract");
  m.input("corpus", a.corpus);
  m.input("resources", a.resources);
  m.set("sentences", sentences.size());
  m.write(out);
  out.commit();
}

void run_gaze(const Common& c, const GazeArgs& a) {
  DurationAveraging averaging;
  if (a.averaging == "fixating") {
    averaging = DurationAveraging::kFixatingParticipants;
  } else if (a.averaging == "all") {
    averaging = DurationAveraging::kAllParticipants;
  } else {
    throw ValidationError("unknown averaging '" + a.averaging + "' (expected fixating or all)");
  }
  const auto corpus = load_corpus(a.corpus);
  const auto events = read_fixations(a.fixations);
  const auto participants = participants_of(events);
  const auto targets =
      aggregate(events, participants, WordInventory::from_corpus(corpus), averaging);

  Outputs out(c.out);
  write_targets(out, "targets.csv", targets);
  Manifest m("gaze aggregate");
  m.input("corpus", a.corpus);
  m.input("fixations", a.fixations);
  m.set("participants", participants.size());
  m.set("averaging", a.averaging);
  m.write(out);
  out.commit();
}

void run_split(const Common& c, const SplitArgs& a) {
  SplitMode mode;
  if (a.mode == "random") {
    mode = SplitMode::kRandom;
  } else if (a.mode == "contiguous") {
    mode = SplitMode::kContiguous;
  } else {
    throw ValidationError("unknown split mode '" + a.mode + "' (expected random or contiguous)");
  }
  const auto corpus = load_corpus(a.corpus);
  const auto parts = split(corpus, {a.train, a.dev, a.test}, a.seed, mode);

  Outputs out(c.out);
  out.write("split.csv", [&](std::ostream& s) { write_split_csv(s, corpus, parts); });
  Manifest m("split");
  m.input("corpus", a.corpus);
  m.set("seed", a.seed);
  m.set("mode", a.mode);
  m.set("sizes", {{"train", parts.train.size()}, {"dev", parts.dev.size()},
                  {"test", parts.test.size()}});
  m.write(out);
  out.commit();
}

void run_describe(const Common& c, const DescribeArgs& a) {
  const auto targets = read_targets_csv(a.targets);
  if (targets.size() < 2) throw ValidationError("describe needs at least two words");
  const auto table = describe(targets.values);
  Outputs out(c.out);
  out.write("describe.csv", [&](std::ostream& s) { write_describe_csv(s, table); });
  Manifest m("describe");
  m.input("targets", a.targets);
  m.write(out);
  out.commit();
}

// -------------------------------------------------------------- modelling

void run_train(const Common& c, const DataArgs& d, const TrainArgs& t) {
  const TrainConfig config = t.train_config();
  const auto corpus = load_corpus(d.corpus);
  const auto features = read_features_csv(d.features);
  const auto targets = read_targets_csv(d.targets);
  const auto embeddings = read_embeddings(fs::path(d.embeddings));
  const auto parts = read_split_csv(d.split, corpus);
  const ModelConfig model_config = t.model_config(embeddings.dim);
  const Dataset data =
      prepare_dataset(corpus, features, targets, embeddings, parts, model_config.context_window);

  ModelBundle bundle{HybridModel(model_config), data.scaling, data.features,
                     {{"lm", t.lm},
                      {"fine_tuned", t.fine_tuned ? "true" : "false"},
                      {"seed", std::to_string(t.seed)}}};
  bundle.model.init(t.seed);
  const TrainResult result = train(bundle.model, data.train, data.dev, config);

  Outputs out(c.out);
  save_checkpoint(out.dir() / "model.ckpt", bundle);
  out.adopt("model.ckpt");
  out.write("train_log.csv", [&](std::ostream& s) {
    csv::write_row(s, {"phase", "epoch", "lr", "train_mse", "dev_mse", "dev_mae"});
    for (const auto& e : result.log) {
      csv::write_row(s, {std::to_string(e.phase), std::to_string(e.epoch),
                         csv::format_double(e.lr), csv::format_double(e.train_loss),
                         csv::format_double(e.dev_loss), csv::format_double(e.dev_mae)});
    }
  });
  Manifest m("train");
  m.input("corpus", d.corpus);
  m.input("features", d.features);
  m.input("targets", d.targets);
  m.input("embeddings", d.embeddings);
  m.input("split", d.split);
  m.set("seed", t.seed);
  m.set("variant", t.variant);
  m.set("config", {{"phase1", {config.phase1.epochs, config.phase1.peak_lr, config.phase1.warmup}},
                   {"phase2", {config.phase2.epochs, config.phase2.peak_lr, config.phase2.warmup}},
                   {"batch_size", config.batch_size},
                   {"weight_decay", config.weight_decay}});
  m.set("best_epoch", result.best_epoch + 1);
  m.set("best_dev_mae", result.best_dev_mae);
  if (!data.test.empty()) {
    const auto report = metrics(predict_scaled(bundle.model, data.test, c.jobs),
                                target_rows(data.test));
    out.write("test_metrics.csv", [&](std::ostream& s) { write_metrics_csv(s, report); });
    m.set("test", metrics_json(report));
  }
  m.write(out);
  out.commit();
}

void run_predict(const Common& c, const PredictArgs& a) {
  const auto bundle = load_checkpoint(a.checkpoint);
  const auto corpus = load_corpus(a.corpus);
  const auto features = read_features_csv(a.features);
  const auto embeddings = read_embeddings(fs::path(a.embeddings));
  std::vector<SentenceRef> refs;
  if (a.split.empty()) {
    refs = all_sentences(corpus);
  } else {
    refs = part_of(read_split_csv(a.split, corpus), a.part);
  }
  const auto examples = bundle_examples(bundle, corpus, features, embeddings, refs, nullptr);
  const auto rows = predict(bundle, examples, c.jobs);
  GazeTargets scaled, raw;
  for (const auto& r : rows) {
    scaled.words.push_back(r.word);
    scaled.values.push_back(r.scaled);
    raw.words.push_back(r.word);
    raw.values.push_back(r.raw);
  }
  Outputs out(c.out);
  write_targets(out, "predictions.csv", scaled);
  write_targets(out, "predictions_raw.csv", raw);
  Manifest m("predict");
  m.input("checkpoint", a.checkpoint);
  m.input("corpus", a.corpus);
  m.input("features", a.features);
  m.input("embeddings", a.embeddings);
  if (!a.split.empty()) {
    m.input("split", a.split);
    m.set("part", a.part);
  }
  m.set("words", rows.size());
  m.write(out);
  out.commit();
}

// ---------------------------------------------------------------- analysis

namespace {

struct Aligned {
  GazeTargets target;
  std::vector<MeasureValues> pred;
};

Aligned load_aligned(const MetricsArgs& a) {
  Aligned out{read_targets_csv(a.target), {}};
  if (!a.checkpoint.empty()) {
    out.target = apply_scaling(out.target, load_checkpoint(a.checkpoint).scaling);
  }
  out.pred = align_rows(out.target, read_targets_csv(a.pred), a.pred);
  return out;
}

void describe_inputs(Manifest& m, const MetricsArgs& a) {
  m.input("predictions", a.pred);
  m.input("targets", a.target);
  if (!a.checkpoint.empty()) m.input("checkpoint", a.checkpoint);
}

}  // namespace

void run_metrics(const Common& c, const MetricsArgs& a) {
  const auto data = load_aligned(a);
  const auto report = metrics(data.pred, data.target.values);
  Outputs out(c.out);
  out.write("metrics.csv", [&](std::ostream& s) { write_metrics_csv(s, report); });
  Manifest m("eval metrics");
  describe_inputs(m, a);
  m.set("metrics", metrics_json(report));
  m.write(out);
  out.commit();
}

void run_deciles(const Common& c, const MetricsArgs& a) {
  const auto data = load_aligned(a);
  const auto errors = sentence_mae(data.target.words, data.pred, data.target.values);
  const auto features = read_features_csv(a.features);
  std::vector<FeatureVector> rows;
  std::vector<double> mae;
  for (const auto& e : errors) {
    const auto it = features.find(e.sentence_id);
    if (it == features.end()) {
      throw ValidationError("no feature vector for sentence '" + e.sentence_id + "'");
    }
    rows.push_back(it->second);
    mae.push_back(e.mae);
  }
  const auto table = decile_table(rows, mae);
  Outputs out(c.out);
  out.write("deciles.csv", [&](std::ostream& s) { write_decile_csv(s, table); });
  out.write("sentence_mae.csv", [&](std::ostream& s) {
    csv::write_row(s, {"sentence_id", "mae"});
    for (const auto& e : errors) csv::write_row(s, {e.sentence_id, csv::format_double(e.mae)});
  });
  Manifest m("eval deciles");
  describe_inputs(m, a);
  m.input("features", a.features);
  std::size_t notable = 0;
  for (const auto& r : table) notable += r.notable;
  m.set("sentences", errors.size());
  m.set("notable_features", notable);
  m.write(out);
  out.commit();
}

void run_ablate(const Common& c, const DataArgs& d, const TrainArgs& t, const ExplainArgs& e) {
  const auto bundle = load_checkpoint(e.checkpoint);
  const auto corpus = load_corpus(d.corpus);
  const auto features = read_features_csv(d.features);
  const auto targets = read_targets_csv(d.targets);
  const auto embeddings = read_embeddings(fs::path(d.embeddings));
  const auto parts = read_split_csv(d.split, corpus);
  auto examples = [&](const std::vector<SentenceRef>& refs) {
    return bundle_examples(bundle, corpus, features, embeddings, refs, &targets);
  };
  const auto test = examples(part_of(parts, e.part));
  AblationOptions options;
  options.jobs = c.jobs;
  std::vector<Example> train_set, dev_set;
  if (e.retrain) {
    train_set = examples(parts.train);
    dev_set = examples(parts.dev);
    options.retrain = true;
    options.train_set = train_set;
    options.dev_set = dev_set;
    options.train_config = t.train_config();
    options.init_seed = t.seed;
  }
  const auto report = ablate_groups(bundle.model, test, options);

  Outputs out(c.out);
  out.write("ablation.csv", [&](std::ostream& s) { write_ablation_csv(s, report); });
  Manifest m("eval ablate");
  m.input("checkpoint", e.checkpoint);
  m.input("corpus", d.corpus);
  m.input("features", d.features);
  m.input("targets", d.targets);
  m.input("embeddings", d.embeddings);
  m.input("split", d.split);
  m.set("part", e.part);
  m.set("mode", e.retrain ? "retrain" : "zero-mask");
  if (e.retrain) m.set("seed", t.seed);
  json drops = json::object();
  for (std::size_t g = 0; g < kFeatureGroups.size(); ++g) {
    drops[std::string(group_name(kFeatureGroups[g]))] = report.drop[g];
  }
  m.set("full_r2", report.full_r2);
  m.set("r2_drop", drops);
  m.set("most_important", std::string(group_name(kFeatureGroups[report.most_important])));
  m.write(out);
  out.commit();
}

void run_splime(const Common& c, const DataArgs& d, const ExplainArgs& e) {
  const auto bundle = load_checkpoint(e.checkpoint);
  const auto corpus = load_corpus(d.corpus);
  const auto features = read_features_csv(d.features);
  const auto embeddings = read_embeddings(fs::path(d.embeddings));
  const auto refs = d.split.empty() ? all_sentences(corpus)
                                    : part_of(read_split_csv(d.split, corpus), e.part);
  const auto examples = bundle_examples(bundle, corpus, features, embeddings, refs, nullptr);
  const auto local = lime_model(bundle.model, examples, {e.samples, e.seed}, c.jobs);
  const auto importance = splime_global(local);

  Outputs out(c.out);
  out.write("splime.csv", [&](std::ostream& s) {
    csv::write_row(s, {"group", "importance"});
    for (std::size_t g = 0; g < kFeatureGroups.size(); ++g) {
      csv::write_row(s, {std::string(group_name(kFeatureGroups[g])),
                         csv::format_double(importance[g])});
    }
  });
  out.write("lime_local.csv", [&](std::ostream& s) {
    csv::Row header = {"sentence_id", "measure", "intercept"};
    for (auto g : kFeatureGroups) header.emplace_back(group_name(g));
    csv::write_row(s, header);
    for (std::size_t k = 0; k < local.size(); ++k) {
      const auto& ex = local[k];
      csv::Row r = {examples[k / kMeasureCount].sentence_id,
                    std::string(measure_name(k % kMeasureCount)),
                    csv::format_double(ex.intercept)};
      for (double w : ex.coefficients) r.push_back(csv::format_double(w));
      csv::write_row(s, r);
    }
  });
  Manifest m("eval splime");
  m.input("checkpoint", e.checkpoint);
  m.input("corpus", d.corpus);
  m.input("features", d.features);
  m.input("embeddings", d.embeddings);
  if (!d.split.empty()) {
    m.input("split", d.split);
    m.set("part", e.part);
  }
  m.set("seed", e.seed);
  m.set("samples", e.samples);
  m.set("kernel_width", lime_kernel_width(kFeatureGroups.size()));
  m.write(out);
  out.commit();
}

}  // namespace gazelab::cli
