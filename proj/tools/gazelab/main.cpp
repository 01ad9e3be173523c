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

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "gazelab/error.hpp"

using namespace gazelab;
using namespace gazelab::cli;

namespace {

constexpr int kValidationExit = 2;
constexpr int kRuntimeExit = 3;

int report(const char* kind, const std::string& message, int code) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << "\n";
  return code;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-o,--out", c.out, "Output directory")->capture_default_str();
  cmd->add_option("-j,--jobs", c.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_data(CLI::App* cmd, DataArgs& d, bool targets, bool split_required) {
  cmd->add_option("--corpus", d.corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  cmd->add_option("--features", d.features, "features.csv")->required()->check(CLI::ExistingFile);
  if (targets) {
    cmd->add_option("--targets", d.targets, "Raw targets.csv")
        ->required()
        ->check(CLI::ExistingFile);
  }
  cmd->add_option("--embeddings", d.embeddings, "EMB1 file")->required()->check(CLI::ExistingFile);
  auto* split = cmd->add_option("--split", d.split, "split.csv")->check(CLI::ExistingFile);
  if (split_required) split->required();
}

void add_training(CLI::App* cmd, TrainArgs& t) {
  cmd->add_option("--variant", t.variant, "baseline | hybrid")
      ->check(CLI::IsMember({"baseline", "hybrid"}))
      ->capture_default_str();
  cmd->add_option("--lm", t.lm, "Embedding source preset: bert | gpt2")
      ->check(CLI::IsMember({"bert", "gpt2"}))
      ->capture_default_str();
  cmd->add_flag("--fine-tuned", t.fine_tuned,
                "Fine-tuned preset: two phases and a trainable adaptation layer");
  cmd->add_option("--seed", t.seed, "Initialization and shuffling seed")->capture_default_str();
  cmd->add_option("--epochs", t.epochs, "Phase 1 epochs");
  cmd->add_option("--lr", t.lr, "Phase 1 peak learning rate")->check(CLI::PositiveNumber);
  cmd->add_option("--warmup", t.warmup, "Phase 1 warmup epochs");
  cmd->add_option("--phase2-epochs", t.phase2_epochs, "Phase 2 epochs");
  cmd->add_option("--phase2-lr", t.phase2_lr, "Phase 2 peak learning rate")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--phase2-warmup", t.phase2_warmup, "Phase 2 warmup epochs");
  cmd->add_option("--batch-size", t.batch_size, "Sentences per step");
  cmd->add_option("--weight-decay", t.weight_decay, "AdamW weight decay");
  cmd->add_option("--reduced-dim", t.reduced_dim, "Width after lm_reduce")->capture_default_str();
  cmd->add_option("--ctx-hidden", t.ctx_hidden, "BLSTM hidden size")->capture_default_str();
  cmd->add_option("--ctx-layers", t.ctx_layers, "BLSTM layers")->capture_default_str();
  cmd->add_option("--window", t.window, "Previous sentences in the context")
      ->capture_default_str();
  cmd->add_option("--dropout", t.dropout, "Dropout rate")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gazelab: text-complexity features and gaze prediction"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML configuration; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_version_flag("--version", GAZELAB_VERSION);

  Common common;
  FeaturesArgs features;
  GazeArgs gaze;
  SplitArgs split;
  DataArgs data;
  TrainArgs training;
  PredictArgs predict;
  MetricsArgs metrics;
  ExplainArgs explain;
  DescribeArgs describe;
  std::function<void()> action;

  auto* feat = app.add_subcommand("features", "Sentence feature vectors")->require_subcommand(1);
  auto* extract = feat->add_subcommand("extract", "Write features.csv (107 columns)");
  add_common(extract, common);
  extract->add_option("--corpus", features.corpus, "Corpus JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  extract->add_option("--resources", features.resources,
                      "Resource directory (default: $GAZELAB_RESOURCES)")
      ->check(CLI::ExistingDirectory);
  extract->callback([&] {
    if (features.resources.empty()) {
      const char* env = std::getenv("GAZELAB_RESOURCES");
      if (!env || !*env) {
        throw ValidationError("no resource directory: pass --resources or set GAZELAB_RESOURCES");
      }
      features.resources = env;
    }
    action = [&] { run_features(common, features); };
  });

  auto* gz = app.add_subcommand("gaze", "Eye-tracking targets")->require_subcommand(1);
  auto* agg = gz->add_subcommand("aggregate", "Write per-word targets.csv from fixations");
  add_common(agg, common);
  agg->add_option("--corpus", gaze.corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  agg->add_option("--fixations", gaze.fixations, "Fixation CSV")
      ->required()
      ->check(CLI::ExistingFile);
  agg->add_option("--averaging", gaze.averaging, "Duration averaging: fixating | all")
      ->check(CLI::IsMember({"fixating", "all"}))
      ->capture_default_str();
  agg->callback([&] { action = [&] { run_gaze(common, gaze); }; });

  auto* sp = app.add_subcommand("split", "Write split.csv");
  add_common(sp, common);
  sp->add_option("--corpus", split.corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  sp->add_option("--seed", split.seed, "Shuffle seed")->capture_default_str();
  sp->add_option("--train", split.train, "Train share")->capture_default_str();
  sp->add_option("--dev", split.dev, "Dev share")->capture_default_str();
  sp->add_option("--test", split.test, "Test share")->capture_default_str();
  sp->add_option("--mode", split.mode, "random | contiguous")
      ->check(CLI::IsMember({"random", "contiguous"}))
      ->capture_default_str();
  sp->callback([&] { action = [&] { run_split(common, split); }; });

  auto* tr = app.add_subcommand("train", "Train a model; writes model.ckpt");
  add_common(tr, common);
  add_data(tr, data, true, true);
  add_training(tr, training);
  tr->callback([&] { action = [&] { run_train(common, data, training); }; });

  auto* pr = app.add_subcommand("predict", "Word-level predictions");
  add_common(pr, common);
  pr->add_option("--checkpoint", predict.checkpoint, "model.ckpt")
      ->required()
      ->check(CLI::ExistingFile);
  pr->add_option("--corpus", predict.corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  pr->add_option("--features", predict.features, "features.csv")
      ->required()
      ->check(CLI::ExistingFile);
  pr->add_option("--embeddings", predict.embeddings, "EMB1 file")
      ->required()
      ->check(CLI::ExistingFile);
  pr->add_option("--split", predict.split, "split.csv; default predicts every sentence")
      ->check(CLI::ExistingFile);
  pr->add_option("--part", predict.part, "Split part")
      ->check(CLI::IsMember({"train", "dev", "test"}))
      ->capture_default_str();
  pr->callback([&] { action = [&] { run_predict(common, predict); }; });

  auto* ev = app.add_subcommand("eval", "Evaluation and explanations")->require_subcommand(1);
  auto add_pred_target = [&](CLI::App* cmd) {
    add_common(cmd, common);
    cmd->add_option("--pred", metrics.pred, "Predictions CSV (scaled)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--target", metrics.target, "Targets CSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--checkpoint", metrics.checkpoint,
                    "Scale a raw target file with this model's ranges")
        ->check(CLI::ExistingFile);
  };
  auto* em = ev->add_subcommand("metrics", "MAE, accuracy and R2");
  add_pred_target(em);
  em->callback([&] { action = [&] { run_metrics(common, metrics); }; });

  auto* ed = ev->add_subcommand("deciles", "Per-feature decile correlation with sentence MAE");
  add_pred_target(ed);
  ed->add_option("--features", metrics.features, "features.csv")
      ->required()
      ->check(CLI::ExistingFile);
  ed->callback([&] { action = [&] { run_deciles(common, metrics); }; });

  auto add_explain = [&](CLI::App* cmd) {
    cmd->add_option("--checkpoint", explain.checkpoint, "model.ckpt")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--part", explain.part, "Split part to evaluate")
        ->check(CLI::IsMember({"train", "dev", "test"}))
        ->capture_default_str();
  };
  auto* ea = ev->add_subcommand("ablate", "R2 drop per masked feature group");
  add_common(ea, common);
  add_data(ea, data, true, true);
  add_explain(ea);
  ea->add_flag("--retrain", explain.retrain, "Retrain per group instead of masking");
  add_training(ea, training);
  ea->callback([&] { action = [&] { run_ablate(common, data, training, explain); }; });

  auto* es = ev->add_subcommand("splime", "LIME surrogates and global group importance");
  add_common(es, common);
  add_data(es, data, false, false);
  add_explain(es);
  es->add_option("--samples", explain.samples, "Perturbations per sentence")
      ->check(CLI::Range(6, 1 << 20))
      ->capture_default_str();
  es->add_option("--seed", explain.seed, "Sampling seed")->capture_default_str();
  es->callback([&] { action = [&] { run_splime(common, data, explain); }; });

  auto* ds = app.add_subcommand("describe", "Descriptive statistics of targets");
  add_common(ds, common);
  ds->add_option("--targets", describe.targets, "targets.csv")
      ->required()
      ->check(CLI::ExistingFile);
  ds->callback([&] { action = [&] { run_describe(common, describe); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidationExit;
  } catch (const ValidationError& e) {
    return report("validation", e.what(), kValidationExit);
  }

  try {
    action();
  } catch (const ValidationError& e) {
    return report("validation", e.what(), kValidationExit);
  } catch (const ParseError& e) {
    return report("parse", e.what(), kValidationExit);
  } catch (const std::exception& e) {
    return report("runtime", e.what(), kRuntimeExit);
  }
  return 0;
}
