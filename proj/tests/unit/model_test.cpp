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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "gazelab/error.hpp"
#include "gazelab/hash.hpp"
#include "gazelab/model.hpp"
#include "gradcheck.hpp"
#include "synthetic.hpp"

namespace gazelab {
namespace {

namespace fs = std::filesystem;

fs::path temp_dir() {
  const auto dir = fs::temp_directory_path() / ("gazelab_model_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

nn::Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  nn::Matrix m(rows, cols);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = normal01(rng);
  return m;
}

// ------------------------------------------------------------------- EMB1

TEST(Embeddings, ByteLayout) {
  EmbeddingFile f;
  f.dim = 2;
  f.sentences.push_back({"ab", nn::Matrix(2, 1)});
  f.sentences[0].values << 1.0, -2.0;
  std::ostringstream out;
  write_embeddings(out, f);
  const std::string bytes = out.str();
  const std::string expected = std::string("EMB1") + std::string("\x02\x00\x00\x00", 4) +
                               std::string("\x02\x00", 2) + "ab" +
                               std::string("\x01\x00\x00\x00", 4) +
                               std::string("\x00\x00\x80\x3f", 4) +   // 1.0f
                               std::string("\x00\x00\x00\xc0", 4);    // -2.0f
  EXPECT_EQ(bytes, expected);
}

TEST(Embeddings, RoundTripAndLookup) {
  Rng rng(1);
  EmbeddingFile f;
  f.dim = 3;
  for (int s = 0; s < 3; ++s) {
    f.sentences.push_back({"s" + std::to_string(s), random_matrix(3, 2 + s, rng)});
  }
  // Values representable as float survive exactly.
  for (auto& s : f.sentences) s.values = s.values.cast<float>().cast<double>();
  std::stringstream io;
  write_embeddings(io, f);
  const auto back = read_embeddings(io);
  ASSERT_EQ(back.sentences.size(), 3u);
  EXPECT_EQ(back.dim, 3u);
  for (int s = 0; s < 3; ++s) EXPECT_EQ(back.sentences[s].values, f.sentences[s].values);
  ASSERT_NE(back.find("s2"), nullptr);
  EXPECT_EQ(back.find("s2")->values.cols(), 4);
  EXPECT_EQ(back.find("zz"), nullptr);
}

TEST(Embeddings, RejectsMalformedFiles) {
  std::istringstream bad_magic("EMB2\x01\x00\x00\x00");
  EXPECT_THROW(read_embeddings(bad_magic), ParseError);
  EmbeddingFile f;
  f.dim = 2;
  f.sentences.push_back({"a", nn::Matrix::Ones(2, 3)});
  std::ostringstream out;
  write_embeddings(out, f);
  std::istringstream truncated(out.str().substr(0, out.str().size() - 3));
  EXPECT_THROW(read_embeddings(truncated), ParseError);
  f.sentences.push_back({"a", nn::Matrix::Ones(2, 1)});
  std::stringstream dup;
  write_embeddings(dup, f);
  EXPECT_THROW(read_embeddings(dup), ValidationError);
  f.sentences.back().values = nn::Matrix::Ones(3, 1);
  std::ostringstream wrong_dim;
  EXPECT_THROW(write_embeddings(wrong_dim, f), ShapeError);
}

TEST(Embeddings, FileWritesAreReproducible) {
  const auto data = testing::make_synthetic({.docs = 2, .per_doc = 3});
  const auto dir = temp_dir();
  write_embeddings(dir / "a.emb", data.embeddings);
  write_embeddings(dir / "b.emb", data.embeddings);
  EXPECT_EQ(sha256_file((dir / "a.emb").string()), sha256_file((dir / "b.emb").string()));
  EXPECT_FALSE(fs::exists(dir / "a.emb.tmp"));
  EXPECT_EQ(read_embeddings(dir / "a.emb").sentences.size(), 6u);
  fs::remove_all(dir);
}

// ---------------------------------------------------------- feature input

TEST(FeatureScaler, StandardizesTrainingFeatures) {
  std::vector<FeatureVector> train(4);
  for (std::size_t i = 0; i < 4; ++i) {
    train[i].values[0] = static_cast<double>(i);
    train[i].values[1] = 7.0;
  }
  const auto s = FeatureScaler::fit(train);
  EXPECT_DOUBLE_EQ(s.mean[0], 1.5);
  EXPECT_DOUBLE_EQ(s.sd[0], std::sqrt(1.25));
  EXPECT_DOUBLE_EQ(s.sd[1], 1.0);
  EXPECT_DOUBLE_EQ(s.apply(train[3])[0], 1.5 / std::sqrt(1.25));
  EXPECT_DOUBLE_EQ(s.apply(train[3])[1], 0.0);
  EXPECT_THROW(FeatureScaler::fit(std::vector<FeatureVector>{}), ValidationError);
}

TEST(Contexts, PreviousSentencesOldestFirstWithZeroPadding) {
  const auto data = testing::make_synthetic({.docs = 2, .per_doc = 3});
  FeatureScaler identity;
  identity.sd.fill(1.0);
  const auto ctx = build_contexts(data.corpus, data.features, identity, 2);
  const auto& doc = data.corpus[1];
  const nn::Matrix& first = ctx.at(doc.sentences[0].id);
  EXPECT_EQ(first.rows(), 107);
  EXPECT_EQ(first.cols(), 2);
  EXPECT_EQ(first.norm(), 0.0);
  const nn::Matrix& second = ctx.at(doc.sentences[1].id);
  EXPECT_EQ(second.col(0).norm(), 0.0);
  EXPECT_EQ(second(5, 1), data.features.at(doc.sentences[0].id).values[5]);
  const nn::Matrix& third = ctx.at(doc.sentences[2].id);
  EXPECT_EQ(third(5, 0), data.features.at(doc.sentences[0].id).values[5]);
  EXPECT_EQ(third(5, 1), data.features.at(doc.sentences[1].id).values[5]);
}

// ------------------------------------------------------------------ model

TEST(HybridModel, OutputShape) {
  HybridModel model(testing::small_model(Variant::kHybrid));
  model.init(1);
  Rng rng(2);
  const auto y = model.forward(random_matrix(16, 4, rng), nn::Matrix::Zero(107, 1));
  EXPECT_EQ(y.rows(), 8);
  EXPECT_EQ(y.cols(), 4);
  EXPECT_THROW(model.forward(random_matrix(15, 4, rng), nn::Matrix::Zero(107, 1)), ShapeError);
  EXPECT_THROW(model.forward(random_matrix(16, 4, rng), nn::Matrix::Zero(107, 2)), ShapeError);
}

TEST(HybridModel, ZeroContextPathEqualsBaseline) {
  HybridModel hybrid(testing::small_model(Variant::kHybrid));
  hybrid.init(3);
  hybrid.ctx_reduce().weight().value.setZero();
  hybrid.ctx_reduce().bias().value.setZero();
  HybridModel baseline(testing::small_model(Variant::kBaseline));
  baseline.lm_reduce().weight().value = hybrid.lm_reduce().weight().value;
  baseline.lm_reduce().bias().value = hybrid.lm_reduce().bias().value;
  baseline.head().weight().value = hybrid.head().weight().value;
  baseline.head().bias().value = hybrid.head().bias().value;
  Rng rng(4);
  const nn::Matrix emb = random_matrix(16, 5, rng);
  const nn::Matrix ctx = random_matrix(107, 1, rng);
  EXPECT_EQ(hybrid.forward(emb, ctx), baseline.forward(emb, ctx));
  EXPECT_EQ(baseline.forward(emb, ctx), baseline.forward(emb, nn::Matrix::Zero(107, 1)));
}

TEST(HybridModel, GradientsMatchFiniteDifferences) {
  ModelConfig c = testing::small_model(Variant::kHybrid);
  c.reduced_dim = 8;
  c.ctx_hidden = 8;
  c.ctx_layers = 4;
  c.context_window = 2;
  c.adaptation = true;
  HybridModel model(c);
  model.init(5);
  Rng rng(6);
  const nn::Matrix emb = random_matrix(16, 3, rng);
  const nn::Matrix ctx = random_matrix(107, 2, rng);
  const nn::Matrix target = random_matrix(8, 3, rng);
  auto loss = [&] {
    Rng masks(7);
    return model.accumulate(emb, ctx, target, 1.0, &masks);
  };
  for (auto* p : model.params()) p->zero_grad();
  loss();
  // Deep BLSTM weights get gradients near 1e-7 where central differences
  // of an O(10) loss lose digits; the floor keeps those from dominating.
  const auto r = testing::grad_check(model.params(), loss, 1e-5, 1e-4);
  EXPECT_LT(r.worst, 1e-4) << r.where;
}

// --------------------------------------------------------------- training

struct Prepared {
  testing::SyntheticData data;
  CorpusSplit split;
  Dataset dataset;
};

Prepared prepare(const testing::SyntheticOptions& o, std::size_t window = 1) {
  Prepared p{testing::make_synthetic(o), {}, {}};
  p.split = gazelab::split(p.data.corpus, SplitRatios{}, 0);
  p.dataset = prepare_dataset(p.data.corpus, p.data.features, p.data.targets, p.data.embeddings,
                              p.split, window);
  return p;
}

double variance(std::span<const Example> examples) {
  double sum = 0, sq = 0, n = 0;
  for (const auto& ex : examples) {
    sum += ex.target.sum();
    sq += ex.target.squaredNorm();
    n += static_cast<double>(ex.target.size());
  }
  return sq / n - (sum / n) * (sum / n);
}

TEST(Training, LinearTeacherIsLearned) {
  const auto p = prepare({.docs = 10, .per_doc = 10, .ctx_weight = 0.0, .noise = 0.1});
  HybridModel model(testing::small_model(Variant::kBaseline));
  model.init(1);
  const auto result = train(model, p.dataset.train, p.dataset.dev, testing::small_training());
  const auto [dev_mse, dev_mae] = evaluate_loss(model, p.dataset.dev);
  EXPECT_LT(dev_mse, 0.1 * variance(p.dataset.dev));
  EXPECT_EQ(result.log.size(), 40u);
  EXPECT_DOUBLE_EQ(result.best_dev_mae, dev_mae);
  EXPECT_DOUBLE_EQ(result.log[0].lr, 1e-2 / 5);
}

TEST(Training, DeterministicAndPhaseTwoOfLengthZero) {
  const auto p = prepare({.docs = 4, .per_doc = 5});
  auto run = [&](PhaseConfig phase2) {
    HybridModel model(testing::small_model(Variant::kHybrid));
    model.init(9);
    auto config = testing::small_training(3);
    config.phase1.epochs = 3;
    config.phase2 = phase2;
    train(model, p.dataset.train, p.dataset.dev, config);
    std::vector<nn::Matrix> values;
    for (const auto* q : std::as_const(model).params()) values.push_back(q->value);
    return values;
  };
  const auto a = run({0, 1e-3, 3});
  EXPECT_EQ(a, run({0, 1e-3, 3}));
  EXPECT_EQ(a, run({0, 5e-4, 7}));
  EXPECT_NE(a, run({1, 5e-4, 3}));
}

TEST(Training, PhaseOneKeepsAdaptationFrozen) {
  const auto p = prepare({.docs = 4, .per_doc = 5});
  ModelConfig c = testing::small_model(Variant::kHybrid);
  c.adaptation = true;
  HybridModel model(c);
  model.init(2);
  const nn::Matrix before = model.params()[0]->value;
  ASSERT_EQ(model.params()[0]->name, "adapt.weight");
  EXPECT_TRUE(before.isIdentity());
  auto config = testing::small_training();
  config.phase1.epochs = 2;
  train(model, p.dataset.train, p.dataset.dev, config);
  EXPECT_EQ(model.params()[0]->value, before);
  config.phase2 = {2, 1e-3, 1};
  HybridModel again(c);
  again.init(2);
  train(again, p.dataset.train, p.dataset.dev, config);
  EXPECT_NE(again.params()[0]->value, before);
}

TEST(Training, Errors) {
  const auto p = prepare({.docs = 3, .per_doc = 4});
  HybridModel model(testing::small_model(Variant::kBaseline));
  model.init(1);
  const std::vector<Example> none;
  EXPECT_THROW(train(model, none, p.dataset.dev, testing::small_training()), ValidationError);
  EXPECT_THROW(train(model, p.dataset.train, none, testing::small_training()), ValidationError);
  auto broken = p.dataset.train;
  broken[0].target(0, 0) = std::nan("");
  try {
    train(model, broken, p.dataset.dev, testing::small_training());
    FAIL();
  } catch (const ValidationError&) {
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("epoch 1"), std::string::npos);
  }
}

TEST(Presets, LearningRates) {
  EXPECT_EQ(preset("bert", false, Variant::kBaseline).phase1.peak_lr, 5e-4);
  EXPECT_EQ(preset("gpt2", false, Variant::kHybrid).phase1.peak_lr, 1e-3);
  const auto bert_ft = preset("bert", true, Variant::kBaseline);
  EXPECT_EQ(bert_ft.phase1.peak_lr, 3e-4);
  EXPECT_EQ(bert_ft.phase1.epochs, 12u);
  EXPECT_EQ(bert_ft.phase1.warmup, 5u);
  EXPECT_EQ(bert_ft.phase2.peak_lr, 5e-5);
  EXPECT_EQ(bert_ft.phase2.warmup, 3u);
  EXPECT_EQ(preset("gpt2", true, Variant::kBaseline).phase2.peak_lr, 5e-4);
  EXPECT_EQ(preset("gpt2", true, Variant::kHybrid).phase2.peak_lr, 1e-4);
  EXPECT_EQ(preset("bert", false, Variant::kHybrid).phase2.epochs, 0u);
  EXPECT_THROW(preset("t5", false, Variant::kHybrid), ValidationError);
}

// ------------------------------------------------- checkpoint and predict

TEST(Checkpoint, RoundTripGivesIdenticalPredictions) {
  const auto p = prepare({.docs = 4, .per_doc = 5});
  ModelBundle bundle{HybridModel(testing::small_model(Variant::kHybrid)), p.dataset.scaling,
                     p.dataset.features, {{"source", "synthetic"}}};
  bundle.model.init(4);
  auto config = testing::small_training();
  config.phase1.epochs = 2;
  train(bundle.model, p.dataset.train, p.dataset.dev, config);
  const auto dir = temp_dir();
  save_checkpoint(dir / "m.ckpt", bundle);
  const auto loaded = load_checkpoint(dir / "m.ckpt");
  EXPECT_EQ(loaded.info.at("source"), "synthetic");
  EXPECT_EQ(loaded.scaling.min, bundle.scaling.min);
  EXPECT_EQ(loaded.features.sd, bundle.features.sd);
  const auto a = predict(bundle, p.dataset.test);
  const auto b = predict(loaded, p.dataset.test, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].scaled, b[k].scaled);
    EXPECT_EQ(a[k].word, b[k].word);
  }
  save_checkpoint(dir / "again.ckpt", loaded);
  EXPECT_EQ(sha256_file((dir / "m.ckpt").string()), sha256_file((dir / "again.ckpt").string()));

  std::ofstream(dir / "junk.ckpt") << "not a checkpoint";
  EXPECT_THROW(load_checkpoint(dir / "junk.ckpt"), ParseError);
  fs::remove_all(dir);
}

TEST(Predict, RowsScalingAndContextSensitivity) {
  const auto p = prepare({.docs = 6, .per_doc = 5});
  ModelBundle bundle{HybridModel(testing::small_model(Variant::kHybrid)), p.dataset.scaling,
                     p.dataset.features, {}};
  bundle.model.init(8);
  auto config = testing::small_training();
  config.phase1.epochs = 3;
  train(bundle.model, p.dataset.train, p.dataset.dev, config);
  const auto rows = predict(bundle, p.dataset.test, 2);
  std::size_t words = 0;
  for (const auto& ex : p.dataset.test) words += static_cast<std::size_t>(ex.embeddings.cols());
  EXPECT_EQ(rows.size(), words);
  for (const auto& r : rows) {
    const auto again = apply_scaling(unscale(r.scaled, bundle.scaling), bundle.scaling);
    for (std::size_t m = 0; m < kMeasureCount; ++m) EXPECT_NEAR(again[m], r.scaled[m], 1e-9);
  }
  bool changed = false;
  for (const auto& ex : p.dataset.test) {
    const auto with = bundle.model.forward(ex.embeddings, ex.context);
    const auto without = bundle.model.forward(ex.embeddings, nn::Matrix::Zero(107, 1));
    changed = changed || with != without;
  }
  EXPECT_TRUE(changed);
}

TEST(Predict, MissingEmbeddingsNameTheSentence) {
  auto data = testing::make_synthetic({.docs = 1, .per_doc = 3});
  data.embeddings.sentences.erase(data.embeddings.sentences.begin() + 1);
  data.embeddings.reindex();
  const std::vector<SentenceRef> refs = {{0, 0}, {0, 1}};
  try {
    make_examples(data.corpus, refs, data.embeddings, {}, nullptr);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("doc0.s1"), std::string::npos);
  }
  data.embeddings.sentences[0].values = nn::Matrix::Zero(16, 1);
  data.embeddings.reindex();
  EXPECT_THROW(make_examples(data.corpus, std::vector<SentenceRef>{{0, 0}}, data.embeddings, {},
                             nullptr),
               ValidationError);
}

}  // namespace
}  // namespace gazelab
