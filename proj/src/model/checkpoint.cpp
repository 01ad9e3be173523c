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

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "gazelab/error.hpp"
#include "gazelab/model.hpp"

namespace gazelab {

namespace {

constexpr char kMagic[4] = {'G', 'Z', 'C', 'K'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t k = 0; k < sizeof(T); ++k) {
    bytes[k] = static_cast<char>((value >> (8 * k)) & 0xff);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
    throw ParseError("checkpoint: truncated file", 0);
  }
  T value = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) value |= static_cast<T>(bytes[k]) << (8 * k);
  return value;
}

template <std::size_t N>
std::vector<double> to_vector(const std::array<double, N>& a) {
  return {a.begin(), a.end()};
}

template <std::size_t N>
void from_json_array(const nlohmann::json& j, std::array<double, N>& a, const char* what) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != N) throw ParseError(std::string("checkpoint: bad length for ") + what, 0);
  std::copy(v.begin(), v.end(), a.begin());
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const ModelBundle& bundle) {
  const ModelConfig& c = bundle.model.config();
  nlohmann::ordered_json header;
  header["model"] = {{"variant", variant_name(c.variant)},
                     {"embedding_dim", c.embedding_dim},
                     {"reduced_dim", c.reduced_dim},
                     {"ctx_hidden", c.ctx_hidden},
                     {"ctx_layers", c.ctx_layers},
                     {"context_window", c.context_window},
                     {"adaptation", c.adaptation},
                     {"dropout", c.dropout}};
  header["scaling"] = {{"min", to_vector(bundle.scaling.min)},
                       {"max", to_vector(bundle.scaling.max)}};
  header["features"] = {{"mean", to_vector(bundle.features.mean)},
                        {"sd", to_vector(bundle.features.sd)}};
  header["info"] = bundle.info;
  const std::string text = header.dump();

  auto tmp = path;
  tmp += ".tmp";
  try {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(kMagic, 4);
    put<std::uint32_t>(out, kVersion);
    put<std::uint64_t>(out, text.size());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    const auto params = bundle.model.params();
    put<std::uint32_t>(out, static_cast<std::uint32_t>(params.size()));
    for (const nn::Param* p : params) {
      put<std::uint16_t>(out, static_cast<std::uint16_t>(p->name.size()));
      out.write(p->name.data(), static_cast<std::streamsize>(p->name.size()));
      put<std::uint32_t>(out, static_cast<std::uint32_t>(p->value.rows()));
      put<std::uint32_t>(out, static_cast<std::uint32_t>(p->value.cols()));
      for (Eigen::Index k = 0; k < p->value.size(); ++k) {
        put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(p->value.data()[k]));
      }
    }
    out.close();
    if (!out) throw Error("write failed for " + tmp.string());
  } catch (...) {
    std::filesystem::remove(tmp);
    throw;
  }
  std::filesystem::rename(tmp, path);
}

ModelBundle load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw ParseError(path.string() + ": not a gazelab checkpoint", 0);
  }
  const auto version = get<std::uint32_t>(in);
  if (version != kVersion) {
    throw ParseError(path.string() + ": unsupported checkpoint version " +
                         std::to_string(version),
                     0);
  }
  std::string text(get<std::uint64_t>(in), '\0');
  if (!in.read(text.data(), static_cast<std::streamsize>(text.size()))) {
    throw ParseError(path.string() + ": truncated header", 0);
  }
  ModelBundle bundle;
  try {
    const auto header = nlohmann::json::parse(text);
    const auto& m = header.at("model");
    ModelConfig c;
    c.variant = parse_variant(m.at("variant").get<std::string>());
    c.embedding_dim = m.at("embedding_dim").get<std::size_t>();
    c.reduced_dim = m.at("reduced_dim").get<std::size_t>();
    c.ctx_hidden = m.at("ctx_hidden").get<std::size_t>();
    c.ctx_layers = m.at("ctx_layers").get<std::size_t>();
    c.context_window = m.at("context_window").get<std::size_t>();
    c.adaptation = m.at("adaptation").get<bool>();
    c.dropout = m.at("dropout").get<double>();
    bundle.model = HybridModel(c);
    from_json_array(header.at("scaling").at("min"), bundle.scaling.min, "scaling.min");
    from_json_array(header.at("scaling").at("max"), bundle.scaling.max, "scaling.max");
    from_json_array(header.at("features").at("mean"), bundle.features.mean, "features.mean");
    from_json_array(header.at("features").at("sd"), bundle.features.sd, "features.sd");
    bundle.info = header.at("info").get<std::map<std::string, std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": bad checkpoint header: " + e.what(), 0);
  }

  auto params = bundle.model.params();
  const auto count = get<std::uint32_t>(in);
  if (count != params.size()) {
    throw ValidationError(path.string() + ": checkpoint has " + std::to_string(count) +
                          " tensors, model expects " + std::to_string(params.size()));
  }
  for (nn::Param* p : params) {
    std::string name(get<std::uint16_t>(in), '\0');
    if (!in.read(name.data(), static_cast<std::streamsize>(name.size()))) {
      throw ParseError(path.string() + ": truncated tensor name", 0);
    }
    const auto rows = get<std::uint32_t>(in);
    const auto cols = get<std::uint32_t>(in);
    if (name != p->name || rows != p->value.rows() || cols != p->value.cols()) {
      throw ValidationError(path.string() + ": tensor '" + name + "' does not match '" +
                            p->name + "'");
    }
    for (Eigen::Index k = 0; k < p->value.size(); ++k) {
      p->value.data()[k] = std::bit_cast<double>(get<std::uint64_t>(in));
    }
  }
  return bundle;
}

}  // namespace gazelab
