// Copyright 2026 The nnvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nnvqe/mlp.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "nnvqe/rng.hpp"

namespace nnvqe {

using nlohmann::json;

std::vector<int> halving_widths(int input, int output, int min_hidden) {
  if (input < 1 || output < 1) throw InvalidArgument("widths must be positive");
  const int floor_w = std::max(output, min_hidden);
  std::vector<int> w{input};
  for (int l = 0; l < kWeightLayers - 1; ++l) w.push_back(std::max((w.back() + 1) / 2, floor_w));
  w.push_back(output);
  return w;
}

void check_widths(std::span<const int> widths) {
  if (widths.size() != kWeightLayers + 1)
    throw InvalidArgument("expected " + std::to_string(kWeightLayers) + " weight layers, got " +
                          std::to_string(static_cast<int>(widths.size()) - 1));
  for (int w : widths)
    if (w < 1) throw InvalidArgument("layer widths must be positive");
}

MlpModel zero_model(std::span<const int> widths) {
  check_widths(widths);
  MlpModel m;
  m.widths.assign(widths.begin(), widths.end());
  for (int l = 0; l < kWeightLayers; ++l)
    m.layers.push_back({Eigen::MatrixXd::Zero(widths[l + 1], widths[l]), Eigen::VectorXd::Zero(widths[l + 1])});
  return m;
}

MlpModel init_he(std::span<const int> widths, std::uint64_t seed) {
  MlpModel m = zero_model(widths);
  m.seed = seed;
  Rng rng(derive_seed(seed, 0x4e4e));
  for (DenseLayer& layer : m.layers) {
    const double sd = std::sqrt(2.0 / static_cast<double>(layer.weight.cols()));
    // Row-major fill so the draw order matches the checkpoint layout.
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) layer.weight(r, c) = sd * rng.normal();
  }
  return m;
}

Eigen::MatrixXd MlpModel::normalize(const Eigen::MatrixXd& x) const {
  if (x.rows() != input_dim())
    throw DimensionError("input has " + std::to_string(x.rows()) + " entries, model expects " +
                         std::to_string(input_dim()));
  if (input_shift.size() == 0) return x;
  return ((x.colwise() - input_shift).array().colwise() * input_scale.array()).matrix();
}

void fit_input_normalization(MlpModel& m, const std::vector<TrainingSample>& samples) {
  if (samples.empty()) throw InvalidArgument("fit_input_normalization: no samples");
  auto [x, y] = to_matrices(samples);
  if (x.rows() != m.input_dim()) throw DimensionError("fit_input_normalization: width mismatch");
  const double n = static_cast<double>(x.cols());
  m.input_shift = x.rowwise().sum() / n;
  m.input_scale.resize(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double var = (x.row(r).array() - m.input_shift(r)).square().sum() / n;
    m.input_scale(r) = var > 1e-24 ? 1.0 / std::sqrt(var) : 1.0;
  }
}

Eigen::MatrixXd MlpModel::forward_batch(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd a = normalize(x);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    Eigen::MatrixXd z = (layers[l].weight * a).colwise() + layers[l].bias;
    a = (l + 1 < layers.size()) ? Eigen::MatrixXd(z.cwiseMax(0.0)) : z;
  }
  return a;
}

Eigen::VectorXd MlpModel::forward(const Eigen::VectorXd& x) const { return forward_batch(x); }

std::vector<double> MlpModel::forward(std::span<const double> x) const {
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXd y = forward(v);
  return {y.data(), y.data() + y.size()};
}

Gradients backward(const MlpModel& m, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.cols() == 0) throw InvalidArgument("backward: empty batch");
  if (x.cols() != y.cols() || y.rows() != m.output_dim())
    throw DimensionError("backward: target shape does not match the model");
  if (x.rows() != m.input_dim()) throw DimensionError("backward: input shape does not match the model");
  const std::size_t L = m.layers.size();
  std::vector<Eigen::MatrixXd> act{m.normalize(x)}, pre;
  for (std::size_t l = 0; l < L; ++l) {
    pre.push_back((m.layers[l].weight * act.back()).colwise() + m.layers[l].bias);
    act.push_back(l + 1 < L ? Eigen::MatrixXd(pre.back().cwiseMax(0.0)) : pre.back());
  }
  const double scale = 1.0 / static_cast<double>(y.size());
  Eigen::MatrixXd diff = act.back() - y;
  Gradients g;
  g.loss = diff.squaredNorm() * scale;
  g.layers.resize(L);
  Eigen::MatrixXd delta = 2.0 * scale * diff;
  for (std::size_t l = L; l-- > 0;) {
    g.layers[l].weight = delta * act[l].transpose();
    g.layers[l].bias = delta.rowwise().sum();
    if (l > 0) {
      Eigen::MatrixXd back = m.layers[l].weight.transpose() * delta;
      delta = back.cwiseProduct((pre[l - 1].array() > 0.0).cast<double>().matrix());
    }
  }
  return g;
}

double mse(const MlpModel& m, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.cols() == 0) return 0.0;
  return (m.forward_batch(x) - y).squaredNorm() / static_cast<double>(y.size());
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> to_matrices(const std::vector<TrainingSample>& samples) {
  if (samples.empty()) return {};
  const auto n = static_cast<Eigen::Index>(samples.size());
  const auto din = static_cast<Eigen::Index>(samples[0].input.size());
  const auto dout = static_cast<Eigen::Index>(samples[0].target.size());
  Eigen::MatrixXd x(din, n), y(dout, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const TrainingSample& s = samples[static_cast<std::size_t>(j)];
    if (static_cast<Eigen::Index>(s.input.size()) != din || static_cast<Eigen::Index>(s.target.size()) != dout)
      throw DimensionError("samples have inconsistent dimensions");
    x.col(j) = Eigen::Map<const Eigen::VectorXd>(s.input.data(), din);
    y.col(j) = Eigen::Map<const Eigen::VectorXd>(s.target.data(), dout);
  }
  return {std::move(x), std::move(y)};
}

double mse(const MlpModel& m, const std::vector<TrainingSample>& samples) {
  auto [x, y] = to_matrices(samples);
  return mse(m, x, y);
}

TrainHistory train(MlpModel& m, const std::vector<TrainingSample>& train_set,
                   const std::vector<TrainingSample>& test_set, const TrainConfig& cfg) {
  if (train_set.empty()) throw InvalidArgument("train: empty training set");
  if (cfg.batch_size < 1 || cfg.epochs < 0) throw InvalidArgument("train: bad batch size or epoch count");
  auto [x, y] = to_matrices(train_set);
  if (x.rows() != m.input_dim() || y.rows() != m.output_dim())
    throw DimensionError("train: dataset dimensions do not match the model");
  Eigen::MatrixXd tx, ty;
  if (!test_set.empty()) std::tie(tx, ty) = to_matrices(test_set);

  std::vector<DenseLayer> m1, m2;
  for (const DenseLayer& l : m.layers) {
    m1.push_back({Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()), Eigen::VectorXd::Zero(l.bias.size())});
  }
  m2 = m1;
  long step = 0;
  Rng rng(derive_seed(cfg.seed, 0x5348));
  const auto n = static_cast<std::size_t>(x.cols());
  TrainHistory hist;
  Eigen::MatrixXd bx, by;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double progress = cfg.epochs > 1 ? static_cast<double>(epoch) / (cfg.epochs - 1) : 0.0;
    const double lr = cfg.learning_rate * (cfg.final_lr_fraction +
                                           (1.0 - cfg.final_lr_fraction) * 0.5 * (1.0 + std::cos(std::numbers::pi * progress)));
    const auto order = shuffled_indices(n, rng);
    for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t end = std::min(n, start + static_cast<std::size_t>(cfg.batch_size));
      bx.resize(x.rows(), static_cast<Eigen::Index>(end - start));
      by.resize(y.rows(), static_cast<Eigen::Index>(end - start));
      for (std::size_t k = start; k < end; ++k) {
        bx.col(static_cast<Eigen::Index>(k - start)) = x.col(static_cast<Eigen::Index>(order[k]));
        by.col(static_cast<Eigen::Index>(k - start)) = y.col(static_cast<Eigen::Index>(order[k]));
      }
      Gradients g = backward(m, bx, by);
      if (!std::isfinite(g.loss))
        throw NumericalError("training diverged (non-finite loss) in epoch " + std::to_string(epoch));
      ++step;
      if (cfg.rule == UpdateRule::kSgd) {
        for (std::size_t l = 0; l < m.layers.size(); ++l) {
          m.layers[l].weight -= lr * g.layers[l].weight;
          m.layers[l].bias -= lr * g.layers[l].bias;
        }
        continue;
      }
      const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
      auto adam = [&](auto& param, auto& mom, auto& var, const auto& grad) {
        mom = cfg.beta1 * mom + (1.0 - cfg.beta1) * grad;
        var = cfg.beta2 * var + (1.0 - cfg.beta2) * grad.cwiseProduct(grad);
        param.array() -= lr * (mom.array() / c1) / ((var.array() / c2).sqrt() + cfg.adam_eps);
      };
      for (std::size_t l = 0; l < m.layers.size(); ++l) {
        adam(m.layers[l].weight, m1[l].weight, m2[l].weight, g.layers[l].weight);
        adam(m.layers[l].bias, m1[l].bias, m2[l].bias, g.layers[l].bias);
      }
    }
    const double tr = mse(m, x, y);
    if (!std::isfinite(tr))
      throw NumericalError("training diverged (non-finite loss) in epoch " + std::to_string(epoch));
    hist.train_mse.push_back(tr);
    if (tx.cols() > 0) hist.test_mse.push_back(mse(m, tx, ty));
  }
  return hist;
}

void require_schema(const MlpModel& m, const TermSchema& schema) {
  if (!(m.schema == schema)) {
    std::string a, b;
    for (const auto& s : m.schema.label_text()) a += s + " ";
    for (const auto& s : schema.label_text()) b += s + " ";
    throw SchemaMismatch("model schema [ " + a + "] differs from [ " + b + "]");
  }
}

// ---- checkpoints -----------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'N', 'N', 'V', 'Q', 'E', 'C', 'K', 'P'};

json header_json(const MlpModel& m) {
  json h = {{"system", m.system},   {"layout", kLayout}, {"widths", m.widths},
            {"seed", m.seed},       {"schema", m.schema.label_text()}};
  if (m.recorded_test_mse) h["test_mse"] = *m.recorded_test_mse;
  if (m.input_shift.size() > 0) {
    h["input_shift"] = std::vector<double>(m.input_shift.data(), m.input_shift.data() + m.input_shift.size());
    h["input_scale"] = std::vector<double>(m.input_scale.data(), m.input_scale.data() + m.input_scale.size());
  }
  return h;
}

MlpModel model_from_header(const json& h) {
  if (h.at("layout").get<std::string>() != kLayout)
    throw ParseError("checkpoint layout " + h.at("layout").dump() + " is not supported");
  std::vector<int> widths = h.at("widths").get<std::vector<int>>();
  try {
    check_widths(widths);
  } catch (const InvalidArgument& e) {
    throw DimensionError(std::string("checkpoint: ") + e.what());
  }
  MlpModel m = zero_model(widths);
  m.system = h.at("system").get<std::string>();
  m.seed = h.at("seed").get<std::uint64_t>();
  std::vector<PauliString> labels;
  for (const auto& l : h.at("schema")) labels.emplace_back(l.get<std::string>());
  m.schema = TermSchema(std::move(labels));
  if (h.contains("test_mse")) m.recorded_test_mse = h.at("test_mse").get<double>();
  if (h.contains("input_shift")) {
    const auto shift = h.at("input_shift").get<std::vector<double>>();
    const auto scale = h.at("input_scale").get<std::vector<double>>();
    if (shift.size() != static_cast<std::size_t>(widths.front()) || scale.size() != shift.size())
      throw DimensionError("checkpoint normalization length differs from the input width");
    m.input_shift = Eigen::Map<const Eigen::VectorXd>(shift.data(), static_cast<Eigen::Index>(shift.size()));
    m.input_scale = Eigen::Map<const Eigen::VectorXd>(scale.data(), static_cast<Eigen::Index>(scale.size()));
  }
  const std::size_t expected = 2 * m.schema.size();
  if (!m.schema.labels().empty() && static_cast<std::size_t>(widths.front()) < expected)
    throw DimensionError("checkpoint input width is smaller than the schema requires");
  return m;
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

struct Reader {
  std::string_view buf;
  std::size_t pos = 0;
  void need(std::size_t n) {
    if (buf.size() - pos < n) throw ParseError("checkpoint truncated at byte " + std::to_string(pos));
  }
  std::uint64_t le(int bytes) {
    need(static_cast<std::size_t>(bytes));
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
    pos += static_cast<std::size_t>(bytes);
    return v;
  }
  double f64() { return std::bit_cast<double>(le(8)); }
};

}  // namespace

std::string model_to_binary(const MlpModel& m) {
  std::string out(kMagic, sizeof kMagic);
  put_u32(out, kCheckpointVersion);
  const std::string head = header_json(m).dump();
  put_u32(out, static_cast<std::uint32_t>(head.size()));
  out += head;
  for (const DenseLayer& l : m.layers) {
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) put_f64(out, l.weight(r, c));
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) put_f64(out, l.bias(r));
  }
  return out;
}

MlpModel model_from_binary(std::string_view bytes) {
  Reader rd{bytes};
  rd.need(sizeof kMagic);
  if (bytes.substr(0, sizeof kMagic) != std::string_view(kMagic, sizeof kMagic))
    throw ParseError("not a model checkpoint (bad magic)");
  rd.pos = sizeof kMagic;
  const auto version = static_cast<std::uint32_t>(rd.le(4));
  if (version != kCheckpointVersion)
    throw ParseError("checkpoint version " + std::to_string(version) + " is not supported");
  const auto hlen = static_cast<std::size_t>(rd.le(4));
  rd.need(hlen);
  json head;
  try {
    head = json::parse(bytes.substr(rd.pos, hlen));
  } catch (const json::exception& e) {
    throw ParseError(std::string("checkpoint header: ") + e.what());
  }
  rd.pos += hlen;
  MlpModel m;
  try {
    m = model_from_header(head);
  } catch (const json::exception& e) {
    throw ParseError(std::string("checkpoint header: ") + e.what());
  }
  for (DenseLayer& l : m.layers) {
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) l.weight(r, c) = rd.f64();
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) l.bias(r) = rd.f64();
  }
  if (rd.pos != bytes.size()) throw ParseError("checkpoint has trailing bytes");
  return m;
}

std::string model_to_json(const MlpModel& m) {
  json doc = header_json(m);
  doc["version"] = kCheckpointVersion;
  doc["layers"] = json::array();
  for (const DenseLayer& l : m.layers) {
    json w = json::array();
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
      std::vector<double> row(static_cast<std::size_t>(l.weight.cols()));
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) row[static_cast<std::size_t>(c)] = l.weight(r, c);
      w.push_back(row);
    }
    doc["layers"].push_back({{"weight", w}, {"bias", std::vector<double>(l.bias.data(), l.bias.data() + l.bias.size())}});
  }
  return doc.dump(1);
}

MlpModel model_from_json(std::string_view text) {
  try {
    json doc = json::parse(text);
    if (doc.at("version").get<std::uint32_t>() != kCheckpointVersion)
      throw ParseError("checkpoint version " + doc.at("version").dump() + " is not supported");
    MlpModel m = model_from_header(doc);
    const json& layers = doc.at("layers");
    if (layers.size() != m.layers.size()) throw DimensionError("checkpoint layer count mismatch");
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
      DenseLayer& dl = m.layers[l];
      const json& w = layers[l].at("weight");
      const auto b = layers[l].at("bias").get<std::vector<double>>();
      if (w.size() != static_cast<std::size_t>(dl.weight.rows()) ||
          b.size() != static_cast<std::size_t>(dl.bias.size()))
        throw DimensionError("checkpoint layer " + std::to_string(l) + " shape mismatch");
      for (Eigen::Index r = 0; r < dl.weight.rows(); ++r) {
        const auto row = w[static_cast<std::size_t>(r)].get<std::vector<double>>();
        if (row.size() != static_cast<std::size_t>(dl.weight.cols()))
          throw DimensionError("checkpoint layer " + std::to_string(l) + " shape mismatch");
        for (Eigen::Index c = 0; c < dl.weight.cols(); ++c) dl.weight(r, c) = row[static_cast<std::size_t>(c)];
      }
      for (Eigen::Index r = 0; r < dl.bias.size(); ++r) dl.bias(r) = b[static_cast<std::size_t>(r)];
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("checkpoint: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const MlpModel& m) {
  const bool as_json = path.extension() == ".json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << (as_json ? model_to_json(m) : model_to_binary(m));
  if (!out) throw Error("write failed for " + path.string());
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  return path.extension() == ".json" ? model_from_json(bytes) : model_from_binary(bytes);
}

}  // namespace nnvqe
