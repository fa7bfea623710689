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

#include "nawgen/embed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "nawgen/errors.hpp"
#include "nawgen/rng.hpp"
#include "nawgen/text.hpp"

namespace nawgen {

void TrainConfig::validate() const {
  if (dimensions < 1) throw ConfigError("dimensions must be >= 1");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (negative_samples < 0) throw ConfigError("negative_samples must be >= 0");
  if (min_count < 1) throw ConfigError("min_count must be >= 1");
  if (subword_min > subword_max) throw ConfigError("subword_min must be <= subword_max");
  if (subword_min < 1) throw ConfigError("subword_min must be >= 1");
  if (bucket_count < 0) throw ConfigError("bucket_count must be >= 0");
  if (learning_rate <= 0) throw ConfigError("learning_rate must be positive");
}

TrainConfig TrainConfig::full_scale() {
  TrainConfig c;
  c.dimensions = 300;
  c.window = 5;
  c.epochs = 20;
  return c;
}

std::optional<std::uint32_t> EmbeddingModel::vocab_index(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint32_t> EmbeddingModel::subword_buckets(std::string_view token) const {
  std::vector<std::uint32_t> out;
  if (config_.bucket_count <= 0) return out;
  // codepoint count decides eligibility and slicing
  std::vector<std::size_t> starts;
  std::size_t i = 0;
  while (i < token.size()) {
    starts.push_back(i);
    utf8_next(token, i);
  }
  if (starts.size() < static_cast<std::size_t>(config_.subword_min)) return out;
  std::string wrapped;
  wrapped.reserve(token.size() + 2);
  wrapped.push_back('<');
  wrapped.append(token);
  wrapped.push_back('>');
  starts.clear();
  i = 0;
  while (i < wrapped.size()) {
    starts.push_back(i);
    utf8_next(wrapped, i);
  }
  starts.push_back(wrapped.size());
  const std::size_t cps = starts.size() - 1;
  for (std::size_t n = static_cast<std::size_t>(config_.subword_min);
       n <= static_cast<std::size_t>(config_.subword_max); ++n) {
    if (n > cps) break;
    for (std::size_t s = 0; s + n <= cps; ++s) {
      const std::string_view gram =
          std::string_view(wrapped).substr(starts[s], starts[s + n] - starts[s]);
      out.push_back(static_cast<std::uint32_t>(fnv1a64(gram) %
                                               static_cast<std::uint64_t>(config_.bucket_count)));
    }
  }
  return out;
}

std::span<const double> EmbeddingModel::word_row(std::uint32_t index) const {
  return {word_in_.data() + static_cast<std::size_t>(index) * config_.dimensions,
          static_cast<std::size_t>(config_.dimensions)};
}

std::span<const double> EmbeddingModel::bucket_row(std::uint32_t bucket) const {
  return {bucket_in_.data() + static_cast<std::size_t>(bucket) * config_.dimensions,
          static_cast<std::size_t>(config_.dimensions)};
}

std::vector<double> EmbeddingModel::word_vector(std::string_view token) const {
  std::vector<double> v(static_cast<std::size_t>(config_.dimensions), 0.0);
  const auto idx = vocab_index(token);
  if (idx) {
    const auto row = word_row(*idx);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += row[k];
  }
  for (std::uint32_t bucket : subword_buckets(token)) {
    const auto row = bucket_row(bucket);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += row[k];
  }
  return v;
}

std::vector<double> EmbeddingModel::sentence_vector(std::string_view sentence,
                                                    const std::set<std::string>& stoplist) const {
  std::vector<double> v(static_cast<std::size_t>(config_.dimensions), 0.0);
  std::size_t used = 0;
  for (const std::string& token : split_ws(sentence)) {
    if (stoplist.count(token)) continue;
    const auto tv = word_vector(token);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += tv[k];
    ++used;
  }
  if (used > 0) {
    for (double& x : v) x /= static_cast<double>(used);
  }
  return v;
}

EmbeddingModel EmbeddingModel::from_word_vectors(const std::vector<std::string>& tokens,
                                                 const std::vector<std::vector<double>>& vectors) {
  if (tokens.empty() || tokens.size() != vectors.size())
    throw ConfigError("from_word_vectors: tokens/vectors mismatch");
  TrainConfig cfg;
  cfg.dimensions = static_cast<int>(vectors[0].size());
  cfg.bucket_count = 0;
  EmbeddingModel m = make(cfg, tokens, std::vector<std::uint64_t>(tokens.size(), 1));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != static_cast<std::size_t>(cfg.dimensions))
      throw ConfigError("from_word_vectors: ragged vectors");
    std::copy(vectors[i].begin(), vectors[i].end(),
              m.word_in_.begin() + static_cast<std::ptrdiff_t>(i * vectors[i].size()));
  }
  return m;
}

EmbeddingModel EmbeddingModel::make(TrainConfig config, std::vector<std::string> vocab,
                                    std::vector<std::uint64_t> counts) {
  config.validate();
  if (vocab.size() != counts.size()) throw ConfigError("vocab/counts size mismatch");
  EmbeddingModel m;
  m.config_ = config;
  m.vocab_ = std::move(vocab);
  m.counts_ = std::move(counts);
  for (std::uint32_t i = 0; i < m.vocab_.size(); ++i) m.index_[m.vocab_[i]] = i;
  m.word_in_.assign(m.vocab_.size() * static_cast<std::size_t>(config.dimensions), 0.0);
  m.bucket_in_.assign(static_cast<std::size_t>(config.bucket_count) *
                          static_cast<std::size_t>(config.dimensions),
                      0.0);
  return m;
}

// ---------------------------------------------------------------------------
// Objective

namespace sgns {

namespace {
inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
}  // namespace

double pair_loss(std::span<const double> input_sum, std::span<const double> positive_row,
                 const std::vector<std::span<const double>>& negative_rows) {
  double loss = -std::log(std::max(sigmoid(dot(input_sum, positive_row)), 1e-300));
  for (const auto& neg : negative_rows) {
    loss += -std::log(std::max(sigmoid(-dot(input_sum, neg)), 1e-300));
  }
  return loss;
}

void pair_gradients(std::span<const double> input_sum, std::span<const double> positive_row,
                    const std::vector<std::span<const double>>& negative_rows,
                    std::span<double> grad_input, std::span<double> grad_positive,
                    const std::vector<std::span<double>>& grad_negatives) {
  const std::size_t d = input_sum.size();
  std::fill(grad_input.begin(), grad_input.end(), 0.0);
  // positive: d/dx of -log sigmoid(u.h) = (sigmoid(u.h) - 1)
  {
    const double g = sigmoid(dot(input_sum, positive_row)) - 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      grad_input[k] += g * positive_row[k];
      grad_positive[k] = g * input_sum[k];
    }
  }
  for (std::size_t n = 0; n < negative_rows.size(); ++n) {
    const double g = sigmoid(dot(input_sum, negative_rows[n]));
    for (std::size_t k = 0; k < d; ++k) {
      grad_input[k] += g * negative_rows[n][k];
      grad_negatives[n][k] = g * input_sum[k];
    }
  }
}

}  // namespace sgns

// ---------------------------------------------------------------------------
// Training

namespace {

struct VocabBuild {
  std::vector<std::string> tokens;
  std::vector<std::uint64_t> counts;
};

VocabBuild build_vocab(const Corpus& corpus, int min_count) {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::unordered_map<std::string, std::uint64_t> first_seen;
  std::uint64_t position = 0;
  for (const Paragraph& p : corpus.paragraphs) {
    for (const std::string& sentence : p.sentences) {
      for (auto& token : split_ws(sentence)) {
        auto [it, inserted] = counts.emplace(std::move(token), 0);
        it->second += 1;
        if (inserted) first_seen.emplace(it->first, position);
        ++position;
      }
    }
  }
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [token, count] : counts) {
    if (count >= static_cast<std::uint64_t>(min_count)) kept.emplace_back(token, count);
  }
  std::sort(kept.begin(), kept.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return first_seen[a.first] < first_seen[b.first];
  });
  VocabBuild out;
  for (auto& [token, count] : kept) {
    out.tokens.push_back(token);
    out.counts.push_back(count);
  }
  return out;
}

// cumulative table over count^0.75 for negative sampling
std::vector<double> negative_cdf(const std::vector<std::uint64_t>& counts) {
  std::vector<double> cdf(counts.size());
  double acc = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    acc += std::pow(static_cast<double>(counts[i]), 0.75);
    cdf[i] = acc;
  }
  for (double& x : cdf) x /= acc;
  return cdf;
}

std::uint32_t sample_cdf(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.uniform01();
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  return static_cast<std::uint32_t>(std::min<std::size_t>(
      static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1));
}

}  // namespace

EmbeddingModel train(const Corpus& corpus, const TrainConfig& config, TrainLog* log) {
  config.validate();
  VocabBuild vocab = build_vocab(corpus, config.min_count);
  if (vocab.tokens.empty())
    throw Error("train: no token reaches min_count; effective vocabulary is empty");

  EmbeddingModel model = EmbeddingModel::make(config, vocab.tokens, vocab.counts);
  const std::size_t d = static_cast<std::size_t>(config.dimensions);

  Rng rng(config.seed);
  // fastText-style init: inputs uniform in [-1/d, 1/d], outputs zero
  const double bound = 1.0 / static_cast<double>(d);
  for (double& x : model.word_matrix()) x = (rng.uniform01() * 2.0 - 1.0) * bound;
  for (double& x : model.bucket_matrix()) x = (rng.uniform01() * 2.0 - 1.0) * bound;
  std::vector<double> out_matrix(model.vocab_size() * d, 0.0);

  // token streams per sentence, restricted to vocabulary
  std::vector<std::vector<std::uint32_t>> sentences;
  std::uint64_t total_tokens = 0;
  for (const Paragraph& p : corpus.paragraphs) {
    for (const std::string& sentence : p.sentences) {
      std::vector<std::uint32_t> ids;
      for (const std::string& token : split_ws(sentence)) {
        if (auto idx = model.vocab_index(token)) ids.push_back(*idx);
      }
      if (ids.size() >= 1) {
        total_tokens += ids.size();
        sentences.push_back(std::move(ids));
      }
    }
  }
  if (total_tokens == 0) throw Error("train: corpus has no in-vocabulary tokens");

  // per-word subword buckets, precomputed once
  std::vector<std::vector<std::uint32_t>> word_buckets(model.vocab_size());
  for (std::uint32_t w = 0; w < model.vocab_size(); ++w) {
    word_buckets[w] = model.subword_buckets(model.vocab()[w]);
  }

  const std::vector<double> cdf = negative_cdf(vocab.counts);
  const double total_steps =
      static_cast<double>(config.epochs) * static_cast<double>(total_tokens);

  std::vector<double> hidden(d), grad_hidden(d), grad_pos(d);
  std::vector<std::vector<double>> grad_negs(
      static_cast<std::size_t>(config.negative_samples), std::vector<double>(d));
  std::vector<std::uint32_t> negatives;
  std::vector<std::span<const double>> neg_rows;
  std::vector<std::span<double>> neg_grads;
  std::uint64_t processed = 0;

  if (log) log->epoch_loss.clear();
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double epoch_loss = 0;
    std::uint64_t epoch_pairs = 0;
    for (const auto& ids : sentences) {
      for (std::size_t center = 0; center < ids.size(); ++center) {
        const std::uint32_t c = ids[center];
        const double lr =
            config.learning_rate *
            std::max(0.0, 1.0 - static_cast<double>(processed) / total_steps);
        ++processed;

        // compose the input vector of the center word
        double* wrow = model.word_matrix().data() + static_cast<std::size_t>(c) * d;
        std::copy(wrow, wrow + d, hidden.begin());
        for (std::uint32_t b : word_buckets[c]) {
          const double* brow = model.bucket_matrix().data() + static_cast<std::size_t>(b) * d;
          for (std::size_t k = 0; k < d; ++k) hidden[k] += brow[k];
        }

        const std::size_t lo = center >= static_cast<std::size_t>(config.window)
                                   ? center - static_cast<std::size_t>(config.window)
                                   : 0;
        const std::size_t hi =
            std::min(ids.size(), center + static_cast<std::size_t>(config.window) + 1);
        for (std::size_t ctx = lo; ctx < hi; ++ctx) {
          if (ctx == center) continue;
          const std::uint32_t target = ids[ctx];

          negatives.clear();
          if (model.vocab_size() > 1) {
            for (int k = 0; k < config.negative_samples; ++k) {
              std::uint32_t neg = target;
              for (int tries = 0; tries < 100 && neg == target; ++tries)
                neg = sample_cdf(cdf, rng);
              if (neg != target) negatives.push_back(neg);
            }
          }

          std::span<const double> pos_row(out_matrix.data() +
                                              static_cast<std::size_t>(target) * d,
                                          d);
          neg_rows.clear();
          neg_grads.clear();
          for (std::size_t n = 0; n < negatives.size(); ++n) {
            neg_rows.emplace_back(out_matrix.data() + static_cast<std::size_t>(negatives[n]) * d,
                                  d);
            neg_grads.emplace_back(grad_negs[n].data(), d);
          }

          if (log) {
            epoch_loss += sgns::pair_loss(hidden, pos_row, neg_rows);
            ++epoch_pairs;
          }
          sgns::pair_gradients(hidden, pos_row, neg_rows,
                               std::span<double>(grad_hidden.data(), d),
                               std::span<double>(grad_pos.data(), d), neg_grads);

          double* pos_mut = out_matrix.data() + static_cast<std::size_t>(target) * d;
          for (std::size_t k = 0; k < d; ++k) pos_mut[k] -= lr * grad_pos[k];
          for (std::size_t n = 0; n < negatives.size(); ++n) {
            double* neg_mut = out_matrix.data() + static_cast<std::size_t>(negatives[n]) * d;
            for (std::size_t k = 0; k < d; ++k) neg_mut[k] -= lr * grad_negs[n][k];
          }
          // the input gradient applies to the word vector and every bucket
          for (std::size_t k = 0; k < d; ++k) {
            wrow[k] -= lr * grad_hidden[k];
            hidden[k] -= lr * grad_hidden[k];  // keep the composition current
          }
          for (std::uint32_t b : word_buckets[c]) {
            double* brow = model.bucket_matrix().data() + static_cast<std::size_t>(b) * d;
            for (std::size_t k = 0; k < d; ++k) brow[k] -= lr * grad_hidden[k];
            for (std::size_t k = 0; k < d; ++k) hidden[k] -= lr * grad_hidden[k];
          }
        }
      }
    }
    if (log) log->epoch_loss.push_back(epoch_pairs ? epoch_loss / epoch_pairs : 0.0);
  }
  return model;
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error("cosine: dimension mismatch");
  double uv = 0, uu = 0, vv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    uv += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0 || vv == 0) return 0;
  return uv / (std::sqrt(uu) * std::sqrt(vv));
}

// ---------------------------------------------------------------------------
// Persistence

namespace {
constexpr char kMagic[4] = {'N', 'W', 'G', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
std::uint64_t get_u64(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw FormatError("model sidecar truncated");
  return v;
}
}  // namespace

void save_model(const EmbeddingModel& model, const std::string& vec_path,
                const std::string& bin_path) {
  // text vectors: composed word vectors, 6 significant digits
  {
    std::ostringstream out;
    out << model.vocab_size() << ' ' << model.dimensions() << '\n';
    char buf[64];
    for (std::size_t i = 0; i < model.vocab_size(); ++i) {
      out << model.vocab()[i];
      const auto v = model.word_vector(model.vocab()[i]);
      for (double x : v) {
        std::snprintf(buf, sizeof buf, " %.6g", x);
        out << buf;
      }
      out << '\n';
    }
    write_file(vec_path, out.str());
  }
  // binary sidecar: config, vocabulary, raw matrices
  std::ofstream out(bin_path, std::ios::binary);
  if (!out) throw IoError("cannot open " + bin_path + " for writing");
  out.write(kMagic, 4);
  const TrainConfig& c = model.config();
  const std::int32_t ints[8] = {c.dimensions,  c.window,      c.epochs,      c.negative_samples,
                                c.min_count,   c.subword_min, c.subword_max, c.bucket_count};
  out.write(reinterpret_cast<const char*>(ints), sizeof ints);
  out.write(reinterpret_cast<const char*>(&c.learning_rate), sizeof c.learning_rate);
  put_u64(out, c.seed);
  put_u64(out, model.vocab_size());
  for (std::size_t i = 0; i < model.vocab_size(); ++i) {
    put_u64(out, model.vocab()[i].size());
    out.write(model.vocab()[i].data(), static_cast<std::streamsize>(model.vocab()[i].size()));
    put_u64(out, model.counts()[i]);
  }
  const auto& wm = model.word_matrix();
  const auto& bm = model.bucket_matrix();
  out.write(reinterpret_cast<const char*>(wm.data()),
            static_cast<std::streamsize>(wm.size() * sizeof(double)));
  out.write(reinterpret_cast<const char*>(bm.data()),
            static_cast<std::streamsize>(bm.size() * sizeof(double)));
  if (!out) throw IoError("write failure on " + bin_path);
}

EmbeddingModel load_model(const std::string& vec_path, const std::string& bin_path) {
  // sidecar first: authoritative parameters
  std::ifstream in(bin_path, std::ios::binary);
  if (!in) throw IoError("cannot open " + bin_path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw FormatError(bin_path + ": not a model sidecar");
  TrainConfig c;
  std::int32_t ints[8];
  in.read(reinterpret_cast<char*>(ints), sizeof ints);
  if (!in) throw FormatError("model sidecar truncated");
  c.dimensions = ints[0];
  c.window = ints[1];
  c.epochs = ints[2];
  c.negative_samples = ints[3];
  c.min_count = ints[4];
  c.subword_min = ints[5];
  c.subword_max = ints[6];
  c.bucket_count = ints[7];
  in.read(reinterpret_cast<char*>(&c.learning_rate), sizeof c.learning_rate);
  if (!in) throw FormatError("model sidecar truncated");
  c.seed = get_u64(in);
  const std::uint64_t vocab_size = get_u64(in);
  std::vector<std::string> vocab(vocab_size);
  std::vector<std::uint64_t> counts(vocab_size);
  for (std::uint64_t i = 0; i < vocab_size; ++i) {
    const std::uint64_t len = get_u64(in);
    vocab[i].resize(len);
    in.read(vocab[i].data(), static_cast<std::streamsize>(len));
    if (!in) throw FormatError("model sidecar truncated");
    counts[i] = get_u64(in);
  }
  EmbeddingModel model = EmbeddingModel::make(c, std::move(vocab), std::move(counts));
  auto& wm = model.word_matrix();
  auto& bm = model.bucket_matrix();
  in.read(reinterpret_cast<char*>(wm.data()),
          static_cast<std::streamsize>(wm.size() * sizeof(double)));
  in.read(reinterpret_cast<char*>(bm.data()),
          static_cast<std::streamsize>(bm.size() * sizeof(double)));
  if (!in) throw FormatError("model sidecar truncated");

  // cross-check the text header and row count
  const std::string vec = read_file(vec_path);
  std::istringstream vs(vec);
  std::uint64_t n = 0;
  int d = 0;
  if (!(vs >> n >> d)) throw FormatError(vec_path + ": bad header");
  if (n != model.vocab_size() || d != model.dimensions())
    throw FormatError(vec_path + ": header disagrees with model (" + std::to_string(n) + " " +
                      std::to_string(d) + ")");
  std::string line;
  std::getline(vs, line);  // rest of header line
  std::uint64_t rows = 0;
  while (std::getline(vs, line)) {
    if (line.empty()) continue;
    ++rows;
    const std::size_t sp = line.find(' ');
    const std::string token = line.substr(0, sp);
    if (rows <= model.vocab_size() && token != model.vocab()[rows - 1])
      throw FormatError(vec_path + ": row " + std::to_string(rows) + " names '" + token +
                        "', sidecar has '" + model.vocab()[rows - 1] + "'");
  }
  if (rows != model.vocab_size())
    throw FormatError(vec_path + ": header declares " + std::to_string(n) + " rows, found " +
                      std::to_string(rows));
  return model;
}

}  // namespace nawgen
