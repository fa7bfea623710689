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

#ifndef NAWGEN_EMBED_HPP
#define NAWGEN_EMBED_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nawgen/corpus.hpp"

namespace nawgen {

struct TrainConfig {
  int dimensions = 50;
  int window = 5;
  int epochs = 5;
  int negative_samples = 5;
  int min_count = 1;
  int subword_min = 3;
  int subword_max = 6;
  int bucket_count = 200000;
  double learning_rate = 0.05;
  std::uint64_t seed = 1;

  void validate() const;
  // Hyperparameters used for full-size runs: 300 dimensions, window 5,
  // 20 epochs, skip-gram.
  static TrainConfig full_scale();

  bool operator==(const TrainConfig&) const = default;
};

// Subword skip-gram model: a word's vector is the sum of its own vector and
// its hashed character n-gram bucket vectors, so out-of-vocabulary lookups
// never fail.
class EmbeddingModel {
 public:
  EmbeddingModel() = default;

  int dimensions() const { return config_.dimensions; }
  std::size_t vocab_size() const { return vocab_.size(); }
  const TrainConfig& config() const { return config_; }
  const std::vector<std::string>& vocab() const { return vocab_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  std::optional<std::uint32_t> vocab_index(std::string_view token) const;

  // Bucket ids of a token's character n-grams (token wrapped in '<'/'>';
  // tokens shorter than subword_min have none).
  std::vector<std::uint32_t> subword_buckets(std::string_view token) const;

  std::vector<double> word_vector(std::string_view token) const;
  // Mean of word_vector over tokens outside the stoplist; zero when every
  // token is stopped.
  std::vector<double> sentence_vector(std::string_view sentence,
                                      const std::set<std::string>& stoplist = {}) const;

  // Raw parameter access (training, persistence, gradient checks).
  std::span<const double> word_row(std::uint32_t index) const;
  std::span<const double> bucket_row(std::uint32_t bucket) const;
  std::vector<double>& word_matrix() { return word_in_; }
  std::vector<double>& bucket_matrix() { return bucket_in_; }
  const std::vector<double>& word_matrix() const { return word_in_; }
  const std::vector<double>& bucket_matrix() const { return bucket_in_; }

  // Diagnostics/tests: a model with given word vectors and no subwords.
  static EmbeddingModel from_word_vectors(const std::vector<std::string>& tokens,
                                          const std::vector<std::vector<double>>& vectors);

  static EmbeddingModel make(TrainConfig config, std::vector<std::string> vocab,
                             std::vector<std::uint64_t> counts);

 private:
  TrainConfig config_;
  std::vector<std::string> vocab_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<double> word_in_;    // vocab x d
  std::vector<double> bucket_in_;  // buckets x d
};

struct TrainLog {
  std::vector<double> epoch_loss;  // mean negative-sampling loss per epoch
};

// Skip-gram with negative sampling over (center, context) pairs within the
// window (windows do not cross sentence boundaries). Single-threaded and
// bit-reproducible for a fixed seed.
EmbeddingModel train(const Corpus& corpus, const TrainConfig& config, TrainLog* log = nullptr);

double cosine(std::span<const double> u, std::span<const double> v);

// Text .vec (header "<vocab> <dim>", composed vectors, 6 significant digits)
// plus a binary sidecar holding the raw word/bucket matrices bit-exactly.
void save_model(const EmbeddingModel& model, const std::string& vec_path,
                const std::string& bin_path);
EmbeddingModel load_model(const std::string& vec_path, const std::string& bin_path);

namespace sgns {
// Negative-sampling objective for one center word whose input vector is
// `input_sum`, scored against one positive and any number of negative output
// rows. Shared by the trainer and the finite-difference tests.
double pair_loss(std::span<const double> input_sum, std::span<const double> positive_row,
                 const std::vector<std::span<const double>>& negative_rows);

// Gradients of pair_loss. grad_input receives d(loss)/d(input_sum); the rows
// of grad_outputs receive d(loss)/d(output_row) for positive then negatives.
void pair_gradients(std::span<const double> input_sum, std::span<const double> positive_row,
                    const std::vector<std::span<const double>>& negative_rows,
                    std::span<double> grad_input, std::span<double> grad_positive,
                    const std::vector<std::span<double>>& grad_negatives);
}  // namespace sgns

}  // namespace nawgen

#endif  // NAWGEN_EMBED_HPP
