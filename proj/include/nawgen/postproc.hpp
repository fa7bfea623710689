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

#ifndef NAWGEN_POSTPROC_HPP
#define NAWGEN_POSTPROC_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nawgen/corpus.hpp"
#include "nawgen/grammar.hpp"
#include "nawgen/lexicon.hpp"
#include "nawgen/rng.hpp"

namespace nawgen {

// Categorical distribution over one category's lexicon entries (the empty
// pseudo-entry included where the category has one).
struct Categorical {
  Category category = Category::noun;
  std::vector<std::uint32_t> support;  // lexicon ordinals
  std::vector<double> probs;

  void validate(const Lexicon& lex) const;  // probs >= 0, sum 1 ± 1e-9, entries match
  std::uint32_t sample(Rng& rng) const;     // lexicon ordinal
};

struct TagDistributions {
  std::map<Tag, Categorical> dists;
};

class ParagraphLengthModel {
 public:
  explicit ParagraphLengthModel(std::map<std::uint32_t, double> pmf);
  static ParagraphLengthModel fixed(std::uint32_t length);

  double mean() const { return mean_; }
  const std::map<std::uint32_t, double>& pmf() const { return pmf_; }
  std::uint32_t sample(Rng& rng) const;

 private:
  std::map<std::uint32_t, double> pmf_;
  double mean_ = 0;
};

// Replaces every tag slot by an independent draw from its distribution.
// Deterministic for a fixed seed; non-tag slots untouched.
SentenceTemplate substitute_tags(const SentenceTemplate& tpl, const TagDistributions& dists,
                                 std::uint64_t seed);

// Renders a fully resolved template to its surface sentence. Throws
// PreconditionError when tags remain.
std::string realize(const SentenceTemplate& tpl, const Lexicon& lex);

struct EstimatedModels {
  TagDistributions tags;
  ParagraphLengthModel paragraphs;
  Categorical connectors;  // empty support when the lexicon has none
  double p_connect = 0;    // fraction of internal boundaries opened by a connector
};

// Token statistics from a corpus: tag distributions by add-one smoothed
// relative frequency over each category's lexicon support (uniform when the
// category never occurs), paragraph lengths from the corpus paragraphs.
EstimatedModels estimate_distributions(const Corpus& corpus, const Lexicon& lex);

// Partitions sentences in order into paragraphs with i.i.d. lengths drawn
// from the model; the last paragraph may be short.
std::vector<std::vector<std::string>> segment_paragraphs(const std::vector<std::string>& sentences,
                                                         const ParagraphLengthModel& model,
                                                         std::uint64_t seed);

// Fuses each internal sentence boundary with probability p_connect: the
// period is removed, a lowercase connector drawn from the distribution is
// inserted, and the following sentence loses its capital.
std::vector<std::string> insert_connectors(const std::vector<std::string>& paragraph,
                                           double p_connect, const Categorical& connectors,
                                           const Lexicon& lex, std::uint64_t seed);

// Within one paragraph: whitespace collapsed, ends trimmed, empties dropped,
// first letter capitalized, terminal period ensured, exact duplicates removed
// (first kept). Idempotent.
std::vector<std::string> normalize(const std::vector<std::string>& paragraph);

}  // namespace nawgen

#endif  // NAWGEN_POSTPROC_HPP
