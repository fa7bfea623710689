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

#include "nawgen/postproc.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "nawgen/errors.hpp"
#include "nawgen/text.hpp"

namespace nawgen {

void Categorical::validate(const Lexicon& lex) const {
  if (support.size() != probs.size())
    throw ConfigError("categorical: support/probability size mismatch");
  double sum = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (probs[i] < 0) throw ConfigError("categorical: negative probability");
    if (support[i] >= lex.entries().size())
      throw ConfigError("categorical: support ordinal out of range");
    if (lex.entry(support[i]).category != category)
      throw ConfigError("categorical: support entry '" + lex.entry(support[i]).surface +
                        "' is not a " + std::string(to_string(category)));
    sum += probs[i];
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ConfigError("categorical: probabilities sum to " + std::to_string(sum));
}

std::uint32_t Categorical::sample(Rng& rng) const {
  const double u = rng.uniform01();
  double acc = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    acc += probs[i];
    if (u < acc) return support[i];
  }
  return support.back();
}

ParagraphLengthModel::ParagraphLengthModel(std::map<std::uint32_t, double> pmf)
    : pmf_(std::move(pmf)) {
  double sum = 0;
  for (const auto& [len, p] : pmf_) {
    if (len < 1) throw ValidationError("paragraph length model: support below 1");
    if (p < 0) throw ValidationError("paragraph length model: negative probability");
    sum += p;
    mean_ += static_cast<double>(len) * p;
  }
  if (pmf_.empty() || sum <= 0) throw ValidationError("paragraph length model: empty distribution");
  // tolerate unnormalized counts
  if (std::abs(sum - 1.0) > 1e-9) {
    for (auto& [len, p] : pmf_) p /= sum;
    mean_ /= sum;
  }
  if (mean_ <= 0) throw ValidationError("paragraph length model: nonpositive mean");
}

ParagraphLengthModel ParagraphLengthModel::fixed(std::uint32_t length) {
  return ParagraphLengthModel({{length, 1.0}});
}

std::uint32_t ParagraphLengthModel::sample(Rng& rng) const {
  const double u = rng.uniform01();
  double acc = 0;
  for (const auto& [len, p] : pmf_) {
    acc += p;
    if (u < acc) return len;
  }
  return pmf_.rbegin()->first;
}

SentenceTemplate substitute_tags(const SentenceTemplate& tpl, const TagDistributions& dists,
                                 std::uint64_t seed) {
  SentenceTemplate out = tpl;
  Rng rng(seed);
  for (TemplateSlot& slot : out.slots) {
    if (!slot.is_tag()) continue;
    auto it = dists.dists.find(*slot.tag);
    if (it == dists.dists.end())
      throw ConfigError("no distribution configured for tag " +
                        std::string(tag_token(*slot.tag)));
    slot.entry = static_cast<std::int32_t>(it->second.sample(rng));
    slot.tag.reset();
  }
  return out;
}

std::string realize(const SentenceTemplate& tpl, const Lexicon& lex) {
  if (tpl.has_tags())
    throw PreconditionError("realize: template still contains symbolic tags");
  return render_template(tpl, lex);
}

namespace {

Categorical smoothed_distribution(Category cat, const Lexicon& lex,
                                  const std::unordered_map<std::string, std::uint64_t>& counts) {
  Categorical dist;
  dist.category = cat;
  const auto& ordinals = lex.category_ordinals(cat);
  std::uint64_t total = 0;
  std::vector<std::uint64_t> per_entry(ordinals.size(), 0);
  for (std::size_t i = 0; i < ordinals.size(); ++i) {
    const LexEntry& e = lex.entry(ordinals[i]);
    if (e.is_empty()) continue;  // absence is not observable; smoothing covers it
    auto it = counts.find(fold_text(e.surface));
    if (it != counts.end()) {
      per_entry[i] = it->second;
      total += it->second;
    }
  }
  // add-one smoothing over the category's lexicon support
  const double denom = static_cast<double>(total) + static_cast<double>(ordinals.size());
  dist.support.assign(ordinals.begin(), ordinals.end());
  dist.probs.resize(ordinals.size());
  for (std::size_t i = 0; i < ordinals.size(); ++i) {
    dist.probs[i] = (static_cast<double>(per_entry[i]) + 1.0) / denom;
  }
  return dist;
}

}  // namespace

EstimatedModels estimate_distributions(const Corpus& corpus, const Lexicon& lex) {
  if (corpus.paragraphs.empty())
    throw Error("estimate_distributions: corpus has no paragraphs");

  std::unordered_map<std::string, std::uint64_t> counts;
  std::map<std::uint32_t, double> lengths;
  std::uint64_t internal_boundaries = 0;
  std::uint64_t connector_starts = 0;

  std::unordered_set<std::string> connector_surfaces;
  for (std::uint32_t i : lex.category_ordinals(Category::rhetorical_connector)) {
    if (!lex.entry(i).is_empty()) connector_surfaces.insert(fold_text(lex.entry(i).surface));
  }

  for (const Paragraph& p : corpus.paragraphs) {
    if (p.sentences.empty()) continue;
    lengths[static_cast<std::uint32_t>(p.sentences.size())] += 1.0;
    for (std::size_t si = 0; si < p.sentences.size(); ++si) {
      const auto tokens = split_ws(p.sentences[si]);
      for (const std::string& token : tokens) counts[fold_text(token)] += 1;
      if (si > 0) {
        ++internal_boundaries;
        if (!tokens.empty() && connector_surfaces.count(fold_text(tokens.front())))
          ++connector_starts;
      }
    }
  }
  if (lengths.empty()) throw Error("estimate_distributions: corpus has no sentences");

  EstimatedModels out{TagDistributions{}, ParagraphLengthModel(std::move(lengths)), Categorical{},
                      0.0};
  for (std::size_t t = 0; t < kTagCount; ++t) {
    const Tag tag = static_cast<Tag>(t);
    const Category cat = tag_category(tag);
    if (lex.category_size(cat) == 0) continue;  // grammar without this category
    out.tags.dists.emplace(tag, smoothed_distribution(cat, lex, counts));
  }
  if (lex.category_size(Category::rhetorical_connector) > 0) {
    out.connectors = smoothed_distribution(Category::rhetorical_connector, lex, counts);
  }
  out.p_connect = internal_boundaries == 0
                      ? 0.0
                      : static_cast<double>(connector_starts) /
                            static_cast<double>(internal_boundaries);
  return out;
}

std::vector<std::vector<std::string>> segment_paragraphs(const std::vector<std::string>& sentences,
                                                         const ParagraphLengthModel& model,
                                                         std::uint64_t seed) {
  std::vector<std::vector<std::string>> out;
  Rng rng(seed);
  std::size_t i = 0;
  while (i < sentences.size()) {
    const std::uint32_t len = model.sample(rng);
    const std::size_t take = std::min<std::size_t>(len, sentences.size() - i);
    out.emplace_back(sentences.begin() + static_cast<std::ptrdiff_t>(i),
                     sentences.begin() + static_cast<std::ptrdiff_t>(i + take));
    i += take;
  }
  return out;
}

std::vector<std::string> insert_connectors(const std::vector<std::string>& paragraph,
                                           double p_connect, const Categorical& connectors,
                                           const Lexicon& lex, std::uint64_t seed) {
  if (p_connect < 0 || p_connect > 1)
    throw PreconditionError("insert_connectors: p_connect outside [0, 1]");
  if (paragraph.empty()) return {};
  std::vector<std::string> out;
  out.push_back(paragraph[0]);
  Rng rng(seed);
  for (std::size_t i = 1; i < paragraph.size(); ++i) {
    const bool fuse =
        !connectors.support.empty() && p_connect > 0 && rng.bernoulli(p_connect);
    if (!fuse) {
      out.push_back(paragraph[i]);
      continue;
    }
    std::string& prev = out.back();
    while (!prev.empty() && prev.back() == '.') prev.pop_back();
    std::string follower = paragraph[i];
    if (!follower.empty() && follower[0] >= 'A' && follower[0] <= 'Z')
      follower[0] = static_cast<char>(follower[0] - 'A' + 'a');
    const LexEntry& conn = lex.entry(connectors.sample(rng));
    prev += " " + fold_text(conn.surface) + " " + follower;
  }
  return out;
}

std::vector<std::string> normalize(const std::vector<std::string>& paragraph) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const std::string& raw : paragraph) {
    std::string s = collapse_ws(raw);
    if (s.empty()) continue;
    capitalize_first(s);
    if (s.back() != '.') s.push_back('.');
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace nawgen
