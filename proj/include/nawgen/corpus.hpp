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

#ifndef NAWGEN_CORPUS_HPP
#define NAWGEN_CORPUS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nawgen {

enum class Provenance : std::uint8_t { authentic, artificial_g0, artificial_g1 };

std::string_view to_string(Provenance p);
std::optional<Provenance> provenance_from_string(std::string_view s);

struct Paragraph {
  Provenance provenance = Provenance::authentic;
  std::vector<std::string> sentences;

  bool operator==(const Paragraph&) const = default;
};

struct Corpus {
  std::vector<Paragraph> paragraphs;
  std::map<std::string, std::string> metadata;

  bool operator==(const Corpus&) const = default;
};

struct ProvenanceStats {
  std::uint64_t tokens = 0;
  std::uint64_t sentences = 0;
  std::uint64_t paragraphs = 0;

  bool operator==(const ProvenanceStats&) const = default;
};

struct CorpusStats {
  std::uint64_t tokens = 0;
  std::uint64_t sentences = 0;
  std::uint64_t paragraphs = 0;
  std::uint64_t types = 0;  // distinct whitespace tokens
  std::map<Provenance, ProvenanceStats> by_provenance;

  bool operator==(const CorpusStats&) const = default;
};

// Plain-text format: one sentence per line, one or more blank lines separate
// paragraphs, "#!provenance: <p>" switches the provenance of following
// paragraphs, "#!meta: key=value" records metadata.
Corpus read_corpus(const std::string& path);
Corpus parse_corpus(std::string_view text, const std::string& name = "<memory>");
void write_corpus(const Corpus& corpus, const std::string& path);
std::string corpus_to_text(const Corpus& corpus);

// Concatenation preserving provenance; metadata records the source counts.
Corpus merge(const Corpus& authentic, const Corpus& artificial);

// Exact counts under whitespace tokenization.
CorpusStats stats(const Corpus& corpus);

std::string format_stats(const CorpusStats& s);

}  // namespace nawgen

#endif  // NAWGEN_CORPUS_HPP
