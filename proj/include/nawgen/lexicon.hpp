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

#ifndef NAWGEN_LEXICON_HPP
#define NAWGEN_LEXICON_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nawgen {

enum class Category : std::uint8_t {
  noun,
  verb,
  adjective,
  possessive,
  negation,
  marker_temporal,
  marker_place,
  marker_noun_quantity,
  marker_verb_intensity,
  marker_subject,
  marker_object,
  rhetorical_connector,
  pronoun,
  article,
  adverb_quantity,
  adverb_time,
};
inline constexpr std::size_t kCategoryCount = 16;

std::string_view to_string(Category c);
std::optional<Category> category_from_string(std::string_view s);

enum class Animacy : std::uint8_t { animate, inanimate, both, not_applicable };

std::string_view to_string(Animacy a);
std::optional<Animacy> animacy_from_string(std::string_view s);

// The animate/inanimate agreement test: "both" intersects everything.
bool animacy_compatible(Animacy noun, Animacy verb);

enum class GrammarId : std::uint8_t { g0, g1 };

std::string_view to_string(GrammarId id);
std::optional<GrammarId> grammar_id_from_string(std::string_view s);

// One terminal token of a knowledge base. `surface` is the full form with
// the droppable absolutive suffix included ("ichpochtli"); the suffix span
// is recorded separately so the possessed stem can be produced.
struct LexEntry {
  std::string surface;
  Category category = Category::noun;
  Animacy animacy = Animacy::not_applicable;
  std::size_t absolutive_pos = 0;
  std::size_t absolutive_len = 0;
  std::string gloss;
  bool padded = false;    // added to meet a declared cardinality
  bool inferred = false;  // animacy or membership not explicit in the source data

  bool has_absolutive() const { return absolutive_len > 0; }
  bool is_empty() const { return surface.empty(); }
  // Surface with the absolutive suffix removed.
  std::string stem() const;

  bool operator==(const LexEntry&) const = default;
};

// Possessed stem of a noun; identity when the noun has no absolutive.
// Throws PreconditionError for non-noun entries.
std::string possessed_form(const LexEntry& entry);

// Immutable after construction; safe to share across threads.
class Lexicon {
 public:
  // Loads a KB file: UTF-8, tab separated, columns
  //   surface  category  animacy  gloss  [flags]
  // with '#' comments, an optional "#!grammar: g0|g1" header, the
  // absolutive marked inline with ASCII parentheses and the empty
  // pseudo-entry written as a single U+2205.
  static Lexicon load(const std::string& path);
  static Lexicon parse(std::string_view text, const std::string& name = "<memory>");
  // For toy grammars and tests; skips the per-grammar cardinality table.
  static Lexicon from_entries(std::vector<LexEntry> entries,
                              std::optional<GrammarId> id = std::nullopt);

  void save(const std::string& path) const;
  std::string to_text() const;

  const std::vector<LexEntry>& entries() const { return entries_; }
  std::optional<GrammarId> grammar_id() const { return id_; }
  const LexEntry& entry(std::uint32_t ordinal) const { return entries_[ordinal]; }

  // File-order ordinals of one category's entries; empty if absent.
  const std::vector<std::uint32_t>& category_ordinals(Category c) const {
    return by_category_[static_cast<std::size_t>(c)];
  }
  std::vector<const LexEntry*> entries_by_category(Category c) const;
  std::size_t category_size(Category c) const { return category_ordinals(c).size(); }

  std::optional<std::uint32_t> find(std::string_view surface, Category c) const;

  bool operator==(const Lexicon&) const = default;

 private:
  Lexicon() = default;
  void index_and_validate(const std::string& name);

  std::vector<LexEntry> entries_;
  std::optional<GrammarId> id_;
  std::array<std::vector<std::uint32_t>, kCategoryCount> by_category_;
};

}  // namespace nawgen

#endif  // NAWGEN_LEXICON_HPP
