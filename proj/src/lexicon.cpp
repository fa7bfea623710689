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

#include "nawgen/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "nawgen/errors.hpp"
#include "nawgen/text.hpp"

namespace nawgen {

namespace {

constexpr std::string_view kEmptyMark = "∅";  // ∅

const std::array<std::string_view, kCategoryCount> kCategoryNames = {
    "noun",          "verb",          "adjective",
    "possessive",    "negation",      "marker_temporal",
    "marker_place",  "marker_noun_quantity", "marker_verb_intensity",
    "marker_subject", "marker_object", "rhetorical_connector",
    "pronoun",       "article",       "adverb_quantity",
    "adverb_time",
};

// Declared per-category cardinalities for the two bundled grammars; the
// empty pseudo-entry counts toward a slot's cardinality.
struct CardinalityRule {
  Category category;
  std::size_t expected;
};

const std::vector<CardinalityRule>& cardinality_table(GrammarId id) {
  static const std::vector<CardinalityRule> g0 = {
      {Category::noun, 26},       {Category::verb, 16},
      {Category::adjective, 3},   {Category::possessive, 3},
      {Category::article, 3},     {Category::pronoun, 3},
      {Category::marker_subject, 3}, {Category::negation, 3},
      {Category::adverb_quantity, 5}, {Category::adverb_time, 7},
  };
  static const std::vector<CardinalityRule> g1 = {
      {Category::negation, 11},   {Category::marker_temporal, 11},
      {Category::marker_verb_intensity, 4}, {Category::marker_subject, 1},
      {Category::marker_object, 1}, {Category::verb, 27},
      {Category::marker_noun_quantity, 4}, {Category::adjective, 10},
      {Category::possessive, 4},  {Category::noun, 42},
      {Category::marker_place, 8},
  };
  return id == GrammarId::g0 ? g0 : g1;
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == '\t') {
      out.emplace_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace

std::string_view to_string(Category c) { return kCategoryNames[static_cast<std::size_t>(c)]; }

std::optional<Category> category_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    if (kCategoryNames[i] == s) return static_cast<Category>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Animacy a) {
  switch (a) {
    case Animacy::animate: return "animate";
    case Animacy::inanimate: return "inanimate";
    case Animacy::both: return "both";
    case Animacy::not_applicable: return "na";
  }
  return "na";
}

std::optional<Animacy> animacy_from_string(std::string_view s) {
  if (s == "animate") return Animacy::animate;
  if (s == "inanimate") return Animacy::inanimate;
  if (s == "both") return Animacy::both;
  if (s == "na" || s == "n/a") return Animacy::not_applicable;
  return std::nullopt;
}

bool animacy_compatible(Animacy noun, Animacy verb) {
  if (noun == Animacy::both || verb == Animacy::both) return true;
  return noun == verb;
}

std::string_view to_string(GrammarId id) { return id == GrammarId::g0 ? "g0" : "g1"; }

std::optional<GrammarId> grammar_id_from_string(std::string_view s) {
  if (s == "g0") return GrammarId::g0;
  if (s == "g1") return GrammarId::g1;
  return std::nullopt;
}

std::string LexEntry::stem() const {
  if (!has_absolutive()) return surface;
  std::string out = surface;
  out.erase(absolutive_pos, absolutive_len);
  return out;
}

std::string possessed_form(const LexEntry& entry) {
  if (entry.category != Category::noun) {
    throw PreconditionError("possessed_form: entry '" + entry.surface + "' is " +
                            std::string(to_string(entry.category)) + ", not a noun");
  }
  return entry.stem();
}

Lexicon Lexicon::load(const std::string& path) { return parse(read_file(path), path); }

Lexicon Lexicon::parse(std::string_view text, const std::string& name) {
  Lexicon lex;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (end == text.size() && line.empty() && start > text.size()) break;

    std::string stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped.rfind("#!grammar:", 0) == 0) {
      auto id = grammar_id_from_string(trim(stripped.substr(10)));
      if (!id) throw ParseError(name, line_no, "unknown grammar id in header");
      lex.id_ = id;
      continue;
    }
    if (stripped[0] == '#') continue;

    auto cols = split_tabs(line);
    if (cols.size() < 4 || cols.size() > 5) {
      throw ParseError(name, line_no, "expected 4 or 5 tab-separated columns, got " +
                                          std::to_string(cols.size()));
    }
    LexEntry e;
    std::string raw_surface = trim(cols[0]);
    auto cat = category_from_string(trim(cols[1]));
    if (!cat) throw ParseError(name, line_no, "unknown category '" + trim(cols[1]) + "'");
    e.category = *cat;
    auto ani = animacy_from_string(trim(cols[2]));
    if (!ani) throw ParseError(name, line_no, "unknown animacy '" + trim(cols[2]) + "'");
    e.animacy = *ani;
    e.gloss = trim(cols[3]);
    if (cols.size() == 5) {
      std::size_t fstart = 0;
      const std::string flags = trim(cols[4]);
      for (std::size_t i = 0; i <= flags.size(); ++i) {
        if (i < flags.size() && flags[i] != ',') continue;
        const std::string f = trim(std::string_view(flags).substr(fstart, i - fstart));
        fstart = i + 1;
        if (f == "padded") e.padded = true;
        else if (f == "inferred") e.inferred = true;
        else if (!f.empty()) throw ParseError(name, line_no, "unknown flag '" + f + "'");
      }
    }

    if (raw_surface == kEmptyMark) {
      e.surface.clear();
    } else {
      const std::size_t open = raw_surface.find('(');
      if (open != std::string::npos) {
        const std::size_t close = raw_surface.find(')', open);
        if (close == std::string::npos)
          throw ParseError(name, line_no, "unterminated absolutive parenthesis");
        if (raw_surface.find('(', close) != std::string::npos)
          throw ParseError(name, line_no, "more than one absolutive span");
        e.surface = raw_surface.substr(0, open) + raw_surface.substr(open + 1, close - open - 1) +
                    raw_surface.substr(close + 1);
        e.absolutive_pos = open;
        e.absolutive_len = close - open - 1;
        if (e.absolutive_len == 0)
          throw ParseError(name, line_no, "empty absolutive span");
      } else {
        e.surface = raw_surface;
      }
      if (e.surface.empty()) throw ParseError(name, line_no, "empty surface");
      if (has_whitespace(e.surface))
        throw ParseError(name, line_no, "surface '" + e.surface + "' contains whitespace");
    }
    lex.entries_.push_back(std::move(e));
  }
  lex.index_and_validate(name);
  return lex;
}

Lexicon Lexicon::from_entries(std::vector<LexEntry> entries, std::optional<GrammarId> id) {
  Lexicon lex;
  lex.entries_ = std::move(entries);
  lex.id_ = id;
  lex.index_and_validate("<entries>");
  return lex;
}

void Lexicon::index_and_validate(const std::string& name) {
  if (entries_.empty()) throw ValidationError(name + ": knowledge base has no entries");

  for (auto& v : by_category_) v.clear();
  std::set<std::pair<std::string, Category>> seen;
  for (std::uint32_t i = 0; i < entries_.size(); ++i) {
    const LexEntry& e = entries_[i];
    if (!seen.insert({e.surface, e.category}).second) {
      throw ValidationError(name + ": duplicate entry '" + (e.is_empty() ? "∅" : e.surface) +
                            "' in category " + std::string(to_string(e.category)));
    }
    if (e.has_absolutive() && e.category != Category::noun) {
      throw ValidationError(name + ": absolutive suffix on non-noun '" + e.surface + "'");
    }
    const bool needs_animacy = e.category == Category::noun || e.category == Category::verb;
    if (needs_animacy && e.animacy == Animacy::not_applicable) {
      throw ValidationError(name + ": noun/verb '" + e.surface + "' lacks an animacy tag");
    }
    if (!needs_animacy && e.animacy != Animacy::not_applicable) {
      throw ValidationError(name + ": animacy tag on '" + e.surface + "' (" +
                            std::string(to_string(e.category)) + ")");
    }
    if (e.is_empty() && needs_animacy) {
      throw ValidationError(name + ": empty pseudo-entry cannot be a noun or verb");
    }
    by_category_[static_cast<std::size_t>(e.category)].push_back(i);
  }

  if (id_) {
    if (category_size(Category::noun) == 0)
      throw ValidationError(name + ": grammar KB declares " + std::string(to_string(*id_)) +
                            " but has zero nouns");
    for (const auto& rule : cardinality_table(*id_)) {
      const std::size_t got = category_size(rule.category);
      if (got != rule.expected) {
        throw ValidationError(name + ": " + std::string(to_string(*id_)) + " expects " +
                              std::to_string(rule.expected) + " " +
                              std::string(to_string(rule.category)) + " entries, found " +
                              std::to_string(got));
      }
    }
  }
}

std::vector<const LexEntry*> Lexicon::entries_by_category(Category c) const {
  std::vector<const LexEntry*> out;
  out.reserve(category_size(c));
  for (std::uint32_t i : category_ordinals(c)) out.push_back(&entries_[i]);
  return out;
}

std::optional<std::uint32_t> Lexicon::find(std::string_view surface, Category c) const {
  for (std::uint32_t i : category_ordinals(c)) {
    if (entries_[i].surface == surface) return i;
  }
  return std::nullopt;
}

std::string Lexicon::to_text() const {
  std::ostringstream out;
  if (id_) out << "#!grammar: " << to_string(*id_) << "\n";
  out << "# surface\tcategory\tanimacy\tgloss\tflags\n";
  for (const LexEntry& e : entries_) {
    std::string surface;
    if (e.is_empty()) {
      surface = kEmptyMark;
    } else if (e.has_absolutive()) {
      surface = e.surface.substr(0, e.absolutive_pos) + "(" +
                e.surface.substr(e.absolutive_pos, e.absolutive_len) + ")" +
                e.surface.substr(e.absolutive_pos + e.absolutive_len);
    } else {
      surface = e.surface;
    }
    out << surface << '\t' << to_string(e.category) << '\t' << to_string(e.animacy) << '\t'
        << e.gloss;
    if (e.padded || e.inferred) {
      out << '\t';
      if (e.padded) out << "padded";
      if (e.padded && e.inferred) out << ',';
      if (e.inferred) out << "inferred";
    }
    out << '\n';
  }
  return out.str();
}

void Lexicon::save(const std::string& path) const { write_file(path, to_text()); }

}  // namespace nawgen
