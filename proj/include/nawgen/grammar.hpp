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

#ifndef NAWGEN_GRAMMAR_HPP
#define NAWGEN_GRAMMAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nawgen/lexicon.hpp"

namespace nawgen {

enum class StructureLabel : std::uint8_t { VSO, VO, VS, VOS, SV, SOV, SVO, N, V, none };

std::string_view to_string(StructureLabel l);
std::optional<StructureLabel> structure_label_from_string(std::string_view s);

// Symbolic tags substituted in post-processing.
enum class Tag : std::uint8_t { neg, mcs, miv, mt, ml, adj };
inline constexpr std::size_t kTagCount = 6;

Category tag_category(Tag t);
std::optional<Tag> tag_for_category(Category c);
std::string_view tag_token(Tag t);  // "[neg]" etc.
std::optional<Tag> tag_from_token(std::string_view s);

enum class Join : std::uint8_t { space, concat };

struct Slot {
  std::string symbol;                     // nonterminal, category, or "[tag]"
  Join join = Join::space;                // attachment to the previous slot
  std::optional<std::string> agreement;   // group name from "{g}"
  std::optional<int> fixed_index;         // 1-based, from "symbol:k"

  bool operator==(const Slot&) const = default;
};

struct Rule {
  std::string lhs;
  std::vector<Slot> rhs;
  StructureLabel label = StructureLabel::none;
  // "{i=j}" suffixes: pairs of agreement group names to merge.
  std::vector<std::pair<std::string, std::string>> linked_groups;

  bool operator==(const Rule&) const = default;
};

// One resolved (or tagged) slot of a derivation.
struct TemplateSlot {
  Category category = Category::noun;
  std::int32_t entry = -1;  // ordinal into Lexicon::entries(); -1 when tagged
  std::optional<Tag> tag;
  Join join = Join::space;

  bool is_tag() const { return tag.has_value(); }
  bool operator==(const TemplateSlot&) const = default;
};

struct SentenceTemplate {
  StructureLabel label = StructureLabel::none;
  std::vector<TemplateSlot> slots;

  bool has_tags() const;
  bool operator==(const SentenceTemplate&) const = default;
};

// Renders a template left to right: space-joined slots separated by single
// spaces, concatenated slots fused, empty surfaces contributing nothing and a
// noun's absolutive suffix dropped when a non-empty possessive precedes it in
// the same fused word. Tag slots render as their "[tag]" token.
std::string render_template(const SentenceTemplate& tpl, const Lexicon& lex);

// Stage file round-trip: "LABEL<TAB>slot slot+slot ...", slots spelled
// category:surface (∅ for the empty surface) or as a tag token.
std::string template_to_line(const SentenceTemplate& tpl, const Lexicon& lex);
SentenceTemplate template_from_line(std::string_view line, const Lexicon& lex);

enum class ExpandMode : std::uint8_t { concrete, tagged };
using StructureFilter = std::optional<std::set<StructureLabel>>;

class Grammar {
 public:
  // Grammar definition file: one rule per line,
  //   LHS -> slot slot+slot ... [@LABEL] [{i=j}] | alternative ...
  // '+' marks agglutinative concatenation, '{g}' names an agreement group,
  // 'category:k' pins a slot to the k-th entry and '[tag]' is a literal
  // symbolic-tag slot. Lines with the same LHS accumulate alternatives.
  static Grammar load(const std::string& path);
  static Grammar parse(std::string_view text, const std::string& name = "<memory>");

  const std::vector<Rule>& rules() const { return rules_; }
  const std::set<std::string>& nonterminals() const { return nonterminals_; }
  const std::string& start() const { return start_; }
  std::vector<const Rule*> rules_for(std::string_view lhs) const;

  // Symbol resolution, non-recursion, join patterns, agreement arity.
  void validate(const Lexicon& lex) const;

 private:
  std::vector<Rule> rules_;
  std::set<std::string> nonterminals_;
  std::string start_;
};

class TemplateStream;

// Grammar + lexicon compiled to flat derivation variants. Enumeration order
// is deterministic: variants in declaration order, slot indices odometer-style
// with the leftmost slot most significant.
class ExpansionPlan {
 public:
  ExpansionPlan(const Grammar& grammar, const Lexicon& lexicon, ExpandMode mode,
                const StructureFilter& filter = {});

  const mpz_class& count() const { return total_; }
  std::size_t variant_count() const { return variants_.size(); }
  SentenceTemplate nth(const mpz_class& index) const;

  struct PlanSlot {
    Category category;
    Join join;
    std::uint32_t domain;      // number of choices this slot contributes
    std::int32_t fixed;        // >=0: pinned ordinal within the category
    std::int32_t agree_owner;  // >=0: copy the digit of that earlier slot
    bool tagged;
    Tag tag;
  };
  struct Variant {
    StructureLabel label;
    std::vector<PlanSlot> slots;
    mpz_class count;
    std::vector<mpz_class> suffix;  // suffix[i] = product of domains after slot i
  };
  const std::vector<Variant>& variants() const { return variants_; }
  const Lexicon& lexicon() const { return lexicon_; }

  void build_template(std::size_t variant, const std::vector<std::uint32_t>& digits,
                      SentenceTemplate& out) const;

 private:
  Lexicon lexicon_;  // kept by value so the plan owns everything it needs
  std::vector<Variant> variants_;
  mpz_class total_;
};

// Lazily yields every derivation exactly once.
class TemplateStream {
 public:
  explicit TemplateStream(std::shared_ptr<const ExpansionPlan> plan);
  bool next(SentenceTemplate& out);
  void reset();
  const ExpansionPlan& plan() const { return *plan_; }

 private:
  std::shared_ptr<const ExpansionPlan> plan_;
  std::size_t variant_ = 0;
  std::vector<std::uint32_t> digits_;
  bool exhausted_ = false;
  bool fresh_ = true;

  bool advance();
};

TemplateStream expand(const Grammar& grammar, const Lexicon& lexicon, ExpandMode mode,
                      const StructureFilter& filter = {});

// Exact number of derivations, computed analytically (never materialized).
mpz_class count_realizations(const Grammar& grammar, const Lexicon& lexicon,
                             const StructureFilter& filter = {},
                             ExpandMode mode = ExpandMode::concrete);

// Enumerates, renders and counts distinct surface strings. Refuses (Error
// naming the analytic count) when the realization count exceeds `limit`.
std::uint64_t count_distinct_surfaces(const Grammar& grammar, const Lexicon& lexicon,
                                      std::uint64_t limit, const StructureFilter& filter = {});

// n templates drawn uniformly over the whole derivation space (variants
// weighted by their analytic counts); deterministic for a fixed seed.
std::vector<SentenceTemplate> sample(const Grammar& grammar, const Lexicon& lexicon,
                                     std::uint64_t seed, std::size_t n,
                                     const StructureFilter& filter = {},
                                     ExpandMode mode = ExpandMode::concrete);

}  // namespace nawgen

#endif  // NAWGEN_GRAMMAR_HPP
