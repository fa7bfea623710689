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

#include <doctest.h>

#include "nawgen/errors.hpp"
#include "nawgen/semfilter.hpp"
#include "test_helpers.hpp"

using namespace nawgen;

namespace {

Lexicon g1() { return Lexicon::load(data_file("kb_g1.tsv")); }

TemplateSlot slot_for(const Lexicon& lex, const std::string& surface, Category cat) {
  TemplateSlot s;
  s.category = cat;
  s.entry = static_cast<std::int32_t>(*lex.find(surface, cat));
  return s;
}

SentenceTemplate pair_template(const Lexicon& lex, const std::string& noun,
                               const std::string& verb) {
  SentenceTemplate tpl;
  tpl.label = StructureLabel::VS;
  tpl.slots.push_back(slot_for(lex, verb, Category::verb));
  tpl.slots.push_back(slot_for(lex, noun, Category::noun));
  return tpl;
}

}  // namespace

TEST_SUITE("semfilter") {

TEST_CASE("documented noun-verb pairings classify as stated") {
  const Lexicon lex = g1();
  CHECK(is_consistent(pair_template(lex, "tatzin", "itta"), lex));
  CHECK_FALSE(is_consistent(pair_template(lex, "tlahtolli", "neki"), lex));
  CHECK(is_consistent(pair_template(lex, "tiotzin", "toka"), lex));
  CHECK(is_consistent(pair_template(lex, "nantzin", "neki"), lex));
  CHECK(is_consistent(pair_template(lex, "mapachin", "itta"), lex));
}

TEST_CASE("both nouns of a VSO template must fit the verb") {
  const Lexicon lex = g1();
  SentenceTemplate tpl = pair_template(lex, "tatzin", "neki");
  tpl.slots.push_back(slot_for(lex, "tlahtolli", Category::noun));  // object
  CHECK_FALSE(is_consistent(tpl, lex));
  tpl.slots.back() = slot_for(lex, "nantzin", Category::noun);
  CHECK(is_consistent(tpl, lex));
}

TEST_CASE("templates without nouns are vacuously consistent") {
  const Lexicon lex = g1();
  SentenceTemplate tpl;
  tpl.slots.push_back(slot_for(lex, "itta", Category::verb));
  CHECK(is_consistent(tpl, lex));
}

TEST_CASE("precondition violations throw") {
  const Lexicon lex = g1();
  SentenceTemplate no_verb;
  no_verb.slots.push_back(slot_for(lex, "tatzin", Category::noun));
  CHECK_THROWS_AS(is_consistent(no_verb, lex), PreconditionError);

  SentenceTemplate unresolved = pair_template(lex, "tatzin", "itta");
  unresolved.slots[1].entry = -1;  // noun left unresolved
  CHECK_THROWS_AS(is_consistent(unresolved, lex), PreconditionError);
}

TEST_CASE("filter_stream keeps an order-preserving subsequence with exact counts") {
  const Lexicon lex = g1();
  const std::vector<SentenceTemplate> input = {
      pair_template(lex, "tatzin", "itta"),      // keep
      pair_template(lex, "tlahtolli", "neki"),   // drop
      pair_template(lex, "nantzin", "neki"),     // keep
      pair_template(lex, "posolli", "chihua"),   // drop (inanimate vs animate)
  };
  std::vector<SentenceTemplate> kept;
  const FilterSummary summary = filter_templates(input, lex, kept);
  CHECK(summary == FilterSummary{4, 2, 2, 0});
  REQUIRE(kept.size() == 2);
  CHECK(kept[0] == input[0]);
  CHECK(kept[1] == input[2]);
}

TEST_CASE("empty stream filters to an empty stream") {
  const Lexicon lex = g1();
  std::vector<SentenceTemplate> kept;
  CHECK(filter_templates({}, lex, kept) == FilterSummary{0, 0, 0, 0});
  CHECK(kept.empty());
}

TEST_CASE("items violating preconditions are counted, not fatal") {
  const Lexicon lex = g1();
  SentenceTemplate no_verb;
  no_verb.slots.push_back(slot_for(lex, "tatzin", Category::noun));
  std::vector<SentenceTemplate> kept;
  const FilterSummary summary =
      filter_templates({no_verb, pair_template(lex, "tatzin", "itta")}, lex, kept);
  CHECK(summary == FilterSummary{2, 1, 0, 1});
}

TEST_CASE("filtering is idempotent on sampled g1 templates") {
  const Lexicon lex = g1();
  const Grammar grammar = Grammar::load(data_file("grammar_g1.cfg"));
  const auto templates = sample(grammar, lex, 123, 10000,
                                std::set<StructureLabel>{StructureLabel::VSO},
                                ExpandMode::tagged);
  std::vector<SentenceTemplate> once, twice;
  const FilterSummary s1 = filter_templates(templates, lex, once);
  const FilterSummary s2 = filter_templates(once, lex, twice);
  CHECK(once == twice);
  CHECK(s1.kept == s2.seen);
  CHECK(s2.kept == s2.seen);
  CHECK(s1.seen == s1.kept + s1.dropped + s1.errored);
}

TEST_CASE("a lexicon tagged entirely 'both' filters nothing") {
  std::vector<LexEntry> entries;
  for (const char* n : {"na", "nb"}) {
    LexEntry e;
    e.surface = n;
    e.category = Category::noun;
    e.animacy = Animacy::both;
    entries.push_back(e);
  }
  LexEntry v;
  v.surface = "va";
  v.category = Category::verb;
  v.animacy = Animacy::both;
  entries.push_back(v);
  const Lexicon lex = Lexicon::from_entries(entries);
  const Grammar grammar = Grammar::parse("S -> verb noun noun\n");
  TemplateStream stream = expand(grammar, lex, ExpandMode::concrete);
  std::uint64_t emitted = 0;
  const FilterSummary summary =
      filter_stream(stream, lex, [&](const SentenceTemplate&) { ++emitted; });
  CHECK(summary.seen == 4);
  CHECK(summary.kept == 4);
  CHECK(emitted == 4);
}

TEST_CASE("the predicate seam replaces the animacy rule") {
  const Lexicon lex = g1();
  std::vector<SentenceTemplate> kept;
  const FilterSummary summary = filter_templates(
      {pair_template(lex, "tlahtolli", "neki")}, lex, kept,
      [](const SentenceTemplate&, const Lexicon&) { return true; });
  CHECK(summary.kept == 1);
}

}  // TEST_SUITE
