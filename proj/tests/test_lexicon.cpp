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
#include "nawgen/lexicon.hpp"
#include "test_helpers.hpp"

using namespace nawgen;

TEST_SUITE("lexicon") {

TEST_CASE("bundled g1 knowledge base matches its cardinality table") {
  const Lexicon lex = Lexicon::load(data_file("kb_g1.tsv"));
  REQUIRE(lex.grammar_id() == GrammarId::g1);
  CHECK(lex.category_size(Category::noun) == 42);
  CHECK(lex.category_size(Category::verb) == 27);
  CHECK(lex.category_size(Category::negation) == 11);
  CHECK(lex.category_size(Category::marker_temporal) == 11);
  CHECK(lex.category_size(Category::marker_verb_intensity) == 4);
  CHECK(lex.category_size(Category::marker_noun_quantity) == 4);
  CHECK(lex.category_size(Category::adjective) == 10);
  CHECK(lex.category_size(Category::possessive) == 4);
  CHECK(lex.category_size(Category::marker_place) == 8);
  CHECK(lex.category_size(Category::marker_subject) == 1);
  CHECK(lex.category_size(Category::marker_object) == 1);
  // g1 drops articles entirely
  CHECK(lex.entries_by_category(Category::article).empty());
}

TEST_CASE("bundled g0 knowledge base matches its cardinality table") {
  const Lexicon lex = Lexicon::load(data_file("kb_g0.tsv"));
  REQUIRE(lex.grammar_id() == GrammarId::g0);
  CHECK(lex.category_size(Category::noun) == 26);
  CHECK(lex.category_size(Category::verb) == 16);
  CHECK(lex.entries_by_category(Category::adverb_time).size() == 7);
  CHECK(lex.category_size(Category::adverb_quantity) == 5);
  CHECK(lex.category_size(Category::pronoun) == 3);
  CHECK(lex.category_size(Category::article) == 3);
}

TEST_CASE("absolutive markup parses into surface and span") {
  const Lexicon lex =
      Lexicon::parse("ichpoch(tli)\tnoun\tanimate\tyoung woman\n", "kb");
  const LexEntry& e = lex.entries()[0];
  CHECK(e.surface == "ichpochtli");
  CHECK(e.has_absolutive());
  CHECK(e.stem() == "ichpoch");
  CHECK(e.animacy == Animacy::animate);
  CHECK(e.gloss == "young woman");
}

TEST_CASE("possessed_form strips the absolutive and nothing else") {
  const Lexicon lex = Lexicon::load(data_file("kb_g1.tsv"));
  const LexEntry& ichpoch = lex.entry(*lex.find("ichpochtli", Category::noun));
  const LexEntry& koltzin = lex.entry(*lex.find("koltzin", Category::noun));
  const LexEntry& mapach = lex.entry(*lex.find("mapachin", Category::noun));
  CHECK(possessed_form(ichpoch) == "ichpoch");
  CHECK(possessed_form(koltzin) == "koltzin");
  CHECK(possessed_form(mapach) == "mapach");

  // idempotence: stripping an already-stripped form changes nothing
  LexEntry bare;
  bare.surface = possessed_form(ichpoch);
  bare.category = Category::noun;
  bare.animacy = Animacy::animate;
  CHECK(possessed_form(bare) == possessed_form(ichpoch));

  const LexEntry& verb = lex.entry(*lex.find("itta", Category::verb));
  CHECK_THROWS_AS(possessed_form(verb), PreconditionError);
}

TEST_CASE("loader rejects malformed and inconsistent input") {
  CHECK_THROWS_AS(Lexicon::parse("", "empty"), ValidationError);
  CHECK_THROWS_AS(Lexicon::parse("a b\tnoun\tanimate\tg\n", "ws"), ParseError);
  CHECK_THROWS_AS(Lexicon::parse("it(ta)\tverb\tanimate\tg\n", "abs"), ValidationError);
  CHECK_THROWS_AS(Lexicon::parse("x\tnoun\tanimate\tg\nx\tnoun\tinanimate\tg2\n", "dup"),
                  ValidationError);
  CHECK_THROWS_AS(Lexicon::parse("x\tnoun\tna\tg\n", "ani"), ValidationError);
  CHECK_THROWS_AS(Lexicon::parse("x\tnoun\n", "cols"), ParseError);
  // declared grammar id with wrong counts
  CHECK_THROWS_AS(Lexicon::parse("#!grammar: g1\nx\tnoun\tanimate\tg\n", "card"),
                  ValidationError);
  // parse errors carry the line number
  try {
    Lexicon::parse("ok\tnoun\tanimate\tg\nbad row here\n", "lines");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
}

TEST_CASE("save and reload round-trips both bundled KBs") {
  for (const char* name : {"kb_g0.tsv", "kb_g1.tsv"}) {
    const Lexicon lex = Lexicon::load(data_file(name));
    const std::string path = temp_file(std::string("roundtrip_") + name);
    lex.save(path);
    CHECK(Lexicon::load(path) == lex);
  }
}

TEST_CASE("per-category ordinals partition the entry list") {
  for (const char* name : {"kb_g0.tsv", "kb_g1.tsv"}) {
    const Lexicon lex = Lexicon::load(data_file(name));
    std::size_t total = 0;
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      total += lex.category_size(static_cast<Category>(c));
    }
    CHECK(total == lex.entries().size());
  }
}

TEST_CASE("padded and inferred flags survive the round trip") {
  const Lexicon lex = Lexicon::load(data_file("kb_g1.tsv"));
  const LexEntry& pad = lex.entry(*lex.find("lamah", Category::noun));
  CHECK(pad.padded);
  CHECK(pad.inferred);
  const LexEntry& base = lex.entry(*lex.find("tatzin", Category::noun));
  CHECK_FALSE(base.padded);
  CHECK_FALSE(base.inferred);
}

}  // TEST_SUITE
