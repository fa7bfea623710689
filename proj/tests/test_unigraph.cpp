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
#include "nawgen/text.hpp"
#include "nawgen/unigraph.hpp"
#include "test_helpers.hpp"

using namespace nawgen;

TEST_SUITE("unigraph") {

TEST_CASE("footnote rewrites behave as documented") {
  const RewriteTable t = RewriteTable::defaults();
  CHECK(unify("chihua", t) == "chiwa");
  CHECK(unify("calli", t) == "kali");
  CHECK(unify("Kitoka", t) == "kitoka");
  CHECK(unify("cemicac", t) == "semikak");
  CHECK(unify("axcan", t) == "axkan");
  CHECK(unify("cihuamichin", t) == "siwamichin");
  CHECK(unify("koltzin", t) == "koltsin");
  CHECK(unify("quemmanian", t) == "kemanian");
  CHECK(unify("çan", t) == "san");
  CHECK(unify("zan", t) == "san");
  CHECK(unify("ahuic", t) == "awik");
  CHECK(unify("huel", t) == "wel");
  CHECK(unify("itta", t) == "ita");
}

TEST_CASE("accents and case fold before rewriting") {
  const RewriteTable t = RewriteTable::defaults();
  CHECK(unify("CHihua", t) == "chiwa");
  CHECK(unify("Cémicac", t) == "semikak");
  CHECK(unify("ĀXcān", t) == "axkan");
  CHECK(unify("ñalli", t) == "nali");
}

TEST_CASE("the bundled rule file equals the built-in table") {
  CHECK(RewriteTable::load(data_file("unigraph_rules.tsv")) == RewriteTable::defaults());
}

TEST_CASE("unification is idempotent on the knowledge bases and tasks") {
  const RewriteTable t = RewriteTable::defaults();
  for (const char* name : {"kb_g0.tsv", "kb_g1.tsv"}) {
    const Lexicon lex = Lexicon::load(data_file(name));
    for (const LexEntry& e : lex.entries()) {
      const std::string once = unify(e.surface, t);
      CHECK(unify(once, t) == once);
    }
  }
  const std::string tasks = read_file(data_file("tasks_mini.txt"));
  const std::string once = unify(tasks, t);
  CHECK(unify(once, t) == once);
}

TEST_CASE("output contains no uppercase, no hu, no double consonants") {
  const RewriteTable t = RewriteTable::defaults();
  const Lexicon lex = Lexicon::load(data_file("kb_g1.tsv"));
  auto is_consonant = [](char c) {
    return c >= 'a' && c <= 'z' && c != 'a' && c != 'e' && c != 'i' && c != 'o' && c != 'u';
  };
  for (const LexEntry& e : lex.entries()) {
    const std::string out = unify(e.surface, t);
    CHECK(out.find("hu") == std::string::npos);
    for (char c : out) CHECK_FALSE(std::isupper(static_cast<unsigned char>(c)));
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      if (is_consonant(out[i])) CHECK_FALSE(out[i] == out[i + 1]);
    }
  }
}

TEST_CASE("rewrites never touch whitespace, so token counts are stable") {
  const RewriteTable t = RewriteTable::defaults();
  const std::string text = "Quemmanian  cemicac\tchihua calli\nKitoka  tzatzi";
  CHECK(count_ws_tokens(unify(text, t)) == count_ws_tokens(text));
  CHECK_THROWS_AS(RewriteTable({{"a b", "ab", ""}}), ValidationError);
}

TEST_CASE("conflicting rules are rejected") {
  CHECK_THROWS_AS(RewriteTable({{"c", "k", ""}, {"c", "s", ""}}), ValidationError);
  CHECK_THROWS_AS(RewriteTable({{"c", "k", "ae"}, {"c", "s", "ei"}}), ValidationError);
  CHECK_THROWS_AS(RewriteTable({{"c", "k", "C"}, {"c", "s", "x"}}), ValidationError);
  CHECK_THROWS_AS(RewriteTable({{"", "k", ""}}), ValidationError);
  // disjoint contexts are fine
  CHECK_NOTHROW(RewriteTable({{"c", "k", "aouC$"}, {"c", "s", "ei"}}));
}

TEST_CASE("longest source wins at each position") {
  const RewriteTable t({{"c", "x", ""}, {"ch", "ch", ""}});
  CHECK(t.apply("chico") == "chixo");
}

}  // TEST_SUITE
