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

#include "nawgen/corpus.hpp"
#include "nawgen/errors.hpp"
#include "test_helpers.hpp"

using namespace nawgen;

namespace {

Corpus tiny(std::initializer_list<std::vector<std::string>> paragraphs,
            Provenance prov = Provenance::authentic) {
  Corpus c;
  for (const auto& sentences : paragraphs) {
    Paragraph p;
    p.provenance = prov;
    p.sentences = sentences;
    c.paragraphs.push_back(p);
  }
  return c;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("stats counts tokens, sentences and paragraphs exactly") {
  const Corpus c = tiny({{"Kitta tlakatl kalli."}});
  const CorpusStats s = stats(c);
  CHECK(s.tokens == 3);
  CHECK(s.sentences == 1);
  CHECK(s.paragraphs == 1);
  CHECK(s.types == 3);
}

TEST_CASE("empty corpus has all-zero stats") {
  const CorpusStats s = stats(Corpus{});
  CHECK(s.tokens == 0);
  CHECK(s.sentences == 0);
  CHECK(s.paragraphs == 0);
  CHECK(s.types == 0);
}

TEST_CASE("merge concatenates and is neutral with an empty corpus") {
  const Corpus a = tiny({{"a b."}, {"c d e."}});
  const Corpus b = tiny({{"f."}, {"g h."}, {"i."}}, Provenance::artificial_g1);
  const Corpus ab = merge(a, b);
  CHECK(ab.paragraphs.size() == 5);
  CHECK(merge(a, Corpus{}).paragraphs == a.paragraphs);
  CHECK(ab.metadata.at("merge.authentic_paragraphs") == "2");
  CHECK(ab.metadata.at("merge.artificial_paragraphs") == "3");

  const CorpusStats sa = stats(a), sb = stats(b), sab = stats(ab);
  CHECK(sab.tokens == sa.tokens + sb.tokens);
  CHECK(sab.sentences == sa.sentences + sb.sentences);
  CHECK(sab.paragraphs == sa.paragraphs + sb.paragraphs);
  CHECK(sab.types <= sa.types + sb.types);
  CHECK(sab.by_provenance.at(Provenance::artificial_g1).sentences == sb.sentences);
}

TEST_CASE("write then read is the identity") {
  Corpus c = tiny({{"Se tlakatl.", "Kitta kalli."}, {"Amo."}});
  c.paragraphs[1].provenance = Provenance::artificial_g0;
  c.metadata["origin"] = "unit-test";
  const std::string path = temp_file("roundtrip_corpus.txt");
  write_corpus(c, path);
  CHECK(read_corpus(path) == c);
}

TEST_CASE("consecutive blank lines collapse into one paragraph break") {
  const Corpus c = parse_corpus("a.\n\n\n\nb.\n");
  CHECK(c.paragraphs.size() == 2);
  const Corpus d = parse_corpus("a.\nb.\n");
  CHECK(d.paragraphs.size() == 1);
}

TEST_CASE("missing file raises an io error") {
  CHECK_THROWS_AS(read_corpus(temp_file("does_not_exist.txt")), IoError);
}

TEST_CASE("provenance headers switch sections") {
  const Corpus c = parse_corpus(
      "#!provenance: authentic\na.\n\n#!provenance: artificial_g1\nb.\nc.\n");
  REQUIRE(c.paragraphs.size() == 2);
  CHECK(c.paragraphs[0].provenance == Provenance::authentic);
  CHECK(c.paragraphs[1].provenance == Provenance::artificial_g1);
  CHECK_THROWS_AS(parse_corpus("#!provenance: nonsense\na.\n"), ParseError);
}

TEST_CASE("bundled stand-in corpus resembles the intended paragraph profile") {
  const Corpus standin = read_corpus(data_file("standin.txt"));
  const CorpusStats s = stats(standin);
  CHECK(s.paragraphs == 240);
  const double ratio = static_cast<double>(s.sentences) / static_cast<double>(s.paragraphs);
  CHECK(ratio > 37.0);
  CHECK(ratio < 46.0);
  CHECK(standin.metadata.at("synthetic") == "true");
}

}  // TEST_SUITE
