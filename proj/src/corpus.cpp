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

#include "nawgen/corpus.hpp"

#include <cctype>
#include <sstream>
#include <unordered_set>

#include "nawgen/errors.hpp"
#include "nawgen/text.hpp"

namespace nawgen {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::authentic: return "authentic";
    case Provenance::artificial_g0: return "artificial_g0";
    case Provenance::artificial_g1: return "artificial_g1";
  }
  return "authentic";
}

std::optional<Provenance> provenance_from_string(std::string_view s) {
  if (s == "authentic") return Provenance::authentic;
  if (s == "artificial_g0") return Provenance::artificial_g0;
  if (s == "artificial_g1") return Provenance::artificial_g1;
  return std::nullopt;
}

Corpus read_corpus(const std::string& path) { return parse_corpus(read_file(path), path); }

Corpus parse_corpus(std::string_view text, const std::string& name) {
  Corpus corpus;
  Provenance current = Provenance::authentic;
  Paragraph open;
  open.provenance = current;
  std::size_t line_no = 0;

  auto close_paragraph = [&] {
    if (!open.sentences.empty()) corpus.paragraphs.push_back(std::move(open));
    open = Paragraph{};
    open.provenance = current;
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    if (start == text.size()) break;
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    if (line.rfind("#!provenance:", 0) == 0) {
      auto p = provenance_from_string(trim(line.substr(13)));
      if (!p) throw ParseError(name, line_no, "unknown provenance");
      close_paragraph();
      current = *p;
      open.provenance = current;
      continue;
    }
    if (line.rfind("#!meta:", 0) == 0) {
      const std::string kv = trim(line.substr(7));
      const std::size_t eq = kv.find('=');
      if (eq == std::string::npos) throw ParseError(name, line_no, "meta line needs key=value");
      corpus.metadata[kv.substr(0, eq)] = kv.substr(eq + 1);
      continue;
    }
    const std::string content = trim(line);
    if (content.empty()) {
      close_paragraph();  // consecutive blanks collapse into one break
      continue;
    }
    open.sentences.push_back(content);
  }
  close_paragraph();
  return corpus;
}

std::string corpus_to_text(const Corpus& corpus) {
  std::ostringstream out;
  for (const auto& [k, v] : corpus.metadata) out << "#!meta: " << k << '=' << v << '\n';
  std::optional<Provenance> current;
  bool first = true;
  for (const Paragraph& p : corpus.paragraphs) {
    if (!first) out << '\n';
    if (!current || *current != p.provenance) {
      out << "#!provenance: " << to_string(p.provenance) << '\n';
      current = p.provenance;
    }
    for (const std::string& s : p.sentences) out << s << '\n';
    first = false;
  }
  return out.str();
}

void write_corpus(const Corpus& corpus, const std::string& path) {
  write_file(path, corpus_to_text(corpus));
}

Corpus merge(const Corpus& authentic, const Corpus& artificial) {
  Corpus out;
  out.paragraphs = authentic.paragraphs;
  out.paragraphs.insert(out.paragraphs.end(), artificial.paragraphs.begin(),
                        artificial.paragraphs.end());
  out.metadata = authentic.metadata;
  for (const auto& [k, v] : artificial.metadata) out.metadata.emplace(k, v);
  out.metadata["merge.authentic_paragraphs"] = std::to_string(authentic.paragraphs.size());
  out.metadata["merge.artificial_paragraphs"] = std::to_string(artificial.paragraphs.size());
  return out;
}

CorpusStats stats(const Corpus& corpus) {
  CorpusStats s;
  std::unordered_set<std::string> types;
  for (const Paragraph& p : corpus.paragraphs) {
    ProvenanceStats& ps = s.by_provenance[p.provenance];
    ++s.paragraphs;
    ++ps.paragraphs;
    for (const std::string& sentence : p.sentences) {
      ++s.sentences;
      ++ps.sentences;
      for (auto& token : split_ws(sentence)) {
        ++s.tokens;
        ++ps.tokens;
        types.insert(std::move(token));
      }
    }
  }
  s.types = types.size();
  return s;
}

std::string format_stats(const CorpusStats& s) {
  std::ostringstream out;
  out << "tokens\tsentences\tparagraphs\ttypes\n";
  out << s.tokens << '\t' << s.sentences << '\t' << s.paragraphs << '\t' << s.types << '\n';
  for (const auto& [prov, ps] : s.by_provenance) {
    out << to_string(prov) << '\t' << ps.tokens << '\t' << ps.sentences << '\t' << ps.paragraphs
        << '\n';
  }
  if (s.paragraphs > 0) {
    out << "sentences/paragraph\t" << static_cast<double>(s.sentences) / s.paragraphs << '\n';
  }
  return out.str();
}

}  // namespace nawgen
