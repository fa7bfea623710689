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

#include "nawgen/unigraph.hpp"

#include <algorithm>
#include <cctype>

#include "nawgen/errors.hpp"
#include "nawgen/text.hpp"

namespace nawgen {

namespace {

constexpr std::string_view kEmptyMark = "∅";

bool is_ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool context_matches(const std::string& context, std::string_view text, std::size_t pos) {
  if (context.empty()) return true;
  const bool at_end = pos >= text.size();
  const char next = at_end ? '\0' : text[pos];
  for (char c : context) {
    switch (c) {
      case '$':
        if (at_end || !(is_ascii_letter(next) || static_cast<unsigned char>(next) >= 0x80))
          return true;
        break;
      case 'C':
        if (!at_end && is_ascii_letter(next) && !is_vowel(next)) return true;
        break;
      default:
        if (!at_end && next == c) return true;
        break;
    }
  }
  return false;
}

bool contexts_overlap(const std::string& a, const std::string& b) {
  if (a.empty() || b.empty()) return true;
  for (char ca : a) {
    for (char cb : b) {
      if (ca == cb) return true;
      // 'C' covers every consonant letter
      if (ca == 'C' && is_ascii_letter(cb) && !is_vowel(cb)) return true;
      if (cb == 'C' && is_ascii_letter(ca) && !is_vowel(ca)) return true;
    }
  }
  return false;
}

bool has_ws(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace

RewriteTable::RewriteTable(std::vector<RewriteRule> rules) : rules_(std::move(rules)) {
  validate();
  std::stable_sort(rules_.begin(), rules_.end(), [](const RewriteRule& a, const RewriteRule& b) {
    return a.source.size() > b.source.size();
  });
}

void RewriteTable::validate() const {
  for (const RewriteRule& r : rules_) {
    if (r.source.empty()) throw ValidationError("rewrite rule with empty source");
    if (has_ws(r.source) || has_ws(r.target))
      throw ValidationError("rewrite rules must not touch whitespace ('" + r.source + "')");
  }
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    for (std::size_t j = i + 1; j < rules_.size(); ++j) {
      if (rules_[i].source == rules_[j].source &&
          contexts_overlap(rules_[i].context, rules_[j].context)) {
        throw ValidationError("overlapping rewrite rules for source '" + rules_[i].source + "'");
      }
    }
  }
}

RewriteTable RewriteTable::load(const std::string& path) { return parse(read_file(path), path); }

RewriteTable RewriteTable::parse(std::string_view text, const std::string& name) {
  std::vector<RewriteRule> rules;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;

    std::vector<std::string> cols;
    std::size_t cstart = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        cols.push_back(line.substr(cstart, i - cstart));
        cstart = i + 1;
      }
    }
    if (cols.size() < 2 || cols.size() > 3)
      throw ParseError(name, line_no, "expected source<TAB>target<TAB>context?");
    RewriteRule rule;
    rule.source = cols[0];
    rule.target = cols[1] == kEmptyMark ? std::string() : cols[1];
    if (cols.size() == 3) rule.context = cols[2];
    rules.push_back(std::move(rule));
  }
  return RewriteTable(std::move(rules));
}

RewriteTable RewriteTable::defaults() {
  std::vector<RewriteRule> rules = {
      {"ch", "ch", ""},       // protected digraph
      {"hu", "w", ""},
      {"tz", "ts", ""},
      {"qu", "k", ""},
      {"ç", "s", ""},    // ç
      {"z", "s", ""},
      {"c", "k", "aouC$"},
      {"c", "s", "ei"},
      {"cc", "k", "aouC$"},
      {"cc", "s", "ei"},
      {"qq", "k", ""},
  };
  // plain double-consonant reduction
  for (char c : std::string("bdfghjklmnprstvwxy")) {
    rules.push_back({std::string(2, c), std::string(1, c), ""});
  }
  return RewriteTable(std::move(rules));
}

std::string RewriteTable::apply(std::string_view text) const {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const RewriteRule* hit = nullptr;
    for (const RewriteRule& rule : rules_) {
      if (rule.source.size() > text.size() - pos) continue;
      if (text.compare(pos, rule.source.size(), rule.source) != 0) continue;
      if (!context_matches(rule.context, text, pos + rule.source.size())) continue;
      hit = &rule;
      break;
    }
    if (hit) {
      out += hit->target;
      pos += hit->source.size();
    } else {
      out.push_back(text[pos]);
      ++pos;
    }
  }
  return out;
}

std::string unify(std::string_view text, const RewriteTable& table) {
  return table.apply(fold_text(text));
}

}  // namespace nawgen
