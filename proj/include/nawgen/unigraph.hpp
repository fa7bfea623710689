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

#ifndef NAWGEN_UNIGRAPH_HPP
#define NAWGEN_UNIGRAPH_HPP

#include <string>
#include <string_view>
#include <vector>

namespace nawgen {

// One orthography rewrite. `context` constrains the characters allowed
// immediately after the matched source: listed letters match themselves,
// 'C' matches any ASCII consonant and '$' matches end-of-word (end of input
// or a non-letter). An empty context always applies.
struct RewriteRule {
  std::string source;
  std::string target;
  std::string context;

  bool operator==(const RewriteRule&) const = default;
};

class RewriteTable {
 public:
  explicit RewriteTable(std::vector<RewriteRule> rules);
  // File format: source<TAB>target<TAB>context?, '#' comments. The target
  // column may be ∅ for deletion.
  static RewriteTable load(const std::string& path);
  static RewriteTable parse(std::string_view text, const std::string& name = "<memory>");
  // The spelling-unification table shipped with the toolkit (c→k/s, hu→w,
  // tz→ts, qu→k, ç/z→s, double-consonant reduction, ch protected).
  static RewriteTable defaults();

  const std::vector<RewriteRule>& rules() const { return rules_; }

  // Single left-to-right pass, longest match first; input is expected to be
  // case/accent folded already.
  std::string apply(std::string_view text) const;

  bool operator==(const RewriteTable&) const = default;

 private:
  void validate() const;
  std::vector<RewriteRule> rules_;       // sorted: longer sources first
};

// Lowercases, strips accents, then applies the rewrite table in one pass.
std::string unify(std::string_view text, const RewriteTable& table);

}  // namespace nawgen

#endif  // NAWGEN_UNIGRAPH_HPP
