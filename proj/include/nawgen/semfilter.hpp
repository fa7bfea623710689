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

#ifndef NAWGEN_SEMFILTER_HPP
#define NAWGEN_SEMFILTER_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "nawgen/grammar.hpp"
#include "nawgen/lexicon.hpp"

namespace nawgen {

struct FilterSummary {
  std::uint64_t seen = 0;
  std::uint64_t kept = 0;
  std::uint64_t dropped = 0;
  std::uint64_t errored = 0;

  bool operator==(const FilterSummary&) const = default;
};

// True iff every (noun, verb) pair in the template shares an animacy tag
// ("both" intersects everything); templates with nouns but no... see below.
// Preconditions: at least one verb slot, noun slots resolved — violations
// throw PreconditionError. Templates with no noun are vacuously consistent.
bool is_consistent(const SentenceTemplate& tpl, const Lexicon& lex);

// Seam for alternative filters (e.g. a trained classifier); the default is
// the animacy predicate above.
using TemplatePredicate = std::function<bool(const SentenceTemplate&, const Lexicon&)>;

// Order-preserving filter over a stream; per-item precondition errors drop
// the item and count it as errored without halting.
FilterSummary filter_stream(TemplateStream& in, const Lexicon& lex,
                            const std::function<void(const SentenceTemplate&)>& sink,
                            const TemplatePredicate& predicate = {});

FilterSummary filter_templates(const std::vector<SentenceTemplate>& in, const Lexicon& lex,
                               std::vector<SentenceTemplate>& out,
                               const TemplatePredicate& predicate = {});

}  // namespace nawgen

#endif  // NAWGEN_SEMFILTER_HPP
