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

#include "nawgen/semfilter.hpp"

#include "nawgen/errors.hpp"

namespace nawgen {

bool is_consistent(const SentenceTemplate& tpl, const Lexicon& lex) {
  std::vector<Animacy> nouns;
  std::vector<Animacy> verbs;
  for (const TemplateSlot& slot : tpl.slots) {
    if (slot.category == Category::noun) {
      if (slot.is_tag() || slot.entry < 0)
        throw PreconditionError("is_consistent: unresolved noun slot");
      nouns.push_back(lex.entry(static_cast<std::uint32_t>(slot.entry)).animacy);
    } else if (slot.category == Category::verb) {
      if (slot.is_tag() || slot.entry < 0)
        throw PreconditionError("is_consistent: unresolved verb slot");
      verbs.push_back(lex.entry(static_cast<std::uint32_t>(slot.entry)).animacy);
    }
  }
  if (verbs.empty()) throw PreconditionError("is_consistent: template has no verb slot");
  // Every noun must be compatible with every verb (both subject and object
  // in VSO templates).
  for (Animacy n : nouns) {
    for (Animacy v : verbs) {
      if (!animacy_compatible(n, v)) return false;
    }
  }
  return true;
}

namespace {

FilterSummary run_filter(const std::function<bool(const SentenceTemplate&)>& pred,
                         const std::function<void(const SentenceTemplate&)>& sink,
                         const std::function<bool(SentenceTemplate&)>& source) {
  FilterSummary summary;
  SentenceTemplate tpl;
  while (source(tpl)) {
    ++summary.seen;
    bool keep = false;
    try {
      keep = pred(tpl);
    } catch (const PreconditionError&) {
      ++summary.errored;
      continue;
    }
    if (keep) {
      ++summary.kept;
      sink(tpl);
    } else {
      ++summary.dropped;
    }
  }
  return summary;
}

}  // namespace

FilterSummary filter_stream(TemplateStream& in, const Lexicon& lex,
                            const std::function<void(const SentenceTemplate&)>& sink,
                            const TemplatePredicate& predicate) {
  const TemplatePredicate& pred = predicate ? predicate : is_consistent;
  return run_filter([&](const SentenceTemplate& t) { return pred(t, lex); }, sink,
                    [&](SentenceTemplate& t) { return in.next(t); });
}

FilterSummary filter_templates(const std::vector<SentenceTemplate>& in, const Lexicon& lex,
                               std::vector<SentenceTemplate>& out,
                               const TemplatePredicate& predicate) {
  const TemplatePredicate& pred = predicate ? predicate : is_consistent;
  std::size_t i = 0;
  return run_filter([&](const SentenceTemplate& t) { return pred(t, lex); },
                    [&](const SentenceTemplate& t) { out.push_back(t); },
                    [&](SentenceTemplate& t) {
                      if (i >= in.size()) return false;
                      t = in[i++];
                      return true;
                    });
}

}  // namespace nawgen
