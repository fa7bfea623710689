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

#include "nawgen/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_set>

#include "nawgen/errors.hpp"
#include "nawgen/rng.hpp"
#include "nawgen/text.hpp"

namespace nawgen {

namespace {

constexpr std::string_view kEmptyMark = "∅";

const std::array<std::string_view, 10> kLabelNames = {"VSO", "VO",  "VS", "VOS", "SV",
                                                      "SOV", "SVO", "N",  "V",   "none"};

const std::array<std::string_view, kTagCount> kTagTokens = {"[neg]", "[mcs]", "[miv]",
                                                            "[mt]",  "[ml]",  "[adj]"};

const std::array<Category, kTagCount> kTagCategories = {
    Category::negation,          Category::marker_noun_quantity,
    Category::marker_verb_intensity, Category::marker_temporal,
    Category::marker_place,      Category::adjective,
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::string_view to_string(StructureLabel l) { return kLabelNames[static_cast<std::size_t>(l)]; }

std::optional<StructureLabel> structure_label_from_string(std::string_view s) {
  // "none" parses too, so unlabeled templates survive the stage file format
  for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
    if (kLabelNames[i] == s) return static_cast<StructureLabel>(i);
  }
  return std::nullopt;
}

Category tag_category(Tag t) { return kTagCategories[static_cast<std::size_t>(t)]; }

std::optional<Tag> tag_for_category(Category c) {
  for (std::size_t i = 0; i < kTagCount; ++i) {
    if (kTagCategories[i] == c) return static_cast<Tag>(i);
  }
  return std::nullopt;
}

std::string_view tag_token(Tag t) { return kTagTokens[static_cast<std::size_t>(t)]; }

std::optional<Tag> tag_from_token(std::string_view s) {
  for (std::size_t i = 0; i < kTagCount; ++i) {
    if (kTagTokens[i] == s) return static_cast<Tag>(i);
  }
  return std::nullopt;
}

bool SentenceTemplate::has_tags() const {
  return std::any_of(slots.begin(), slots.end(), [](const TemplateSlot& s) { return s.is_tag(); });
}

std::string render_template(const SentenceTemplate& tpl, const Lexicon& lex) {
  std::string out;
  std::string word;
  bool possessed = false;
  auto flush = [&] {
    if (word.empty()) return;
    if (!out.empty()) out.push_back(' ');
    out += word;
    word.clear();
    possessed = false;
  };
  for (const TemplateSlot& slot : tpl.slots) {
    if (slot.join == Join::space) flush();
    if (slot.is_tag()) {
      word += tag_token(*slot.tag);
      continue;
    }
    const LexEntry& e = lex.entry(static_cast<std::uint32_t>(slot.entry));
    if (e.is_empty()) continue;
    if (e.category == Category::noun && possessed) {
      word += e.stem();
    } else {
      word += e.surface;
    }
    if (e.category == Category::possessive) possessed = true;
  }
  flush();
  return out;
}

std::string template_to_line(const SentenceTemplate& tpl, const Lexicon& lex) {
  std::string out(to_string(tpl.label));
  out.push_back('\t');
  for (std::size_t i = 0; i < tpl.slots.size(); ++i) {
    const TemplateSlot& slot = tpl.slots[i];
    if (i > 0) out.push_back(slot.join == Join::concat ? '+' : ' ');
    if (slot.is_tag()) {
      out += tag_token(*slot.tag);
    } else {
      const LexEntry& e = lex.entry(static_cast<std::uint32_t>(slot.entry));
      out += to_string(slot.category);
      out.push_back(':');
      out += e.is_empty() ? std::string(kEmptyMark) : e.surface;
    }
  }
  return out;
}

SentenceTemplate template_from_line(std::string_view line, const Lexicon& lex) {
  const std::size_t tab = line.find('\t');
  if (tab == std::string_view::npos) throw ParseError("template line has no label column");
  auto label = structure_label_from_string(line.substr(0, tab));
  if (!label) throw ParseError("unknown structure label '" + std::string(line.substr(0, tab)) + "'");

  SentenceTemplate tpl;
  tpl.label = *label;
  std::string_view body = line.substr(tab + 1);
  std::size_t i = 0;
  Join next_join = Join::space;
  while (i <= body.size()) {
    std::size_t j = i;
    while (j < body.size() && body[j] != ' ' && body[j] != '+') ++j;
    std::string_view token = body.substr(i, j - i);
    if (!token.empty()) {
      TemplateSlot slot;
      slot.join = next_join;
      if (auto tag = tag_from_token(token)) {
        slot.tag = tag;
        slot.category = tag_category(*tag);
      } else {
        const std::size_t colon = token.find(':');
        if (colon == std::string_view::npos)
          throw ParseError("malformed slot token '" + std::string(token) + "'");
        auto cat = category_from_string(token.substr(0, colon));
        if (!cat) throw ParseError("unknown category in slot '" + std::string(token) + "'");
        std::string_view surface = token.substr(colon + 1);
        const std::string wanted = surface == kEmptyMark ? std::string() : std::string(surface);
        auto ordinal = lex.find(wanted, *cat);
        if (!ordinal)
          throw ParseError("surface '" + std::string(surface) + "' not found under category " +
                           std::string(to_string(*cat)));
        slot.category = *cat;
        slot.entry = static_cast<std::int32_t>(*ordinal);
      }
      tpl.slots.push_back(slot);
    }
    if (j >= body.size()) break;
    next_join = body[j] == '+' ? Join::concat : Join::space;
    i = j + 1;
  }
  if (tpl.slots.empty()) throw ParseError("template line has no slots");
  return tpl;
}

// ---------------------------------------------------------------------------
// Grammar file parsing

Grammar Grammar::load(const std::string& path) { return parse(read_file(path), path); }

Grammar Grammar::parse(std::string_view text, const std::string& name) {
  Grammar g;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    ++line_no;

    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t arrow = line.find("->");
    if (arrow == std::string::npos) throw ParseError(name, line_no, "missing '->'");
    const std::string lhs = trim(line.substr(0, arrow));
    if (lhs.empty() || lhs.find(' ') != std::string::npos)
      throw ParseError(name, line_no, "bad rule head '" + lhs + "'");

    std::string rest = line.substr(arrow + 2);
    std::size_t alt_start = 0;
    for (std::size_t i = 0; i <= rest.size(); ++i) {
      if (i < rest.size() && rest[i] != '|') continue;
      const std::string alt = trim(std::string_view(rest).substr(alt_start, i - alt_start));
      alt_start = i + 1;
      if (alt.empty()) throw ParseError(name, line_no, "empty alternative");

      Rule rule;
      rule.lhs = lhs;
      for (const std::string& token : split_ws(alt)) {
        if (token[0] == '@') {
          auto label = structure_label_from_string(token.substr(1));
          if (!label) throw ParseError(name, line_no, "unknown structure label " + token);
          rule.label = *label;
          continue;
        }
        if (token[0] == '{') {
          // rule-level agreement link {i=j}
          if (token.back() != '}') throw ParseError(name, line_no, "malformed " + token);
          const std::string body = token.substr(1, token.size() - 2);
          const std::size_t eq = body.find('=');
          if (eq == std::string::npos) throw ParseError(name, line_no, "malformed " + token);
          rule.linked_groups.emplace_back(body.substr(0, eq), body.substr(eq + 1));
          continue;
        }
        // a word of sub-slots joined by '+'
        std::size_t piece_start = 0;
        bool first_piece = true;
        for (std::size_t p = 0; p <= token.size(); ++p) {
          if (p < token.size() && token[p] != '+') continue;
          std::string piece = token.substr(piece_start, p - piece_start);
          piece_start = p + 1;
          if (piece.empty()) throw ParseError(name, line_no, "empty slot in '" + token + "'");
          Slot slot;
          slot.join = first_piece ? Join::space : Join::concat;
          first_piece = false;
          if (piece[0] == '[') {
            if (!tag_from_token(piece))
              throw ParseError(name, line_no, "unknown tag token " + piece);
            slot.symbol = piece;
          } else {
            // annotations: {group} and :k
            const std::size_t brace = piece.find('{');
            if (brace != std::string::npos) {
              const std::size_t close = piece.find('}', brace);
              if (close == std::string::npos)
                throw ParseError(name, line_no, "malformed agreement in '" + piece + "'");
              slot.agreement = piece.substr(brace + 1, close - brace - 1);
              piece.erase(brace, close - brace + 1);
            }
            const std::size_t colon = piece.find(':');
            if (colon != std::string::npos) {
              try {
                slot.fixed_index = std::stoi(piece.substr(colon + 1));
              } catch (const std::exception&) {
                throw ParseError(name, line_no, "bad slot index in '" + piece + "'");
              }
              if (*slot.fixed_index < 1)
                throw ParseError(name, line_no, "slot index must be >= 1 in '" + piece + "'");
              piece.erase(colon);
            }
            if (piece.empty()) throw ParseError(name, line_no, "empty symbol");
            slot.symbol = piece;
          }
          rule.rhs.push_back(std::move(slot));
        }
      }
      if (rule.rhs.empty()) throw ParseError(name, line_no, "alternative has no slots");
      g.rules_.push_back(std::move(rule));
      if (i >= rest.size()) break;
    }
    g.nonterminals_.insert(lhs);
    if (g.start_.empty()) g.start_ = lhs;
  }
  if (g.rules_.empty()) throw ParseError(name, 0, "grammar has no rules");
  return g;
}

std::vector<const Rule*> Grammar::rules_for(std::string_view lhs) const {
  std::vector<const Rule*> out;
  for (const Rule& r : rules_) {
    if (r.lhs == lhs) out.push_back(&r);
  }
  return out;
}

void Grammar::validate(const Lexicon& lex) const {
  if (!nonterminals_.count(start_)) throw ValidationError("start symbol not defined");

  // symbol resolution
  for (const Rule& rule : rules_) {
    for (const Slot& slot : rule.rhs) {
      if (slot.symbol[0] == '[') continue;
      const bool is_nt = nonterminals_.count(slot.symbol) > 0;
      const auto cat = category_from_string(slot.symbol);
      if (!is_nt && !cat)
        throw ValidationError("unknown symbol '" + slot.symbol + "' in rule " + rule.lhs);
      if (is_nt && cat)
        throw ValidationError("symbol '" + slot.symbol + "' is both a nonterminal and a category");
      if (cat) {
        const std::size_t n = lex.category_size(*cat);
        if (n == 0)
          throw ValidationError("category '" + slot.symbol + "' has no lexicon entries");
        if (slot.fixed_index && static_cast<std::size_t>(*slot.fixed_index) > n)
          throw ValidationError("fixed index " + std::to_string(*slot.fixed_index) +
                                " out of range for category '" + slot.symbol + "'");
      }
      if (is_nt && (slot.fixed_index || slot.agreement))
        throw ValidationError("annotations are only valid on terminal slots ('" + slot.symbol +
                              "')");
    }
  }

  // non-recursion: depth-first search for a cycle among nonterminal references
  std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
  std::vector<std::string> stack;
  auto dfs = [&](auto&& self, const std::string& nt) -> void {
    state[nt] = 1;
    stack.push_back(nt);
    for (const Rule* rule : rules_for(nt)) {
      for (const Slot& slot : rule->rhs) {
        if (!nonterminals_.count(slot.symbol)) continue;
        if (state[slot.symbol] == 1) {
          std::string path;
          for (const auto& s : stack) path += s + " -> ";
          throw ValidationError("recursive grammar: " + path + slot.symbol);
        }
        if (state[slot.symbol] == 0) self(self, slot.symbol);
      }
    }
    stack.pop_back();
    state[nt] = 2;
  };
  for (const auto& nt : nonterminals_) {
    if (state[nt] == 0) dfs(dfs, nt);
  }

  // every nonterminal referenced must have at least one rule (it does, by
  // construction) and every nonterminal must be reachable or at least defined;
  // concatenation pattern: a fused word is marker/possessive prefixes ending
  // in a noun or verb.
  for (const Rule& rule : rules_) {
    for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
      const Slot& slot = rule.rhs[i];
      if (slot.join != Join::concat) continue;
      if (i == 0) throw ValidationError("rule " + rule.lhs + " starts with a concat join");
      const auto check_terminal = [&](const Slot& s) {
        if (s.symbol[0] == '[' || nonterminals_.count(s.symbol))
          throw ValidationError("concatenation joins terminal category slots only (rule " +
                                rule.lhs + ")");
      };
      check_terminal(slot);
      check_terminal(rule.rhs[i - 1]);
    }
    // classify each maximal concat run
    for (std::size_t i = 0; i < rule.rhs.size();) {
      std::size_t j = i + 1;
      while (j < rule.rhs.size() && rule.rhs[j].join == Join::concat) ++j;
      if (j - i > 1) {
        const auto last = category_from_string(rule.rhs[j - 1].symbol);
        if (!last || (*last != Category::noun && *last != Category::verb))
          throw ValidationError("fused word in rule " + rule.lhs +
                                " must end in a noun or verb slot");
        for (std::size_t k = i; k + 1 < j; ++k) {
          const auto cat = category_from_string(rule.rhs[k].symbol);
          if (!cat || (*cat != Category::possessive && *cat != Category::marker_subject &&
                       *cat != Category::marker_object))
            throw ValidationError("fused word in rule " + rule.lhs +
                                  " may only prefix possessive/person/object markers");
        }
      }
      i = j;
    }

    // agreement groups: resolve links, then require equal cardinality
    std::map<std::string, std::string> parent;
    auto find_root = [&](std::string s) {
      while (parent.count(s) && parent[s] != s) s = parent[s];
      return s;
    };
    for (const Slot& slot : rule.rhs) {
      if (slot.agreement) parent.emplace(*slot.agreement, *slot.agreement);
    }
    for (const auto& [a, b] : rule.linked_groups) {
      if (!parent.count(a) || !parent.count(b))
        throw ValidationError("agreement link {" + a + "=" + b + "} names an unused group in rule " +
                              rule.lhs);
      parent[find_root(a)] = find_root(b);
    }
    std::map<std::string, std::size_t> group_arity;
    for (const Slot& slot : rule.rhs) {
      if (!slot.agreement) continue;
      const auto cat = category_from_string(slot.symbol);
      if (!cat) throw ValidationError("agreement on non-terminal slot in rule " + rule.lhs);
      if (tag_for_category(*cat))
        throw ValidationError("agreement group on a taggable category in rule " + rule.lhs);
      const std::size_t n = lex.category_size(*cat);
      const std::string root = find_root(*slot.agreement);
      auto [it, inserted] = group_arity.emplace(root, n);
      if (!inserted && it->second != n)
        throw ValidationError("agreement group '" + root + "' spans categories of different size");
    }
  }
}

// ---------------------------------------------------------------------------
// Expansion plan

namespace {

using PlanSlot = ExpansionPlan::PlanSlot;
using Variant = ExpansionPlan::Variant;

struct PlanBuilder {
  const Grammar& grammar;
  const Lexicon& lexicon;
  ExpandMode mode;

  std::vector<std::vector<PlanSlot>> expand_symbol(const std::string& name) {
    std::vector<std::vector<PlanSlot>> out;
    for (const Rule* rule : grammar.rules_for(name)) {
      auto partials = expand_rule(*rule);
      out.insert(out.end(), std::make_move_iterator(partials.begin()),
                 std::make_move_iterator(partials.end()));
    }
    return out;
  }

  std::vector<std::vector<PlanSlot>> expand_rule(const Rule& rule) {
    // union-find over the rule's agreement groups
    std::map<std::string, std::string> parent;
    for (const Slot& slot : rule.rhs) {
      if (slot.agreement) parent.emplace(*slot.agreement, *slot.agreement);
    }
    auto find_root = [&](std::string s) {
      while (parent.count(s) && parent[s] != s) s = parent[s];
      return s;
    };
    for (const auto& [a, b] : rule.linked_groups) parent[find_root(a)] = find_root(b);

    struct Partial {
      std::vector<PlanSlot> slots;
      std::map<std::string, std::int32_t> group_owner;
    };
    std::vector<Partial> partials(1);

    for (const Slot& slot : rule.rhs) {
      if (slot.symbol[0] == '[') {
        const Tag tag = *tag_from_token(slot.symbol);
        for (Partial& p : partials) {
          p.slots.push_back(PlanSlot{tag_category(tag), slot.join, 1, -1, -1, true, tag});
        }
        continue;
      }
      if (grammar.nonterminals().count(slot.symbol)) {
        auto subs = expand_symbol(slot.symbol);
        std::vector<Partial> grown;
        grown.reserve(partials.size() * subs.size());
        for (const Partial& p : partials) {
          for (const auto& sub : subs) {
            Partial q = p;
            const std::int32_t shift = static_cast<std::int32_t>(q.slots.size());
            for (std::size_t k = 0; k < sub.size(); ++k) {
              PlanSlot s = sub[k];
              if (k == 0) s.join = slot.join;
              // agreement owners are indices local to the sub-expansion
              if (s.agree_owner >= 0) s.agree_owner += shift;
              q.slots.push_back(s);
            }
            grown.push_back(std::move(q));
          }
        }
        partials = std::move(grown);
        continue;
      }
      const Category cat = *category_from_string(slot.symbol);
      const std::uint32_t n = static_cast<std::uint32_t>(lexicon.category_size(cat));
      for (Partial& p : partials) {
        PlanSlot s{cat, slot.join, n, -1, -1, false, Tag::neg};
        if (slot.fixed_index) {
          s.domain = 1;
          s.fixed = *slot.fixed_index - 1;
        } else if (mode == ExpandMode::tagged && tag_for_category(cat)) {
          s.domain = 1;
          s.tagged = true;
          s.tag = *tag_for_category(cat);
        } else if (slot.agreement) {
          const std::string root = find_root(*slot.agreement);
          auto it = p.group_owner.find(root);
          if (it == p.group_owner.end()) {
            p.group_owner[root] = static_cast<std::int32_t>(p.slots.size());
          } else {
            s.domain = 1;
            s.agree_owner = it->second;
          }
        }
        p.slots.push_back(s);
      }
    }

    std::vector<std::vector<PlanSlot>> out;
    out.reserve(partials.size());
    for (Partial& p : partials) out.push_back(std::move(p.slots));
    return out;
  }
};

}  // namespace

ExpansionPlan::ExpansionPlan(const Grammar& grammar, const Lexicon& lexicon, ExpandMode mode,
                             const StructureFilter& filter)
    : lexicon_(lexicon) {
  grammar.validate(lexicon);
  PlanBuilder builder{grammar, lexicon, mode};
  total_ = 0;
  for (const Rule* rule : grammar.rules_for(grammar.start())) {
    if (filter && !filter->count(rule->label)) continue;
    for (auto& slots : builder.expand_rule(*rule)) {
      Variant v;
      v.label = rule->label;
      v.slots = std::move(slots);
      v.suffix.assign(v.slots.size() + 1, 1);
      for (std::size_t i = v.slots.size(); i-- > 0;) {
        v.suffix[i] = v.suffix[i + 1] * v.slots[i].domain;
      }
      v.count = v.suffix[0];
      total_ += v.count;
      variants_.push_back(std::move(v));
    }
  }
}

void ExpansionPlan::build_template(std::size_t variant, const std::vector<std::uint32_t>& digits,
                                   SentenceTemplate& out) const {
  const Variant& v = variants_[variant];
  out.label = v.label;
  out.slots.clear();
  out.slots.reserve(v.slots.size());
  for (std::size_t i = 0; i < v.slots.size(); ++i) {
    const PlanSlot& ps = v.slots[i];
    TemplateSlot slot;
    slot.category = ps.category;
    slot.join = ps.join;
    if (ps.tagged) {
      slot.tag = ps.tag;
    } else {
      std::uint32_t choice;
      if (ps.fixed >= 0) {
        choice = static_cast<std::uint32_t>(ps.fixed);
      } else if (ps.agree_owner >= 0) {
        choice = digits[static_cast<std::size_t>(ps.agree_owner)];
      } else {
        choice = digits[i];
      }
      slot.entry = static_cast<std::int32_t>(lexicon_.category_ordinals(ps.category)[choice]);
    }
    out.slots.push_back(slot);
  }
}

SentenceTemplate ExpansionPlan::nth(const mpz_class& index) const {
  if (index < 0 || index >= total_) throw Error("derivation index out of range");
  mpz_class rest = index;
  for (std::size_t vi = 0; vi < variants_.size(); ++vi) {
    const Variant& v = variants_[vi];
    if (rest >= v.count) {
      rest -= v.count;
      continue;
    }
    std::vector<std::uint32_t> digits(v.slots.size(), 0);
    for (std::size_t i = 0; i < v.slots.size(); ++i) {
      if (v.slots[i].domain <= 1) continue;
      mpz_class q = rest / v.suffix[i + 1];
      mpz_class digit = q % v.slots[i].domain;
      digits[i] = static_cast<std::uint32_t>(digit.get_ui());
    }
    SentenceTemplate out;
    build_template(vi, digits, out);
    return out;
  }
  throw Error("derivation index out of range");
}

TemplateStream::TemplateStream(std::shared_ptr<const ExpansionPlan> plan) : plan_(std::move(plan)) {
  reset();
}

void TemplateStream::reset() {
  variant_ = 0;
  exhausted_ = plan_->variant_count() == 0;
  fresh_ = true;
  if (!exhausted_) digits_.assign(plan_->variants()[0].slots.size(), 0);
}

bool TemplateStream::advance() {
  const auto& slots = plan_->variants()[variant_].slots;
  for (std::size_t i = slots.size(); i-- > 0;) {
    if (slots[i].domain <= 1) continue;
    if (++digits_[i] < slots[i].domain) return true;
    digits_[i] = 0;
  }
  // this variant is exhausted; move on
  ++variant_;
  if (variant_ >= plan_->variant_count()) return false;
  digits_.assign(plan_->variants()[variant_].slots.size(), 0);
  return true;
}

bool TemplateStream::next(SentenceTemplate& out) {
  if (exhausted_) return false;
  if (!fresh_ && !advance()) {
    exhausted_ = true;
    return false;
  }
  fresh_ = false;
  plan_->build_template(variant_, digits_, out);
  return true;
}

TemplateStream expand(const Grammar& grammar, const Lexicon& lexicon, ExpandMode mode,
                      const StructureFilter& filter) {
  return TemplateStream(std::make_shared<ExpansionPlan>(grammar, lexicon, mode, filter));
}

mpz_class count_realizations(const Grammar& grammar, const Lexicon& lexicon,
                             const StructureFilter& filter, ExpandMode mode) {
  return ExpansionPlan(grammar, lexicon, mode, filter).count();
}

std::uint64_t count_distinct_surfaces(const Grammar& grammar, const Lexicon& lexicon,
                                      std::uint64_t limit, const StructureFilter& filter) {
  auto plan = std::make_shared<const ExpansionPlan>(grammar, lexicon, ExpandMode::concrete, filter);
  if (plan->count() > mpz_class(static_cast<unsigned long>(limit))) {
    throw Error("enumeration refused: analytic realization count " + plan->count().get_str() +
                " exceeds limit " + std::to_string(limit));
  }
  TemplateStream stream(plan);
  std::unordered_set<std::string> surfaces;
  SentenceTemplate tpl;
  while (stream.next(tpl)) surfaces.insert(render_template(tpl, lexicon));
  return surfaces.size();
}

namespace {

mpz_class uniform_mpz(Rng& rng, const mpz_class& n) {
  if (n <= 1) return 0;
  if (mpz_fits_ulong_p(mpz_class(n - 1).get_mpz_t()) &&
      mpz_class(n - 1).get_ui() < UINT64_MAX) {
    return mpz_class(static_cast<unsigned long>(rng.below(mpz_class(n - 1).get_ui() + 1)));
  }
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  while (true) {
    mpz_class v = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = rng.next();
      if (w + 1 == words && bits % 64 != 0) word &= (1ULL << (bits % 64)) - 1;
      mpz_class part(static_cast<unsigned long>(word >> 32));
      part <<= 32;
      part += static_cast<unsigned long>(word & 0xFFFFFFFFULL);
      part <<= 64 * w;
      v += part;
    }
    if (v < n) return v;
  }
}

}  // namespace

std::vector<SentenceTemplate> sample(const Grammar& grammar, const Lexicon& lexicon,
                                     std::uint64_t seed, std::size_t n,
                                     const StructureFilter& filter, ExpandMode mode) {
  std::vector<SentenceTemplate> out;
  if (n == 0) return out;
  ExpansionPlan plan(grammar, lexicon, mode, filter);
  if (plan.count() == 0) throw Error("sample: empty derivation space");
  Rng rng(seed);
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(plan.nth(uniform_mpz(rng, plan.count())));
  }
  return out;
}

}  // namespace nawgen
