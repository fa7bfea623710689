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

#include "nawgen/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nawgen/errors.hpp"
#include "nawgen/postproc.hpp"
#include "nawgen/rng.hpp"
#include "nawgen/text.hpp"
#include "nawgen/unigraph.hpp"

namespace nawgen::pipeline {

namespace {

// independent seed streams per post-processing purpose
enum SeedPurpose : std::uint64_t { kSubstitute = 1, kSegment = 2, kConnect = 3 };

std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> lines;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

const std::set<std::string>& default_stoplist() {
  static const std::set<std::string> stoplist = {"iwan", "in", "tlen", "ipan"};
  return stoplist;
}

StructureFilter default_structures(GrammarId id) {
  if (id == GrammarId::g1) return std::set<StructureLabel>{StructureLabel::VSO};
  return std::nullopt;
}

GenerateResult stage_generate(const GenerateOptions& opt) {
  const Lexicon lex = Lexicon::load(opt.kb_path);
  const Grammar grammar = Grammar::load(opt.grammar_path);
  auto plan = std::make_shared<const ExpansionPlan>(grammar, lex, opt.mode, opt.structures);

  GenerateResult result;
  result.analytic_count = plan->count().get_str();
  if (!opt.quiet) {
    std::cerr << "analytic realization count: " << result.analytic_count << "\n";
  }

  std::ofstream out(opt.out_path);
  if (!out) throw IoError("cannot open " + opt.out_path + " for writing");

  if (opt.sample > 0) {
    for (const SentenceTemplate& tpl :
         sample(grammar, lex, opt.seed, opt.sample, opt.structures, opt.mode)) {
      out << template_to_line(tpl, lex) << '\n';
      ++result.written;
    }
  } else {
    if (plan->count() > mpz_class(static_cast<unsigned long>(opt.limit))) {
      throw Error("refusing full enumeration: analytic count " + result.analytic_count +
                  " exceeds limit " + std::to_string(opt.limit) +
                  " (raise --limit or use --sample)");
    }
    TemplateStream stream(plan);
    SentenceTemplate tpl;
    while (stream.next(tpl)) {
      out << template_to_line(tpl, lex) << '\n';
      ++result.written;
    }
  }
  if (!out) throw IoError("write failure on " + opt.out_path);
  return result;
}

FilterSummary stage_filter(const std::string& kb_path, const std::string& in_path,
                           const std::string& out_path) {
  const Lexicon lex = Lexicon::load(kb_path);
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot open " + out_path + " for writing");

  FilterSummary summary;
  std::ifstream in(in_path);
  if (!in) throw IoError("cannot open " + in_path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const SentenceTemplate tpl = template_from_line(line, lex);
    ++summary.seen;
    bool keep = false;
    try {
      keep = is_consistent(tpl, lex);
    } catch (const PreconditionError&) {
      ++summary.errored;
      continue;
    }
    if (keep) {
      ++summary.kept;
      out << line << '\n';
    } else {
      ++summary.dropped;
    }
  }
  if (!out) throw IoError("write failure on " + out_path);
  return summary;
}

CorpusStats stage_postproc(const PostprocOptions& opt) {
  const Lexicon lex = Lexicon::load(opt.kb_path);
  const Corpus authentic = read_corpus(opt.authentic_path);
  const EstimatedModels models = estimate_distributions(authentic, lex);

  std::vector<std::string> sentences;
  for (const std::string& line : read_lines(opt.in_path)) {
    const SentenceTemplate tpl = template_from_line(line, lex);
    const SentenceTemplate resolved =
        substitute_tags(tpl, models.tags, mix_seed(mix_seed(opt.seed, kSubstitute), sentences.size()));
    sentences.push_back(realize(resolved, lex));
  }
  if (sentences.empty()) throw Error("postproc: no templates in " + opt.in_path);

  const double p_connect = opt.p_connect < 0 ? models.p_connect : opt.p_connect;
  auto paragraphs =
      segment_paragraphs(sentences, models.paragraphs, mix_seed(opt.seed, kSegment));

  Corpus artificial;
  artificial.metadata["generator"] = "nawgen postproc";
  {
    std::ostringstream p;
    p.precision(6);
    p << p_connect;
    artificial.metadata["p_connect"] = p.str();
  }
  artificial.metadata["source_templates"] = std::to_string(sentences.size());
  for (std::size_t pi = 0; pi < paragraphs.size(); ++pi) {
    Paragraph par;
    par.provenance = opt.provenance;
    par.sentences = insert_connectors(normalize(paragraphs[pi]), p_connect, models.connectors,
                                      lex, mix_seed(mix_seed(opt.seed, kConnect), pi));
    if (!par.sentences.empty()) artificial.paragraphs.push_back(std::move(par));
  }
  write_corpus(artificial, opt.out_path);
  return stats(artificial);
}

void stage_unify(const std::string& in_path, const std::string& rules_path,
                 const std::string& out_path) {
  const RewriteTable table =
      rules_path.empty() ? RewriteTable::defaults() : RewriteTable::load(rules_path);
  Corpus corpus = read_corpus(in_path);
  for (Paragraph& p : corpus.paragraphs) {
    for (std::string& s : p.sentences) s = unify(s, table);
  }
  corpus.metadata["unified"] = "true";
  write_corpus(corpus, out_path);
}

CorpusStats stage_merge(const std::string& authentic_path, const std::string& artificial_path,
                        const std::string& out_path) {
  const Corpus merged = merge(read_corpus(authentic_path), read_corpus(artificial_path));
  write_corpus(merged, out_path);
  return stats(merged);
}

TrainLog stage_train(const std::string& corpus_path, const TrainConfig& config,
                     const std::string& vec_path, const std::string& bin_path) {
  const Corpus corpus = read_corpus(corpus_path);
  TrainLog log;
  const EmbeddingModel model = train(corpus, config, &log);
  save_model(model, vec_path, bin_path);
  return log;
}

EvalReport stage_eval(const EvalOptions& opt) {
  TaskSet tasks = load_tasks(opt.tasks_path);
  if (opt.unify_tasks) {
    const RewriteTable table =
        opt.rules_path.empty() ? RewriteTable::defaults() : RewriteTable::load(opt.rules_path);
    for (SimilarityTask& task : tasks.tasks) {
      task.reference = unify(task.reference, table);
      for (std::string& c : task.candidates) c = unify(c, table);
    }
  }
  if (opt.inject_gold) {
    std::vector<std::vector<int>> gold;
    for (const SimilarityTask& t : tasks.tasks) gold.push_back(t.gold);
    return evaluate_rankings(gold, tasks, opt.k, opt.runs, opt.seed);
  }
  const EmbeddingModel model = load_model(opt.vec_path, opt.bin_path);
  return evaluate(model, tasks, opt.k, opt.runs, opt.seed, opt.stoplist);
}

// ---------------------------------------------------------------------------
// Stand-in corpus

Corpus make_standin_corpus(const Lexicon& lex, const std::vector<std::string>& extra_vocab,
                           std::size_t paragraphs, double mean_sentences, std::uint64_t seed) {
  if (paragraphs == 0) throw Error("standin: need at least one paragraph");
  if (mean_sentences < 1) throw Error("standin: mean paragraph length below 1");

  // Vocabulary pool: inflected KB forms first, then task tokens and filler.
  std::vector<std::string> pool;
  std::vector<std::string> connectors;
  for (const LexEntry& e : lex.entries()) {
    if (e.is_empty()) continue;
    switch (e.category) {
      case Category::noun:
        pool.push_back(e.surface);
        for (const char* pos : {"no", "mo", "i"}) pool.push_back(pos + e.stem());
        break;
      case Category::verb:
        pool.push_back("ki" + e.surface);
        pool.push_back(e.surface);
        break;
      case Category::rhetorical_connector:
        connectors.push_back(e.surface);
        pool.push_back(e.surface);
        break;
      default:
        pool.push_back(e.surface);
        break;
    }
  }
  for (const std::string& token : extra_vocab) {
    std::string t = token;
    while (!t.empty() && (t.back() == '.' || t.back() == ',' || t.back() == ';')) t.pop_back();
    if (!t.empty()) pool.push_back(t);
  }

  Rng rng(seed);
  // filler words from Nawatl-looking syllables
  static const char* kOnsets[] = {"t",  "k",  "p", "m", "n", "s", "x",
                                  "ch", "tl", "w", "y", "l", "h"};
  static const char* kVowels[] = {"a", "e", "i", "o"};
  static const char* kCodas[] = {"", "", "", "n", "l", "h"};
  for (int i = 0; i < 300; ++i) {
    std::string w;
    const int syllables = 2 + static_cast<int>(rng.below(3));
    for (int s = 0; s < syllables; ++s) {
      w += kOnsets[rng.below(std::size(kOnsets))];
      w += kVowels[rng.below(std::size(kVowels))];
    }
    w += kCodas[rng.below(std::size(kCodas))];
    pool.push_back(w);
  }

  // Zipfian weights over a seeded shuffle of the pool
  for (std::size_t i = pool.size(); i > 1; --i) {
    std::swap(pool[i - 1], pool[rng.below(i)]);
  }
  std::vector<double> cdf(pool.size());
  double acc = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    acc += 1.0 / std::pow(static_cast<double>(i + 2), 0.9);
    cdf[i] = acc;
  }
  for (double& x : cdf) x /= acc;
  auto draw_word = [&]() -> const std::string& {
    const double u = rng.uniform01();
    std::size_t lo = 0, hi = cdf.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cdf[mid] < u) lo = mid + 1; else hi = mid;
    }
    return pool[lo];
  };

  auto geometric = [&](double mean) {
    const double p = 1.0 / mean;
    double u = rng.uniform01();
    if (u >= 1.0) u = 0.999999;
    return static_cast<std::size_t>(std::log(1.0 - u) / std::log(1.0 - p));
  };

  Corpus corpus;
  corpus.metadata["synthetic"] = "true";
  corpus.metadata["generator"] = "nawgen standin";
  corpus.metadata["seed"] = std::to_string(seed);
  for (std::size_t pi = 0; pi < paragraphs; ++pi) {
    Paragraph par;
    par.provenance = Provenance::authentic;
    const std::size_t len = 1 + geometric(mean_sentences - 1.0);
    for (std::size_t si = 0; si < len; ++si) {
      std::string sentence;
      if (si > 0 && !connectors.empty() && rng.bernoulli(0.12)) {
        sentence = connectors[rng.below(connectors.size())];
      }
      const std::size_t tokens = 3 + geometric(15.0);
      for (std::size_t t = 0; t < tokens; ++t) {
        if (!sentence.empty()) sentence.push_back(' ');
        sentence += draw_word();
      }
      capitalize_first(sentence);
      sentence.push_back('.');
      par.sentences.push_back(std::move(sentence));
    }
    corpus.paragraphs.push_back(std::move(par));
  }
  return corpus;
}

CorpusStats stage_standin(const StandinOptions& opt) {
  const Lexicon lex = Lexicon::load(opt.kb_path);
  std::vector<std::string> extra;
  if (!opt.tasks_path.empty()) {
    const TaskSet tasks = load_tasks(opt.tasks_path);
    for (const SimilarityTask& t : tasks.tasks) {
      for (auto& token : split_ws(t.reference)) extra.push_back(token);
      for (const std::string& c : t.candidates) {
        for (auto& token : split_ws(c)) extra.push_back(token);
      }
    }
  }
  const Corpus corpus =
      make_standin_corpus(lex, extra, opt.paragraphs, opt.mean_sentences, opt.seed);
  write_corpus(corpus, opt.out_path);
  return stats(corpus);
}

// ---------------------------------------------------------------------------

PipelineResult run_pipeline(const PipelineOptions& opt) {
  namespace fs = std::filesystem;
  fs::create_directories(opt.work_dir);
  const std::string g = std::string(to_string(opt.grammar));
  const auto in_data = [&](const std::string& f) { return opt.data_dir + "/" + f; };
  const auto in_work = [&](const std::string& f) { return opt.work_dir + "/" + f; };

  const std::string kb = in_data("kb_" + g + ".tsv");
  const std::string grammar_file = in_data("grammar_" + g + ".cfg");
  const std::string rules = in_data("unigraph_rules.tsv");
  const std::string tasks = in_data("tasks_mini.txt");
  const std::string standin = in_data("standin.txt");

  PipelineResult result;
  auto note = [&](const std::string& msg) {
    if (!opt.quiet) std::cerr << "[pipeline] " << msg << "\n";
  };

  GenerateOptions gen;
  gen.grammar_path = grammar_file;
  gen.kb_path = kb;
  gen.out_path = in_work("templates.tpl");
  gen.mode = opt.mode;
  gen.structures = opt.structures ? opt.structures : default_structures(opt.grammar);
  gen.sample = opt.sample;
  gen.seed = opt.seed;
  gen.limit = opt.limit;
  gen.quiet = opt.quiet;
  const GenerateResult generated = stage_generate(gen);
  result.analytic_count = generated.analytic_count;
  note("generated " + std::to_string(generated.written) + " templates (analytic count " +
       generated.analytic_count + ")");

  result.filter = stage_filter(kb, in_work("templates.tpl"), in_work("filtered.tpl"));
  note("filter kept " + std::to_string(result.filter.kept) + " of " +
       std::to_string(result.filter.seen));

  PostprocOptions post;
  post.kb_path = kb;
  post.in_path = in_work("filtered.tpl");
  post.authentic_path = standin;
  post.out_path = in_work("artificial.txt");
  post.seed = opt.seed;
  post.p_connect = opt.p_connect;
  post.provenance =
      opt.grammar == GrammarId::g0 ? Provenance::artificial_g0 : Provenance::artificial_g1;
  const CorpusStats artificial_stats = stage_postproc(post);
  note("post-processed into " + std::to_string(artificial_stats.paragraphs) + " paragraphs / " +
       std::to_string(artificial_stats.sentences) + " sentences");

  stage_unify(in_work("artificial.txt"), rules, in_work("artificial_unified.txt"));
  stage_unify(standin, rules, in_work("authentic_unified.txt"));
  result.merged_path = in_work("merged.txt");
  result.merged_stats =
      stage_merge(in_work("authentic_unified.txt"), in_work("artificial_unified.txt"),
                  result.merged_path);
  note("merged corpus: " + std::to_string(result.merged_stats.tokens) + " tokens, " +
       std::to_string(result.merged_stats.sentences) + " sentences");

  TrainConfig train_cfg = opt.train;
  train_cfg.seed = opt.seed;
  result.vec_path = in_work("model.vec");
  result.bin_path = in_work("model.bin");
  stage_train(result.merged_path, train_cfg, result.vec_path, result.bin_path);
  note("trained " + std::to_string(train_cfg.dimensions) + "-dimensional model");

  EvalOptions eval;
  eval.vec_path = result.vec_path;
  eval.bin_path = result.bin_path;
  eval.tasks_path = tasks;
  eval.k = opt.eval_k;
  eval.runs = opt.eval_runs;
  eval.seed = opt.seed;
  eval.rules_path = rules;
  result.report = stage_eval(eval);
  result.report_path = in_work("report.json");
  write_file(result.report_path, result.report.to_json());
  return result;
}

}  // namespace nawgen::pipeline
