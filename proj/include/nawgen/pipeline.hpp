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

#ifndef NAWGEN_PIPELINE_HPP
#define NAWGEN_PIPELINE_HPP

#include <cstdint>
#include <set>
#include <string>

#include "nawgen/corpus.hpp"
#include "nawgen/embed.hpp"
#include "nawgen/grammar.hpp"
#include "nawgen/semfilter.hpp"
#include "nawgen/simeval.hpp"

namespace nawgen::pipeline {

// The empty words excluded from sentence vectors by default.
const std::set<std::string>& default_stoplist();

// g1 generates VSO only unless told otherwise; g0 has no default filter.
StructureFilter default_structures(GrammarId id);

struct GenerateOptions {
  std::string grammar_path;
  std::string kb_path;
  std::string out_path;
  ExpandMode mode = ExpandMode::tagged;
  StructureFilter structures;     // caller resolves defaults
  std::uint64_t sample = 0;       // 0 = full enumeration
  std::uint64_t seed = 42;
  std::uint64_t limit = 5'000'000;  // full-enumeration guard
  bool quiet = false;
};
struct GenerateResult {
  std::string analytic_count;  // decimal
  std::uint64_t written = 0;
};
GenerateResult stage_generate(const GenerateOptions& opt);

FilterSummary stage_filter(const std::string& kb_path, const std::string& in_path,
                           const std::string& out_path);

struct PostprocOptions {
  std::string kb_path;
  std::string in_path;          // template file
  std::string authentic_path;   // corpus the distributions are estimated from
  std::string out_path;
  std::uint64_t seed = 42;
  double p_connect = -1;        // < 0: use the corpus estimate
  Provenance provenance = Provenance::artificial_g1;
};
CorpusStats stage_postproc(const PostprocOptions& opt);

// rules_path empty = built-in default table
void stage_unify(const std::string& in_path, const std::string& rules_path,
                 const std::string& out_path);

CorpusStats stage_merge(const std::string& authentic_path, const std::string& artificial_path,
                        const std::string& out_path);

TrainLog stage_train(const std::string& corpus_path, const TrainConfig& config,
                     const std::string& vec_path, const std::string& bin_path);

struct EvalOptions {
  std::string vec_path;
  std::string bin_path;
  std::string tasks_path;
  int k = 3;
  int runs = 5;
  std::uint64_t seed = 42;
  std::set<std::string> stoplist = default_stoplist();
  bool unify_tasks = true;      // apply the spelling unification to task sentences
  std::string rules_path;       // empty = defaults
  bool inject_gold = false;     // score the gold rankings themselves (diagnostic)
};
EvalReport stage_eval(const EvalOptions& opt);

// Synthetic authentic-like corpus: Zipfian draws over KB-derived inflected
// forms, task-file tokens and filler words, paragraph lengths with the
// requested mean, occasional connector-led sentences.
struct StandinOptions {
  std::string kb_path;
  std::string tasks_path;  // optional vocabulary source
  std::string out_path;
  std::size_t paragraphs = 240;
  double mean_sentences = 41.5;
  std::uint64_t seed = 20250808;
};
CorpusStats stage_standin(const StandinOptions& opt);
Corpus make_standin_corpus(const Lexicon& lex, const std::vector<std::string>& extra_vocab,
                           std::size_t paragraphs, double mean_sentences, std::uint64_t seed);

struct PipelineOptions {
  std::string data_dir = "data";
  std::string work_dir = "pipeline-out";
  GrammarId grammar = GrammarId::g1;
  std::uint64_t seed = 42;
  std::uint64_t sample = 20000;
  std::uint64_t limit = 5'000'000;
  ExpandMode mode = ExpandMode::tagged;
  StructureFilter structures;  // unset: default_structures(grammar)
  TrainConfig train;           // train.seed is overridden by `seed`
  int eval_k = 0;
  int eval_runs = 1;
  double p_connect = -1;
  bool quiet = false;
};
struct PipelineResult {
  std::string analytic_count;
  FilterSummary filter;
  CorpusStats merged_stats;
  EvalReport report;
  std::string merged_path;
  std::string vec_path;
  std::string bin_path;
  std::string report_path;
};

// generate -> filter -> postproc -> unify -> merge -> train -> eval, staged
// through files in work_dir exactly as the individual subcommands would.
PipelineResult run_pipeline(const PipelineOptions& opt);

}  // namespace nawgen::pipeline

#endif  // NAWGEN_PIPELINE_HPP
