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

// Command-line front end: grammar-based corpus expansion, spelling
// unification, embedding training and the sentence-similarity evaluation,
// each stage independently invokable or chained with `pipeline`.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <string>

#include "nawgen/corpus.hpp"
#include "nawgen/errors.hpp"
#include "nawgen/pipeline.hpp"
#include "nawgen/text.hpp"

namespace {

using namespace nawgen;

struct GlobalOptions {
  std::uint64_t seed = 42;
  std::string data_dir = "data";
  bool quiet = false;
};

std::string kb_path(const GlobalOptions& g, const std::string& grammar) {
  return g.data_dir + "/kb_" + grammar + ".tsv";
}
std::string grammar_path(const GlobalOptions& g, const std::string& grammar) {
  return g.data_dir + "/grammar_" + grammar + ".cfg";
}
std::string default_rules(const GlobalOptions& g) {
  const std::string path = g.data_dir + "/unigraph_rules.tsv";
  return std::filesystem::exists(path) ? path : std::string();
}

StructureFilter parse_structures(const std::string& csv) {
  if (csv.empty()) return std::nullopt;
  std::set<StructureLabel> labels;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string::npos) comma = csv.size();
    const std::string item = csv.substr(start, comma - start);
    if (!item.empty()) {
      auto label = structure_label_from_string(item);
      if (!label) throw ValidationError("unknown structure label '" + item + "'");
      labels.insert(*label);
    }
    start = comma + 1;
  }
  return labels;
}

std::set<std::string> parse_stoplist(const std::string& csv) {
  std::set<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string::npos) comma = csv.size();
    if (comma > start) out.insert(csv.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nawgen: Nawatl micro-grammar corpus expansion and evaluation"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "seed for every stochastic step");
  app.add_option("--data", global.data_dir, "bundled data directory");
  app.add_flag("--quiet", global.quiet, "suppress progress output");
  app.set_config("--config", "", "key=value defaults file");

  // ---- generate
  auto* gen = app.add_subcommand("generate", "enumerate or sample grammar derivations");
  std::string gen_grammar = "g1", gen_mode = "concrete", gen_structures, gen_out;
  std::uint64_t gen_sample = 0, gen_limit = 5'000'000;
  gen->add_option("--grammar", gen_grammar, "g0 or g1")->check(CLI::IsMember({"g0", "g1"}));
  gen->add_option("--mode", gen_mode, "concrete or tagged")
      ->check(CLI::IsMember({"concrete", "tagged"}));
  gen->add_option("--structures", gen_structures, "comma-separated structure labels");
  gen->add_option("--sample", gen_sample, "draw N templates instead of enumerating");
  gen->add_option("--limit", gen_limit, "refuse full enumeration above this count");
  gen->add_option("--out", gen_out, "output template file")->required();

  // ---- filter
  auto* fil = app.add_subcommand("filter", "animate/inanimate agreement filter");
  std::string fil_grammar = "g1", fil_in, fil_out;
  fil->add_option("--grammar", fil_grammar)->check(CLI::IsMember({"g0", "g1"}));
  fil->add_option("--in", fil_in, "template file")->required();
  fil->add_option("--out", fil_out, "filtered template file")->required();

  // ---- postproc
  auto* post = app.add_subcommand("postproc",
                                  "tag substitution, realization, paragraphs, connectors");
  std::string post_grammar = "g1", post_in, post_authentic, post_out;
  double post_pconnect = -1;
  post->add_option("--grammar", post_grammar)->check(CLI::IsMember({"g0", "g1"}));
  post->add_option("--in", post_in, "filtered template file")->required();
  post->add_option("--authentic", post_authentic, "corpus for distribution estimation");
  post->add_option("--out", post_out, "artificial corpus file")->required();
  post->add_option("--p-connect", post_pconnect, "connector probability (default: estimated)");

  // ---- unify
  auto* uni = app.add_subcommand("unify", "orthographic unification of a corpus");
  std::string uni_in, uni_out, uni_rules;
  uni->add_option("--in", uni_in)->required();
  uni->add_option("--out", uni_out)->required();
  uni->add_option("--rules", uni_rules, "rewrite table (default: bundled)");

  // ---- merge
  auto* mrg = app.add_subcommand("merge", "concatenate authentic and artificial corpora");
  std::string mrg_auth, mrg_art, mrg_out;
  mrg->add_option("--authentic", mrg_auth)->required();
  mrg->add_option("--artificial", mrg_art)->required();
  mrg->add_option("--out", mrg_out)->required();

  // ---- stats
  auto* sta = app.add_subcommand("stats", "corpus statistics");
  std::string sta_in;
  sta->add_option("--in", sta_in)->required();

  // ---- train
  auto* trn = app.add_subcommand("train", "train subword skip-gram embeddings");
  std::string trn_in, trn_model = "model";
  TrainConfig trn_cfg;
  bool trn_full = false;
  trn->add_option("--in", trn_in, "training corpus")->required();
  trn->add_option("--model", trn_model, "output prefix (.vec/.bin)");
  trn->add_option("--dim", trn_cfg.dimensions);
  trn->add_option("--window", trn_cfg.window);
  trn->add_option("--epochs", trn_cfg.epochs);
  trn->add_option("--negative", trn_cfg.negative_samples);
  trn->add_option("--min-count", trn_cfg.min_count);
  trn->add_option("--subword-min", trn_cfg.subword_min);
  trn->add_option("--subword-max", trn_cfg.subword_max);
  trn->add_option("--buckets", trn_cfg.bucket_count);
  trn->add_option("--lr", trn_cfg.learning_rate);
  trn->add_flag("--full-scale", trn_full, "300 dimensions, window 5, 20 epochs");

  // ---- eval
  auto* evl = app.add_subcommand("eval", "sentence similarity evaluation (Kendall tau)");
  std::string evl_model = "model", evl_tasks, evl_stoplist = "iwan,in,tlen,ipan", evl_rules,
              evl_report;
  int evl_k = 3, evl_runs = 5;
  bool evl_nounify = false, evl_gold = false;
  evl->add_option("--model", evl_model, "model prefix (.vec/.bin)");
  evl->add_option("--tasks", evl_tasks, "task file (default: bundled mini tasks)");
  evl->add_option("--k", evl_k, "tasks held out per run");
  evl->add_option("--runs", evl_runs, "number of runs");
  evl->add_option("--stoplist", evl_stoplist, "comma-separated empty words");
  evl->add_option("--rules", evl_rules, "rewrite table for task sentences");
  evl->add_option("--report", evl_report, "write the report as JSON here");
  evl->add_flag("--no-unify", evl_nounify, "skip spelling unification of task sentences");
  evl->add_flag("--inject-gold", evl_gold, "score the gold rankings (sanity upper bound)");

  // ---- standin
  auto* stn = app.add_subcommand("standin", "generate the synthetic authentic-like corpus");
  std::string stn_out, stn_tasks;
  std::size_t stn_paragraphs = 240;
  double stn_mean = 41.5;
  stn->add_option("--out", stn_out)->required();
  stn->add_option("--paragraphs", stn_paragraphs);
  stn->add_option("--mean-length", stn_mean, "mean sentences per paragraph");
  stn->add_option("--tasks", stn_tasks, "task file mixed into the vocabulary");

  // ---- pipeline
  auto* pipe = app.add_subcommand("pipeline", "generate -> filter -> postproc -> unify -> merge "
                                              "-> train -> eval on bundled data");
  pipeline::PipelineOptions popt;
  std::string pipe_grammar = "g1", pipe_structures;
  pipe->add_option("--workdir", popt.work_dir, "stage output directory")->required();
  pipe->add_option("--grammar", pipe_grammar)->check(CLI::IsMember({"g0", "g1"}));
  pipe->add_option("--sample", popt.sample, "templates to draw (0 = full enumeration)");
  pipe->add_option("--limit", popt.limit);
  pipe->add_option("--structures", pipe_structures);
  pipe->add_option("--k", popt.eval_k);
  pipe->add_option("--runs", popt.eval_runs);
  pipe->add_option("--dim", popt.train.dimensions);
  pipe->add_option("--window", popt.train.window);
  pipe->add_option("--epochs", popt.train.epochs);
  pipe->add_option("--p-connect", popt.p_connect);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;  // usage error
  }

  try {
    if (*gen) {
      pipeline::GenerateOptions opt;
      opt.grammar_path = grammar_path(global, gen_grammar);
      opt.kb_path = kb_path(global, gen_grammar);
      opt.out_path = gen_out;
      opt.mode = gen_mode == "tagged" ? ExpandMode::tagged : ExpandMode::concrete;
      opt.structures = gen_structures.empty()
                           ? pipeline::default_structures(*grammar_id_from_string(gen_grammar))
                           : parse_structures(gen_structures);
      opt.sample = gen_sample;
      opt.seed = global.seed;
      opt.limit = gen_limit;
      opt.quiet = global.quiet;
      const auto result = pipeline::stage_generate(opt);
      if (!global.quiet)
        std::cerr << "wrote " << result.written << " templates to " << gen_out << "\n";
    } else if (*fil) {
      const auto summary =
          pipeline::stage_filter(kb_path(global, fil_grammar), fil_in, fil_out);
      if (!global.quiet)
        std::cerr << "seen " << summary.seen << " kept " << summary.kept << " dropped "
                  << summary.dropped << " errored " << summary.errored << "\n";
    } else if (*post) {
      pipeline::PostprocOptions opt;
      opt.kb_path = kb_path(global, post_grammar);
      opt.in_path = post_in;
      opt.authentic_path =
          post_authentic.empty() ? global.data_dir + "/standin.txt" : post_authentic;
      opt.out_path = post_out;
      opt.seed = global.seed;
      opt.p_connect = post_pconnect;
      opt.provenance =
          post_grammar == "g0" ? Provenance::artificial_g0 : Provenance::artificial_g1;
      const auto cs = pipeline::stage_postproc(opt);
      if (!global.quiet)
        std::cerr << "wrote " << cs.sentences << " sentences in " << cs.paragraphs
                  << " paragraphs\n";
    } else if (*uni) {
      pipeline::stage_unify(uni_in, uni_rules.empty() ? default_rules(global) : uni_rules,
                            uni_out);
    } else if (*mrg) {
      const auto cs = pipeline::stage_merge(mrg_auth, mrg_art, mrg_out);
      if (!global.quiet) std::cerr << "merged " << cs.paragraphs << " paragraphs\n";
    } else if (*sta) {
      std::cout << format_stats(stats(read_corpus(sta_in)));
    } else if (*trn) {
      if (trn_full) {
        const TrainConfig full = TrainConfig::full_scale();
        trn_cfg.dimensions = full.dimensions;
        trn_cfg.window = full.window;
        trn_cfg.epochs = full.epochs;
      }
      trn_cfg.seed = global.seed;
      const auto log =
          pipeline::stage_train(trn_in, trn_cfg, trn_model + ".vec", trn_model + ".bin");
      if (!global.quiet && !log.epoch_loss.empty())
        std::cerr << "final epoch loss " << log.epoch_loss.back() << "\n";
    } else if (*evl) {
      pipeline::EvalOptions opt;
      opt.vec_path = evl_model + ".vec";
      opt.bin_path = evl_model + ".bin";
      opt.tasks_path = evl_tasks.empty() ? global.data_dir + "/tasks_mini.txt" : evl_tasks;
      opt.k = evl_k;
      opt.runs = evl_runs;
      opt.seed = global.seed;
      opt.stoplist = parse_stoplist(evl_stoplist);
      opt.unify_tasks = !evl_nounify;
      opt.rules_path = evl_rules.empty() ? default_rules(global) : evl_rules;
      opt.inject_gold = evl_gold;
      const auto report = pipeline::stage_eval(opt);
      std::cout << report.to_text();
      if (!evl_report.empty()) write_file(evl_report, report.to_json());
    } else if (*stn) {
      pipeline::StandinOptions opt;
      opt.kb_path = kb_path(global, "g1");
      opt.tasks_path = stn_tasks.empty() ? global.data_dir + "/tasks_mini.txt" : stn_tasks;
      opt.out_path = stn_out;
      opt.paragraphs = stn_paragraphs;
      opt.mean_sentences = stn_mean;
      opt.seed = global.seed;
      const auto cs = pipeline::stage_standin(opt);
      if (!global.quiet)
        std::cerr << "stand-in corpus: " << cs.sentences << " sentences, " << cs.paragraphs
                  << " paragraphs, " << cs.tokens << " tokens\n";
    } else if (*pipe) {
      popt.data_dir = global.data_dir;
      popt.grammar = *grammar_id_from_string(pipe_grammar);
      popt.seed = global.seed;
      popt.quiet = global.quiet;
      if (!pipe_structures.empty()) popt.structures = parse_structures(pipe_structures);
      const auto result = pipeline::run_pipeline(popt);
      std::cout << result.report.to_text();
      if (!global.quiet)
        std::cerr << "report written to " << result.report_path << "\n";
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
