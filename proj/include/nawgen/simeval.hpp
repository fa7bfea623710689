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

#ifndef NAWGEN_SIMEVAL_HPP
#define NAWGEN_SIMEVAL_HPP

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nawgen/embed.hpp"

namespace nawgen {

inline constexpr int kCandidatesPerTask = 5;

struct SimilarityTask {
  std::string reference;
  std::vector<std::string> candidates;  // exactly 5
  std::vector<int> gold;                // rank of candidate i (1 = most similar)
};

struct TaskSet {
  std::vector<SimilarityTask> tasks;
};

// Task file: blocks separated by blank lines, each block
//   R: <reference>
//   C1..C5: <candidate>
//   G: <rank of each candidate, e.g. "2 1 3 5 4">
TaskSet load_tasks(const std::string& path);
TaskSet parse_tasks(std::string_view text, const std::string& name = "<memory>");

// Rank vector over the candidates by descending cosine similarity to the
// reference sentence vector; ties keep the original candidate order.
std::vector<int> rank_candidates(const EmbeddingModel& model, const SimilarityTask& task,
                                 const std::set<std::string>& stoplist = {});

// Kendall tau-b: (C - D) / sqrt((C+D+Tx)(C+D+Ty)), zero when a denominator
// factor vanishes. Library route counts pairs via merge sort; the tests keep
// an independent all-pairs oracle.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);
double kendall_tau_b(const std::vector<int>& x, const std::vector<int>& y);

struct EvalReport {
  int k = 0;
  int runs = 1;
  std::uint64_t seed = 0;
  std::vector<double> task_tau;                 // per task, over all tasks
  std::vector<std::vector<int>> model_rankings; // R_M per task
  std::vector<double> run_means;                // mean tau of retained tasks per run
  double mean_tau = 0;                          // mean of run means
  double max_tau = 0;                           // max of run means

  std::string to_text() const;
  std::string to_json() const;
};

// Leave-k-out: per run, hold out k tasks (seeded) and average tau over the
// retained ones.
EvalReport evaluate(const EmbeddingModel& model, const TaskSet& tasks, int k, int runs,
                    std::uint64_t seed, const std::set<std::string>& stoplist = {});

// Same protocol but with caller-provided rankings (e.g. the gold rankings
// themselves, as an upper-bound sanity check).
EvalReport evaluate_rankings(const std::vector<std::vector<int>>& rankings, const TaskSet& tasks,
                             int k, int runs, std::uint64_t seed);

}  // namespace nawgen

#endif  // NAWGEN_SIMEVAL_HPP
