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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nawgen/errors.hpp"
#include "nawgen/rng.hpp"
#include "nawgen/simeval.hpp"
#include "test_helpers.hpp"

using namespace nawgen;

namespace {

TaskSet three_tasks() {
  TaskSet set;
  for (int t = 0; t < 3; ++t) {
    SimilarityTask task;
    task.reference = "ref " + std::to_string(t);
    for (int c = 0; c < 5; ++c) task.candidates.push_back("cand " + std::to_string(c));
    task.gold = {1, 2, 3, 4, 5};
    set.tasks.push_back(task);
  }
  return set;
}

}  // namespace

TEST_SUITE("simeval") {

TEST_CASE("worked tau examples hold exactly") {
  CHECK(std::abs(kendall_tau_b({1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}) - 1.0) < 1e-12);
  CHECK(std::abs(kendall_tau_b({1, 2, 3, 4, 5}, {5, 4, 3, 2, 1}) + 1.0) < 1e-12);
  CHECK(std::abs(kendall_tau_b({1, 2, 3, 4, 5}, {2, 1, 3, 4, 5}) - 0.8) < 1e-12);
  CHECK(std::abs(kendall_tau_b({1, 2, 3}, {1, 1, 2}) - 2.0 / std::sqrt(6.0)) < 1e-12);
}

TEST_CASE("tau is symmetric, anti-symmetric under reversal, and 0 on all-ties") {
  const std::vector<int> x = {3, 1, 4, 5, 2};
  const std::vector<int> y = {2, 5, 1, 3, 4};
  CHECK(kendall_tau_b(x, y) == doctest::Approx(kendall_tau_b(y, x)).epsilon(1e-15));
  std::vector<int> yr = y;
  std::reverse(yr.begin(), yr.end());
  // reversing the order of values in a rank vector flips nothing by itself;
  // negate agreement by inverting the ranks instead
  std::vector<int> yi(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) yi[i] = 6 - y[i];
  CHECK(kendall_tau_b(x, yi) == doctest::Approx(-kendall_tau_b(x, y)).epsilon(1e-15));
  CHECK(kendall_tau_b({1, 1, 1}, {1, 2, 3}) == 0.0);
  CHECK_THROWS_AS(kendall_tau_b({1}, {1}), Error);
  CHECK_THROWS_AS(kendall_tau_b({1, 2}, {1, 2, 3}), Error);
}

TEST_CASE("merge-sort tau agrees with the all-pairs oracle on 1000 random pairs") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.below(7);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      // small integer range so ties are common
      x[i] = static_cast<double>(rng.below(n));
      y[i] = static_cast<double>(rng.below(n));
    }
    const double lib = kendall_tau_b(std::span<const double>(x), std::span<const double>(y));
    const double oracle = tau_allpairs_oracle(x, y);
    CHECK(std::abs(lib - oracle) < 1e-12);
  }
}

TEST_CASE("rank_candidates is stable on ties and follows the cosine order") {
  // identical candidates: stable tie-break keeps the file order
  EmbeddingModel flat = EmbeddingModel::from_word_vectors({"a"}, {{1.0, 0.0}});
  SimilarityTask same;
  same.reference = "a";
  same.candidates = {"a", "a", "a", "a", "a"};
  same.gold = {1, 2, 3, 4, 5};
  CHECK(rank_candidates(flat, same) == std::vector<int>{1, 2, 3, 4, 5});

  // constructed decreasing similarities give the identity ranking
  std::vector<std::string> tokens = {"r", "c1", "c2", "c3", "c4", "c5"};
  std::vector<std::vector<double>> vecs = {{1, 0}};
  for (int i = 0; i < 5; ++i) {
    const double angle = 0.2 + 0.3 * i;
    vecs.push_back({std::cos(angle), std::sin(angle)});
  }
  EmbeddingModel model = EmbeddingModel::from_word_vectors(tokens, vecs);
  SimilarityTask task;
  task.reference = "r";
  task.candidates = {"c1", "c2", "c3", "c4", "c5"};
  task.gold = {1, 2, 3, 4, 5};
  CHECK(rank_candidates(model, task) == std::vector<int>{1, 2, 3, 4, 5});

  // swap two candidate vectors and the ranks swap with them
  std::swap(vecs[2], vecs[4]);
  EmbeddingModel swapped = EmbeddingModel::from_word_vectors(tokens, vecs);
  CHECK(rank_candidates(swapped, task) == std::vector<int>{1, 4, 3, 2, 5});
}

TEST_CASE("a trained model ranks the bundled tasks into valid permutations") {
  Corpus corpus = read_corpus(data_file("standin.txt"));
  corpus.paragraphs.resize(40);  // a slice is plenty for a shape check
  TrainConfig cfg;
  cfg.dimensions = 12;
  cfg.epochs = 1;
  cfg.seed = 3;
  const EmbeddingModel model = train(corpus, cfg);
  const TaskSet tasks = load_tasks(data_file("tasks_mini.txt"));
  for (const SimilarityTask& task : tasks.tasks) {
    std::vector<int> rank = rank_candidates(model, task);
    std::sort(rank.begin(), rank.end());
    CHECK(rank == std::vector<int>{1, 2, 3, 4, 5});
  }
}

TEST_CASE("bundled mini task file loads and validates") {
  const TaskSet tasks = load_tasks(data_file("tasks_mini.txt"));
  REQUIRE(tasks.tasks.size() == 2);
  for (const SimilarityTask& t : tasks.tasks) {
    CHECK(t.candidates.size() == 5);
    CHECK(t.gold == std::vector<int>{1, 2, 3, 4, 5});
  }
  CHECK(tasks.tasks[0].reference.find("Tonatih") == 0);
}

TEST_CASE("task files with structural problems are rejected") {
  CHECK_THROWS_AS(parse_tasks("", "empty"), ValidationError);
  CHECK_THROWS_AS(parse_tasks("R: r\nC1: a\nC2: b\nC3: c\nC4: d\nG: 1 2 3 4\n", "four"),
                  ValidationError);
  CHECK_THROWS_AS(
      parse_tasks("R: r\nC1: a\nC2: b\nC3: c\nC4: d\nC5: e\nG: 1 2 3 4 4\n", "perm"),
      ValidationError);
  CHECK_THROWS_AS(
      parse_tasks("R: r\nC1: a\nC3: c\nC2: b\nC4: d\nC5: e\nG: 1 2 3 4 5\n", "order"),
      ParseError);
}

TEST_CASE("evaluate: degenerate protocol, determinism, gold upper bound") {
  const TaskSet tasks = three_tasks();
  std::vector<std::vector<int>> gold;
  for (const auto& t : tasks.tasks) gold.push_back(t.gold);

  const EvalReport r = evaluate_rankings(gold, tasks, 0, 1, 99);
  CHECK(r.mean_tau == doctest::Approx(1.0));
  CHECK(r.max_tau == doctest::Approx(r.mean_tau));
  CHECK(r.run_means.size() == 1);

  const EvalReport r5 = evaluate_rankings(gold, tasks, 1, 5, 99);
  CHECK(r5.mean_tau == doctest::Approx(1.0));  // gold is perfect on any subset
  const EvalReport r5b = evaluate_rankings(gold, tasks, 1, 5, 99);
  CHECK(r5.run_means == r5b.run_means);

  CHECK_THROWS_AS(evaluate_rankings(gold, tasks, 3, 1, 9), ProtocolError);
  CHECK_THROWS_AS(evaluate_rankings(gold, tasks, -1, 1, 9), ProtocolError);
  CHECK_THROWS_AS(evaluate_rankings(gold, tasks, 0, 0, 9), ProtocolError);
}

TEST_CASE("the protocol mean is invariant to task order") {
  TaskSet tasks = three_tasks();
  std::vector<std::vector<int>> rankings = {
      {1, 2, 3, 4, 5}, {2, 1, 3, 4, 5}, {5, 4, 3, 2, 1}};
  const EvalReport forward = evaluate_rankings(rankings, tasks, 0, 1, 7);

  TaskSet reversed = tasks;
  std::reverse(reversed.tasks.begin(), reversed.tasks.end());
  std::vector<std::vector<int>> rrank(rankings.rbegin(), rankings.rend());
  const EvalReport backward = evaluate_rankings(rrank, reversed, 0, 1, 7);
  CHECK(forward.mean_tau == doctest::Approx(backward.mean_tau).epsilon(1e-15));
}

TEST_CASE("reports render both text and json") {
  const TaskSet tasks = three_tasks();
  std::vector<std::vector<int>> gold;
  for (const auto& t : tasks.tasks) gold.push_back(t.gold);
  const EvalReport r = evaluate_rankings(gold, tasks, 0, 1, 1);
  const std::string text = r.to_text();
  CHECK(text.find("mean tau") != std::string::npos);
  CHECK(text.find("1.0000") != std::string::npos);
  const std::string json = r.to_json();
  CHECK(json.find("\"mean_tau\": 1.000000") != std::string::npos);
  CHECK(json.find("\"task_tau\"") != std::string::npos);
}

}  // TEST_SUITE
