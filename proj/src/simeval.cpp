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

#include "nawgen/simeval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "nawgen/errors.hpp"
#include "nawgen/rng.hpp"
#include "nawgen/text.hpp"

namespace nawgen {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

void validate_task(const SimilarityTask& task, const std::string& name, std::size_t block) {
  const std::string where = name + ": block " + std::to_string(block);
  if (task.reference.empty()) throw ValidationError(where + " has no reference sentence");
  if (task.candidates.size() != kCandidatesPerTask)
    throw ValidationError(where + " has " + std::to_string(task.candidates.size()) +
                          " candidates, expected 5");
  if (task.gold.size() != kCandidatesPerTask)
    throw ValidationError(where + " gold ranking must list 5 ranks");
  std::vector<int> sorted = task.gold;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < kCandidatesPerTask; ++i) {
    if (sorted[static_cast<std::size_t>(i)] != i + 1)
      throw ValidationError(where + " gold ranking is not a permutation of 1..5");
  }
}

}  // namespace

TaskSet load_tasks(const std::string& path) { return parse_tasks(read_file(path), path); }

TaskSet parse_tasks(std::string_view text, const std::string& name) {
  TaskSet set;
  SimilarityTask task;
  bool open = false;
  std::size_t block = 1;

  auto close_block = [&] {
    if (!open) return;
    validate_task(task, name, block);
    set.tasks.push_back(std::move(task));
    task = SimilarityTask{};
    open = false;
    ++block;
  };

  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) {
      close_block();
      continue;
    }
    if (line[0] == '#') continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError(name, line_no, "expected 'R:', 'C<i>:' or 'G:' prefix");
    const std::string key = line.substr(0, colon);
    const std::string value = trim(std::string_view(line).substr(colon + 1));
    if (key == "R") {
      if (open && !task.reference.empty()) close_block();
      open = true;
      task.reference = value;
    } else if (key.size() == 2 && key[0] == 'C' && key[1] >= '1' && key[1] <= '5') {
      open = true;
      const std::size_t want = static_cast<std::size_t>(key[1] - '1');
      if (task.candidates.size() != want)
        throw ParseError(name, line_no, "candidate " + key + " out of order");
      task.candidates.push_back(value);
    } else if (key == "G") {
      open = true;
      for (const std::string& t : split_ws(value)) {
        try {
          task.gold.push_back(std::stoi(t));
        } catch (const std::exception&) {
          throw ParseError(name, line_no, "bad rank '" + t + "'");
        }
      }
    } else {
      throw ParseError(name, line_no, "unknown line prefix '" + key + "'");
    }
  }
  close_block();
  if (set.tasks.empty()) throw ValidationError(name + ": no tasks found");
  return set;
}

std::vector<int> rank_candidates(const EmbeddingModel& model, const SimilarityTask& task,
                                 const std::set<std::string>& stoplist) {
  const auto ref = model.sentence_vector(task.reference, stoplist);
  std::vector<double> sims(task.candidates.size());
  for (std::size_t i = 0; i < task.candidates.size(); ++i) {
    sims[i] = cosine(ref, model.sentence_vector(task.candidates[i], stoplist));
  }
  std::vector<int> order(task.candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sims[static_cast<std::size_t>(a)] >
                                              sims[static_cast<std::size_t>(b)]; });
  std::vector<int> rank(task.candidates.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    rank[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos) + 1;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Kendall tau-b via merge-sort pair counting

namespace {

// number of (i, j) pairs with equal key, summed over groups
std::uint64_t tied_pairs(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::uint64_t total = 0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const std::uint64_t g = j - i;
    total += g * (g - 1) / 2;
    i = j;
  }
  return total;
}

std::uint64_t merge_count(std::vector<double>& v, std::vector<double>& tmp, std::size_t lo,
                          std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = (lo + hi) / 2;
  std::uint64_t swaps = merge_count(v, tmp, lo, mid) + merge_count(v, tmp, mid, hi);
  std::size_t a = lo, b = mid, t = lo;
  while (a < mid && b < hi) {
    if (v[b] < v[a]) {
      swaps += mid - a;
      tmp[t++] = v[b++];
    } else {
      tmp[t++] = v[a++];
    }
  }
  while (a < mid) tmp[t++] = v[a++];
  while (b < hi) tmp[t++] = v[b++];
  std::copy(tmp.begin() + static_cast<std::ptrdiff_t>(lo),
            tmp.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

}  // namespace

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("kendall_tau_b: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw Error("kendall_tau_b: need at least two items");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });

  const std::uint64_t n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t n1 = 0;  // pairs tied in x (including both-tied)
  std::uint64_t n3 = 0;  // pairs tied in both
  {
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      std::vector<double> ys;
      while (j < n && x[order[j]] == x[order[i]]) ys.push_back(y[order[j++]]);
      const std::uint64_t g = j - i;
      n1 += g * (g - 1) / 2;
      n3 += tied_pairs(std::move(ys));
      i = j;
    }
  }
  std::vector<double> ally(n);
  for (std::size_t i = 0; i < n; ++i) ally[i] = y[i];
  const std::uint64_t n2 = tied_pairs(ally);  // pairs tied in y (including both-tied)

  std::vector<double> seq(n);
  for (std::size_t i = 0; i < n; ++i) seq[i] = y[order[i]];
  std::vector<double> tmp(n);
  const std::uint64_t swaps = merge_count(seq, tmp, 0, n);  // discordant pairs

  const double concordant_minus_discordant =
      static_cast<double>(n0) - static_cast<double>(n1) - static_cast<double>(n2) +
      static_cast<double>(n3) - 2.0 * static_cast<double>(swaps);
  const double fx = static_cast<double>(n0 - n1);
  const double fy = static_cast<double>(n0 - n2);
  if (fx <= 0 || fy <= 0) return 0.0;
  return concordant_minus_discordant / std::sqrt(fx * fy);
}

double kendall_tau_b(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<double> dx(x.begin(), x.end());
  std::vector<double> dy(y.begin(), y.end());
  return kendall_tau_b(std::span<const double>(dx), std::span<const double>(dy));
}

// ---------------------------------------------------------------------------
// Protocol

namespace {

EvalReport run_protocol(std::vector<std::vector<int>> rankings, const TaskSet& tasks, int k,
                        int runs, std::uint64_t seed) {
  const std::size_t n = tasks.tasks.size();
  if (n == 0) throw ProtocolError("evaluate: empty task set");
  if (k < 0 || static_cast<std::size_t>(k) >= n)
    throw ProtocolError("evaluate: k must satisfy 0 <= k < number of tasks (" +
                        std::to_string(n) + ")");
  if (runs < 1) throw ProtocolError("evaluate: runs must be >= 1");

  EvalReport report;
  report.k = k;
  report.runs = runs;
  report.seed = seed;
  report.model_rankings = std::move(rankings);
  report.task_tau.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    report.task_tau[i] = kendall_tau_b(report.model_rankings[i], tasks.tasks[i].gold);
  }

  Rng rng(seed);
  for (int run = 0; run < runs; ++run) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    // Fisher-Yates; the first k entries are held out
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(idx[i], idx[j]);
    }
    double sum = 0;
    for (std::size_t i = static_cast<std::size_t>(k); i < n; ++i) sum += report.task_tau[idx[i]];
    report.run_means.push_back(sum / static_cast<double>(n - static_cast<std::size_t>(k)));
  }
  report.mean_tau = std::accumulate(report.run_means.begin(), report.run_means.end(), 0.0) /
                    static_cast<double>(report.run_means.size());
  report.max_tau = *std::max_element(report.run_means.begin(), report.run_means.end());
  return report;
}

}  // namespace

EvalReport evaluate(const EmbeddingModel& model, const TaskSet& tasks, int k, int runs,
                    std::uint64_t seed, const std::set<std::string>& stoplist) {
  std::vector<std::vector<int>> rankings;
  rankings.reserve(tasks.tasks.size());
  for (const SimilarityTask& task : tasks.tasks) {
    rankings.push_back(rank_candidates(model, task, stoplist));
  }
  return run_protocol(std::move(rankings), tasks, k, runs, seed);
}

EvalReport evaluate_rankings(const std::vector<std::vector<int>>& rankings, const TaskSet& tasks,
                             int k, int runs, std::uint64_t seed) {
  if (rankings.size() != tasks.tasks.size())
    throw ProtocolError("evaluate_rankings: one ranking per task required");
  return run_protocol(rankings, tasks, k, runs, seed);
}

std::string EvalReport::to_text() const {
  std::ostringstream out;
  char buf[64];
  out << "task\ttau\tranking\n";
  for (std::size_t i = 0; i < task_tau.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.4f", task_tau[i]);
    out << (i + 1) << '\t' << buf << '\t';
    for (std::size_t j = 0; j < model_rankings[i].size(); ++j) {
      if (j) out << ' ';
      out << model_rankings[i][j];
    }
    out << '\n';
  }
  out << "protocol\tleave-" << k << "-out, " << runs << " runs, seed " << seed << '\n';
  out << "run means";
  for (double m : run_means) {
    std::snprintf(buf, sizeof buf, " %.4f", m);
    out << buf;
  }
  out << '\n';
  std::snprintf(buf, sizeof buf, "%.4f", mean_tau);
  out << "mean tau\t" << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.4f", max_tau);
  out << "max tau\t" << buf << '\n';
  return out.str();
}

std::string EvalReport::to_json() const {
  std::ostringstream out;
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::string(buf);
  };
  out << "{\n  \"protocol\": {\"k\": " << k << ", \"runs\": " << runs << ", \"seed\": " << seed
      << "},\n  \"task_tau\": [";
  for (std::size_t i = 0; i < task_tau.size(); ++i) {
    if (i) out << ", ";
    out << num(task_tau[i]);
  }
  out << "],\n  \"model_rankings\": [";
  for (std::size_t i = 0; i < model_rankings.size(); ++i) {
    if (i) out << ", ";
    out << '[';
    for (std::size_t j = 0; j < model_rankings[i].size(); ++j) {
      if (j) out << ", ";
      out << model_rankings[i][j];
    }
    out << ']';
  }
  out << "],\n  \"run_means\": [";
  for (std::size_t i = 0; i < run_means.size(); ++i) {
    if (i) out << ", ";
    out << num(run_means[i]);
  }
  out << "],\n  \"mean_tau\": " << num(mean_tau) << ",\n  \"max_tau\": " << num(max_tau)
      << "\n}\n";
  return out.str();
}

}  // namespace nawgen
