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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "nawgen/text.hpp"
#include "test_helpers.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("NAWGEN_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "NAWGEN_BIN must point at the built binary");
  const std::string out_path = temp_file("cli_stdout.txt");
  const std::string err_path = temp_file("cli_stderr.txt");
  const std::string cmd = std::string(bin) + " --data " + data_dir() + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = nawgen::read_file(out_path);
  r.err = nawgen::read_file(err_path);
  return r;
}

std::size_t count_lines(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++n;
  }
  return n;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate --sample writes exactly N template lines") {
  const std::string out = temp_file("cli_sample.tpl");
  const RunResult r =
      run_cli("--seed 7 generate --grammar g1 --mode tagged --sample 1000 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(count_lines(out) == 1000);
  CHECK(r.err.find("analytic realization count: 762048") != std::string::npos);
}

TEST_CASE("full enumeration without a sufficient limit is refused with the count") {
  const RunResult r = run_cli("generate --grammar g1 --structures VSO --out " +
                              temp_file("cli_refused.tpl"));
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("1180259942400") != std::string::npos);
}

TEST_CASE("stats prints the stand-in paragraph profile") {
  const RunResult r = run_cli("stats --in " + data_file("standin.txt"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("sentences/paragraph\t4") != std::string::npos);  // 37..46 range
}

TEST_CASE("eval --inject-gold is a perfect-agreement sanity check") {
  const RunResult r = run_cli("eval --inject-gold --k 0 --runs 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("mean tau\t1.0000") != std::string::npos);
}

TEST_CASE("unify subcommand rewrites a corpus file") {
  const std::string in = temp_file("cli_unify_in.txt");
  const std::string out = temp_file("cli_unify_out.txt");
  nawgen::write_file(in, "Quemmanian chihua calli.\n");
  const RunResult r = run_cli("unify --in " + in + " --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(nawgen::read_file(out).find("kemanian chiwa kali.") != std::string::npos);
}

TEST_CASE("usage problems exit with code 1, io problems with 3") {
  CHECK(run_cli("no-such-subcommand").exit_code == 1);
  CHECK(run_cli("stats --in " + temp_file("missing_corpus.txt")).exit_code == 3);
}

TEST_CASE("running the stages separately reproduces the pipeline output") {
  namespace fs = std::filesystem;
  const std::string stage_dir = temp_file("stages");
  const std::string pipe_dir = temp_file("piped");
  fs::create_directories(stage_dir);
  const std::string seed = "--seed 2025 ";
  const std::string quiet = "--quiet ";

  CHECK(run_cli(quiet + seed + "pipeline --workdir " + pipe_dir +
                " --sample 1500 --dim 16 --epochs 2")
            .exit_code == 0);

  auto in = [&](const std::string& f) { return stage_dir + "/" + f; };
  CHECK(run_cli(quiet + seed + "generate --grammar g1 --mode tagged --sample 1500 --out " +
                in("templates.tpl"))
            .exit_code == 0);
  CHECK(run_cli(quiet + seed + "filter --in " + in("templates.tpl") + " --out " +
                in("filtered.tpl"))
            .exit_code == 0);
  CHECK(run_cli(quiet + seed + "postproc --in " + in("filtered.tpl") + " --out " +
                in("artificial.txt"))
            .exit_code == 0);
  CHECK(run_cli(quiet + "unify --in " + in("artificial.txt") + " --out " +
                in("artificial_unified.txt"))
            .exit_code == 0);
  CHECK(run_cli(quiet + "unify --in " + data_file("standin.txt") + " --out " +
                in("authentic_unified.txt"))
            .exit_code == 0);
  CHECK(run_cli(quiet + "merge --authentic " + in("authentic_unified.txt") +
                " --artificial " + in("artificial_unified.txt") + " --out " + in("merged.txt"))
            .exit_code == 0);
  CHECK(run_cli(quiet + seed + "train --in " + in("merged.txt") + " --model " + in("model") +
                " --dim 16 --epochs 2")
            .exit_code == 0);

  for (const char* f : {"templates.tpl", "filtered.tpl", "artificial.txt",
                        "artificial_unified.txt", "merged.txt", "model.vec", "model.bin"}) {
    CHECK_MESSAGE(nawgen::read_file(stage_dir + "/" + f) ==
                      nawgen::read_file(pipe_dir + "/" + f),
                  f << " differs between staged and piped runs");
  }

  const RunResult staged_eval =
      run_cli(quiet + seed + "eval --model " + in("model") + " --k 0 --runs 1");
  CHECK(staged_eval.exit_code == 0);
  const std::string pipe_report = nawgen::read_file(pipe_dir + "/report.json");
  CHECK(pipe_report.find("\"k\": 0") != std::string::npos);
}

}  // TEST_SUITE
