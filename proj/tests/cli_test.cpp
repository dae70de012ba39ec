// Copyright 2026 The dqhl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sstream>

#include <sys/wait.h>

#include "dqhl/json_io.hpp"
#include "fixtures.hpp"

namespace dqhl {
namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result dqhl(const std::string& args) {
  const std::string cmd = std::string(DQHL_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string prog(const std::string& f) { return testing::program_path(f); }

std::string without_comments(const std::string& s) {
  std::istringstream in(s);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    out += line + "\n";
  }
  return out;
}

TEST(Cli, RunPrintsFinalState) {
  Result r = dqhl("run " + prog("teleport.dqp") + " --state " + prog("teleport.in.json") + " --scheduler good");
  ASSERT_EQ(r.status, 0);
  Json j = Json::parse(r.out);
  EXPECT_NEAR(j["terminated"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(j["delta"]["entries"].size(), 4u);
  EXPECT_EQ(j["delta"]["qvars"], Json::parse(R"(["q", "q1", "q2"])"));
}

TEST(Cli, SeqMatchesGoldenFile) {
  Result r = dqhl("seq " + prog("teleport.dqp"));
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("# TERM"), std::string::npos);
  EXPECT_EQ(testing::strip_ws(without_comments(r.out)),
            testing::strip_ws(testing::read_file(testing::golden_path("teleport_seq.dqp"))));
}

TEST(Cli, VerifyTeleportProof) {
  EXPECT_EQ(dqhl("verify " + prog("teleport.dqproof") + " --seed 7").status, 0);
  EXPECT_EQ(dqhl("verify " + prog("teleport.dqproof") + " --proof --seed 7").status, 0);
}

TEST(Cli, VerifyRejectsAFalseTriple) {
  // q2 does not always end in |0>
  Result r = dqhl("verify " + prog("teleport.dqp") + " --pre \"<true | id(8)>\" --post \"<true | ket(0)> on q2\"");
  EXPECT_EQ(r.status, 1);
}

TEST(Cli, SameSeedSameBytes) {
  const std::string args = "run " + prog("rcnot.dqp") + " --state " + prog("rcnot.in.json") + " --scheduler random --seed 11";
  Result a = dqhl(args), b = dqhl(args);
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  Result v1 = dqhl("verify " + prog("rcnot.dqproof") + " --seed 5 --json");
  Result v2 = dqhl("verify " + prog("rcnot.dqproof") + " --seed 5 --json");
  EXPECT_EQ(v1.status, 0);
  EXPECT_EQ(v1.out, v2.out);
}

TEST(Cli, TraceReplaysToTheSameDistribution) {
  const std::string trace = std::string(DQHL_SCRATCH_DIR) + "/cli_trace.json";
  Result a = dqhl("run " + prog("teleport.dqp") + " --state " + prog("teleport.in.json") +
                  " --scheduler random --seed 3 --trace > " + trace);
  ASSERT_EQ(a.status, 0);
  Json ja = Json::parse(testing::read_file(trace));
  ASSERT_TRUE(ja.contains("trace"));
  Result b = dqhl("run " + prog("teleport.dqp") + " --state " + prog("teleport.in.json") + " --scheduler trace:" + trace);
  ASSERT_EQ(b.status, 0);
  Json jb = Json::parse(b.out);
  EXPECT_EQ(ja["delta"], jb["delta"]);
  EXPECT_EQ(ja["steps"], jb["steps"]);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(dqhl("run /nonexistent.dqp").status, 2);
  EXPECT_EQ(dqhl("frobnicate").status, 2);
}

}  // namespace
}  // namespace dqhl
