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

#include <fstream>

#include "dqhl/proof_script.hpp"
#include "fixtures.hpp"

namespace dqhl {
namespace {

const StepResult* find_step(const InstanceResult& in, const std::string& label) {
  for (const auto& s : in.steps) {
    if (s.label == label) return &s;
  }
  return nullptr;
}

std::string scratch(const std::string& name, const std::string& text) {
  const std::string path = std::string(DQHL_SCRATCH_DIR) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size())) s.replace(at, from.size(), to);
  return s;
}

TEST(ProofScript, TeleportProofReplays) {
  LoadedScript s = load_proof_script(testing::program_path("teleport.dqproof"));
  ProofOptions o;
  o.seed = 7;
  ProofReport r = run_proof_script(s, o);
  ASSERT_TRUE(r.ok);
  ASSERT_EQ(r.instances.size(), 3u);
  for (const auto& in : r.instances) {
    const StepResult* loops = find_step(in, "loops");
    ASSERT_NE(loops, nullptr);
    EXPECT_EQ(loops->rule, "C-Dist-T");
    EXPECT_TRUE(loops->ok) << loops->error;
    EXPECT_TRUE(in.claim_ok);
  }
}

TEST(ProofScript, TeleportClaimHoldsSemantically) {
  LoadedScript s = load_proof_script(testing::program_path("teleport.dqproof"));
  ProofOptions o;
  o.seed = 7;
  ProofReport r = verify_claim(s, o);
  EXPECT_TRUE(r.ok);
  EXPECT_GT(r.test_states, 10u);
}

TEST(ProofScript, RcnotProofReplays) {
  LoadedScript s = load_proof_script(testing::program_path("rcnot.dqproof"));
  ProofOptions o;
  o.seed = 3;
  EXPECT_TRUE(run_proof_script(s, o).ok);
}

TEST(ProofScript, QuarterWeightedInvariantFailsTheLastImplication) {
  std::string src = testing::read_file(testing::program_path("teleport.dqproof"));
  src = replace_all(src, "instances 3;", "instances 1;\nassert Psi4 := 0.25 * Psi;");
  src = replace_all(src, "and Psi}", "and Psi4}");
  src = replace_all(src, "{Psi}", "{Psi4}");
  src = replace_all(src, "step init: Derive {Pre}", "step init: Derive {0.25 * Pre}");
  src = replace_all(src, "C-Dist-T {Pre}", "C-Dist-T {0.25 * Pre}");
  LoadedScript s = load_proof_script_text(src, DQHL_PROGRAMS_DIR);
  ProofReport r = run_proof_script(s, {});
  EXPECT_FALSE(r.ok);
  ASSERT_EQ(r.instances.size(), 1u);
  for (const char* ok : {"init", "g1", "g2", "loops"}) {
    const StepResult* st = find_step(r.instances[0], ok);
    ASSERT_NE(st, nullptr);
    EXPECT_TRUE(st->ok) << ok << ": " << st->error;
  }
  const StepResult* done = find_step(r.instances[0], "done");
  ASSERT_NE(done, nullptr);
  EXPECT_FALSE(done->ok);
  EXPECT_TRUE(done->report.witness.has_value());
}

TEST(ProofScript, SingleSkipStep) {
  scratch("skip_only.dqp", "process P { qubit q; var x: int; skip; }\n");
  const std::string src = R"(
    program "skip_only.dqp";
    mode total;
    step s: Skip {<x = 0 | ket(0)>} prog {<x = 0 | ket(0)>};
    claim {<x = 0 | ket(0)>} prog {<x = 0 | ket(0)>};
    conclude s;
  )";
  LoadedScript s = load_proof_script_text(src, DQHL_SCRATCH_DIR);
  ProofReport r = run_proof_script(s, {});
  EXPECT_TRUE(r.ok);
  const std::string wrong = replace_all(src, "step s: Skip {<x = 0 | ket(0)>}", "step s: Skip {<x = 0 | ket(1)>}");
  EXPECT_FALSE(run_proof_script(load_proof_script_text(wrong, DQHL_SCRATCH_DIR), {}).ok);
}

TEST(ProofScript, ConstantRankingIsRejected) {
  std::string src = testing::read_file(testing::program_path("teleport.dqproof"));
  src = replace_all(src, "with t := 2 - stageA", "with t := 2");
  src = replace_all(src, "instances 3;", "instances 1;");
  ProofReport r = run_proof_script(load_proof_script_text(src, DQHL_PROGRAMS_DIR), {});
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(find_step(r.instances[0], "loops")->ok);
}

TEST(ProofScript, SyntaxErrors) {
  EXPECT_THROW(parse_proof_script("mode sometimes;"), ScriptError);
  EXPECT_THROW(load_proof_script_text("step a: Skip {_} prog {_}; conclude a;", DQHL_SCRATCH_DIR), ScriptError);
}

}  // namespace
}  // namespace dqhl
