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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dqhl/assertion.hpp"
#include "dqhl/hoare.hpp"
#include "dqhl/json_io.hpp"
#include "dqhl/syntax.hpp"

namespace dqhl {

class ScriptError : public std::runtime_error {
 public:
  explicit ScriptError(const std::string& what) : std::runtime_error(what) {}
};

// .dqproof text, statements end with ';', comments start with # or //:
//
//   program "teleport.dqp";
//   assertions "teleport.dqa";
//   mode total;
//   instances 3;                         parameter draws per run
//   state ket(psi) ⊗ bell on q, q1, q2;  extra test input (classical part all 0)
//   assert Inv := [x = 0] and Pre;       local definition
//   step a: Derive {Pre} init {Psi};
//   step b: C-Dist-T {a.pre} prog {[TERM] and Psi} from a, g1, g2 with t := 2 - stageA;
//   step c: Imp {Pre} prog {Post} from b;
//   claim {Pre} prog {Post};
//   conclude c;
//
// Assertion slots take "_" (let the rule compute it), "label.pre",
// "label.post" or an assertion expression. Program slots take "prog",
// "init", "gamma(i, j, k, l)" (1-based), "label.prog", "_" or a quoted
// statement sequence. "Derive" proves a loop-free fragment by chaining the
// atomic rules with (Seq), (Alt)/(Alt-T) and (Imp).
struct StepSpec {
  std::string label;
  std::string rule;
  std::string pre, prog, post;
  std::vector<std::string> from;
  std::vector<std::pair<std::string, std::string>> with;
  int line = 0;
};

struct ClaimSpec {
  std::string pre, prog, post;
};

struct ProofScript {
  std::string program_path;
  std::string assertions_path;
  std::optional<Mode> mode;
  std::size_t instances = 1;
  std::vector<std::pair<std::string, std::string>> states;  // expression, "on" list
  std::vector<std::pair<std::string, std::string>> defs;    // local assertions
  std::vector<StepSpec> steps;
  std::optional<ClaimSpec> claim;
  std::string conclude;
};

ProofScript parse_proof_script(std::string_view source);

struct LoadedScript {
  std::string path;
  ProofScript script;
  DistProgram program;
  std::string assertion_source;
};

// Reads the script and the files it names (relative to the script's folder).
LoadedScript load_proof_script(const std::string& path);
LoadedScript load_proof_script_text(std::string_view source, const std::string& dir);

struct ProofOptions {
  std::uint64_t seed = 0;
  std::size_t instances = 0;  // 0: the script's own count
  std::size_t random_states = 12;
  std::size_t mixed_states = 4;
  DenoteOptions denote;
  double tol = 1e-8;
  int jobs = 1;
};

struct StepResult {
  std::string label;
  std::string rule;
  bool ok = false;
  std::string error;
  RuleReport report;
  std::vector<RuleReport> derived;  // Derive: every generated instance
  std::optional<HoareTriple> triple;
};

struct InstanceResult {
  std::map<std::string, CVector> params;
  bool ok = false;
  std::vector<StepResult> steps;
  bool claim_ok = true;
  std::string claim_detail;
  std::optional<SemanticReport> semantic;
};

struct ProofReport {
  bool ok = false;
  Mode mode = Mode::Total;
  std::size_t samples = 0;
  std::size_t test_states = 0;
  std::vector<InstanceResult> instances;
  std::vector<std::string> hypotheses;
};

// Replays every step (rule checking) and matches the concluded triple
// against the claim.
ProofReport run_proof_script(const LoadedScript& s, const ProofOptions& opts);
// Checks only the claim, semantically, on the sampled test states.
ProofReport verify_claim(const LoadedScript& s, const ProofOptions& opts);

Json to_json(const ProofReport& r);

}  // namespace dqhl
