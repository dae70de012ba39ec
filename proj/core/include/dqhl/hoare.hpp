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
#include <optional>
#include <string>
#include <vector>

#include "dqhl/assertion.hpp"
#include "dqhl/densem.hpp"
#include "dqhl/sampling.hpp"
#include "dqhl/syntax.hpp"

namespace dqhl {

enum class Mode { Partial, Total };
const char* mode_name(Mode m);

struct HoareTriple {
  CqAssertion pre;
  DistProgram program;
  CqAssertion post;
  Mode mode = Mode::Total;
};

enum class Verdict { Pass, Fail, Inconclusive };
const char* verdict_name(Verdict v);

struct StateCheck {
  double lhs = 0.0;    // Exp(Δ ⊨ pre)
  double rhs = 0.0;    // Exp(⟦S⟧(Δ) ⊨ post), plus the slack in partial mode
  double slack = 0.0;  // tr(Δ) − tr(⟦S⟧(Δ))
  bool converged = true;
  Verdict verdict = Verdict::Pass;
};

struct SemanticReport {
  Verdict verdict = Verdict::Pass;
  std::vector<StateCheck> states;
  double min_gap = 0.0;  // min over states of rhs − lhs
  std::size_t failing = 0;
};

SemanticReport check_semantic(const HoareTriple& t, const std::vector<CqState>& states,
                              const DenoteOptions& opts = {}, double tol = 1e-8, int jobs = 1);

struct RankingWitness {
  enum Kind { Assertions, Classical } kind = Classical;
  // Θ_0 .. Θ_{K-1}; Θ_k = ⊥ for every k ≥ K.
  std::vector<CqAssertion> prefix;
  // classical ranking function t with domain predicate p (defaults to the
  // disjunction of the invariant's clause guards) and the fresh name z
  ExprPtr t;
  ExprPtr p;
  std::string z = "z";
};

struct RuleInstance {
  std::string rule;
  std::vector<HoareTriple> premises;
  HoareTriple conclusion;
  std::optional<RankingWitness> ranking;
};

struct RuleContext {
  // classical states used for ≲ / ≡ comparisons and classical side conditions
  std::vector<ClassicalState> samples;
  // cq-states for the semantic spot checks; empty skips them
  std::vector<CqState> states;
  DenoteOptions denote;
  double tol = 1e-8;
  int jobs = 1;
};

struct Finding {
  std::string what;
  bool ok = true;
  std::string detail;
  double deviation = 0.0;
};

struct RuleReport {
  bool ok = true;
  std::string rule;
  std::vector<Finding> findings;
  // hypotheses the samples could not refute but did not prove either
  std::vector<std::string> hypotheses;
  std::optional<ClassicalState> witness;
  CVector eigenvector;
};

const std::vector<std::string>& rule_names();
bool is_total_rule(const std::string& rule);

RuleReport check_rule(const RuleInstance& inst, const RuleContext& ctx);

struct RankingReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::size_t checks = 0;
};

// Def. of ranking assertions / classical ranking functions for a do..od
// command (rep must be a Rep statement) and for a distributed program.
RankingReport check_ranking(const StmtPtr& rep, const RankingWitness& w, const CqAssertion& inv,
                            const RuleContext& ctx, const VarEnv& env);
RankingReport check_ranking(const DistProgram& p, const RankingWitness& w, const CqAssertion& inv,
                            const RuleContext& ctx);

// Every classical state visited at any program point, starting from `entry`.
std::vector<ClassicalState> reachable_states(const StmtPtr& s, const std::vector<ClassicalState>& entry,
                                             std::size_t cap = 4096);
std::vector<ClassicalState> reachable_states(const DistProgram& p, const std::vector<ClassicalState>& entry,
                                             std::size_t cap = 4096);

// Haar pure states on `qvars`: one per sample (up to max_single samples,
// evenly strided) plus `mixed` random mixtures over several samples.
std::vector<CqState> random_test_states(const QVarList& qvars, const std::vector<ClassicalState>& samples, Rng& rng,
                                        std::size_t max_single = 24, std::size_t mixed = 4);

}  // namespace dqhl
