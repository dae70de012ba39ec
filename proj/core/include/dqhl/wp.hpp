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

#include <vector>

#include "dqhl/assertion.hpp"
#include "dqhl/classical_state.hpp"
#include "dqhl/densem.hpp"
#include "dqhl/syntax.hpp"

namespace dqhl {

enum class XpMode { Wp, Wlp };
const char* mode_name(XpMode m);

struct WpOptions {
  double eps = 1e-10;
  std::size_t budget = 5000;
  // Classical states at program entry. Empty means: enumerate domains over env.
  std::vector<ClassicalState> samples;
  VarEnv env;
  DomainMap domains;
  std::size_t clause_cap = kClauseCap;
  // bound on the forward closure of samples at a loop head
  std::size_t sample_cap = 4096;
};

struct WpResult {
  CqAssertion assertion;
  bool converged = true;
  std::size_t iterations = 0;  // loop iterations over all loops; 0 for loop-free code
  double residual = 0.0;
  bool padded = false;     // Θ was extended with identity to cover qv(S)
  bool truncated = false;  // a loop-head sample closure hit sample_cap
  bool tabulated = false;  // a loop iterate outgrew clause_cap and was tabulated over samples
};

WpResult xp(XpMode mode, const StmtPtr& s, const CqAssertion& post, const WpOptions& opts = {});
inline WpResult wp(const StmtPtr& s, const CqAssertion& post, const WpOptions& opts = {}) {
  return xp(XpMode::Wp, s, post, opts);
}
inline WpResult wlp(const StmtPtr& s, const CqAssertion& post, const WpOptions& opts = {}) {
  return xp(XpMode::Wlp, s, post, opts);
}

// Distributed programs go through T(S): wp.S.Θ = wp.T(S).(TERM ∧ Θ) and
// wlp.S.Θ = wlp.T(S).(TERM ∧ Θ + ¬TERM).
WpResult xp_program(XpMode mode, const DistProgram& p, const CqAssertion& post, WpOptions opts = {});

// Classical states reachable after s from the given ones, over every
// measurement outcome and random choice. Failing and aborting paths contribute
// nothing.
std::vector<ClassicalState> post_states(const StmtPtr& s, const std::vector<ClassicalState>& in,
                                        std::size_t cap = 4096, bool* truncated = nullptr);

// Entry samples used by xp: opts.samples completed over env, or the
// enumerated domains when empty.
std::vector<ClassicalState> entry_samples(const WpOptions& opts, const VarEnv& env);

struct DualityReport {
  bool ok = true;
  double max_deviation = 0.0;
  std::vector<double> deviations;
  WpResult xp;
};

// |Exp(Δ ⊨ wp.S.Θ) − Exp(⟦S⟧(Δ) ⊨ Θ)|, and for wlp the right side plus
// tr(Δ) − tr(⟦S⟧(Δ)).
DualityReport check_duality(const DistProgram& p, const CqAssertion& post, const std::vector<CqState>& states,
                            XpMode mode, WpOptions opts = {}, const DenoteOptions& dopts = {}, double tol = 1e-8);

struct StructureReport {
  double complement = 0.0;     // max |wp.S.Θ1 + wlp.S.(⊤ − Θ1) − ⊤|
  double wp_linear = 0.0;      // max |wp.S.(λ1Θ1 + λ2Θ2) − λ1 wp.S.Θ1 − λ2 wp.S.Θ2|
  double wlp_affine = 0.0;     // same for wlp; only when λ1 + λ2 = 1
  bool affine_checked = false;
  bool monotone = true;        // Θ1 ⊑ Θ2 on samples implies xp.S.Θ1 ⊑ xp.S.Θ2
  bool ok(double tol = 1e-8) const;
};

StructureReport check_structure(const DistProgram& p, const CqAssertion& t1, const CqAssertion& t2, double l1,
                                double l2, WpOptions opts = {});

}  // namespace dqhl
