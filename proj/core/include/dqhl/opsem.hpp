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

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dqhl/cqstate.hpp"
#include "dqhl/syntax.hpp"

namespace dqhl {

class SemanticsError : public std::runtime_error {
 public:
  explicit SemanticsError(const std::string& what) : std::runtime_error(what) {}
};

// Residue of one process. The continuation stack holds the statements still
// to run (back() runs next); once it is empty the process sits at its
// communication loop, or has terminated.
struct ProcState {
  std::vector<const Stmt*> stack;
  bool loop_exited = false;
};

// The statements referenced here belong to the DistProgram being run, which
// must outlive every configuration built from it.
struct Configuration {
  std::vector<ProcState> procs;
  ClassicalState sigma;
  bool failed = false;
  CMatrix rho;  // trace 1, on the run's register
};

struct Branch {
  double p = 0.0;
  Configuration config;
};
using ConfigDistribution = std::vector<Branch>;

// local(k) when l < 0, comm(k, l) with k < l otherwise. Indices are 0-based;
// to_string prints them 1-based.
struct ActionLabel {
  int k = 0;
  int l = -1;
  bool is_local() const { return l < 0; }
  friend bool operator==(const ActionLabel&, const ActionLabel&) = default;
};
bool operator<(const ActionLabel& a, const ActionLabel& b);
std::string to_string(const ActionLabel& a);
std::optional<ActionLabel> parse_label(const std::string& text);

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  // enabled is sorted and nonempty.
  virtual ActionLabel choose(std::size_t step, std::size_t branch, const std::vector<ActionLabel>& enabled) = 0;
};

class GoodScheduler : public Scheduler {
 public:
  ActionLabel choose(std::size_t, std::size_t, const std::vector<ActionLabel>& enabled) override { return enabled.front(); }
};

class RandomScheduler : public Scheduler {
 public:
  explicit RandomScheduler(std::uint64_t seed) : seed_(seed) {}
  ActionLabel choose(std::size_t step, std::size_t branch, const std::vector<ActionLabel>& enabled) override;

 private:
  std::uint64_t seed_;
};

// trace[step][branch]; missing entries fall back to the minimum label.
class ExplicitScheduler : public Scheduler {
 public:
  explicit ExplicitScheduler(std::vector<std::vector<std::optional<ActionLabel>>> trace) : trace_(std::move(trace)) {}
  ActionLabel choose(std::size_t step, std::size_t branch, const std::vector<ActionLabel>& enabled) override;

 private:
  std::vector<std::vector<std::optional<ActionLabel>>> trace_;
};

// Process-wide counters over every distribution produced by step_dist.
struct Bookkeeping {
  std::atomic<std::uint64_t> distributions{0};
  std::atomic<std::uint64_t> bad_sums{0};
  std::atomic<std::uint64_t> chains_checked{0};
  std::atomic<std::uint64_t> chain_violations{0};
  std::atomic<double> max_sum_error{0.0};
  void reset();
};
Bookkeeping& bookkeeping();

bool is_terminal(const DistProgram& p, const Configuration& c);
bool is_deadlocked(const DistProgram& p, const Configuration& c);

Configuration initial_config(const DistProgram& p, const ClassicalState& sigma, const CMatrix& rho);
std::vector<ActionLabel> enabled(const DistProgram& p, const Configuration& c);
// Successor distribution under label a; probabilities sum to 1.
ConfigDistribution step(const DistProgram& p, const Configuration& c, const ActionLabel& a, const QVarList& reg);

struct StepOptions {
  double prune = 1e-12;
  double merge_tol = 1e-9;
};

struct StepInfo {
  double pruned = 0.0;
  // chosen label and parent index for each branch of the new distribution
  std::vector<std::optional<ActionLabel>> labels;
  std::vector<std::size_t> parent;
};

ConfigDistribution step_dist(const DistProgram& p, const ConfigDistribution& mu, Scheduler& s, std::size_t step_no,
                             const QVarList& reg, const StepOptions& opts = {}, StepInfo* info = nullptr);

// Terminated, non-failed part of the distribution as a cq-state.
CqState extract_delta(const DistProgram& p, const ConfigDistribution& mu, const QVarList& reg);

struct RunOptions {
  std::size_t max_steps = 10000;
  bool check_monotone = true;
  bool record_trace = false;
  StepOptions step;
};

struct TraceStep {
  std::vector<std::optional<ActionLabel>> chosen;  // per branch of the pre-step distribution
  std::vector<std::size_t> parent;                 // per branch of the post-step distribution
};

struct RunReport {
  CqState delta;
  double terminated = 0.0;
  double failed = 0.0;
  double deadlocked = 0.0;
  double residual = 0.0;
  double pruned = 0.0;
  std::size_t steps = 0;
  bool quiescent = false;
  // every remaining running branch sits on an abort
  bool diverged = false;
  std::size_t max_branches = 0;
  bool monotone = true;
  double max_sum_error = 0.0;
  std::vector<TraceStep> trace;
  ConfigDistribution final_dist;
};

RunReport run(const DistProgram& p, const ClassicalState& sigma, const DensityOp& rho, Scheduler& s,
              const RunOptions& opts = {});

struct DeterminismReport {
  bool ok = true;
  double max_deviation = 0.0;
  bool budget_exhausted = false;
  std::size_t runs = 0;
};

// Compares seeded-random schedulers against the good scheduler on each input.
DeterminismReport check_determinism(const DistProgram& p, const std::vector<std::pair<ClassicalState, DensityOp>>& inputs,
                                    int n_schedulers, std::uint64_t seed, const RunOptions& opts = {}, int jobs = 1);

}  // namespace dqhl
