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

#include "dqhl/validate.hpp"

#include <map>

namespace dqhl {

const char* diag_kind_name(DiagKind k) {
  switch (k) {
    case DiagKind::Disjointness: return "disjointness";
    case DiagKind::PointToPoint: return "point-to-point";
    case DiagKind::ChannelMismatch: return "channel-mismatch";
    case DiagKind::QubitDimension: return "qudit-dimension";
  }
  return "?";
}

std::vector<Diagnostic> validate(const DistProgram& p) {
  std::vector<Diagnostic> out;
  const std::size_t n = p.processes.size();
  std::vector<VarSets> sets;
  for (const auto& proc : p.processes) sets.push_back(var_sets(proc));

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      // var(S_i) covers both classical and quantum variables
      std::set<std::string> var_i = sets[i].cv;
      var_i.insert(sets[i].qv.begin(), sets[i].qv.end());
      for (const auto& v : var_i) {
        if (sets[j].change.count(v) || sets[j].qv.count(v)) {
          out.push_back({DiagKind::Disjointness, "variable '" + v + "' of process " + p.processes[i].name +
                                                     " is changed or used as quantum variable by process " +
                                                     p.processes[j].name});
        }
      }
    }
  }

  std::map<std::string, std::vector<std::size_t>> users;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& c : sets[i].chan) users[c].push_back(i);
  }
  for (const auto& [c, who] : users) {
    if (who.size() > 2) {
      std::string names;
      for (std::size_t k : who) names += (names.empty() ? "" : ", ") + p.processes[k].name;
      out.push_back({DiagKind::PointToPoint, "channel '" + c + "' is used by " + std::to_string(who.size()) +
                                                 " processes (" + names + ")"});
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const VarEnv env_i = p.processes[i].env();
    for (std::size_t j = i + 1; j < n; ++j) {
      VarEnv env = env_i;
      for (const auto& [k, t] : p.processes[j].env()) env.emplace(k, t);
      for (const auto& a : p.processes[i].loop) {
        for (const auto& b : p.processes[j].loop) {
          if (a.io.channel != b.io.channel) continue;
          if (a.io.is_input == b.io.is_input) {
            out.push_back({DiagKind::ChannelMismatch, "processes " + p.processes[i].name + " and " +
                                                          p.processes[j].name + " both " +
                                                          (a.io.is_input ? "read from" : "write to") +
                                                          " channel '" + a.io.channel + "'"});
          } else if (!io_match(a.io, b.io, env)) {
            out.push_back({DiagKind::ChannelMismatch, "type mismatch on channel '" + a.io.channel + "' between " +
                                                          p.processes[i].name + " and " + p.processes[j].name});
          }
        }
      }
    }
  }

  std::map<std::string, int> dims;
  for (const auto& proc : p.processes) {
    for (const auto& q : proc.qvars) {
      auto [it, fresh] = dims.emplace(q.name, q.dim);
      if (!fresh && it->second != q.dim) {
        out.push_back({DiagKind::QubitDimension, "quantum variable '" + q.name + "' declared with dimensions " +
                                                     std::to_string(it->second) + " and " + std::to_string(q.dim)});
      }
    }
  }
  return out;
}

}  // namespace dqhl
