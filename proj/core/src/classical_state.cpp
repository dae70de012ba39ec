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

#include "dqhl/classical_state.hpp"

#include <stdexcept>

namespace dqhl {

ClassicalState complete_state(const ClassicalState& sigma, const VarEnv& env) {
  ClassicalState out = sigma;
  for (const auto& [name, type] : env) {
    (void)type;
    out.emplace(name, 0);
  }
  return out;
}

ClassicalState project(const ClassicalState& sigma, const VarEnv& keep) {
  ClassicalState out;
  for (const auto& [name, value] : sigma) {
    if (keep.count(name)) out.emplace(name, value);
  }
  return out;
}

Domain default_domain(Type t, std::int64_t int_lo, std::int64_t int_hi) {
  if (t == Type::Bool) return {0, 1};
  return {int_lo, int_hi};
}

std::vector<ClassicalState> enumerate_states(const VarEnv& env, const DomainMap& domains, std::size_t cap) {
  std::vector<std::string> names;
  std::vector<Domain> doms;
  std::size_t total = 1;
  bool overflow = false;
  for (const auto& [name, type] : env) {
    auto it = domains.find(name);
    Domain d = it != domains.end() ? it->second : default_domain(type);
    if (d.hi < d.lo) throw std::invalid_argument("empty domain for variable '" + name + "'");
    names.push_back(name);
    doms.push_back(d);
    const auto width = static_cast<std::size_t>(d.hi - d.lo + 1);
    if (total > (std::size_t{1} << 40) / width) overflow = true;
    else total *= width;
  }
  if (cap == 0) cap = 1;
  const std::size_t count = (!overflow && total <= cap) ? total : cap;
  const double stride = overflow ? 1.0 : static_cast<double>(total) / static_cast<double>(count);

  std::vector<ClassicalState> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    auto index = overflow ? n * 7919u : static_cast<std::size_t>(static_cast<double>(n) * stride);
    ClassicalState sigma;
    for (std::size_t v = names.size(); v-- > 0;) {
      const auto width = static_cast<std::size_t>(doms[v].hi - doms[v].lo + 1);
      sigma[names[v]] = doms[v].lo + static_cast<std::int64_t>(index % width);
      index /= width;
    }
    out.push_back(std::move(sigma));
  }
  return out;
}

}  // namespace dqhl
