#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bondle/solver.hpp"
#include "bondle/statesum.hpp"

namespace bondle {

struct NamedDiagram {
  std::string name;
  BondedDiagram diagram;
};

// Two-stage clustering: by coloring count, then by state sum within each
// count.
struct ClusterReport {
  std::map<Count, std::vector<std::string>> stage1;
  std::map<std::pair<Count, StateSum>, std::vector<std::string>> stage2;
  std::vector<std::pair<std::string, std::string>> distinguished_pairs;  // same stage-1 cluster, split at stage 2

  friend bool operator==(const ClusterReport&, const ClusterReport&) = default;
};

inline ClusterReport cluster(const std::vector<NamedDiagram>& diagrams, const FiniteBondle& B, const BoltzmannWeights& W) {
  std::set<std::string> seen;
  for (const auto& d : diagrams)
    if (!seen.insert(d.name).second) throw Error("duplicate diagram name '" + d.name + "'");

  ClusterReport report;
  std::map<std::string, std::pair<Count, StateSum>> key;
  for (const auto& d : diagrams) {
    try {
      const auto S = state_sum(d.diagram, B, W);
      key[d.name] = {S.total(), S};
    } catch (const Error& e) {
      throw Error(d.name + ": " + e.what());
    }
  }
  for (const auto& [name, k] : key) {
    report.stage1[k.first].push_back(name);
    report.stage2[k].push_back(name);
  }
  for (auto& [_, names] : report.stage1) std::sort(names.begin(), names.end());
  for (auto& [_, names] : report.stage2) std::sort(names.begin(), names.end());
  for (const auto& [count, names] : report.stage1)
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i + 1; j < names.size(); ++j)
        if (key[names[i]].second != key[names[j]].second) report.distinguished_pairs.emplace_back(names[i], names[j]);
  return report;
}

// Stage 2 refines stage 1, and both stages partition the same name set.
inline bool refines(const ClusterReport& R) {
  std::map<std::string, Count> stage1_of;
  for (const auto& [count, names] : R.stage1)
    for (const auto& n : names)
      if (!stage1_of.emplace(n, count).second) return false;
  std::set<std::string> covered;
  for (const auto& [k, names] : R.stage2)
    for (const auto& n : names) {
      if (!covered.insert(n).second) return false;
      auto it = stage1_of.find(n);
      if (it == stage1_of.end() || it->second != k.first) return false;
    }
  return covered.size() == stage1_of.size();
}

}  // namespace bondle
