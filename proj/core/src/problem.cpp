#include "recon/problem.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace recon {

std::string Problem::action_name(ActionId id) const {
  if (id >= 0 && id < static_cast<int>(names.size()) && !names[id].empty())
    return names[id];
  return "a" + std::to_string(id);
}

std::string describe(const Violation& v, const Problem& p) {
  switch (v.kind) {
    case ViolationKind::Dependency:
      return "dependency broken: " + p.action_name(v.a) + " accepted but " +
             p.action_name(v.b) + " rejected";
    case ViolationKind::Precedence:
      return "precedence violated: " + p.action_name(v.a) +
             " not before " + p.action_name(v.b);
    case ViolationKind::PositionRange:
      return "position of " + p.action_name(v.a) + " outside [1, n]";
    case ViolationKind::PositionMissing:
      return "accepted action " + p.action_name(v.a) + " has no position";
  }
  return "unknown violation";
}

std::vector<Violation> check_schedule(const Problem& p, const Schedule& s) {
  if (static_cast<int>(s.accepted.size()) != p.n)
    throw std::invalid_argument("check_schedule: acceptance vector has " +
                                std::to_string(s.accepted.size()) +
                                " entries, instance has n=" + std::to_string(p.n));
  if (static_cast<int>(s.position.size()) != p.n)
    throw std::invalid_argument("check_schedule: position vector has " +
                                std::to_string(s.position.size()) +
                                " entries, instance has n=" + std::to_string(p.n));

  std::vector<Violation> out;
  for (auto [i, j] : p.deps)
    if (s.accepted[i] && !s.accepted[j])
      out.push_back({ViolationKind::Dependency, i, j});

  auto placed = [&](ActionId a) {
    return s.accepted[a] && s.position[a] >= 1 && s.position[a] <= p.n;
  };
  for (auto [i, j] : p.precs)
    if (placed(i) && placed(j) && !(s.position[i] < s.position[j]))
      out.push_back({ViolationKind::Precedence, i, j});

  for (ActionId a = 0; a < p.n; ++a) {
    if (!s.accepted[a]) continue;
    if (s.position[a] == 0)
      out.push_back({ViolationKind::PositionMissing, a});
    else if (s.position[a] < 1 || s.position[a] > p.n)
      out.push_back({ViolationKind::PositionRange, a});
  }
  return out;
}

int objective(const Schedule& s) {
  return static_cast<int>(std::count(s.accepted.begin(), s.accepted.end(), true));
}

bool feasible_subset(const Problem& p, const std::vector<bool>& accepted) {
  if (static_cast<int>(accepted.size()) != p.n)
    throw std::invalid_argument("feasible_subset: acceptance vector size != n");

  for (auto [i, j] : p.deps)
    if (accepted[i] && !accepted[j]) return false;

  // Kahn's algorithm on the accepted precedence subgraph. A self-loop keeps
  // its own indegree nonzero, so it is reported as a cycle.
  std::vector<std::vector<int>> out(p.n);
  std::vector<int> indeg(p.n, 0);
  for (auto [i, j] : p.precs) {
    if (!accepted[i] || !accepted[j]) continue;
    out[i].push_back(j);
    ++indeg[j];
  }
  std::vector<int> stack;
  int active = 0;
  for (ActionId a = 0; a < p.n; ++a) {
    if (!accepted[a]) continue;
    ++active;
    if (indeg[a] == 0) stack.push_back(a);
  }
  int removed = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++removed;
    for (int w : out[v])
      if (--indeg[w] == 0) stack.push_back(w);
  }
  return removed == active;
}

std::vector<std::string> validate_problem(const Problem& p) {
  std::vector<std::string> issues;
  if (p.n < 0) issues.push_back("n is negative");
  if (!p.names.empty() && static_cast<int>(p.names.size()) != p.n)
    issues.push_back("actions list has " + std::to_string(p.names.size()) +
                     " names, expected " + std::to_string(p.n));
  auto in_range = [&](ActionId a) { return a >= 0 && a < p.n; };
  for (auto [i, j] : p.deps) {
    if (!in_range(i) || !in_range(j)) {
      issues.push_back("dep [" + std::to_string(i) + "," + std::to_string(j) +
                       "] references an action outside [0," + std::to_string(p.n) + ")");
    } else if (i == j) {
      issues.push_back("dep [" + std::to_string(i) + "," + std::to_string(j) +
                       "] is a self-dependency");
    }
  }
  for (auto [i, j] : p.precs)
    if (!in_range(i) || !in_range(j))
      issues.push_back("prec [" + std::to_string(i) + "," + std::to_string(j) +
                       "] references an action outside [0," + std::to_string(p.n) + ")");
  for (const auto& log : p.logs)
    for (ActionId a : log)
      if (!in_range(a)) {
        issues.push_back("log entry references action " + std::to_string(a));
        break;
      }
  return issues;
}

void dedup_constraints(Problem& p) {
  auto drop_dups = [](std::vector<IdPair>& pairs) {
    std::set<IdPair> seen;
    std::vector<IdPair> kept;
    kept.reserve(pairs.size());
    for (auto pr : pairs)
      if (seen.insert(pr).second) kept.push_back(pr);
    pairs = std::move(kept);
  };
  drop_dups(p.deps);
  drop_dups(p.precs);
}

}  // namespace recon
