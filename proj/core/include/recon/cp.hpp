#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <optional>
#include <vector>

#include "recon/problem.hpp"

namespace recon {

enum class Truth : unsigned char { False = 0, True = 1, Unknown = 2 };
enum class PropResult { Consistent, Failed };

/// Propagation workspace: tri-valued acceptance domains plus [lb, ub]
/// interval domains for the 1-based positions, with a trail so the search
/// can undo to any earlier mark. Domains only narrow along a branch.
struct CpState {
  std::vector<Truth> bools;
  std::vector<int> lb, ub;
  int num_true = 0;
  int num_unknown = 0;

  struct TrailEntry {
    int var;
    unsigned char slot;  // 0 = bool, 1 = lb, 2 = ub
    int old;
  };
  std::vector<TrailEntry> trail;

  std::size_t mark() const { return trail.size(); }
  void undo_to(std::size_t m);
};

struct CpConfig {
  std::optional<double> time_limit_ms;
  std::optional<long long> node_limit;
  /// When false the search stops after recording its first solution.
  bool prove_optimality = true;
  /// Cooperative cancellation, polled between nodes.
  const std::atomic<bool>* cancel = nullptr;
};

struct CpIncumbent {
  int value = 0;
  double t_ms = 0.0;
  long long nodes = 0;
};

struct CpResult {
  Schedule best;
  SolveStats stats;
  std::vector<CpIncumbent> incumbents;
};

/// Minimal positions for a feasible acceptance set: longest-path layering of
/// the accepted precedence subgraph, position = 1 + max over accepted
/// predecessors. Rejected actions get 0. Throws std::logic_error if the
/// accepted subgraph is cyclic (contract violation).
std::vector<int> earliest_positions(const Problem& p, const std::vector<bool>& accepted);

/// Accepted actions as (position, id) pairs sorted ascending, index as the
/// tie-break. Rejected actions are omitted.
std::vector<std::pair<int, ActionId>> extract_schedule(const Problem& p,
                                                       const std::vector<bool>& accepted,
                                                       const std::vector<int>& positions);

Schedule make_schedule(const Problem& p, const std::vector<bool>& accepted);

/// Exact solver: fixpoint propagation over acceptance and position domains,
/// depth-first branch-and-bound on the acceptance variables only.
///
/// Propagation rules, run to a fixpoint:
///   - dependency (i, j): i true forces j true; j false forces i false.
///   - active precedence (i, j), both true: lb[j] >= lb[i]+1 and
///     ub[i] <= ub[j]-1; an empty interval fails. Iterated bound tightening
///     detects every cycle among accepted actions, so positions never need
///     labeling.
///   - disentailment (i, j): once lb[i] >= ub[j], p_i < p_j is impossible,
///     so both endpoints cannot be accepted.
///   - antiparallel pair {(i, j), (j, i)}: accepting one endpoint rejects
///     the other (the two orders contradict).
///   - self-precedence (i, i): i is rejected outright.
///
/// One CpSolver instance drives one single-threaded run and keeps a
/// reference to the problem; concurrent runs each build their own solver
/// over the same shared instance.
class CpSolver {
 public:
  explicit CpSolver(const Problem& problem);

  CpState root_state() const;

  /// Runs all rules to a fixpoint over the whole state.
  PropResult propagate(CpState& state);

  /// Unbound variable with the greatest static degree (deduplicated
  /// dependency + precedence pairs incident as either endpoint); smallest
  /// index wins ties. Empty when everything is bound.
  std::optional<ActionId> select_variable(const CpState& state) const;

  int degree(ActionId a) const { return degree_[a]; }

  CpResult solve(const CpConfig& config = {});

 private:
  bool assign(CpState& s, int var, Truth value);
  bool raise_lb(CpState& s, int var, int bound);
  bool lower_ub(CpState& s, int var, int bound);
  void enqueue(int var);
  bool process(CpState& s, int var);
  PropResult drain(CpState& s);
  void seed_all(CpState& s);
  void dfs(CpState& s);
  void record_incumbent(const CpState& s);
  double elapsed_ms() const;

  const Problem& problem_;
  std::vector<std::vector<int>> dep_out_, dep_in_, prec_out_, prec_in_, mutex_;
  std::vector<char> self_prec_;
  std::vector<int> degree_;

  // propagation queue (scratch, reused across nodes)
  std::vector<int> queue_;
  std::vector<char> in_queue_;
  std::size_t qhead_ = 0;

  // search bookkeeping for the current solve() call
  const CpConfig* config_ = nullptr;
  std::vector<bool> best_accepted_;
  std::vector<int> best_positions_;
  int best_value_ = -1;
  bool aborted_ = false;
  bool policy_stop_ = false;
  long long nodes_ = 0;
  SolveStats stats_;
  std::vector<CpIncumbent> incumbents_;
  std::chrono::steady_clock::time_point start_;
};

inline CpResult branch_and_bound(const Problem& p, const CpConfig& config = {}) {
  CpSolver solver(p);
  return solver.solve(config);
}

}  // namespace recon
