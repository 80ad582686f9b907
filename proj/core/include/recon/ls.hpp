#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "recon/problem.hpp"
#include "recon/rng.hpp"

namespace recon {

/// Error of one precedence constraint under positions (pi, pj):
/// 0 when pi < pj, else 1 + (pi - pj).
inline int constraint_error(int pi, int pj) {
  return pi < pj ? 0 : 1 + (pi - pj);
}

// Scratch recomputations over a bare position vector. The search keeps the
// same quantities incrementally; tests pin the two routes against each
// other. Constraints are taken verbatim from the instance (loaders
// deduplicate, so each pair appears once).

/// Sum of constraint_error over all precedence pairs; 0 iff the positions
/// satisfy every precedence.
long long evaluation(const Problem& p, const std::vector<int>& pos);

/// Number of actions whose incident precedence constraints (either
/// endpoint) all have error 0. A lower bound of cost().
int value(const Problem& p, const std::vector<int>& pos);

/// Survivor count and survivor set after repeatedly removing the action
/// with the most violated constraints against non-removed actions
/// (smallest index on ties) until no violation remains. Survivors always
/// form a feasible acceptance set.
std::pair<int, std::vector<bool>> cost(const Problem& p, const std::vector<int>& pos);

enum class LsMode { Descent, Tabu };

struct LsParams {
  LsMode mode = LsMode::Tabu;
  /// Descent: cap on full sweeps (0 = run to the local optimum).
  /// Tabu: budget of attempted moves (one variable visit each).
  long long max_iterations = 0;
  int tabu_max = 10;
  std::uint32_t rng_seed = 0;
  std::optional<std::vector<int>> warm_start;
};

/// Search state over a full position vector. Every pos[i] stays in [1, n];
/// moves are increments/decrements clipped to that range.
struct LsState {
  std::vector<int> pos;
  std::vector<int> constraint_err;     // per precedence pair, instance order
  std::vector<int> action_err;         // sum of incident errors per action
  std::vector<long long> tabu_until;   // attempt index the tabu mark expires at
  long long iteration = 0;
  int best_cost_seen = 0;
  long long eval = 0;
  int zero_err_actions = 0;            // = value()
};

struct LsTraceEntry {
  long long iter = 0;
  long long eval = 0;
  int value = 0;
  int cost = 0;
  double t_ms = 0.0;
};

struct LsResult {
  Schedule best;
  SolveStats stats;
  std::vector<LsTraceEntry> trace;
};

/// Descent and randomized Tabu search over precedence-only instances.
/// Both sweep actions 0..n-1, applying the strictly improving move with the
/// larger decrease of evaluation() (decrement on ties). Tabu additionally
/// marks local-minimum variables unmovable for a tenure drawn uniformly
/// from [1, tabu_max] attempts, lets a marked variable move anyway when the
/// move beats the best cost() seen so far, and, when a whole sweep makes no
/// move, forces one uniformly random degrading move. Deterministic given
/// the seed. Tracks and returns the best cost() state ever visited.
///
/// Construction rejects instances with dependency constraints: this search
/// handles precedence constraints only.
class LocalSearch {
 public:
  explicit LocalSearch(const Problem& problem);

  /// Warm start used verbatim when given (must hold n in-range positions),
  /// otherwise the identity order pos[i] = i + 1.
  LsState initial_state(const std::optional<std::vector<int>>& warm_start = {}) const;

  LsResult run(const LsParams& params) const;

  // Incremental stepping, exposed so the caches can be exercised directly.
  long long move_delta(const LsState& s, ActionId var, int new_pos) const;
  void apply_move(LsState& s, ActionId var, int new_pos) const;
  std::pair<int, std::vector<bool>> cost_of(const LsState& s) const;

 private:
  const Problem& problem_;
  std::vector<std::vector<int>> incident_;  // constraint indices per action
};

LsResult descent(const Problem& p, const LsParams& params);
LsResult tabu_search(const Problem& p, const LsParams& params);

}  // namespace recon
