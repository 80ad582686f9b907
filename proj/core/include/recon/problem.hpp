#pragma once

#include <string>
#include <utility>
#include <vector>

namespace recon {

/// Dense action index in [0, n).
using ActionId = int;
using IdPair = std::pair<ActionId, ActionId>;

/// A reconciliation instance: n opaque actions, dependency pairs (i, j)
/// meaning "accepting i requires accepting j", and precedence pairs (i, j)
/// meaning "if both are accepted, i runs strictly before j".
///
/// A self-precedence (i, i) is legal and forces rejection of i. Duplicate
/// pairs are semantically idempotent; the file loader drops them.
/// Immutable once built; solvers share one instance freely across threads.
struct Problem {
  std::string name;
  int n = 0;
  std::vector<std::string> names;  // empty, or exactly n display names
  std::vector<IdPair> deps;
  std::vector<IdPair> precs;
  std::vector<std::vector<ActionId>> logs;  // provenance only; solvers ignore it

  std::string action_name(ActionId id) const;
};

/// Acceptance flags plus 1-based schedule positions for accepted actions.
/// position[i] is meaningful only when accepted[i]; 0 marks "unset".
struct Schedule {
  std::vector<bool> accepted;
  std::vector<int> position;
};

enum class ViolationKind {
  Dependency,       // accepted[i] but not accepted[j] for (i, j) in deps
  Precedence,       // both accepted but not position[i] < position[j]
  PositionRange,    // accepted action with position outside [1, n]
  PositionMissing,  // accepted action without a position
};

struct Violation {
  ViolationKind kind;
  ActionId a = 0;
  ActionId b = -1;  // second endpoint for pair violations, else -1
};

std::string describe(const Violation& v, const Problem& p);

/// One descriptor per violated constraint or malformed position; empty
/// means every Schedule invariant holds. Positions of rejected actions are
/// ignored. Throws std::invalid_argument if the schedule's vectors do not
/// have exactly n entries (an input error, not a violation).
std::vector<Violation> check_schedule(const Problem& p, const Schedule& s);

/// Number of accepted actions.
int objective(const Schedule& s);

/// True iff the acceptance set is dependency-closed and the precedence
/// subgraph induced by the accepted actions is acyclic. Such a set always
/// admits a valid schedule (see earliest_positions).
bool feasible_subset(const Problem& p, const std::vector<bool>& accepted);

/// Structural issues (bad indices, self-dependencies, size mismatches).
/// Empty result means the instance is well-formed.
std::vector<std::string> validate_problem(const Problem& p);

/// Drops duplicate pairs within each constraint class, keeping first
/// occurrences in order. Self-precedences are kept.
void dedup_constraints(Problem& p);

/// Wall-clock account of one solver run. Times are monotonic milliseconds.
struct SolveStats {
  int first_value = 0;
  double first_ms = 0.0;
  int best_value = 0;
  double best_ms = 0.0;
  bool proved_optimal = false;
  double total_ms = 0.0;
  long long nodes_or_iterations = 0;
};

}  // namespace recon
