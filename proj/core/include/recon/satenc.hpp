#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recon/problem.hpp"

namespace recon {

struct Lit {
  int var = 0;
  bool neg = false;
};

/// CNF over num_vars variables. Clauses are non-empty and never mention the
/// same variable twice (so tautologies are rejected at parse time).
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<Lit>> clauses;
};

/// Standard DIMACS input: "p cnf N C" header, 'c' comment lines,
/// zero-terminated clauses. Throws std::invalid_argument on malformed
/// input, clause/variable count mismatches, empty clauses or repeated
/// variables within a clause.
CnfFormula parse_dimacs(const std::string& text, const std::string& origin = "<memory>");

/// Identifies the two actions standing for each (variable, clause index)
/// pair: the "false" copy (accepted when the variable is false) and the
/// "true" copy. Ids are variable-major, then clause index, false copy
/// first: id = (var * C + (i - 1)) * 2 + polarity.
struct ReductionMap {
  int num_vars = 0;
  int num_clauses = 0;
  std::vector<std::vector<ActionId>> false_ids;  // [var][clause index - 1]
  std::vector<std::vector<ActionId>> true_ids;

  ActionId id_of(int var, int clause_index, bool truthy) const {
    return (truthy ? true_ids : false_ids)[var][clause_index - 1];
  }
};

/// CNF satisfiability as a precedence-only reconciliation instance over
/// 2 * N * C actions:
///   - mutual exclusion: for every variable and all clause indices i, j,
///     both orders between the false copy i and the true copy j, so no
///     variable can have copies of both polarities accepted;
///   - one directed cycle per clause through the falsifying copy of each
///     literal at that clause's index (the false copy for a positive
///     literal, the true copy for a negated one), closing last to first.
///     A unit clause degenerates to a self-precedence, which simply forces
///     that copy out.
/// The formula is satisfiable iff some schedule accepts N * C actions.
std::pair<Problem, ReductionMap> encode(const CnfFormula& cnf);

/// Maps a full-cardinality schedule back to the satisfying valuation; empty
/// when the schedule accepts fewer than N * C actions (if that schedule is
/// a proved optimum, the formula is unsatisfiable). Throws std::logic_error
/// if a full-cardinality schedule breaks mutual exclusion, which the
/// encoding rules out.
std::optional<std::vector<bool>> decode(const ReductionMap& map, const Schedule& schedule);

bool cnf_satisfied(const CnfFormula& cnf, const std::vector<bool>& valuation);

/// Truth-table check, the independent route the reduction is tested
/// against. Refuses more than 20 variables.
bool truth_table_satisfiable(const CnfFormula& cnf);

std::string reduction_map_to_json(const ReductionMap& map);
ReductionMap reduction_map_from_json(const std::string& text,
                                     const std::string& origin = "<memory>");

}  // namespace recon
