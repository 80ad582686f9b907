#pragma once

#include <vector>

#include "recon/problem.hpp"

namespace recon {

struct OracleResult {
  int opt_value = 0;
  std::vector<bool> witness;
};

/// Exhaustive ground truth for small instances: enumerates all 2^n
/// acceptance subsets, keeps the feasible ones (dependency closure plus an
/// acyclic accepted precedence subgraph, checked independently of
/// feasible_subset) and returns the maximum cardinality together with the
/// lexicographically smallest witness of that cardinality, comparing
/// acceptance vectors index 0 first with false < true.
///
/// Refuses instances with n above the cap.
OracleResult brute_force(const Problem& p, int cap = 20);

}  // namespace recon
