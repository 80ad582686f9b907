#include "recon/oracle.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace recon {
namespace {

// Cycle check by Kahn's algorithm over the accepted subgraph, written
// against flat adjacency so a full 2^n sweep stays cheap. Kept separate
// from feasible_subset on purpose: the oracle is the independent route.
struct SubsetChecker {
  int n;
  std::vector<IdPair> deps;
  std::vector<std::vector<int>> prec_out;
  mutable std::vector<int> indeg;
  mutable std::vector<int> stack;

  explicit SubsetChecker(const Problem& p)
      : n(p.n), deps(p.deps), prec_out(p.n), indeg(p.n), stack() {
    for (auto [i, j] : p.precs) prec_out[i].push_back(j);
    stack.reserve(p.n);
  }

  bool feasible(std::uint64_t mask) const {
    for (auto [i, j] : deps)
      if ((mask >> i & 1) && !(mask >> j & 1)) return false;

    int active = 0;
    stack.clear();
    for (int v = 0; v < n; ++v) {
      if (!(mask >> v & 1)) continue;
      ++active;
      indeg[v] = 0;
    }
    for (int v = 0; v < n; ++v) {
      if (!(mask >> v & 1)) continue;
      for (int w : prec_out[v])
        if (mask >> w & 1) ++indeg[w];
    }
    for (int v = 0; v < n; ++v)
      if ((mask >> v & 1) && indeg[v] == 0) stack.push_back(v);
    int removed = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++removed;
      for (int w : prec_out[v])
        if ((mask >> w & 1) && --indeg[w] == 0) stack.push_back(w);
    }
    return removed == active;
  }
};

// True when a is lexicographically smaller than b as an acceptance vector
// read from index 0 with false < true.
bool lex_smaller(std::uint64_t a, std::uint64_t b) {
  std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  int k = std::countr_zero(diff);
  return (a >> k & 1) == 0;
}

}  // namespace

OracleResult brute_force(const Problem& p, int cap) {
  if (p.n > cap)
    throw std::invalid_argument("brute_force: n=" + std::to_string(p.n) +
                                " exceeds the cap of " + std::to_string(cap));
  if (p.n > 30)
    throw std::invalid_argument("brute_force: cap above 30 is not supported");

  SubsetChecker checker(p);
  const std::uint64_t total = std::uint64_t{1} << p.n;
  int best_count = -1;
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    int count = std::popcount(mask);
    if (count < best_count) continue;
    if (!checker.feasible(mask)) continue;
    if (count > best_count || lex_smaller(mask, best_mask)) {
      best_count = count;
      best_mask = mask;
    }
  }

  OracleResult out;
  out.opt_value = best_count;
  out.witness.assign(p.n, false);
  for (int v = 0; v < p.n; ++v)
    if (best_mask >> v & 1) out.witness[v] = true;
  return out;
}

}  // namespace recon
