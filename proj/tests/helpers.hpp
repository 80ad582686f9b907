#pragma once

#include <vector>

#include "recon/gen.hpp"
#include "recon/problem.hpp"
#include "recon/rng.hpp"

namespace recon::test {

inline Problem make_problem(int n, std::vector<IdPair> deps = {},
                            std::vector<IdPair> precs = {}) {
  Problem p;
  p.n = n;
  p.name = "test";
  p.deps = std::move(deps);
  p.precs = std::move(precs);
  return p;
}

inline Problem random_instance(int n, double d_dep, double d_prec, std::uint32_t seed) {
  return generate(GenSpec{n, d_dep, d_prec, seed});
}

/// Random acceptance flags (not necessarily feasible).
inline std::vector<bool> random_flags(Rng& rng, int n, std::uint32_t per_mille = 500) {
  std::vector<bool> out(n);
  const auto thr = chance_threshold(per_mille / 1000.0);
  for (int v = 0; v < n; ++v) out[v] = chance_u32(rng, thr);
  return out;
}

/// Random positions in [1, n].
inline std::vector<int> random_positions(Rng& rng, int n) {
  std::vector<int> out(n);
  for (int v = 0; v < n; ++v) out[v] = uniform_int(rng, 1, n);
  return out;
}

}  // namespace recon::test
