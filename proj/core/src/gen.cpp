#include "recon/gen.hpp"

#include <cstdio>
#include <stdexcept>

#include "recon/rng.hpp"

namespace recon {
namespace {

std::string fmt_density(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", d);
  return buf;
}

}  // namespace

Problem generate(const GenSpec& spec) {
  if (spec.size < 1) throw std::invalid_argument("generate: size must be >= 1");
  if (spec.dep_density < 0 || spec.prec_density < 0)
    throw std::invalid_argument("generate: densities must be >= 0");
  if (spec.dep_density > spec.size || spec.prec_density > spec.size)
    throw std::invalid_argument(
        "generate: density/size is a probability and must not exceed 1");

  const std::uint64_t thr_dep = chance_threshold(spec.dep_density / spec.size);
  const std::uint64_t thr_prec = chance_threshold(spec.prec_density / spec.size);

  Problem p;
  p.n = spec.size;
  p.name = (spec.dep_density == 0.0 ? "t" : "r") + std::to_string(spec.size) +
           "-ddep" + fmt_density(spec.dep_density) + "-dprec" +
           fmt_density(spec.prec_density) + "-s" + std::to_string(spec.seed);

  Rng rng(spec.seed);
  for (int i = 0; i < spec.size; ++i) {
    for (int j = 0; j < spec.size; ++j) {
      if (i == j) continue;
      if (chance_u32(rng, thr_dep)) p.deps.emplace_back(i, j);
      if (chance_u32(rng, thr_prec)) p.precs.emplace_back(i, j);
    }
  }
  return p;
}

}  // namespace recon
