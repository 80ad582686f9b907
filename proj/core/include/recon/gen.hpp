#pragma once

#include <cstdint>

#include "recon/problem.hpp"

namespace recon {

/// Random-instance family: every ordered pair (i, j), i != j, carries a
/// dependency with probability dep_density / size and, independently, a
/// precedence with probability prec_density / size. Expected counts are
/// density * (size - 1) per class.
struct GenSpec {
  int size = 0;
  double dep_density = 0.0;
  double prec_density = 0.0;
  std::uint32_t seed = 0;
};

/// Deterministic given the spec: pairs are visited row-major over (i, j)
/// and each pair consumes exactly two std::mt19937 draws, dependency first,
/// then precedence, whatever the densities. The instance name encodes the
/// parameters ("t" prefix when dep_density is zero, "r" otherwise).
Problem generate(const GenSpec& spec);

}  // namespace recon
