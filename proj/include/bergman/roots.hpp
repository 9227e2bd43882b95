#pragma once

#include <vector>

#include "bergman/funcrep.hpp"

namespace bergman {

// All complex roots of p, by Aberth-Ehrlich simultaneous iteration with a
// companion-matrix eigenvalue fallback. Multiple roots appear repeatedly.
std::vector<Complex> find_roots(const Poly& p);

struct RootCluster {
  Complex center;
  int multiplicity = 1;
};

// Groups roots by single linkage at distance tol; centers are cluster means.
std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, double tol);

}  // namespace bergman
