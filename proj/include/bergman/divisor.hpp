#pragma once

#include <optional>
#include <vector>

#include "bergman/extremal.hpp"

namespace bergman {

struct ZeroEntry {
  Complex point;
  int multiplicity = 1;
};
using ZeroSet = std::vector<ZeroEntry>;

// Points distinct and inside the disc, multiplicities >= 1, nonempty.
void validate_zero_set(const ZeroSet& zeros);

// G^M for the canonical divisor, M = p/2, in one of two forms:
//   no zero at 0:  c0 + sum_n sum_{j < M d_n} c_nj / (1 - conj(z_n) z)^{j+2}
//   zero at 0:     c0 z^{M d_1} + sum_{j < M d_1} c_1j z^j + pole blocks as above
struct DivisorAnsatz {
  struct PoleBlock {
    Complex point;
    std::vector<Complex> coefs;  // coefs[j] multiplies 1/(1 - conj(point) z)^{j+2}
  };
  int M = 1;
  Complex c0;
  int origin_order = 0;               // M d_1 when 0 is a zero, else 0
  std::vector<Complex> origin_block;  // c_1j, j < origin_order
  std::vector<PoleBlock> pole_blocks;

  RationalRep expanded() const;
};

struct DivisorSolution {
  SolutionReport report;  // report.F is G
  DivisorAnsatz ansatz;
  int leading_order = 0;        // order of the zero of G at 0
  double leading_value = 0.0;   // G^{(leading_order)}(0) > 0
  std::vector<double> singular_values;
  double null_gap = 0.0;        // sigma_min / sigma_max of the system
};

DivisorSolution canonical_divisor(int p, const ZeroSet& zeros, const SolverOptions& opts = {});

// max over pole points of the residue of the expanded ansatz, by contour integration.
double validate_residues(const DivisorAnsatz& ansatz);
double validate_residues(const RationalRep& f);

}  // namespace bergman
