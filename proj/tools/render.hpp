#pragma once

#include <string>

#include "bergman/types.hpp"

namespace bergman {

struct Graymap {
  int grid = 0;
  double min = 0.0, max = 0.0;  // range of |F| over in-disc samples
  std::string bytes;            // binary NetPBM P5
};

// grid x grid samples of |F| over [-1, 1]^2; pixels outside the disc are 0 and
// in-disc values scale linearly onto 0..255.
Graymap render(const Evaluable& F, int grid);

}  // namespace bergman
