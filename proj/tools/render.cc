#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "bergman/errors.hpp"

namespace bergman {

Graymap render(const Evaluable& F, int grid) {
  if (grid < 16) throw ValidationError("render: grid must be >= 16");
  std::vector<double> mag(static_cast<std::size_t>(grid) * grid, -1.0);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int row = 0; row < grid; ++row)
    for (int col = 0; col < grid; ++col) {
      // pixel centers; row 0 is the top (Im z = 1)
      const Complex z((2.0 * col + 1.0) / grid - 1.0, 1.0 - (2.0 * row + 1.0) / grid);
      if (std::abs(z) >= 1.0) continue;
      const double v = std::abs(F(z));
      mag[static_cast<std::size_t>(row) * grid + col] = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }

  Graymap g;
  g.grid = grid;
  g.min = lo;
  g.max = hi;
  std::ostringstream os;
  os.precision(17);
  os << "P5\n# min " << lo << " max " << hi << "\n" << grid << " " << grid << "\n255\n";
  g.bytes = os.str();
  const double span = hi - lo;
  for (double v : mag) {
    int px = 0;
    if (v >= 0.0) px = span > 0.0 ? static_cast<int>(std::lround(255.0 * (v - lo) / span)) : 255;
    g.bytes.push_back(static_cast<char>(static_cast<unsigned char>(px)));
  }
  return g;
}

}  // namespace bergman
