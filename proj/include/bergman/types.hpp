#pragma once

#include <complex>
#include <functional>

namespace bergman {

using Complex = std::complex<double>;

// A function that can be sampled on the closed unit disc.
using Evaluable = std::function<Complex(Complex)>;

// Coefficients below this magnitude are dropped during normalization.
inline constexpr double kDropTol = 1e-14;

}  // namespace bergman
