#pragma once

#include <complex>

namespace psd {

// Complex Gamma via a Lanczos approximation (g = 7, 9 terms) with reflection
// for Re z < 1/2. Throws SingularityError within 1e-8 of a pole.
std::complex<double> gamma(std::complex<double> z);

// 1/Gamma(z); exactly 0 within 1e-8 of a pole.
std::complex<double> rgamma(std::complex<double> z);

// Distance from z to the nearest pole 0, -1, -2, ...
double pole_distance(std::complex<double> z);

}  // namespace psd
