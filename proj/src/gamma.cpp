#include "psd/gamma.hpp"

#include "psd/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace psd {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;
constexpr double kG = 7.0;
constexpr std::array<double, 9> kCoef{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx lanczos(cplx z)
{
    z -= 1.0;
    cplx x = kCoef[0];
    for (std::size_t i = 1; i < kCoef.size(); ++i) x += kCoef[i] / (z + static_cast<double>(i));
    const cplx t = z + kG + 0.5;
    return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

}  // namespace

double pole_distance(cplx z)
{
    if (z.real() > 0.5) return std::abs(z);
    const double k = std::round(z.real());
    return std::abs(z - std::min(k, 0.0));
}

cplx gamma(cplx z)
{
    if (pole_distance(z) < 1e-8)
        throw SingularityError("Gamma argument within 1e-8 of a pole");
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * lanczos(1.0 - z));
    return lanczos(z);
}

cplx rgamma(cplx z)
{
    if (pole_distance(z) < 1e-8) return 0.0;
    if (z.real() < 0.5) return std::sin(kPi * z) * lanczos(1.0 - z) / kPi;
    return 1.0 / lanczos(z);
}

}  // namespace psd
