#pragma once

#include "psd/lie.hpp"

#include <complex>

namespace psd {

// Rank-one spectral parameter; lambda_alpha = lambda in the SL2 / disk scale.
struct SpectralParam {
    std::complex<double> lambda;

    SpectralParam(std::complex<double> l);
    SpectralParam(double l) : SpectralParam(std::complex<double>(l, 0.0)) {}
};

enum class PlancherelCase { A, B, C, D };

PlancherelCase plancherel_case(const RootDatum& roots);

// Gamma product normalised by c(-i rho) = 1.
std::complex<double> c_function(SpectralParam lambda, const RootDatum& roots);

// (1/pi) int (1+u^2)^{-(i lambda + 1/2)} du for SL2, by tanh-sinh quadrature.
// Needs Re(i lambda) > 0.
std::complex<double> c_function_integral(SpectralParam lambda);

// lambda * p(lambda) * q(lambda) of the selected case, without the constant.
double plancherel_shape(double lambda, const RootDatum& roots);

// Constant fixed at lambda = 1 so that density * c(lambda) c(-lambda) = 1.
double plancherel_constant(const RootDatum& roots);

double plancherel_density(double lambda, const RootDatum& roots);

std::complex<double> e_function(SpectralParam lambda, const RootDatum& roots);

std::complex<double> laplace_eigenvalue(SpectralParam lambda, const RootDatum& roots);

}  // namespace psd
