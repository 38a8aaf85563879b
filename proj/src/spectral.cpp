#include "psd/spectral.hpp"

#include "psd/errors.hpp"
#include "psd/gamma.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>

namespace psd {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

void require_rank_one(const RootDatum& r)
{
    if (r.rank != 1) throw DomainError("only rank-one root data are supported");
}

cplx c_alpha(cplx lambda, const RootDatum& r)
{
    const cplx il = I * lambda;
    if (pole_distance(il) < 1e-8)
        throw SingularityError("c-function: i lambda within 1e-8 of a pole of Gamma");
    const cplx d1 = 0.5 * il + r.mAlpha / 4.0 + 0.5;
    const cplx d2 = 0.5 * il + r.mAlpha / 4.0 + r.m2Alpha / 2.0;
    return std::pow(2.0, -il) * gamma(il) * rgamma(d1) * rgamma(d2);
}

// lambda * q(lambda), with the removable singularity of case (d) at 0.
double lambda_q(double lambda, PlancherelCase c)
{
    switch (c) {
    case PlancherelCase::A: return lambda;
    case PlancherelCase::B: return lambda * std::tanh(kPi * lambda);
    case PlancherelCase::C: return lambda * std::tanh(kPi * lambda / 2);
    case PlancherelCase::D:
        if (std::abs(lambda) < 1e-8) return 2.0 / kPi;
        return lambda / std::tanh(kPi * lambda / 2);
    }
    return 0.0;
}

}  // namespace

SpectralParam::SpectralParam(cplx l) : lambda(l)
{
    if (!std::isfinite(l.real()) || !std::isfinite(l.imag()))
        throw DomainError("spectral parameter must be finite");
}

PlancherelCase plancherel_case(const RootDatum& r)
{
    require_rank_one(r);
    if (r.mAlpha <= 0 || r.m2Alpha < 0) throw DomainError("invalid multiplicities");
    if (r.m2Alpha == 0) return r.mAlpha % 2 == 0 ? PlancherelCase::A : PlancherelCase::B;
    if (r.mAlpha % 2 != 0 || r.m2Alpha % 2 == 0)
        throw DomainError("unsupported multiplicities: with 2 alpha a root, m_alpha must be even and m_2alpha odd");
    return (r.mAlpha / 2) % 2 == 0 ? PlancherelCase::C : PlancherelCase::D;
}

cplx c_function(SpectralParam lambda, const RootDatum& roots)
{
    require_rank_one(roots);
    return c_alpha(lambda.lambda, roots) / c_alpha(-I * roots.rho, roots);
}

cplx c_function_integral(SpectralParam lambda)
{
    const cplx s = I * lambda.lambda;
    if (!(s.real() > 0))
        throw DomainError("c_function_integral: needs Re(i lambda) > 0");
    // u = tan(phi): (2/pi) int_0^{pi/2} cos(phi)^{2s-1} dphi.
    const double a = 2.0 * s.real() - 1.0;
    const double b = 2.0 * s.imag();
    auto logcos = [](double x, double xc) { return xc > 0 ? std::log(std::sin(xc)) : std::log(std::cos(x)); };
    auto re = [&](double x, double xc) {
        const double l = logcos(x, xc);
        return std::exp(a * l) * std::cos(b * l);
    };
    auto im = [&](double x, double xc) {
        const double l = logcos(x, xc);
        return std::exp(a * l) * std::sin(b * l);
    };
    boost::math::quadrature::tanh_sinh<double> ts(15);
    const double tol = 1e-13;
    const double vr = ts.integrate(re, 0.0, kPi / 2, tol);
    const double vi = ts.integrate(im, 0.0, kPi / 2, tol);
    return (2.0 / kPi) * cplx(vr, vi);
}

double plancherel_shape(double lambda, const RootDatum& r)
{
    const auto c = plancherel_case(r);
    const double l2 = lambda * lambda;
    const double h2 = l2 / 4.0;
    double p = 1.0;
    switch (c) {
    case PlancherelCase::A:
        p = lambda;
        for (int k = 1; k <= r.mAlpha / 2 - 1; ++k) p *= l2 + k * k;
        break;
    case PlancherelCase::B:
        for (int k = 0; k <= (r.mAlpha - 3) / 2; ++k) p *= l2 + (k + 0.5) * (k + 0.5);
        break;
    case PlancherelCase::C:
        for (int k = 0; k <= r.mAlpha / 4 - 1; ++k) p *= h2 + (k + 0.5) * (k + 0.5);
        for (int l = 0; l <= r.mAlpha / 4 + (r.m2Alpha - 1) / 2 - 1; ++l) p *= h2 + (l + 0.5) * (l + 0.5);
        break;
    case PlancherelCase::D:
        for (int k = 0; k <= (r.mAlpha - 2) / 4; ++k) p *= h2 + k * k;
        for (int l = 1; l <= (r.mAlpha + 2 * r.m2Alpha) / 4 - 1; ++l) p *= h2 + l * l;
        break;
    }
    return lambda_q(lambda, c) * p;
}

double plancherel_constant(const RootDatum& roots)
{
    const cplx cc = c_function(1.0, roots) * c_function(-1.0, roots);
    return 1.0 / (cc.real() * plancherel_shape(1.0, roots));
}

double plancherel_density(double lambda, const RootDatum& roots)
{
    if (!std::isfinite(lambda)) throw DomainError("plancherel_density: lambda must be real and finite");
    return plancherel_constant(roots) * plancherel_shape(lambda, roots);
}

cplx e_function(SpectralParam lambda, const RootDatum& r)
{
    require_rank_one(r);
    const cplx h = 0.5 * I * lambda.lambda;
    return gamma(r.mAlpha / 4.0 + 0.5 + h) * gamma(r.mAlpha / 4.0 + r.m2Alpha / 2.0 + h);
}

cplx laplace_eigenvalue(SpectralParam lambda, const RootDatum& roots)
{
    return -(lambda.lambda * lambda.lambda + roots.rho * roots.rho);
}

}  // namespace psd
