#include "psd/geometry.hpp"

#include "psd/errors.hpp"

#include <cmath>
#include <numbers>

namespace psd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx I{0.0, 1.0};

void require_sl2(const GroupElement& g)
{
    if (g.tag() != GroupTag::SL2)
        throw DomainError("disk action needs an SL2 element");
}

}  // namespace

DiskPoint::DiskPoint(cplx z) : z_(z)
{
    if (!(std::abs(z) < 1.0 - 1e-12))
        throw DomainError("disk point must satisfy |z| < 1 - 1e-12");
}

BoundaryPoint::BoundaryPoint(double theta)
{
    if (!std::isfinite(theta))
        throw DomainError("boundary angle must be finite");
    theta = std::fmod(theta, kTwoPi);
    if (theta < 0) theta += kTwoPi;
    if (theta >= kTwoPi) theta = 0.0;
    theta_ = theta;
}

BoundaryPoint BoundaryPoint::from_complex(cplx b) { return BoundaryPoint(std::arg(b)); }

cplx to_uhp(cplx z) { return I * (1.0 + z) / (1.0 - z); }

cplx from_uhp(cplx w) { return (w - I) / (w + I); }

cplx mobius(const GroupElement& g, cplx z)
{
    require_sl2(g);
    const auto& m = g.matrix();
    const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const cplx m11 = a * I - b + c + d * I;
    const cplx m12 = a * I + b + c - d * I;
    const cplx m21 = a * I - b - c - d * I;
    const cplx m22 = a * I + b - c + d * I;
    return (m11 * z + m12) / (m21 * z + m22);
}

DiskPoint act(const GroupElement& g, DiskPoint z) { return DiskPoint(mobius(g, z.z())); }

BoundaryPoint act(const GroupElement& g, BoundaryPoint b) { return BoundaryPoint::from_complex(mobius(g, b.b())); }

double hyperbolic_distance(cplx z, cplx w)
{
    return 2.0 * std::atanh(std::abs(z - w) / std::abs(1.0 - std::conj(z) * w));
}

double horocycle_bracket(cplx z, cplx b) { return std::log((1.0 - std::norm(z)) / std::norm(z - b)); }

double horocycle_bracket(DiskPoint z, BoundaryPoint b) { return horocycle_bracket(z.z(), b.b()); }

double horocycle_bracket_matrix(DiskPoint z, BoundaryPoint b)
{
    const double r = std::abs(z.z());
    const double phi = r > 0 ? std::arg(z.z()) : 0.0;
    const auto g = sl2_k(phi / 2) * sl2_a(2.0 * std::atanh(r));
    const auto k = sl2_k(b.theta() / 2);
    return -iwasawa_H(g.inverse() * k)(0);
}

BoundaryImage boundary_action(const GroupElement& g, BoundaryPoint b)
{
    require_sl2(g);
    const BoundaryPoint gb = act(g, b);
    const cplx go = mobius(g, 0.0);
    return {gb, std::exp(-horocycle_bracket(go, gb.b()))};
}

GroupElement geodesic_frame(BoundaryPoint b, BoundaryPoint b2)
{
    if (std::abs(b.b() - b2.b()) < 1e-8)
        throw DomainError("geodesic_frame: boundary points closer than 1e-8");
    const double beta = std::arg(b2.b() * std::conj(b.b()));
    const double x = -std::cos(beta / 2) / std::sin(beta / 2);
    return sl2_k(b.theta() / 2) * sl2_n(x) * sl2_a(0.5 * std::log1p(x * x));
}

GroupElement tangent_frame(DiskPoint z, BoundaryPoint b)
{
    const cplx zr = z.z() * std::polar(1.0, -b.theta());
    const cplx w = to_uhp(zr);
    return sl2_k(b.theta() / 2) * sl2_n(w.real()) * sl2_a(std::log(w.imag()));
}

GroupElement translation_to(DiskPoint z)
{
    const double r = std::abs(z.z());
    const double phi = r > 0 ? std::arg(z.z()) : 0.0;
    return sl2_k(phi / 2) * sl2_a(2.0 * std::atanh(r)) * sl2_k(-phi / 2);
}

TangentPoint geodesic_flow(const TangentPoint& p, double t)
{
    const cplx rot = std::polar(1.0, p.b.theta());
    const cplx w = to_uhp(p.z.z() / rot);
    const cplx moved{w.real(), w.imag() * std::exp(t)};
    return {DiskPoint(rot * from_uhp(moved)), p.b};
}

cplx hyperbolic_laplacian_fd(const std::function<cplx(DiskPoint)>& f, DiskPoint z, double h)
{
    if (!(h > 0) || h > 1e-2)
        throw DomainError("hyperbolic_laplacian_fd: step must lie in (0, 1e-2]");
    if (std::abs(z.z()) + 2.0 * h >= 1.0)
        throw DomainError("hyperbolic_laplacian_fd: stencil leaves the disk");
    const cplx c = z.z();
    const cplx f0 = f(z);
    const cplx sum = f(DiskPoint(c + h)) + f(DiskPoint(c - h)) + f(DiskPoint(c + I * h)) + f(DiskPoint(c - I * h));
    const double conf = (1.0 - std::norm(c)) * (1.0 - std::norm(c)) / 4.0;
    return conf * (sum - 4.0 * f0) / (h * h);
}

}  // namespace psd
