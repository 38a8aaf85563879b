#pragma once

#include "psd/lie.hpp"

#include <complex>
#include <functional>

namespace psd {

using cplx = std::complex<double>;

// Point of the open unit disk, |z| < 1 - 1e-12.
class DiskPoint {
public:
    DiskPoint() = default;
    explicit DiskPoint(cplx z);
    cplx z() const { return z_; }

private:
    cplx z_{0.0, 0.0};
};

// Point e^{i theta} of the boundary circle, theta kept in [0, 2 pi).
class BoundaryPoint {
public:
    BoundaryPoint() = default;
    explicit BoundaryPoint(double theta);
    static BoundaryPoint from_complex(cplx b);
    double theta() const { return theta_; }
    cplx b() const { return std::polar(1.0, theta_); }

private:
    double theta_ = 0.0;
};

struct TangentPoint {
    DiskPoint z;
    BoundaryPoint b;
};

inline const DiskPoint origin{};

// Cayley transform between the upper half plane and the disk (i -> 0, oo -> 1).
cplx to_uhp(cplx z);
cplx from_uhp(cplx w);

// Disk action of an SL2 element (Cayley-conjugated Moebius map); valid on the
// closed disk.
cplx mobius(const GroupElement& g, cplx z);
DiskPoint act(const GroupElement& g, DiskPoint z);
BoundaryPoint act(const GroupElement& g, BoundaryPoint b);

double hyperbolic_distance(cplx z, cplx w);

// <z,b> = log((1-|z|^2)/|z-b|^2).
double horocycle_bracket(DiskPoint z, BoundaryPoint b);
double horocycle_bracket(cplx z, cplx b);

// -H(g^{-1} k) with g.o = z and k.M = b, through SL2 Iwasawa projections.
double horocycle_bracket_matrix(DiskPoint z, BoundaryPoint b);

struct BoundaryImage {
    BoundaryPoint gb;
    double jacobian;
};

BoundaryImage boundary_action(const GroupElement& g, BoundaryPoint b);

// Element g with g.(1, -1) = (b, b2) and g.o the foot of the perpendicular
// from o to the geodesic. Rejects |b - b2| < 1e-8.
GroupElement geodesic_frame(BoundaryPoint b, BoundaryPoint b2);

// Element g = k n a with g.(o, 1) = (z, b).
GroupElement tangent_frame(DiskPoint z, BoundaryPoint b);

// Hyperbolic translation along the diameter through z, taking o to z.
GroupElement translation_to(DiskPoint z);

TangentPoint geodesic_flow(const TangentPoint& p, double t);

// Second-order 5-point evaluation of ((1-|z|^2)^2/4)(d_xx + d_yy) f.
cplx hyperbolic_laplacian_fd(const std::function<cplx(DiskPoint)>& f, DiskPoint z, double h);

}  // namespace psd
