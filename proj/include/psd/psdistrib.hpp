#pragma once

#include "psd/geometry.hpp"
#include "psd/quadrature.hpp"
#include "psd/spectral.hpp"
#include "psd/transforms.hpp"

#include <array>
#include <functional>
#include <vector>

namespace psd {

// Order-zero symbol a(z, b), compactly supported in z on the ball of radius
// supportRadius around center.
struct SymbolFn {
    std::function<cplx(DiskPoint, BoundaryPoint)> evaluate;
    double supportRadius = 0.0;
    DiskPoint center{};

    // evaluate, forced to 0 off the support ball
    cplx operator()(DiskPoint z, BoundaryPoint b) const;
};

SymbolFn zero_symbol();

// bump_profile(d(center, z), radius) * angular(b); angular defaults to 1.
SymbolFn bump_symbol(DiskPoint center, double radius, std::function<cplx(BoundaryPoint)> angular = {});

// exp(-d(center, z)^2 / sigma^2), cut off where it falls below 1e-17.
SymbolFn gaussian_symbol(DiskPoint center, double sigma, std::function<cplx(BoundaryPoint)> angular = {});

// 1 on d <= r1, smooth monotone fall to 0 at d = r2.
double plateau_profile(double d, double r1, double r2);
SymbolFn plateau_symbol(DiskPoint center, double r1, double r2);

// (a o g)(z, b) = a(g.z, g.b)
SymbolFn compose(const SymbolFn& a, const GroupElement& g);

// (a o G^{-t})(z, b) = a(geodesic_flow((z, b), -t)); support grows by |t|.
SymbolFn flow_translate(const SymbolFn& a, double t);

struct PSData {
    SpectralParam lambda{0.0};
    SpectralParam mu{0.0};
    BoundaryMeasure Tphi;
    BoundaryMeasure Tpsi;
};

struct PSGrids {
    LineQuadrature line = line_quadrature(16, 16);  // A- and N-integrals
    int diskRadial = 48;                           // X-integrals (Wigner side)
    int diskAngular = 96;
    double tMax = 60.0;  // cap on |t| for A-truncation
};

// e^{(i lambda + rho) H(g)} e^{(i mu + rho) H(g w)}
cplx intermediate_value(const GroupElement& g, SpectralParam lambda, SpectralParam mu);

// (|b - b2| / 2)^{-2(i lambda + rho)}
cplx d_lambda_closed(BoundaryPoint b, BoundaryPoint b2, SpectralParam lambda);

// Line integrals over the A-orbit g A, with g any frame of the pair.
cplx radon_transform(const SymbolFn& f, BoundaryPoint b, BoundaryPoint b2, const PSGrids& grids);
cplx radon_transform_frame(const SymbolFn& f, const GroupElement& g, const PSGrids& grids);
cplx weighted_radon(const SymbolFn& f, SpectralParam lambda, SpectralParam mu, BoundaryPoint b, BoundaryPoint b2,
                    const PSGrids& grids);
cplx weighted_radon_frame(const SymbolFn& f, SpectralParam lambda, SpectralParam mu, const GroupElement& g,
                          const PSGrids& grids);

// (1 + u^2)^{-(i mu + rho)}
cplx knapp_stein_kernel(double u, SpectralParam mu);

// int_N kernel(u) a(g n_u) du / pi, truncated to the exact u-range where
// a(g n_u) can be nonzero.
cplx knapp_stein(const SymbolFn& a, const GroupElement& g, SpectralParam mu, const PSGrids& grids);

cplx ps_distribution(const SymbolFn& a, const PSData& data, const PSGrids& grids);

// Disk integral with dz = area / pi.
cplx wigner_distribution(const SymbolFn& a, const PSData& data, const PSGrids& grids);

// R_{lambda,mu}(L_mu a)(b, b2) by nested A- and N-quadrature.
cplx radon_of_intertwined(const SymbolFn& a, SpectralParam lambda, SpectralParam mu, BoundaryPoint b, BoundaryPoint b2,
                          const PSGrids& grids);

struct IntertwineRecord {
    cplx lhs;
    cplx rhs;
    double residual;
};

IntertwineRecord intertwine_check(const SymbolFn& a, const PSData& data, const PSGrids& grids);

// Grids for refinement level l (l = 0 coarsest); each level halves the steps.
PSGrids refined_grids(int level);

std::vector<double> intertwine_refinement(const SymbolFn& a, const PSData& data, int levels);

struct RatioRecord {
    cplx ratio;
    cplx expected;
};

RatioRecord a_translation_check(const SymbolFn& a, const PSData& data, double t, const PSGrids& grids);

// PS divided by the diagonal value (lambda = mu, Tpsi = Tphi) of a plateau
// symbol of radius refRadius around the origin.
cplx normalized_ps(const SymbolFn& a, const PSData& data, const PSGrids& grids, double refRadius = 2.0);

// Op(a) u through the Fourier transform of u; throws GridError when the
// a = 1 self-test at the peak of u misses 1e-3 (absolute, for |u| <= 1).
DiskFunction op_quantize(const SymbolFn& a, const SampledFunctionX& u, const FourierConfig& cfg);

// Symbol law on a plane wave, no quadrature: z -> a(z, b) e_{lambda,b}(z).
DiskFunction op_plane_wave(const SymbolFn& a, SpectralParam lambda, BoundaryPoint b);

// Symbol a(z, mu, b) for the Kohn-Nirenberg map.
struct KNSymbol {
    std::function<cplx(DiskPoint, double, BoundaryPoint)> evaluate;
    double supportRadius = 0.0;
    DiskPoint center{};
    bool spectralIndependent = true;  // a does not depend on mu
};

KNSymbol kn_from_symbol(const SymbolFn& a);
KNSymbol compose(const KNSymbol& a, const GroupElement& g);

struct KNGrids {
    double Lambda = 16.0;
    int nLambda = 160;
    int nB = 96;
    int diskRadial = 60;
    int diskAngular = 96;
    LineQuadrature line = line_quadrature(6, 10);
    double maxNodes = 4e9;  // cost guard on (space nodes) x nLambda x nB
};

cplx kohn_nirenberg_U(const KNSymbol& a, DiskPoint z, double lambda, BoundaryPoint b, const KNGrids& grids);
cplx kohn_nirenberg_U_convolution(const KNSymbol& a, DiskPoint z, double lambda, BoundaryPoint b, const KNGrids& grids);

// psi(mu, u, t, theta) = mu t - H(n_u a_t k_theta)
double kn_phase(double mu, double u, double t, double theta);
std::array<double, 4> kn_phase_gradient(double mu, double u, double t, double theta, double h = 1e-5);

}  // namespace psd
