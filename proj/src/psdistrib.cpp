#include "psd/psdistrib.hpp"

#include "psd/errors.hpp"
#include "psd/parallel.hpp"

#include <cmath>
#include <numbers>

namespace psd {

namespace {

constexpr double kRho = 0.5;
constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr double kFloor = 1e-12;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;
};

// Integrate body over [lo, hi] with the reference rule mapped onto it.
template <class Body>
cplx integrate(const LineQuadrature& q, Interval I, Body&& body)
{
    if (I.empty || !(I.hi > I.lo)) return {};
    const double mid = 0.5 * (I.lo + I.hi), half = 0.5 * (I.hi - I.lo);
    cplx s{};
    for (std::size_t k = 0; k < q.nodes.size(); ++k) s += q.weights[k] * body(mid + half * q.nodes[k]);
    return half * s;
}

// Position of the support centre seen from frame g, in upper half plane
// coordinates (g^{-1}.c).
cplx frame_center(const GroupElement& g, DiskPoint c) { return to_uhp(mobius(g.inverse(), c.z())); }

// Disk point g.(e^t (u + i)).
cplx frame_point(const GroupElement& g, double t, double u)
{
    const double et = std::exp(t);
    return mobius(g, from_uhp(cplx(et * u, et)));
}

// t with e^t i inside the UHP ball B(p, R).
Interval geodesic_interval(cplx p, double R)
{
    const double xp = p.real(), yp = p.imag();
    const double half = yp * std::cosh(R);
    const double disc = half * half - (xp * xp + yp * yp);
    if (disc <= 0.0) return {};
    const double r = std::sqrt(disc);
    return {std::log(half - r), std::log(half + r), false};
}

// u with e^t (u + i) inside B(p, R).
Interval horocycle_interval(cplx p, double R, double t)
{
    const double xp = p.real(), yp = p.imag(), et = std::exp(t);
    const double dy = et - yp * std::cosh(R);
    const double disc = yp * yp * std::sinh(R) * std::sinh(R) - dy * dy;
    if (disc <= 0.0) return {};
    const double r = std::sqrt(disc);
    return {(xp - r) / et, (xp + r) / et, false};
}

void check_truncation(const Interval& I, const GroupElement& g, const SymbolFn& f, const PSGrids& grids)
{
    if (I.empty) return;
    const double bound = f.supportRadius + hyperbolic_distance(act(g, origin).z(), f.center.z()) + 2.0;
    const double tMax = std::min(bound, grids.tMax);
    if (std::abs(I.lo) > tMax || std::abs(I.hi) > tMax)
        throw InsufficientTruncation("A-integral support exceeds the truncation window");
}

cplx expo(SpectralParam l) { return kI * l.lambda + kRho; }

std::vector<std::pair<Atom, Atom>> atom_pairs(const PSData& data, bool skipDiagonal = false)
{
    data.Tphi.validate();
    data.Tpsi.validate();
    if (!skipDiagonal)
        for (const auto& a : data.Tphi.atoms)
            for (const auto& b : data.Tpsi.atoms)
                if (std::abs(a.b.b() - b.b.b()) < 1e-12) throw DomainError("coincident atoms across the two factors");
    std::vector<std::pair<Atom, Atom>> out;
    for (const auto& a : data.Tphi.discretised())
        for (const auto& b : data.Tpsi.discretised()) {
            // diagonal pairs (densities, or the diagonal reference): the
            // geodesic degenerates to a boundary point and misses the
            // compact support
            if (std::abs(a.b.b() - b.b.b()) < 1e-8) continue;
            out.emplace_back(a, b);
        }
    return out;
}

Eigen::Matrix2d m_a(double t) { return (Eigen::Matrix2d() << std::exp(t / 2), 0, 0, std::exp(-t / 2)).finished(); }
Eigen::Matrix2d m_n(double u) { return (Eigen::Matrix2d() << 1, u, 0, 1).finished(); }
Eigen::Matrix2d m_k(double th)
{
    const double c = std::cos(th), s = std::sin(th);
    return (Eigen::Matrix2d() << c, s, -s, c).finished();
}

cplx uhp_act(const Eigen::Matrix2d& g, cplx w) { return (g(0, 0) * w + g(0, 1)) / (g(1, 0) * w + g(1, 1)); }

struct SpectralWeights {
    std::vector<double> grid;
    std::vector<double> coef;  // kappa * d(mu) * density
    bool uniform = false;
};

SpectralWeights spectral_rule(double Lambda, int n)
{
    SpectralWeights s;
    s.grid = midpoint_grid(Lambda, n);
    const auto w = spectral_weights(s.grid);
    for (std::size_t k = 0; k < w.size(); ++k)
        s.coef.push_back(inversion_constant() * w[k] * plancherel_density(s.grid[k], RootDatum{}));
    s.uniform = detail::is_uniform(s.grid);
    return s;
}

}  // namespace

cplx SymbolFn::operator()(DiskPoint z, BoundaryPoint b) const
{
    if (hyperbolic_distance(center.z(), z.z()) > supportRadius) return {};
    return evaluate(z, b);
}

SymbolFn zero_symbol()
{
    return {[](DiskPoint, BoundaryPoint) { return cplx{}; }, 0.0, origin};
}

SymbolFn bump_symbol(DiskPoint center, double radius, std::function<cplx(BoundaryPoint)> angular)
{
    const cplx c = center.z();
    auto eval = [c, radius, angular = std::move(angular)](DiskPoint z, BoundaryPoint b) {
        const double v = bump_profile(hyperbolic_distance(c, z.z()), radius);
        return angular ? v * angular(b) : cplx(v, 0.0);
    };
    return {eval, radius, center};
}

SymbolFn gaussian_symbol(DiskPoint center, double sigma, std::function<cplx(BoundaryPoint)> angular)
{
    const cplx c = center.z();
    auto eval = [c, sigma, angular = std::move(angular)](DiskPoint z, BoundaryPoint b) {
        const double d = hyperbolic_distance(c, z.z()) / sigma;
        const double v = std::exp(-d * d);
        return angular ? v * angular(b) : cplx(v, 0.0);
    };
    return {eval, sigma * std::sqrt(17.0 * std::log(10.0)), center};
}

double plateau_profile(double d, double r1, double r2)
{
    if (d <= r1) return 1.0;
    if (d >= r2) return 0.0;
    const double s = (d - r1) / (r2 - r1);
    const double up = std::exp(-1.0 / s), down = std::exp(-1.0 / (1.0 - s));
    return down / (up + down);
}

SymbolFn plateau_symbol(DiskPoint center, double r1, double r2)
{
    const cplx c = center.z();
    return {[c, r1, r2](DiskPoint z, BoundaryPoint) { return cplx(plateau_profile(hyperbolic_distance(c, z.z()), r1, r2), 0.0); },
            r2, center};
}

SymbolFn compose(const SymbolFn& a, const GroupElement& g)
{
    return {[a, g](DiskPoint z, BoundaryPoint b) { return a(act(g, z), act(g, b)); }, a.supportRadius,
            act(g.inverse(), a.center)};
}

SymbolFn flow_translate(const SymbolFn& a, double t)
{
    return {[a, t](DiskPoint z, BoundaryPoint b) {
                const auto p = geodesic_flow({z, b}, -t);
                return a(p.z, p.b);
            },
            a.supportRadius + std::abs(t), a.center};
}

cplx intermediate_value(const GroupElement& g, SpectralParam lambda, SpectralParam mu)
{
    if (g.tag() != GroupTag::SL2) throw DomainError("intermediate values are implemented for SL2");
    const Eigen::Matrix2d m = g.matrix();
    const Eigen::Matrix2d w = (Eigen::Matrix2d() << 0, 1, -1, 0).finished();
    return std::exp(expo(lambda) * sl2_H(m) + expo(mu) * sl2_H(m * w));
}

cplx d_lambda_closed(BoundaryPoint b, BoundaryPoint b2, SpectralParam lambda)
{
    return std::exp(-2.0 * expo(lambda) * std::log(std::abs(b.b() - b2.b()) / 2.0));
}

namespace {

// int f(g a_t) e^{i shift t} dt over the exact support interval
cplx line_integral(const SymbolFn& f, const GroupElement& g, double shift, const PSGrids& grids)
{
    const Interval I = geodesic_interval(frame_center(g, f.center), f.supportRadius);
    check_truncation(I, g, f, grids);
    const BoundaryPoint b = act(g, BoundaryPoint(0.0));
    return integrate(grids.line, I, [&](double t) { return f(DiskPoint(frame_point(g, t, 0.0)), b) * std::polar(1.0, shift * t); });
}

}  // namespace

cplx radon_transform_frame(const SymbolFn& f, const GroupElement& g, const PSGrids& grids) { return line_integral(f, g, 0.0, grids); }

cplx radon_transform(const SymbolFn& f, BoundaryPoint b, BoundaryPoint b2, const PSGrids& grids)
{
    return radon_transform_frame(f, geodesic_frame(b, b2), grids);
}

cplx weighted_radon_frame(const SymbolFn& f, SpectralParam lambda, SpectralParam mu, const GroupElement& g,
                          const PSGrids& grids)
{
    const cplx diff = lambda.lambda - mu.lambda;
    if (std::abs(diff.imag()) > 0.0) throw DomainError("weighted Radon transform needs real lambda - mu");
    const cplx s = line_integral(f, g, diff.real(), grids);
    return s == cplx{} ? s : intermediate_value(g, lambda, mu) * s;
}

cplx weighted_radon(const SymbolFn& f, SpectralParam lambda, SpectralParam mu, BoundaryPoint b, BoundaryPoint b2,
                    const PSGrids& grids)
{
    return weighted_radon_frame(f, lambda, mu, geodesic_frame(b, b2), grids);
}

cplx knapp_stein_kernel(double u, SpectralParam mu) { return std::exp(-expo(mu) * std::log1p(u * u)); }

cplx knapp_stein(const SymbolFn& a, const GroupElement& g, SpectralParam mu, const PSGrids& grids)
{
    if (!(a.supportRadius < 1e3)) throw DomainError("symbol support is unbounded");
    const Interval I = horocycle_interval(frame_center(g, a.center), a.supportRadius, 0.0);
    if (I.empty) return {};
    const BoundaryPoint b = act(g, BoundaryPoint(0.0));
    // u = sinh v keeps the kernel phase mu ln(1 + u^2) = 2 mu ln cosh v
    // uniformly resolved on long ranges
    const Interval V{std::asinh(I.lo), std::asinh(I.hi), false};
    return integrate(grids.line, V, [&](double v) {
               const double u = std::sinh(v);
               return std::cosh(v) * knapp_stein_kernel(u, mu) * a(DiskPoint(frame_point(g, 0.0, u)), b);
           }) /
           kPi;
}

namespace {

cplx ps_sum(const SymbolFn& a, const PSData& data, const PSGrids& grids, bool skipDiagonal)
{
    const auto pairs = atom_pairs(data, skipDiagonal);
    return parallel_sum<cplx>(
        pairs.size(),
        [&](std::size_t i) {
            const auto& [p, q] = pairs[i];
            return p.weight * q.weight * weighted_radon(a, data.lambda, data.mu, p.b, q.b, grids);
        },
        1);
}

}  // namespace

cplx ps_distribution(const SymbolFn& a, const PSData& data, const PSGrids& grids) { return ps_sum(a, data, grids, false); }

cplx wigner_distribution(const SymbolFn& a, const PSData& data, const PSGrids& grids)
{
    atom_pairs(data);
    if (a.supportRadius <= 0.0) return {};
    const auto q = centered(disk_quadrature(a.supportRadius, grids.diskRadial, grids.diskAngular, RadialRule::GaussLegendre), a.center);
    const auto phi = data.Tphi.discretised(), psi = data.Tpsi.discretised();
    const cplx el = expo(data.lambda), em = expo(data.mu);
    return parallel_sum<cplx>(q.nodes.size(), [&](std::size_t i) {
               const DiskPoint z = q.nodes[i];
               cplx A{}, B{};
               for (const auto& p : phi) A += p.weight * a(z, p.b) * std::exp(el * horocycle_bracket(z, p.b));
               if (A == cplx{}) return cplx{};
               for (const auto& p : psi) B += p.weight * std::exp(em * horocycle_bracket(z, p.b));
               return q.weights[i] * A * B;
           }) /
           kPi;
}

cplx radon_of_intertwined(const SymbolFn& a, SpectralParam lambda, SpectralParam mu, BoundaryPoint b, BoundaryPoint b2,
                          const PSGrids& grids)
{
    const GroupElement g = geodesic_frame(b, b2);
    const cplx p = frame_center(g, a.center);
    const double R = a.supportRadius;
    const Interval T{std::log(p.imag()) - R, std::log(p.imag()) + R, false};
    check_truncation(T, g, a, grids);
    const BoundaryPoint gb = act(g, BoundaryPoint(0.0));
    const cplx shift = kI * (lambda.lambda - mu.lambda);
    const cplx s = integrate(grids.line, T, [&](double t) {
        const cplx inner = integrate(grids.line, horocycle_interval(p, R, t), [&](double u) {
            return knapp_stein_kernel(u, mu) * a(DiskPoint(frame_point(g, t, u)), gb);
        });
        return std::exp(shift * t) * inner;
    });
    return intermediate_value(g, lambda, mu) * s / kPi;
}

IntertwineRecord intertwine_check(const SymbolFn& a, const PSData& data, const PSGrids& grids)
{
    const cplx lhs = wigner_distribution(a, data, grids);
    const auto pairs = atom_pairs(data);
    const cplx rhs = parallel_sum<cplx>(
        pairs.size(),
        [&](std::size_t i) {
            const auto& [p, q] = pairs[i];
            return p.weight * q.weight * radon_of_intertwined(a, data.lambda, data.mu, p.b, q.b, grids);
        },
        1);
    return {lhs, rhs, std::abs(lhs - rhs) / std::max(std::abs(lhs), kFloor)};
}

PSGrids refined_grids(int level)
{
    PSGrids g;
    g.line = line_quadrature(1 << level, 4);
    g.diskRadial = 4 << level;
    g.diskAngular = 8 << level;
    return g;
}

std::vector<double> intertwine_refinement(const SymbolFn& a, const PSData& data, int levels)
{
    std::vector<double> out;
    for (int l = 0; l < levels; ++l) out.push_back(intertwine_check(a, data, refined_grids(l)).residual);
    return out;
}

RatioRecord a_translation_check(const SymbolFn& a, const PSData& data, double t, const PSGrids& grids)
{
    const cplx base = ps_distribution(a, data, grids);
    if (std::abs(base) < kFloor) throw DomainError("PS value below floor");
    const cplx moved = ps_distribution(flow_translate(a, t), data, grids);
    return {moved / base, std::exp(kI * (data.lambda.lambda - data.mu.lambda) * t)};
}

cplx normalized_ps(const SymbolFn& a, const PSData& data, const PSGrids& grids, double refRadius)
{
    const PSData diag{data.lambda, data.lambda, data.Tphi, data.Tphi};
    const cplx ref = ps_sum(plateau_symbol(origin, 0.5 * refRadius, refRadius), diag, grids, true);
    if (std::abs(ref) < kFloor) throw DomainError("reference PS value below floor");
    return ps_distribution(a, data, grids) / ref;
}

namespace {

DiskFunction symbol_inverse(const FourierData& F, std::function<cplx(DiskPoint, BoundaryPoint)> a)
{
    const auto w = spectral_weights(F.lambdaGrid);
    const std::size_t nL = F.nLambda(), nB = F.nB();
    auto coeff = std::make_shared<std::vector<cplx>>(nL * nB);
    for (std::size_t k = 0; k < nL; ++k) {
        const double m = inversion_constant() * w[k] * plancherel_density(F.lambdaGrid[k], RootDatum{});
        for (std::size_t j = 0; j < nB; ++j) (*coeff)[j * nL + k] = m * F.at(k, j) * F.bGrid.weights[j];
    }
    auto grid = std::make_shared<std::vector<double>>(F.lambdaGrid);
    auto nodes = std::make_shared<std::vector<BoundaryPoint>>(F.bGrid.nodes);
    return [coeff, grid, nodes, nL, nB, a = std::move(a)](DiskPoint z) {
        cplx total{};
        for (std::size_t j = 0; j < nB; ++j) {
            const cplx av = a(z, (*nodes)[j]);
            if (av == cplx{}) continue;
            const double s = horocycle_bracket(z, (*nodes)[j]);
            cplx acc{};
            for (std::size_t k = 0; k < nL; ++k) acc += (*coeff)[j * nL + k] * std::polar(1.0, (*grid)[k] * s);
            total += av * acc * std::exp(kRho * s);
        }
        return total;
    };
}

}  // namespace

DiskFunction op_quantize(const SymbolFn& a, const SampledFunctionX& u, const FourierConfig& cfg)
{
    const auto F = helgason_ft(u, midpoint_grid(cfg.Lambda, cfg.nLambda), circle_quadrature(cfg.nB));
    std::size_t peak = 0;
    for (std::size_t i = 0; i < u.values.size(); ++i)
        if (std::abs(u.values[i]) > std::abs(u.values[peak])) peak = i;
    const auto id = symbol_inverse(F, [](DiskPoint, BoundaryPoint) { return cplx(1.0, 0.0); });
    const DiskPoint zp = u.grid->nodes[peak];
    if (std::abs(id(zp) - u.values[peak]) > 1e-3 * std::max(std::abs(u.values[peak]), 1.0))
        throw GridError("quantization grid underresolved (a = 1 self-test failed)");
    return symbol_inverse(F, [a](DiskPoint z, BoundaryPoint b) { return a.evaluate(z, b); });
}

DiskFunction op_plane_wave(const SymbolFn& a, SpectralParam lambda, BoundaryPoint b)
{
    const cplx e = expo(lambda);
    return [a, e, b](DiskPoint z) { return a.evaluate(z, b) * std::exp(e * horocycle_bracket(z, b)); };
}

KNSymbol kn_from_symbol(const SymbolFn& a)
{
    return {[a](DiskPoint z, double, BoundaryPoint b) { return a(z, b); }, a.supportRadius, a.center, true};
}

KNSymbol compose(const KNSymbol& a, const GroupElement& g)
{
    return {[a, g](DiskPoint z, double mu, BoundaryPoint b) { return a.evaluate(act(g, z), mu, act(g, b)); },
            a.supportRadius, act(g.inverse(), a.center), a.spectralIndependent};
}

cplx kohn_nirenberg_U(const KNSymbol& a, DiskPoint z, double lambda, BoundaryPoint b, const KNGrids& grids)
{
    const double cost = double(grids.diskRadial) * grids.diskAngular * grids.nLambda * grids.nB;
    if (cost > grids.maxNodes) throw GridError("Kohn-Nirenberg cost guard exceeded");
    const auto q = centered(disk_quadrature(a.supportRadius, grids.diskRadial, grids.diskAngular, RadialRule::GaussLegendre), a.center);
    const auto spec = spectral_rule(grids.Lambda, grids.nLambda);
    const auto bp = circle_quadrature(grids.nB);
    const cplx el = expo(lambda);
    const std::size_t nL = spec.grid.size();

    std::vector<cplx> ew(q.nodes.size());
    for (std::size_t i = 0; i < q.nodes.size(); ++i) ew[i] = q.weights[i] * std::exp(el * horocycle_bracket(q.nodes[i], b));

    const cplx total = parallel_sum<cplx>(
        bp.nodes.size(),
        [&](std::size_t j) {
            const BoundaryPoint b2 = bp.nodes[j];
            std::vector<double> re(nL), im(nL);
            if (a.spectralIndependent) {
                std::vector<cplx> base;
                std::vector<double> s;
                for (std::size_t i = 0; i < q.nodes.size(); ++i) {
                    const cplx av = a.evaluate(q.nodes[i], 0.0, b2);
                    if (av == cplx{}) continue;
                    const double si = horocycle_bracket(q.nodes[i], b2);
                    base.push_back(ew[i] * av * std::exp(kRho * si));
                    s.push_back(si);
                }
                detail::accumulate_phases(re, im, spec.grid, spec.uniform, base, s);
            } else {
                for (std::size_t i = 0; i < q.nodes.size(); ++i) {
                    const double si = horocycle_bracket(q.nodes[i], b2);
                    for (std::size_t k = 0; k < nL; ++k) {
                        const cplx v = ew[i] * a.evaluate(q.nodes[i], spec.grid[k], b2) *
                                       std::exp(cplx(kRho, -spec.grid[k]) * si);
                        re[k] += v.real();
                        im[k] += v.imag();
                    }
                }
            }
            const double sz = horocycle_bracket(z, b2);
            cplx acc{};
            for (std::size_t k = 0; k < nL; ++k)
                acc += spec.coef[k] * cplx(re[k], im[k]) * std::exp(cplx(kRho, spec.grid[k]) * sz);
            return bp.weights[j] * acc;
        },
        1);
    return std::exp(-el * horocycle_bracket(z, b)) * total;
}

cplx kohn_nirenberg_U_convolution(const KNSymbol& a, DiskPoint z, double lambda, BoundaryPoint b, const KNGrids& grids)
{
    const double nLine = double(grids.line.nodes.size());
    const double cost = nLine * nLine * grids.nLambda * grids.nB;
    if (cost > grids.maxNodes) throw GridError("Kohn-Nirenberg cost guard exceeded");
    const auto spec = spectral_rule(grids.Lambda, grids.nLambda);
    const std::size_t nL = spec.grid.size();
    const Eigen::Matrix2d hz = tangent_frame(z, b).matrix();
    const Eigen::Matrix2d hzInv = (Eigen::Matrix2d() << hz(1, 1), -hz(0, 1), -hz(1, 0), hz(0, 0)).finished();
    const cplx el = expo(lambda);
    const double R = a.supportRadius;
    const cplx c = to_uhp(a.center.z());

    const cplx total = parallel_sum<cplx>(
        std::size_t(grids.nB),
        [&](std::size_t j) {
            const double th = kPi * double(j) / grids.nB;
            const Eigen::Matrix2d k = m_k(th);
            const Eigen::Matrix2d kInv = m_k(-th);
            const cplx p = uhp_act(kInv, c);
            const BoundaryPoint b2 = BoundaryPoint::from_complex(k(1, 0) == 0.0 ? cplx(1.0, 0.0) : from_uhp(k(0, 0) / k(1, 0)));
            std::vector<cplx> base;
            std::vector<double> s;
            std::vector<double> re(nL), im(nL);
            const Interval T{std::log(p.imag()) - R, std::log(p.imag()) + R, false};
            const double tMid = 0.5 * (T.lo + T.hi), tHalf = 0.5 * (T.hi - T.lo);
            for (std::size_t it = 0; it < grids.line.nodes.size(); ++it) {
                const double t = tMid + tHalf * grids.line.nodes[it];
                const Interval U = horocycle_interval(p, R, t);
                if (U.empty) continue;
                const double uMid = 0.5 * (U.lo + U.hi), uHalf = 0.5 * (U.hi - U.lo);
                const Eigen::Matrix2d ka = k * m_a(t);
                for (std::size_t iu = 0; iu < grids.line.nodes.size(); ++iu) {
                    const double u = uMid + uHalf * grids.line.nodes[iu];
                    const Eigen::Matrix2d g = ka * m_n(u);
                    const Eigen::Matrix2d gInv = (Eigen::Matrix2d() << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0)).finished();
                    const DiskPoint w(from_uhp(uhp_act(g, cplx(0.0, 1.0))));
                    const double H1 = sl2_H(hzInv * g);
                    const double H2 = sl2_H(gInv * hz);
                    const double wt = grids.line.weights[it] * tHalf * grids.line.weights[iu] * uHalf * std::exp(2 * kRho * t);
                    if (a.spectralIndependent) {
                        const cplx av = a.evaluate(w, 0.0, b2);
                        if (av == cplx{}) continue;
                        base.push_back(wt * av * std::exp(-kRho * H1 - el * H2));
                        s.push_back(H1);
                    } else {
                        for (std::size_t kk = 0; kk < nL; ++kk) {
                            const cplx v = wt * a.evaluate(w, spec.grid[kk], b2) *
                                           std::exp(-cplx(kRho, spec.grid[kk]) * H1 - el * H2);
                            re[kk] += v.real();
                            im[kk] += v.imag();
                        }
                    }
                }
            }
            if (a.spectralIndependent) detail::accumulate_phases(re, im, spec.grid, spec.uniform, base, s);
            cplx acc{};
            for (std::size_t kk = 0; kk < nL; ++kk) acc += spec.coef[kk] * cplx(re[kk], im[kk]);
            return acc / double(grids.nB);
        },
        1);
    return total;
}

double kn_phase(double mu, double u, double t, double theta)
{
    return mu * t - sl2_H(m_n(u) * m_a(t) * m_k(theta));
}

std::array<double, 4> kn_phase_gradient(double mu, double u, double t, double theta, double h)
{
    return {(kn_phase(mu + h, u, t, theta) - kn_phase(mu - h, u, t, theta)) / (2 * h),
            (kn_phase(mu, u + h, t, theta) - kn_phase(mu, u - h, t, theta)) / (2 * h),
            (kn_phase(mu, u, t + h, theta) - kn_phase(mu, u, t - h, theta)) / (2 * h),
            (kn_phase(mu, u, t, theta + h) - kn_phase(mu, u, t, theta - h)) / (2 * h)};
}

}  // namespace psd
