#include "psd/verify.hpp"

#include "psd/errors.hpp"
#include "psd/gamma.hpp"
#include "psd/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace psd::verify {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRho = 0.5;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void add(Report& r, const SuiteConfig& cfg, std::string name, double expected, double observed, double residual,
         double tol, std::string source)
{
    if (auto it = cfg.tolerances.find(name); it != cfg.tolerances.end()) tol = it->second;
    const bool pass = std::isfinite(residual) && residual <= tol;
    r.checks.push_back({std::move(name), expected, observed, residual, tol, pass, std::move(source)});
}

std::mt19937_64 stream(const SuiteConfig& cfg, std::uint64_t offset) { return std::mt19937_64(cfg.seed + offset); }

Mat random_sl(std::mt19937_64& gen, int n, double spread)
{
    std::normal_distribution<double> nd(0.0, spread);
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = nd(gen);
    double det = m.determinant();
    if (det < 0) {
        m.row(0) *= -1.0;
        det = -det;
    }
    return m / std::pow(det, 1.0 / n);
}

BoundaryPoint random_boundary(std::mt19937_64& gen) { return BoundaryPoint(std::uniform_real_distribution<double>(0.0, 2 * kPi)(gen)); }

DiskPoint random_disk(std::mt19937_64& gen, double rMax)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return DiskPoint(std::polar(rMax * std::sqrt(u(gen)), 2 * kPi * u(gen)));
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-12); }

// ---- criteria -------------------------------------------------------------

void c1_decompositions(Report& r, const SuiteConfig& cfg)
{
    auto gen = stream(cfg, 1);
    for (auto [tag, n, label] : {std::tuple{GroupTag::SL2, 2, "sl2"}, std::tuple{GroupTag::SL3, 3, "sl3"}}) {
        double kan = 0.0, nak = 0.0, kak = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const GroupElement g(random_sl(gen, n, 1.0), tag);
            const Mat& m = g.matrix();
            const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
            const auto f = iwasawa_kan(g);
            kan = std::max(kan, (f.k * a_matrix(tag, f.aLog, n) * f.n - m).cwiseAbs().maxCoeff() / scale);
            const auto h = iwasawa_nak(g);
            nak = std::max(nak, (h.n * a_matrix(tag, h.aLog, n) * h.k - m).cwiseAbs().maxCoeff() / scale);
            const auto c = cartan_kak(g);
            kak = std::max(kak, (c.k1 * c.aLog.array().exp().matrix().asDiagonal() * c.k2 - m).cwiseAbs().maxCoeff() / scale);
        }
        const std::string l = label;
        add(r, cfg, "kan_roundtrip_" + l, 0.0, kan, kan, 1e-10, "Iwasawa decomposition G = KAN");
        add(r, cfg, "nak_roundtrip_" + l, 0.0, nak, nak, 1e-10, "Iwasawa decomposition G = NAK");
        add(r, cfg, "kak_roundtrip_" + l, 0.0, kak, kak, 1e-10, "Cartan decomposition G = KAK");
    }
}

void c2_kernel(Report& r, const SuiteConfig& cfg)
{
    const GroupElement w(Mat{{0.0, 1.0}, {-1.0, 0.0}}, GroupTag::SL2);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double u = -5.0 + 10.0 * i / 200.0;
        const double H = iwasawa_H(sl2_n(-u) * w)(0);
        worst = std::max(worst, std::abs(H - std::log1p(u * u)));
    }
    add(r, cfg, "hnw_kernel_sl2", 0.0, worst, worst, 1e-10, "H(n_u^{-1} w) = ln(1 + u^2)");
}

void c3_counterexample(Report& r, const SuiteConfig& cfg)
{
    Vec p(3);
    p << 1.0, 1.0, 1.0;
    const auto rec = check_Hnw_symmetry(GroupTag::SL3, p);
    const double s = 0.5 * std::log(3.0), sp = 0.5 * std::log(2.0), gap = 0.5 * std::log(1.5);
    add(r, cfg, "sl3_s", s, rec.s, std::abs(rec.s - s), 1e-10, "SL3 projections at d = e = f = 1");
    add(r, cfg, "sl3_s_prime", sp, rec.sPrime, std::abs(rec.sPrime - sp), 1e-10, "SL3 projections at d = e = f = 1");
    add(r, cfg, "sl3_counterexample", gap, rec.residual, std::abs(rec.residual - gap), 1e-10,
        "SL3 equations contradict at d = e = f = 1");
}

void c4_bracket_equivariance(Report& r, const SuiteConfig& cfg)
{
    auto gen = stream(cfg, 4);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const GroupElement g(random_sl(gen, 2, 1.0), GroupTag::SL2);
        const DiskPoint z = random_disk(gen, 0.9);
        const BoundaryPoint b = random_boundary(gen);
        const double lhs = horocycle_bracket(act(g, z), act(g, b));
        const double rhs = horocycle_bracket(z, b) + horocycle_bracket(act(g, origin), act(g, b));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    add(r, cfg, "bracket_equivariance", 0.0, worst, worst, 1e-9, "<g.z, g.b> = <z, b> + <g.o, g.b>");
}

void c5_poisson(Report& r, const SuiteConfig& cfg)
{
    auto gen = stream(cfg, 5);
    const auto q = circle_quadrature(512);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const DiskPoint z = i < 5 ? DiskPoint(std::polar(0.9, 1.3 * i)) : random_disk(gen, 0.9);
        double s = 0.0;
        for (std::size_t j = 0; j < q.nodes.size(); ++j) s += q.weights[j] * std::exp(2 * kRho * horocycle_bracket(z, q.nodes[j]));
        worst = std::max(worst, std::abs(s - 1.0));
    }
    add(r, cfg, "poisson_normalization", 1.0, 1.0 + worst, worst, 1e-8, "int_B e^{2 rho <z,b>} db = 1");
}

void c6_cfunction(Report& r, const SuiteConfig& cfg)
{
    const RootDatum sl2{};
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const cplx s(0.2 + 1.8 * k / 19.0, 3.0 * std::sin(1.7 * k));
        const cplx lambda = -cplx(0.0, 1.0) * s;  // i lambda = s
        worst = std::max(worst, rel(c_function(lambda, sl2), c_function_integral(lambda)));
    }
    add(r, cfg, "c_product_vs_integral", 0.0, worst, worst, 1e-6, "Gamma product vs N-bar integral for c");
    const double norm = std::abs(c_function(cplx(0.0, -0.5), sl2) - 1.0);
    add(r, cfg, "c_normalization", 1.0, 1.0 + norm, norm, 1e-10, "c(-i rho) = 1");
    const double r1 = plancherel_density(1.0, sl2) / (1.0 * std::tanh(kPi));
    double dev = 0.0;
    for (double l : {0.5, 1.0, 2.0, 4.0}) dev = std::max(dev, std::abs(plancherel_density(l, sl2) / (l * std::tanh(kPi * l)) / r1 - 1.0));
    add(r, cfg, "plancherel_ratio_constant", r1, r1 * (1.0 + dev), dev, 1e-7, "density proportional to lambda tanh(pi lambda)");
}

void c7_eigenvalue(Report& r, const SuiteConfig& cfg)
{
    const BoundaryPoint b(1.0);
    for (double l : {0.5, 1.0, 2.0}) {
        auto e = [&](DiskPoint z) { return std::exp(cplx(kRho, l) * horocycle_bracket(z, b)); };
        double minOrder = 1e9, finest = 0.0;
        for (cplx z0 : {cplx(0.3, 0.0), cplx(-0.2, 0.4), cplx(0.1, -0.5)}) {
            const DiskPoint z(z0);
            const cplx want = laplace_eigenvalue(l, RootDatum{}) * e(z);
            double err[3];
            double h = 1e-2;
            for (double& x : err) {
                x = std::abs(hyperbolic_laplacian_fd(e, z, h) - want) / std::abs(e(z));
                h /= 2;
            }
            minOrder = std::min({minOrder, std::log2(err[0] / err[1]), std::log2(err[1] / err[2])});
            finest = std::max(finest, err[2]);
        }
        std::ostringstream name;
        name << "eigen_fd_order_l" << l;
        add(r, cfg, name.str(), 2.0, minOrder, std::max(0.0, 1.8 - minOrder), 0.0, "Laplacian eigenvalue -(lambda^2 + rho^2)");
        std::ostringstream ename;
        ename << "eigen_fd_error_l" << l;
        add(r, cfg, ename.str(), 0.0, finest, finest, 1e-4, "Laplacian eigenvalue -(lambda^2 + rho^2)");
    }
}

void c8_inversion(Report& r, const SuiteConfig& cfg, bool calibrate)
{
    const auto& fc = cfg.grids.fourier;
    const double R = fc.refRadius;
    auto grid = std::make_shared<const DiskQuadrature>(disk_quadrature(R, fc.nRadial, fc.nAngular, RadialRule::GaussLegendre));
    const auto f = bump(R);
    const auto lam = midpoint_grid(fc.Lambda, fc.nLambda);
    const auto bq = circle_quadrature(fc.nB);
    const auto s = SampledFunctionX::sample(grid, f, R);
    const auto inv = helgason_inverse(helgason_ft(s, lam, bq));
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const DiskPoint z(std::polar(std::tanh(0.5 * R * k / 10.0), 0.7 * k));
        worst = std::max(worst, std::abs(inv(z) - f(z)));
    }
    const double peak = bump_profile(0.0, R);
    add(r, cfg, "fourier_roundtrip", 0.0, worst / peak, worst / peak, 1e-3, "Fourier inversion on X");

    const auto s2 = SampledFunctionX::sample(grid, bump(0.6 * R, DiskPoint(cplx(0.3, 0.0))), R);
    const auto p = plancherel_check(s, s2, lam, bq);
    const double pr = std::abs(p.spaceSide - p.spectralSide) / std::abs(p.spaceSide);
    add(r, cfg, "plancherel", std::abs(p.spaceSide), std::abs(p.spectralSide), pr, 1e-3, "Plancherel formula on X");

    if (calibrate) {
        const double k = calibrate_inversion_constant(fc);
        add(r, cfg, "inversion_constant", inversion_constant(), k, std::abs(k / inversion_constant() - 1.0), 1e-3,
            "inversion constant reproduced by a round trip");
    }
}

cplx angular(BoundaryPoint b) { return {1.0 + 0.3 * std::cos(b.theta()), 0.2 * std::sin(b.theta())}; }

SymbolFn reference_symbol() { return bump_symbol(DiskPoint(cplx(0.1, 0.05)), 1.5, angular); }

PSData single_pair(double l, double m) { return {l, m, {{{BoundaryPoint(0.0), 1.0}}, {}}, {{{BoundaryPoint(kPi), 1.0}}, {}}}; }

PSData atom_grid(const SuiteConfig& cfg, double l, double m, std::uint64_t offset)
{
    auto gen = stream(cfg, offset);
    std::uniform_real_distribution<double> w(-1.0, 1.0);
    PSData d{l, m, {}, {}};
    for (int i = 0; i < 3; ++i) {
        d.Tphi.atoms.push_back({BoundaryPoint(0.3 + 2.1 * i), cplx(w(gen), w(gen))});
        d.Tpsi.atoms.push_back({BoundaryPoint(1.1 + 2.1 * i), cplx(w(gen), w(gen))});
    }
    return d;
}

void c9_intertwining(Report& r, const SuiteConfig& cfg)
{
    const auto a = reference_symbol();
    const auto grids = cfg.grids.ps.grids();
    const auto one = intertwine_check(a, single_pair(2.0, 2.0), grids);
    add(r, cfg, "intertwining_single_pair", std::abs(one.lhs), std::abs(one.rhs), one.residual, 1e-4,
        "Wigner = <L_mu a, PS> (single atom pair)");
    const auto grid = intertwine_check(a, atom_grid(cfg, 1.5, 0.7, 9), grids);
    add(r, cfg, "intertwining_atom_grid", std::abs(grid.lhs), std::abs(grid.rhs), grid.residual, 1e-3,
        "Wigner = <L_mu a, PS> (3 x 3 atoms)");
    const auto res = refinement_series(cfg);
    double worst = 0.0;
    for (std::size_t i = 1; i < res.size(); ++i)
        if (res[i].second > 1e-5) worst = std::max(worst, res[i].second / res[i - 1].second - 0.5);
    add(r, cfg, "intertwining_refinement", 0.5, 0.5 + worst, std::max(0.0, worst), 0.0,
        "residual at least halves per refinement until 1e-5");
    r.series["intertwining_residual"] = res;
}

void c10_a_translation(Report& r, const SuiteConfig& cfg)
{
    const auto a = reference_symbol();
    const auto grids = cfg.grids.ps.grids();
    for (auto [l, m, t] : {std::tuple{2.0, 1.0, 0.7}, std::tuple{3.0, 3.0, 1.1}, std::tuple{1.0, 2.0, -0.4}}) {
        const auto rr = a_translation_check(a, atom_grid(cfg, l, m, 10), t, grids);
        std::ostringstream name;
        name << "a_translation_" << l << "_" << m << "_" << t;
        add(r, cfg, name.str(), std::arg(rr.expected), std::arg(rr.ratio), std::abs(rr.ratio - rr.expected), 1e-6,
            "PS(a o G^{-t}) = e^{i(lambda - mu)t} PS(a)");
    }
}

void c11_stationary_phase(Report& r, const SuiteConfig& cfg)
{
    const auto a = gaussian_symbol(origin, 1.0);
    const auto grids = cfg.grids.ps.grids();
    std::vector<double> dev;
    for (double mu : {5.0, 10.0, 20.0}) {
        const cplx v = knapp_stein(a, sl2_k(0.0), mu, grids) / (c_function(mu, RootDatum{}) * a(origin, BoundaryPoint(0.0)));
        dev.push_back(std::abs(v - 1.0));
    }
    const double rises = (dev[1] >= dev[0]) + (dev[2] >= dev[1]);
    add(r, cfg, "stationary_phase_monotone", 0.0, rises, rises, 0.0, "L_mu a / (c(mu) a) -> 1");
    // least squares slope on three equally spaced log points
    const double slope = std::log(dev[2] / dev[0]) / std::log(4.0);
    add(r, cfg, "stationary_phase_exponent", -1.0, slope, std::abs(slope + 1.0), 0.3, "leading-order remainder O(1/mu)");
}

KNSymbol kn_plateau(bool withAngular)
{
    const SymbolFn chi = plateau_symbol(origin, 1.0, 2.5);
    if (!withAngular) return kn_from_symbol(chi);
    return {[chi](DiskPoint z, double, BoundaryPoint b) { return chi(z, b) * (1.0 + 0.3 * std::cos(b.theta())); }, chi.supportRadius,
            chi.center, true};
}

void c12_kohn_nirenberg(Report& r, const SuiteConfig& cfg)
{
    const auto& g = cfg.grids.kn;
    const std::array<cplx, 3> probes{cplx(0.0, 0.0), cplx(0.2, 0.1), cplx(-0.1, 0.25)};
    const auto one = kn_plateau(false);
    double unit = 0.0;
    for (cplx z : probes) unit = std::max(unit, std::abs(kohn_nirenberg_U(one, DiskPoint(z), 1.0, BoundaryPoint(0.5), g) - 1.0));
    add(r, cfg, "kn_unit_symbol", 1.0, 1.0 + unit, unit, 1e-2, "U(1) = 1");

    const auto a = kn_plateau(true);
    double eq = 0.0;
    for (int i = 0; i < 3; ++i) {
        const GroupElement h = sl2_k(0.4 * i) * sl2_a(0.3 + 0.1 * i) * sl2_n(-0.2 * i);
        const cplx lhs = kohn_nirenberg_U(compose(a, h), origin, 1.0, BoundaryPoint(0.0), g);
        const cplx rhs = kohn_nirenberg_U(a, act(h, origin), 1.0, act(h, BoundaryPoint(0.0)), g);
        eq = std::max(eq, std::abs(lhs - rhs));
    }
    add(r, cfg, "kn_equivariance", 0.0, eq, eq, 1e-2, "U commutes with G");

    double paths = 0.0;
    for (cplx z : probes) {
        const cplx d = kohn_nirenberg_U(a, DiskPoint(z), 1.0, BoundaryPoint(0.5), g);
        const cplx c = kohn_nirenberg_U_convolution(a, DiskPoint(z), 1.0, BoundaryPoint(0.5), g);
        paths = std::max(paths, std::abs(d - c));
    }
    add(r, cfg, "kn_direct_vs_convolution", 0.0, paths, paths, 1e-2, "U as a convolution with E_{mu,lambda}");
}

// ---- further properties -----------------------------------------------------

void soh_checks(Report& r, const SuiteConfig& cfg)
{
    double worst = 0.0;
    auto gen = stream(cfg, 13);
    std::normal_distribution<double> nd(0.0, 0.7);
    for (int n : {2, 3, 4})
        for (int i = 0; i < 10; ++i) {
            Vec z(n - 1);
            for (auto& x : z) x = nd(gen);
            const auto rec = check_Hnw_symmetry(GroupTag::SOH, z);
            worst = std::max(worst, std::abs(rec.s - std::log1p(z.squaredNorm())));
        }
    add(r, cfg, "soh_hnw", 0.0, worst, worst, 1e-10, "H(n w) = ln(1 + |z|^2) in SO(1,n)");
}

void bracket_extras(Report& r, const SuiteConfig& cfg)
{
    auto gen = stream(cfg, 14);
    double closed = 0.0, matrix = 0.0, equiv = 0.0;
    for (int i = 0; i < 100; ++i) {
        const BoundaryPoint b = random_boundary(gen), b2 = random_boundary(gen);
        const DiskPoint z = random_disk(gen, 0.9);
        matrix = std::max(matrix, std::abs(horocycle_bracket_matrix(z, b) - horocycle_bracket(z, b)));
        if (std::abs(b.b() - b2.b()) < 1e-2) continue;
        const double l = std::uniform_real_distribution<double>(0.0, 4.0)(gen);
        closed = std::max(closed, rel(intermediate_value(geodesic_frame(b, b2), l, l), d_lambda_closed(b, b2, l)));
        const GroupElement g(random_sl(gen, 2, 0.6), GroupTag::SL2);
        const BoundaryPoint gb = act(g, b), gb2 = act(g, b2);
        const DiskPoint go = act(g, origin);
        const cplx factor = std::exp(cplx(kRho, l) * (horocycle_bracket(go, gb) + horocycle_bracket(go, gb2)));
        equiv = std::max(equiv, rel(intermediate_value(geodesic_frame(gb, gb2), l, l), factor * intermediate_value(geodesic_frame(b, b2), l, l)));
    }
    add(r, cfg, "bracket_matrix_route", 0.0, matrix, matrix, 1e-10, "<z, b> = -H(g^{-1} k)");
    add(r, cfg, "d_lambda_closed_form", 0.0, closed, closed, 1e-8, "d_lambda(b, b') = (|b - b'|/2)^{-2(i lambda + rho)}");
    add(r, cfg, "d_lambda_equivariance", 0.0, equiv, equiv, 1e-8, "equivariance of d_lambda");
}

void spectral_series(Report& r)
{
    auto& re = r.series["c_re"];
    auto& im = r.series["c_im"];
    auto& mod = r.series["c_modulus"];
    auto& dens = r.series["plancherel_density"];
    for (int k = 1; k <= 120; ++k) {
        const double l = 0.05 * k;
        const cplx c = c_function(l, RootDatum{});
        re.emplace_back(l, c.real());
        im.emplace_back(l, c.imag());
        mod.emplace_back(l, std::abs(c));
        dens.emplace_back(l, plancherel_density(l, RootDatum{}));
    }
}

void intertwining_extras(Report& r, const SuiteConfig& cfg)
{
    const auto a = reference_symbol();
    const auto grids = cfg.grids.ps.grids();
    auto gen = stream(cfg, 15);
    double ledger = 0.0;
    for (int i = 0; i < 3; ++i) {
        const GroupElement g(random_sl(gen, 2, 0.4), GroupTag::SL2);
        const PSData d = atom_grid(cfg, 1.7, 0.9, 30 + i);
        const PSData pushed{d.lambda, d.mu, push_forward(d.Tphi, g, d.lambda), push_forward(d.Tpsi, g, d.mu)};
        ledger = std::max(ledger, rel(ps_distribution(compose(a, g.inverse()), pushed, grids), ps_distribution(a, d, grids)));
    }
    add(r, cfg, "ps_equivariance_ledger", 0.0, ledger, ledger, 1e-6, "invariance of PS under pushed boundary data");

    const auto radial = bump_symbol(DiskPoint(cplx(-0.2, 0.1)), 1.2);
    double rev = 0.0;
    for (int i = 0; i < 10; ++i) {
        const BoundaryPoint b = random_boundary(gen), b2 = random_boundary(gen);
        if (std::abs(b.b() - b2.b()) < 1e-2) continue;
        rev = std::max(rev, std::abs(weighted_radon(radial, 1.4, 1.4, b, b2, grids) - weighted_radon(radial, 1.4, 1.4, b2, b, grids)));
    }
    add(r, cfg, "time_reversal", 0.0, rev, rev, 1e-8, "time reversal invariance of d_lambda");

    double crit = 0.0;
    for (double x : kn_phase_gradient(1.0, 0.0, 0.0, 0.0)) crit = std::max(crit, std::abs(x));
    add(r, cfg, "kn_phase_critical_point", 0.0, crit, crit, 1e-7, "unique critical point of the phase");
    double weakest = 1e9;
    for (int k = 0; k < 4; ++k) {
        std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};
        p[k] += 0.1;
        double n = 0.0;
        for (double x : kn_phase_gradient(p[0], p[1], p[2], p[3])) n = std::max(n, std::abs(x));
        weakest = std::min(weakest, n);
    }
    add(r, cfg, "kn_phase_nondegenerate", 1e-3, weakest, std::max(0.0, 1e-3 - weakest), 0.0, "gradient nonzero off the critical point");
}

// ---- registry ---------------------------------------------------------------

struct Step {
    std::string suite;
    std::function<void(Report&, const SuiteConfig&)> run;
};

const std::vector<Step>& registry()
{
    static const std::vector<Step> steps{
        {"iwasawa", c1_decompositions},
        {"iwasawa", c2_kernel},
        {"iwasawa", soh_checks},
        {"counterexample", c3_counterexample},
        {"brackets", c4_bracket_equivariance},
        {"brackets", c5_poisson},
        {"brackets", bracket_extras},
        {"spectral", c6_cfunction},
        {"spectral", c7_eigenvalue},
        {"spectral", [](Report& r, const SuiteConfig&) { spectral_series(r); }},
        {"inversion", [](Report& r, const SuiteConfig& c) { c8_inversion(r, c, true); }},
        {"intertwining", c9_intertwining},
        {"intertwining", c10_a_translation},
        {"intertwining", c11_stationary_phase},
        {"intertwining", c12_kohn_nirenberg},
        {"intertwining", intertwining_extras},
    };
    return steps;
}

std::string format_name(Format f)
{
    switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Svg: return "svg";
    }
    return "json";
}

}  // namespace

PSGrids PSGridSizes::grids() const
{
    PSGrids g;
    g.line = line_quadrature(linePanels, lineOrder);
    g.diskRadial = diskRadial;
    g.diskAngular = diskAngular;
    return g;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"iwasawa", "brackets", "spectral", "inversion", "intertwining", "counterexample", "all"};
    return names;
}

void SuiteConfig::validate() const
{
    const auto& n = suite_names();
    if (std::find(n.begin(), n.end(), suite) == n.end()) throw ConfigError("unknown suite '" + suite + "'");
    for (const auto& [k, v] : tolerances)
        if (!(v > 0.0)) throw ConfigError("tolerance for '" + k + "' must be positive");
    const auto& f = grids.fourier;
    if (f.Lambda <= 0 || f.nLambda < 3 || f.nB < 1 || f.nRadial < 2 || f.nAngular < 1 || f.refRadius <= 0)
        throw ConfigError("invalid fourier grid sizes");
    const auto& p = grids.ps;
    if (p.linePanels < 1 || p.lineOrder < 1 || p.diskRadial < 1 || p.diskAngular < 1) throw ConfigError("invalid ps grid sizes");
    const auto& k = grids.kn;
    if (k.Lambda <= 0 || k.nLambda < 3 || k.nB < 1 || k.diskRadial < 1 || k.diskAngular < 1) throw ConfigError("invalid kn grid sizes");
}

int Report::passed() const
{
    return int(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }));
}

int Report::failed() const { return int(checks.size()) - passed(); }

Report run_suite(const SuiteConfig& cfg)
{
    cfg.validate();
    const auto t0 = Clock::now();
    Report r;
    r.suite = cfg.suite;
    r.seed = cfg.seed;
    r.config = to_json(cfg);
    r.config.erase("outputPath");  // not an input to any check
    for (const auto& step : registry()) {
        if (cfg.suite != "all" && cfg.suite != step.suite) continue;
        const std::size_t first = r.checks.size();
        step.run(r, cfg);
        // a suite-level override applies to checks without their own entry
        const auto it = cfg.tolerances.find(step.suite);
        if (it == cfg.tolerances.end()) continue;
        for (std::size_t i = first; i < r.checks.size(); ++i) {
            auto& c = r.checks[i];
            if (cfg.tolerances.count(c.name)) continue;
            c.tolerance = it->second;
            c.pass = std::isfinite(c.residual) && c.residual <= c.tolerance;
        }
    }
    r.wallTime = seconds_since(t0);
    return r;
}

std::vector<std::pair<double, double>> refinement_series(const SuiteConfig&)
{
    const auto res = intertwine_refinement(reference_symbol(), single_pair(2.0, 2.0), 6);
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < res.size(); ++i) out.emplace_back(double(i), res[i]);
    return out;
}

CriterionResult run_criterion(int id, const SuiteConfig& cfg)
{
    static const std::array<std::pair<const char*, double>, kCriteria> info{{
        {"Decomposition round-trip", 5.0},
        {"Rank-one kernel identity", 0.0},
        {"SL3 counterexample", 0.0},
        {"Bracket equivariance", 0.0},
        {"Poisson normalization", 0.0},
        {"c-function cross-validation", 10.0},
        {"Laplacian eigenvalue", 0.0},
        {"Fourier inversion and Plancherel", 60.0},
        {"Intertwining theorem", 120.0},
        {"A-eigendistribution", 0.0},
        {"Stationary-phase leading order", 0.0},
        {"Kohn-Nirenberg smoke tests", 300.0},
    }};
    if (id < 1 || id > kCriteria) throw ConfigError("criterion id out of range");
    static const std::array<std::function<void(Report&, const SuiteConfig&)>, kCriteria> run{
        c1_decompositions, c2_kernel, c3_counterexample, c4_bracket_equivariance, c5_poisson, c6_cfunction, c7_eigenvalue,
        [](Report& r, const SuiteConfig& c) { c8_inversion(r, c, false); }, c9_intertwining, c10_a_translation,
        c11_stationary_phase, c12_kohn_nirenberg};
    CriterionResult out;
    out.id = id;
    out.title = info[id - 1].first;
    out.budget = info[id - 1].second;
    Report r;
    const auto t0 = Clock::now();
    run[id - 1](r, cfg);
    out.seconds = seconds_since(t0);
    out.checks = std::move(r.checks);
    out.pass = std::all_of(out.checks.begin(), out.checks.end(), [](const Check& c) { return c.pass; }) &&
               (out.budget == 0.0 || out.seconds <= out.budget);
    return out;
}

// ---- serialisation ------------------------------------------------------------

nlohmann::json to_json(const SuiteConfig& cfg)
{
    const auto& f = cfg.grids.fourier;
    const auto& p = cfg.grids.ps;
    const auto& k = cfg.grids.kn;
    nlohmann::json formats = nlohmann::json::array();
    for (auto x : cfg.formats) formats.push_back(format_name(x));
    return {{"suite", cfg.suite},
            {"seed", cfg.seed},
            {"tolerances", cfg.tolerances},
            {"outputPath", cfg.outputPath.string()},
            {"formats", formats},
            {"grids",
             {{"fourier",
               {{"Lambda", f.Lambda}, {"nLambda", f.nLambda}, {"nB", f.nB}, {"nRadial", f.nRadial}, {"nAngular", f.nAngular}, {"refRadius", f.refRadius}}},
              {"ps", {{"linePanels", p.linePanels}, {"lineOrder", p.lineOrder}, {"diskRadial", p.diskRadial}, {"diskAngular", p.diskAngular}}},
              {"kn", {{"Lambda", k.Lambda}, {"nLambda", k.nLambda}, {"nB", k.nB}, {"diskRadial", k.diskRadial}, {"diskAngular", k.diskAngular}}}}}};
}

namespace {

template <class T>
void read(const nlohmann::json& j, const char* key, T& out, const std::string& where)
{
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(where + ": field '" + key + "': " + e.what());
    }
}

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> keys, const std::string& where)
{
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [k, v] : j.items())
        if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; }))
            throw ConfigError(where + ": unknown field '" + k + "'");
}

}  // namespace

SuiteConfig config_from_json(const nlohmann::json& j, const std::string& origin)
{
    SuiteConfig c;
    reject_unknown(j, {"suite", "seed", "tolerances", "outputPath", "formats", "grids"}, origin);
    read(j, "suite", c.suite, origin);
    read(j, "seed", c.seed, origin);
    read(j, "tolerances", c.tolerances, origin);
    std::string out = c.outputPath.string();
    read(j, "outputPath", out, origin);
    c.outputPath = out;
    if (j.contains("formats")) {
        std::vector<std::string> fs;
        read(j, "formats", fs, origin);
        c.formats.clear();
        for (const auto& f : fs) {
            if (f == "json") c.formats.insert(Format::Json);
            else if (f == "csv") c.formats.insert(Format::Csv);
            else if (f == "svg") c.formats.insert(Format::Svg);
            else throw ConfigError(origin + ": unknown format '" + f + "'");
        }
        c.formats.insert(Format::Json);
    }
    if (j.contains("grids")) {
        const auto& g = j.at("grids");
        reject_unknown(g, {"fourier", "ps", "kn"}, origin + ": grids");
        if (g.contains("fourier")) {
            const auto& f = g.at("fourier");
            const std::string w = origin + ": grids.fourier";
            reject_unknown(f, {"Lambda", "nLambda", "nB", "nRadial", "nAngular", "refRadius"}, w);
            auto& d = c.grids.fourier;
            read(f, "Lambda", d.Lambda, w);
            read(f, "nLambda", d.nLambda, w);
            read(f, "nB", d.nB, w);
            read(f, "nRadial", d.nRadial, w);
            read(f, "nAngular", d.nAngular, w);
            read(f, "refRadius", d.refRadius, w);
        }
        if (g.contains("ps")) {
            const auto& p = g.at("ps");
            const std::string w = origin + ": grids.ps";
            reject_unknown(p, {"linePanels", "lineOrder", "diskRadial", "diskAngular"}, w);
            auto& d = c.grids.ps;
            read(p, "linePanels", d.linePanels, w);
            read(p, "lineOrder", d.lineOrder, w);
            read(p, "diskRadial", d.diskRadial, w);
            read(p, "diskAngular", d.diskAngular, w);
        }
        if (g.contains("kn")) {
            const auto& k = g.at("kn");
            const std::string w = origin + ": grids.kn";
            reject_unknown(k, {"Lambda", "nLambda", "nB", "diskRadial", "diskAngular"}, w);
            auto& d = c.grids.kn;
            read(k, "Lambda", d.Lambda, w);
            read(k, "nLambda", d.nLambda, w);
            read(k, "nB", d.nB, w);
            read(k, "diskRadial", d.diskRadial, w);
            read(k, "diskAngular", d.diskAngular, w);
        }
    }
    try {
        c.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return c;
}

SuiteConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw ConfigError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
    return config_from_json(j, path.string());
}

nlohmann::json to_json(const Report& r)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"expected", c.expected},
                          {"observed", c.observed},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass},
                          {"source", c.source}});
    nlohmann::json series = nlohmann::json::object();
    for (const auto& [k, pts] : r.series) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [x, y] : pts) arr.push_back({x, y});
        series[k] = arr;
    }
    return {{"schemaVersion", r.schemaVersion},
            {"suite", r.suite},
            {"seed", r.seed},
            {"config", r.config},
            {"summary", {{"total", r.checks.size()}, {"passed", r.passed()}, {"failed", r.failed()}}},
            {"checks", checks},
            {"series", series}};
}

std::string svg_line_plot(const std::string& title, const std::string& xLabel, const std::string& yLabel,
                          const std::vector<std::pair<double, double>>& pts, bool logY)
{
    const double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
    auto ty = [&](double y) { return logY ? std::log10(std::max(y, 1e-300)) : y; };
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& [x, y] : pts) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, ty(y));
        y1 = std::max(y1, ty(y));
    }
    if (pts.empty()) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (ty(y) - y0) / (y1 - y0) * (H - T - B); };
    std::ostringstream s;
    s.precision(6);
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">" << xLabel << "</text>\n";
    s << "<text x=\"16\" y=\"" << H / 2 << "\" transform=\"rotate(-90 16 " << H / 2 << ")\" text-anchor=\"middle\" font-size=\"12\">"
      << yLabel << (logY ? " (log10)" : "") << "</text>\n";
    auto label = [&](double v) {
        std::ostringstream o;
        o.precision(3);
        o << v;
        return o.str();
    };
    s << "<text x=\"" << L << "\" y=\"" << H - B + 16 << "\" font-size=\"10\">" << label(x0) << "</text>\n";
    s << "<text x=\"" << W - R << "\" y=\"" << H - B + 16 << "\" text-anchor=\"end\" font-size=\"10\">" << label(x1) << "</text>\n";
    s << "<text x=\"" << L - 4 << "\" y=\"" << H - B << "\" text-anchor=\"end\" font-size=\"10\">" << label(y0) << "</text>\n";
    s << "<text x=\"" << L - 4 << "\" y=\"" << T + 4 << "\" text-anchor=\"end\" font-size=\"10\">" << label(y1) << "</text>\n";
    s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts) s << px(x) << "," << py(y) << " ";
    s << "\"/>\n";
    for (const auto& [x, y] : pts) s << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
    s << "</svg>\n";
    return s.str();
}

std::vector<std::filesystem::path> emit_artifacts(const Report& report, const SuiteConfig& cfg)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.outputPath, ec);
    if (ec) throw ConfigError(cfg.outputPath.string() + ": cannot create output directory: " + ec.message());
    std::vector<fs::path> written;
    auto write = [&](const fs::path& name, const std::string& text) {
        const fs::path p = cfg.outputPath / name;
        std::ofstream out(p);
        if (!out) throw ConfigError(p.string() + ": cannot write");
        out << text;
        if (!out) throw ConfigError(p.string() + ": write failed");
        written.push_back(p);
    };
    write("report.json", to_json(report).dump(2) + "\n");

    const auto has = [&](const char* k) { return report.series.count(k) > 0; };
    if (cfg.formats.count(Format::Csv) && has("c_re")) {
        std::ostringstream csv;
        csv.precision(17);
        csv << "lambda,c_re,c_im,density\n";
        const auto& re = report.series.at("c_re");
        const auto& im = report.series.at("c_im");
        const auto& d = report.series.at("plancherel_density");
        for (std::size_t i = 0; i < re.size(); ++i) csv << re[i].first << "," << re[i].second << "," << im[i].second << "," << d[i].second << "\n";
        write("spectral.csv", csv.str());
    }
    if (cfg.formats.count(Format::Svg)) {
        if (has("c_modulus"))
            write("c_function.svg", svg_line_plot("|c(lambda)|", "lambda", "|c|", report.series.at("c_modulus"), false));
        if (has("plancherel_density"))
            write("plancherel_density.svg",
                  svg_line_plot("Plancherel density", "lambda", "|c(lambda)|^-2", report.series.at("plancherel_density"), false));
        if (has("intertwining_residual"))
            write("intertwining_residual.svg", svg_line_plot("Intertwining residual vs refinement level", "level",
                                                             "relative residual", report.series.at("intertwining_residual"), true));
    }
    return written;
}

}  // namespace psd::verify
