#include "psd/transforms.hpp"

#include "psd/errors.hpp"
#include "psd/parallel.hpp"

#include <cmath>
#include <numbers>

namespace psd {

namespace {

constexpr double kRho = 0.5;

void check_lambda_grid(const std::vector<double>& grid)
{
    if (grid.empty()) throw GridError("empty lambda grid");
    if (grid.front() <= 0.0) throw GridError("lambda grid must lie in (0, Lambda]");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1])) throw GridError("lambda grid must be strictly increasing");
}

}  // namespace

namespace detail {

bool is_uniform(const std::vector<double>& grid)
{
    if (grid.size() < 3) return false;
    const double d = grid[1] - grid[0];
    for (std::size_t k = 2; k < grid.size(); ++k)
        if (std::abs((grid[k] - grid[k - 1]) - d) > 1e-12 * std::max(1.0, grid.back())) return false;
    return true;
}

// acc[k] += sum_i base_i * e^{-i lambda_k s_i}, real and imaginary parts kept
// apart; on a uniform grid the phases come from a recurrence, two nodes at a
// time.
void accumulate_phases(std::vector<double>& re, std::vector<double>& im, const std::vector<double>& grid, bool uniform,
                       const std::vector<cplx>& base, const std::vector<double>& s)
{
    const std::size_t nL = grid.size(), n = base.size();
    if (!uniform) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < nL; ++k) {
                const cplx v = base[i] * std::polar(1.0, -grid[k] * s[i]);
                re[k] += v.real();
                im[k] += v.imag();
            }
        return;
    }
    const double d = grid[1] - grid[0];
    std::size_t i = 0;
    for (; i + 1 < n; i += 2) {
        const cplx p0 = base[i] * std::polar(1.0, -grid[0] * s[i]);
        const cplx p1 = base[i + 1] * std::polar(1.0, -grid[0] * s[i + 1]);
        const cplx r0 = std::polar(1.0, -d * s[i]);
        const cplx r1 = std::polar(1.0, -d * s[i + 1]);
        double ar = p0.real(), ai = p0.imag(), br = p1.real(), bi = p1.imag();
        const double xr = r0.real(), xi = r0.imag(), yr = r1.real(), yi = r1.imag();
        for (std::size_t k = 0; k < nL; ++k) {
            re[k] += ar + br;
            im[k] += ai + bi;
            const double ar2 = ar * xr - ai * xi, ai2 = ar * xi + ai * xr;
            const double br2 = br * yr - bi * yi, bi2 = br * yi + bi * yr;
            ar = ar2;
            ai = ai2;
            br = br2;
            bi = bi2;
        }
    }
    for (; i < n; ++i) {
        const cplx p = base[i] * std::polar(1.0, -grid[0] * s[i]);
        const cplx r = std::polar(1.0, -d * s[i]);
        double ar = p.real(), ai = p.imag();
        for (std::size_t k = 0; k < nL; ++k) {
            re[k] += ar;
            im[k] += ai;
            const double ar2 = ar * r.real() - ai * r.imag();
            ai = ar * r.imag() + ai * r.real();
            ar = ar2;
        }
    }
}

}  // namespace detail

using detail::accumulate_phases;
using detail::is_uniform;

double inversion_constant() { return 1.0 / (2.0 * std::numbers::pi * std::numbers::pi); }

double bump_profile(double d, double r0)
{
    if (d >= r0) return 0.0;
    const double q = d / r0;
    return std::exp(-1.0 / (1.0 - q * q));
}

DiskFunction bump(double r0, DiskPoint center)
{
    const cplx c = center.z();
    return [r0, c](DiskPoint z) { return cplx(bump_profile(hyperbolic_distance(c, z.z()), r0), 0.0); };
}

SampledFunctionX SampledFunctionX::sample(std::shared_ptr<const DiskQuadrature> grid, const DiskFunction& f, double supportRadius)
{
    if (!grid) throw GridError("null grid");
    if (supportRadius > grid->maxRadius) throw GridError("support radius exceeds the grid radius");
    SampledFunctionX s;
    s.supportRadius = supportRadius;
    s.values.resize(grid->nodes.size());
    parallel_for(grid->nodes.size(), [&](std::size_t i) {
        const auto& z = grid->nodes[i];
        s.values[i] = hyperbolic_distance(grid->center, z.z()) > supportRadius ? cplx{} : f(z);
    });
    s.grid = std::move(grid);
    return s;
}

SampledFunctionX SampledFunctionX::operator+(const SampledFunctionX& o) const
{
    if (grid != o.grid) throw GridError("sampled functions live on different grids");
    SampledFunctionX r = *this;
    r.supportRadius = std::max(supportRadius, o.supportRadius);
    for (std::size_t i = 0; i < values.size(); ++i) r.values[i] += o.values[i];
    return r;
}

SampledFunctionX SampledFunctionX::operator*(cplx s) const
{
    SampledFunctionX r = *this;
    for (auto& v : r.values) v *= s;
    return r;
}

std::vector<double> spectral_weights(const std::vector<double>& grid)
{
    check_lambda_grid(grid);
    const std::size_t n = grid.size();
    if (n == 1) return {2.0 * grid[0]};
    std::vector<double> edges(n + 1);
    edges[0] = 0.0;
    for (std::size_t k = 1; k < n; ++k) edges[k] = 0.5 * (grid[k - 1] + grid[k]);
    edges[n] = grid[n - 1] + 0.5 * (grid[n - 1] - grid[n - 2]);
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = edges[k + 1] - edges[k];
    return w;
}

FourierData helgason_ft(const SampledFunctionX& f, const std::vector<double>& lambdaGrid, const CircleQuadrature& bGrid)
{
    check_lambda_grid(lambdaGrid);
    if (bGrid.nodes.empty()) throw GridError("empty boundary grid");
    const auto& q = *f.grid;
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (f.values[i] != cplx{}) live.push_back(i);

    FourierData F{lambdaGrid, bGrid, std::vector<cplx>(lambdaGrid.size() * bGrid.nodes.size())};
    const bool uniform = is_uniform(lambdaGrid);
    const std::size_t nB = bGrid.nodes.size();
    parallel_for(
        nB,
        [&](std::size_t j) {
            const auto& b = bGrid.nodes[j];
            std::vector<cplx> base(live.size());
            std::vector<double> s(live.size());
            for (std::size_t n = 0; n < live.size(); ++n) {
                const auto i = live[n];
                s[n] = horocycle_bracket(q.nodes[i], b);
                base[n] = q.weights[i] * f.values[i] * std::exp(kRho * s[n]);
            }
            std::vector<double> re(lambdaGrid.size()), im(lambdaGrid.size());
            accumulate_phases(re, im, lambdaGrid, uniform, base, s);
            for (std::size_t k = 0; k < lambdaGrid.size(); ++k) F.values[k * nB + j] = {re[k], im[k]};
        },
        1);
    return F;
}

DiskFunction helgason_inverse(const FourierData& F)
{
    check_lambda_grid(F.lambdaGrid);
    const auto w = spectral_weights(F.lambdaGrid);
    const std::size_t nL = F.nLambda(), nB = F.nB();
    auto coeff = std::make_shared<std::vector<cplx>>(nL * nB);
    for (std::size_t k = 0; k < nL; ++k) {
        const double m = inversion_constant() * w[k] * plancherel_density(F.lambdaGrid[k], RootDatum{});
        for (std::size_t j = 0; j < nB; ++j) (*coeff)[k * nB + j] = m * F.at(k, j) * F.bGrid.weights[j];
    }
    auto grid = std::make_shared<std::vector<double>>(F.lambdaGrid);
    auto nodes = std::make_shared<std::vector<BoundaryPoint>>(F.bGrid.nodes);
    const bool uniform = is_uniform(F.lambdaGrid);
    return [coeff, grid, nodes, uniform, nL, nB](DiskPoint z) {
        cplx total{};
        for (std::size_t j = 0; j < nB; ++j) {
            const double s = horocycle_bracket(z, (*nodes)[j]);
            cplx acc{};
            if (uniform) {
                cplx p = std::polar(1.0, (*grid)[0] * s);
                const cplx r = std::polar(1.0, ((*grid)[1] - (*grid)[0]) * s);
                for (std::size_t k = 0; k < nL; ++k) {
                    acc += (*coeff)[k * nB + j] * p;
                    p *= r;
                }
            } else {
                for (std::size_t k = 0; k < nL; ++k) acc += (*coeff)[k * nB + j] * std::polar(1.0, (*grid)[k] * s);
            }
            total += acc * std::exp(kRho * s);
        }
        return total;
    };
}

PlancherelSides plancherel_check(const SampledFunctionX& f1, const SampledFunctionX& f2,
                                 const std::vector<double>& lambdaGrid, const CircleQuadrature& bGrid)
{
    if (f1.grid != f2.grid) throw GridError("sampled functions live on different grids");
    const auto& q = *f1.grid;
    cplx space{};
    for (std::size_t i = 0; i < q.nodes.size(); ++i) space += q.weights[i] * f1.values[i] * std::conj(f2.values[i]);

    const auto F1 = helgason_ft(f1, lambdaGrid, bGrid);
    const auto F2 = helgason_ft(f2, lambdaGrid, bGrid);
    const auto w = spectral_weights(lambdaGrid);
    cplx spectral{};
    for (std::size_t k = 0; k < F1.nLambda(); ++k) {
        cplx inner{};
        for (std::size_t j = 0; j < F1.nB(); ++j) inner += bGrid.weights[j] * F1.at(k, j) * std::conj(F2.at(k, j));
        spectral += w[k] * plancherel_density(lambdaGrid[k], RootDatum{}) * inner;
    }
    return {space, inversion_constant() * spectral};
}

void BoundaryMeasure::validate() const
{
    for (const auto& a : atoms)
        if (!std::isfinite(a.weight.real()) || !std::isfinite(a.weight.imag())) throw DomainError("non-finite atom weight");
    if (density) {
        if (density->samples.size() != density->grid.nodes.size()) throw GridError("density samples do not match grid");
        for (const auto& s : density->samples)
            if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw DomainError("non-finite density sample");
    }
}

double BoundaryMeasure::total_variation() const
{
    double tv = 0.0;
    for (const auto& a : discretised()) tv += std::abs(a.weight);
    return tv;
}

std::vector<Atom> BoundaryMeasure::discretised() const
{
    std::vector<Atom> out = atoms;
    if (density)
        for (std::size_t j = 0; j < density->grid.nodes.size(); ++j)
            out.push_back({density->grid.nodes[j], density->grid.weights[j] * density->samples[j]});
    return out;
}

DiskFunction poisson_transform(const BoundaryMeasure& T, SpectralParam lambda)
{
    T.validate();
    auto atoms = std::make_shared<std::vector<Atom>>(T.discretised());
    const cplx expo = cplx(0.0, 1.0) * lambda.lambda + kRho;
    return [atoms, expo](DiskPoint z) {
        cplx s{};
        for (const auto& a : *atoms) s += a.weight * std::exp(expo * horocycle_bracket(z, a.b));
        return s;
    };
}

BoundaryMeasure push_forward(const BoundaryMeasure& T, const GroupElement& g, SpectralParam lambda)
{
    T.validate();
    const cplx expo = cplx(0.0, 1.0) * lambda.lambda + kRho;
    const DiskPoint go = act(g, origin);
    BoundaryMeasure out;
    for (const auto& a : T.discretised()) {
        const BoundaryPoint gb = act(g, a.b);
        out.atoms.push_back({gb, a.weight * std::exp(-expo * horocycle_bracket(go, gb))});
    }
    return out;
}

double calibrate_inversion_constant(const FourierConfig& cfg)
{
    const double r0 = cfg.refRadius;
    auto grid = std::make_shared<const DiskQuadrature>(disk_quadrature(r0, cfg.nRadial, cfg.nAngular, RadialRule::GaussLegendre));
    const auto f = bump(r0);
    const auto s = SampledFunctionX::sample(grid, f, r0);
    const auto F = helgason_ft(s, midpoint_grid(cfg.Lambda, cfg.nLambda), circle_quadrature(cfg.nB));
    const auto inv = helgason_inverse(F);
    // inv carries the frozen constant; rescale to the best fit
    double num = 0.0, den = 0.0;
    for (double x : {0.0, 0.3, 0.5}) {
        const DiskPoint z{cplx(x, 0.2 * x)};
        const double want = f(z).real();
        const double got = inv(z).real() / inversion_constant();
        num += want * got;
        den += got * got;
    }
    return num / den;
}

void to_json(nlohmann::json& j, const FourierData& F)
{
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& v : F.values) vals.push_back({v.real(), v.imag()});
    j = {{"lambdaGrid", F.lambdaGrid}, {"bGrid", F.bGrid}, {"values", vals}};
}

void from_json(const nlohmann::json& j, FourierData& F)
{
    F.lambdaGrid = j.at("lambdaGrid").get<std::vector<double>>();
    F.bGrid = j.at("bGrid").get<CircleQuadrature>();
    F.values.clear();
    for (const auto& v : j.at("values")) F.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    if (F.values.size() != F.lambdaGrid.size() * F.bGrid.nodes.size()) throw GridError("Fourier data size mismatch");
}

}  // namespace psd
