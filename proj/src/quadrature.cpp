#include "psd/quadrature.hpp"

#include "psd/errors.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace psd {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::pair<double, double>> radial_rule(double R, int n, RadialRule rule)
{
    std::vector<std::pair<double, double>> out;
    if (rule == RadialRule::Simpson) {
        if (n % 2 != 0) throw GridError("Simpson radial rule needs an even nRadial");
        const double h = R / n;
        // j = 0 carries weight sinh(0) = 0 and is dropped.
        for (int j = 1; j <= n; ++j) {
            const double c = (j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
            const double s = j * h;
            out.emplace_back(s, c * h / 3.0 * std::sinh(s));
        }
    } else {
        const auto gl = gauss_legendre(n);
        for (int j = 0; j < n; ++j) {
            const double s = 0.5 * R * (gl.nodes[j] + 1.0);
            out.emplace_back(s, 0.5 * R * gl.weights[j] * std::sinh(s));
        }
    }
    return out;
}

}  // namespace

double DiskQuadrature::total_weight() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

GaussRule gauss_legendre(int n)
{
    if (n < 1) throw GridError("gauss_legendre: n must be positive");
    GaussRule r{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

DiskQuadrature disk_quadrature(double maxRadius, int nRadial, int nAngular, RadialRule rule)
{
    if (nRadial < 4 || nAngular < 4) throw GridError("disk_quadrature: sizes must be >= 4");
    if (!(maxRadius > 0) || !std::isfinite(maxRadius)) throw GridError("disk_quadrature: maxRadius must be positive");
    if (std::tanh(maxRadius / 2) >= 1.0 - 1e-12) throw GridError("disk_quadrature: maxRadius too large for double precision");
    DiskQuadrature q;
    q.maxRadius = maxRadius;
    q.nRadial = nRadial;
    q.nAngular = nAngular;
    q.rule = rule;
    const auto radial = radial_rule(maxRadius, nRadial, rule);
    const double dtheta = 2.0 * kPi / nAngular;
    q.nodes.reserve(radial.size() * nAngular);
    q.weights.reserve(radial.size() * nAngular);
    for (const auto& [s, w] : radial) {
        const double r = std::tanh(s / 2);
        for (int k = 0; k < nAngular; ++k) {
            q.nodes.emplace_back(std::polar(r, (k + 0.5) * dtheta));
            q.weights.push_back(w * dtheta);
        }
    }
    return q;
}

DiskQuadrature centered(const DiskQuadrature& q, DiskPoint center)
{
    const auto g = translation_to(center);
    DiskQuadrature out = q;
    out.center = center.z();
    for (auto& z : out.nodes) z = act(g, z);
    return out;
}

CircleQuadrature circle_quadrature(int m)
{
    if (m < 4) throw GridError("circle_quadrature: m must be >= 4");
    CircleQuadrature q;
    q.nodes.reserve(m);
    for (int k = 0; k < m; ++k) q.nodes.emplace_back(2.0 * kPi * k / m);
    q.weights.assign(m, 1.0 / m);
    return q;
}

LineQuadrature line_quadrature(int panels, int order)
{
    if (panels < 1 || order < 1) throw GridError("line_quadrature: panels and order must be positive");
    const auto gl = gauss_legendre(order);
    LineQuadrature q;
    const double h = 2.0 / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = -1.0 + (p + 0.5) * h;
        for (int i = 0; i < order; ++i) {
            q.nodes.push_back(mid + 0.5 * h * gl.nodes[i]);
            q.weights.push_back(0.5 * h * gl.weights[i]);
        }
    }
    return q;
}

std::vector<double> midpoint_grid(double Lambda, int n)
{
    if (n < 1 || !(Lambda > 0)) throw GridError("midpoint_grid: need Lambda > 0 and n >= 1");
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = (k + 0.5) * Lambda / n;
    return out;
}

double hyperbolic_ball_area(double radius)
{
    const double s = std::sinh(radius / 2);
    return 4.0 * kPi * s * s;
}

void to_json(nlohmann::json& j, const DiskQuadrature& q)
{
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& z : q.nodes) nodes.push_back({z.z().real(), z.z().imag()});
    j = {{"kind", "disk"},
         {"maxRadius", q.maxRadius},
         {"center", {q.center.real(), q.center.imag()}},
         {"nRadial", q.nRadial},
         {"nAngular", q.nAngular},
         {"rule", q.rule == RadialRule::Simpson ? "simpson" : "gauss-legendre"},
         {"nodes", std::move(nodes)},
         {"weights", q.weights}};
}

void from_json(const nlohmann::json& j, DiskQuadrature& q)
{
    if (j.at("kind") != "disk") throw GridError("not a disk quadrature");
    q.maxRadius = j.at("maxRadius").get<double>();
    q.center = {j.at("center").at(0).get<double>(), j.at("center").at(1).get<double>()};
    q.nRadial = j.at("nRadial").get<int>();
    q.nAngular = j.at("nAngular").get<int>();
    q.rule = j.at("rule") == "simpson" ? RadialRule::Simpson : RadialRule::GaussLegendre;
    q.nodes.clear();
    for (const auto& p : j.at("nodes")) q.nodes.emplace_back(cplx{p.at(0).get<double>(), p.at(1).get<double>()});
    q.weights = j.at("weights").get<std::vector<double>>();
    if (q.nodes.size() != q.weights.size()) throw GridError("disk quadrature: nodes/weights size mismatch");
}

void to_json(nlohmann::json& j, const CircleQuadrature& q)
{
    std::vector<double> thetas;
    for (const auto& b : q.nodes) thetas.push_back(b.theta());
    j = {{"kind", "circle"}, {"thetas", thetas}, {"weights", q.weights}};
}

void from_json(const nlohmann::json& j, CircleQuadrature& q)
{
    if (j.at("kind") != "circle") throw GridError("not a circle quadrature");
    q.nodes.clear();
    for (double t : j.at("thetas").get<std::vector<double>>()) q.nodes.emplace_back(t);
    q.weights = j.at("weights").get<std::vector<double>>();
    if (q.nodes.size() != q.weights.size()) throw GridError("circle quadrature: nodes/weights size mismatch");
}

}  // namespace psd
