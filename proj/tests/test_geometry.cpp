#include "psd/errors.hpp"
#include "psd/geometry.hpp"
#include "psd/quadrature.hpp"
#include "test_config.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace psd;
using psd::testing::random_sl;

namespace {

constexpr double kPi = std::numbers::pi;

DiskPoint random_point(std::mt19937_64& gen, double rmax = 0.95)
{
    std::uniform_real_distribution<double> ur(0, rmax), ua(0, 2 * kPi);
    return DiskPoint(std::polar(ur(gen), ua(gen)));
}

BoundaryPoint random_boundary(std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> ua(0, 2 * kPi);
    return BoundaryPoint(ua(gen));
}

GroupElement random_g(std::mt19937_64& gen) { return GroupElement(random_sl(gen, 2, 0.8), GroupTag::SL2); }

}  // namespace

TEST(Bracket, OriginAndGeodesic)
{
    for (double th : {0.0, 1.0, 3.0, 5.5}) EXPECT_NEAR(horocycle_bracket(origin, BoundaryPoint(th)), 0.0, 1e-15);
    for (double t : {-2.0, 0.5, 3.0}) {
        const auto z = act(sl2_a(t), origin);
        EXPECT_NEAR(horocycle_bracket(z, BoundaryPoint(0.0)), t, 1e-12);
    }
}

TEST(Bracket, ClosedFormMatchesMatrixRoute)
{
    auto gen = psd::testing::rng(20);
    for (int i = 0; i < 500; ++i) {
        const auto z = random_point(gen);
        const auto b = random_boundary(gen);
        EXPECT_NEAR(horocycle_bracket(z, b), horocycle_bracket_matrix(z, b), 1e-9);
    }
}

TEST(Bracket, Equivariance)
{
    auto gen = psd::testing::rng(21);
    for (int i = 0; i < 1000; ++i) {
        const auto g = random_g(gen);
        const auto z = random_point(gen, 0.9);
        const auto b = random_boundary(gen);
        const auto gz = act(g, z);
        const auto gb = act(g, b);
        const double res = horocycle_bracket(gz, gb) - horocycle_bracket(z, b) - horocycle_bracket(act(g, origin), gb);
        EXPECT_LE(std::abs(res), 1e-9);
    }
}

TEST(Bracket, KInvarianceAndReflection)
{
    auto gen = psd::testing::rng(22);
    std::uniform_real_distribution<double> ua(0, 2 * kPi);
    for (int i = 0; i < 200; ++i) {
        const auto k = sl2_k(ua(gen));
        const auto z = random_point(gen);
        const auto b = random_boundary(gen);
        EXPECT_NEAR(horocycle_bracket(act(k, z), act(k, b)), horocycle_bracket(z, b), 1e-10);
        const auto g = random_g(gen);
        EXPECT_NEAR(horocycle_bracket(act(g.inverse(), origin), b),
                    -horocycle_bracket(act(g, origin), act(g, b)), 1e-9);
    }
}

TEST(BoundaryAction, RotationAndIdentity)
{
    const auto r = boundary_action(sl2_k(0.4), BoundaryPoint(1.0));
    EXPECT_NEAR(r.gb.theta(), 1.8, 1e-13);
    EXPECT_NEAR(r.jacobian, 1.0, 1e-13);
    const auto e = boundary_action(sl2_k(0.0), BoundaryPoint(2.5));
    EXPECT_NEAR(e.gb.theta(), 2.5, 1e-15);
    EXPECT_NEAR(e.jacobian, 1.0, 1e-15);
}

TEST(BoundaryAction, JacobianIsAngularDerivative)
{
    // Oracle: central difference of the boundary angle map.
    auto gen = psd::testing::rng(23);
    for (int i = 0; i < 100; ++i) {
        const auto g = random_g(gen);
        const double th = BoundaryPoint(2 * kPi * i / 100.0).theta();
        const double h = 1e-5;
        const double up = std::arg(mobius(g, std::polar(1.0, th + h)));
        const double dn = std::arg(mobius(g, std::polar(1.0, th - h)));
        double d = up - dn;
        if (d > kPi) d -= 2 * kPi;
        if (d < -kPi) d += 2 * kPi;
        EXPECT_NEAR(boundary_action(g, BoundaryPoint(th)).jacobian, d / (2 * h), 1e-7);
    }
}

TEST(BoundaryAction, JacobianIntegratesToOne)
{
    auto gen = psd::testing::rng(24);
    std::uniform_real_distribution<double> ua(0, 2 * kPi), ut(-2, 2), uu(-3, 3);
    const auto cq = circle_quadrature(1024);
    for (int i = 0; i < 20; ++i) {
        const auto g = sl2_k(ua(gen)) * sl2_a(ut(gen)) * sl2_n(uu(gen));
        double s = 0;
        for (std::size_t j = 0; j < cq.nodes.size(); ++j) s += cq.weights[j] * boundary_action(g, cq.nodes[j]).jacobian;
        EXPECT_NEAR(s, 1.0, 1e-10);
    }
}

TEST(Frame, BasePairAndAntipodal)
{
    const auto e = geodesic_frame(BoundaryPoint(0.0), BoundaryPoint(kPi));
    EXPECT_LT((e.matrix() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
    for (double th : {0.3, 2.0, 4.0}) {
        const auto g = geodesic_frame(BoundaryPoint(th), BoundaryPoint(th + kPi));
        EXPECT_LT(std::abs(mobius(g, 1.0) - std::polar(1.0, th)), 1e-12);
        EXPECT_LT(std::abs(mobius(g, -1.0) + std::polar(1.0, th)), 1e-12);
        EXPECT_LT(std::abs(mobius(g, 0.0)), 1e-12);
        EXPECT_LT((g.matrix() - sl2_k(th / 2).matrix()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Frame, RandomPairsAndFoot)
{
    auto gen = psd::testing::rng(25);
    for (int i = 0; i < 200; ++i) {
        const auto b = random_boundary(gen);
        const auto b2 = random_boundary(gen);
        const auto g = geodesic_frame(b, b2);
        const double err = std::max(std::abs(boundary_action(g, BoundaryPoint(0.0)).gb.b() - b.b()),
                                    std::abs(boundary_action(g, BoundaryPoint(kPi)).gb.b() - b2.b()));
        EXPECT_LE(err, 1e-9);
        // g.o minimises the distance to o along the geodesic.
        const double d0 = std::abs(mobius(g, 0.0));
        for (double s : {-1e-3, 1e-3})
            EXPECT_GE(std::abs(mobius(g * sl2_a(s), 0.0)), d0 - 1e-15);
    }
}

TEST(Frame, RejectsCoincident)
{
    EXPECT_THROW(geodesic_frame(BoundaryPoint(1.0), BoundaryPoint(1.0 + 1e-9)), DomainError);
}

TEST(Flow, OriginAndAdditivity)
{
    for (double t : {-1.0, 0.0, 0.7, 2.5}) {
        const auto p = geodesic_flow({origin, BoundaryPoint(0.0)}, t);
        EXPECT_NEAR(std::abs(p.z.z() - std::tanh(t / 2)), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(mobius(sl2_a(t), 0.0) - p.z.z()), 0.0, 1e-14);
    }
    auto gen = psd::testing::rng(26);
    std::uniform_real_distribution<double> ut(-2, 2);
    for (int i = 0; i < 200; ++i) {
        const TangentPoint p{random_point(gen, 0.8), random_boundary(gen)};
        const double s = ut(gen), t = ut(gen);
        const auto a = geodesic_flow(geodesic_flow(p, t), s);
        const auto b = geodesic_flow(p, s + t);
        EXPECT_LE(std::abs(a.z.z() - b.z.z()), 1e-9);
        EXPECT_EQ(a.b.theta(), p.b.theta());
        EXPECT_LT(std::abs(geodesic_flow(p, 0.0).z.z() - p.z.z()), 1e-14);
        // moves distance |t| towards b
        EXPECT_NEAR(hyperbolic_distance(p.z.z(), b.z.z()), std::abs(s + t), 1e-8);
        const auto f = tangent_frame(p.z, p.b);
        EXPECT_LE(std::abs(mobius(f * sl2_a(s + t), 0.0) - b.z.z()), 1e-9);
    }
}

TEST(Quadrature, DiskArea)
{
    for (double R : {1.0, 3.0, 5.0}) {
        const auto q = disk_quadrature(R, 200, 16);
        EXPECT_LE(std::abs(q.total_weight() / hyperbolic_ball_area(R) - 1.0), 1e-6);
        for (double w : q.weights) EXPECT_GT(w, 0.0);
        const auto g = disk_quadrature(R, 40, 16, RadialRule::GaussLegendre);
        EXPECT_LE(std::abs(g.total_weight() / hyperbolic_ball_area(R) - 1.0), 1e-12);
    }
}

TEST(Quadrature, IndicatorOfUnitBall)
{
    const auto q = disk_quadrature(1.0, 200, 8);
    double s = 0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
        if (2 * std::atanh(std::abs(q.nodes[i].z())) <= 1.0 + 1e-12) s += q.weights[i];
    EXPECT_NEAR(s, hyperbolic_ball_area(1.0), 1e-4);
}

TEST(Quadrature, CircleAndErrors)
{
    const auto c = circle_quadrature(37);
    double s = 0;
    for (double w : c.weights) s += w;
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_THROW(disk_quadrature(1.0, 3, 8), GridError);
    EXPECT_THROW(disk_quadrature(1.0, 7, 8), GridError);
    EXPECT_THROW(circle_quadrature(2), GridError);
}

TEST(Quadrature, JsonRoundTrip)
{
    const auto q = centered(disk_quadrature(1.2, 8, 6), DiskPoint({0.2, -0.1}));
    const nlohmann::json j = q;
    const auto back = j.get<DiskQuadrature>();
    ASSERT_EQ(back.nodes.size(), q.nodes.size());
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        EXPECT_EQ(back.nodes[i].z(), q.nodes[i].z());
        EXPECT_EQ(back.weights[i], q.weights[i]);
    }
    const nlohmann::json jc = circle_quadrature(8);
    EXPECT_EQ(jc.get<CircleQuadrature>().nodes.size(), 8u);
}

TEST(Quadrature, GaussLegendreExactness)
{
    const auto r = gauss_legendre(10);
    double s = 0;
    for (int i = 0; i < 10; ++i) s += r.weights[i] * std::pow(r.nodes[i], 18);
    EXPECT_NEAR(s, 2.0 / 19.0, 1e-14);
}

TEST(PoissonNormalisation, ManyPoints)
{
    auto gen = psd::testing::rng(27);
    const auto cq = circle_quadrature(512);
    for (int i = 0; i < 50; ++i) {
        const auto z = random_point(gen, 0.9);
        double s = 0;
        for (std::size_t j = 0; j < cq.nodes.size(); ++j) s += cq.weights[j] * std::exp(horocycle_bracket(z, cq.nodes[j]));
        EXPECT_NEAR(s, 1.0, 1e-8);
    }
}

TEST(MeasureInvariance, InvariantMeasureOnXB)
{
    // f(z, b) compactly supported in z; compare int f(gz, gb) e^{<z,b>} with
    // int f(z, b) e^{<z,b>}.
    const DiskPoint c({0.1, 0.05});
    const double r0 = 1.0;
    auto f = [&](cplx z, cplx b) -> double {
        const double d = hyperbolic_distance(z, c.z());
        if (d >= r0) return 0.0;
        return std::exp(-1.0 / (1.0 - (d / r0) * (d / r0))) * (1.5 + std::real(b * std::conj(cplx(0.6, 0.8))));
    };
    const auto g = sl2_k(0.7) * sl2_a(0.8) * sl2_n(0.3);
    const auto cq = circle_quadrature(128);
    // The pulled-back integrand lives near g^{-1} c.
    const auto q1 = centered(disk_quadrature(r0, 160, 128, RadialRule::GaussLegendre), c);
    const auto q2 = centered(disk_quadrature(r0, 160, 128, RadialRule::GaussLegendre), act(g.inverse(), c));
    double a = 0, b = 0;
    for (std::size_t i = 0; i < q1.nodes.size(); ++i)
        for (std::size_t j = 0; j < cq.nodes.size(); ++j) {
            const cplx bb = cq.nodes[j].b();
            a += q1.weights[i] * cq.weights[j] * f(q1.nodes[i].z(), bb) * std::exp(horocycle_bracket(q1.nodes[i].z(), bb));
            const cplx z2 = q2.nodes[i].z();
            b += q2.weights[i] * cq.weights[j] * f(mobius(g, z2), mobius(g, bb)) * std::exp(horocycle_bracket(z2, bb));
        }
    EXPECT_LE(std::abs(a - b) / std::abs(a), 1e-5);
}

TEST(Laplacian, PlaneWaveEigenvalueAndOrder)
{
    const double lambda = 1.0;
    auto e = [&](DiskPoint z) { return std::exp(cplx(0.5, lambda) * horocycle_bracket(z, BoundaryPoint(0.0))); };
    const DiskPoint z(0.3);
    const cplx expect = -(lambda * lambda + 0.25) * e(z);
    double errs[3];
    double h = 1e-2;
    for (double& err : errs) {
        err = std::abs(hyperbolic_laplacian_fd(e, z, h) - expect);
        h /= 2;
    }
    EXPECT_LT(errs[0], 1e-3);
    EXPECT_GE(std::log2(errs[0] / errs[1]), 1.8);
    EXPECT_GE(std::log2(errs[1] / errs[2]), 1.8);
}

TEST(Laplacian, ConstantAndGuards)
{
    auto one = [](DiskPoint) { return cplx(1.0); };
    EXPECT_NEAR(std::abs(hyperbolic_laplacian_fd(one, DiskPoint(0.2), 1e-3)), 0.0, 1e-9);
    EXPECT_THROW(hyperbolic_laplacian_fd(one, DiskPoint(0.2), 0.1), DomainError);
    EXPECT_THROW(hyperbolic_laplacian_fd(one, DiskPoint(0.995), 1e-2), DomainError);
}
