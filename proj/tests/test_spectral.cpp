#include "psd/errors.hpp"
#include "psd/gamma.hpp"
#include "psd/geometry.hpp"
#include "psd/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace psd;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

struct GammaCase {
    cplx z;
    cplx value;
};

// Reference values from mpmath at 30 digits.
const GammaCase kGamma[] = {
    {{0.5, 0.0}, {1.7724538509055160273, 0.0}},
    {{1.0, 0.0}, {1.0, 0.0}},
    {{2.5, 1.5}, {0.30993622584074135331, 0.73408427362148133942}},
    {{0.25, 3.0}, {0.017050323934244119273, -0.001596877420381335891}},
    {{-1.3, 0.7}, {0.33564153989846105603, 0.58860803646763072601}},
    {{0.0, 2.0}, {0.009902440080927490986, -0.075952001335018068724}},
    {{0.75, 0.5}, {0.83492996597374684817, -0.40638188005813243326}},
    {{0.5, 12.0}, {8.4431213281152169409e-9, -1.3971152072226017141e-8}},
    {{-4.5, -2.2}, {0.00017032793443914526816, -0.000086399627740691922639}},
    {{7.1, -0.3}, {728.23695192685025795, -463.198614850312953}},
};

const RootDatum kSL2 = RootDatum::rank_one(1, 0);

}  // namespace

TEST(Gamma, ReferenceValues)
{
    for (const auto& c : kGamma) {
        const cplx g = gamma(c.z);
        EXPECT_LE(std::abs(g - c.value) / std::abs(c.value), 1e-12) << c.z;
        EXPECT_LE(std::abs(rgamma(c.z) * c.value - 1.0), 1e-12);
    }
}

TEST(Gamma, RealAxisAgainstStd)
{
    for (double x = -3.7; x < 12.0; x += 0.31) EXPECT_LE(std::abs(psd::gamma(cplx(x, 0.0)).real() / std::tgamma(x) - 1.0), 1e-12) << x;
}

TEST(Gamma, Poles)
{
    EXPECT_THROW(psd::gamma(cplx(0.0)), SingularityError);
    EXPECT_THROW(gamma(cplx(-3.0, 1e-10)), SingularityError);
    EXPECT_EQ(rgamma(-2.0), cplx(0.0));
}

TEST(CFunction, Normalisation)
{
    EXPECT_LE(std::abs(c_function(cplx(0, -0.5), kSL2) - 1.0), 1e-12);
    for (auto [ma, m2] : {std::pair{2, 0}, {3, 0}, {2, 1}, {4, 3}, {6, 1}}) {
        const auto r = RootDatum::rank_one(ma, m2);
        EXPECT_LE(std::abs(c_function(-I * r.rho, r) - 1.0), 1e-12);
    }
}

TEST(CFunction, ClosedFormSL2)
{
    // Oracle: Gamma(i l) / (sqrt(pi) Gamma(1/2 + i l)) from the duplication formula.
    for (double l : {0.3, 1.0, 2.7, 6.0}) {
        const cplx oracle = gamma(I * l) / (std::sqrt(kPi) * gamma(0.5 + I * l));
        EXPECT_LE(std::abs(c_function(l, kSL2) - oracle), 1e-12 * std::abs(oracle));
    }
}

TEST(CFunction, ProductEqualsIntegral)
{
    for (int i = 0; i < 20; ++i) {
        const double re = 0.2 + 1.8 * i / 19.0;
        const double im = -2.0 + 4.0 * ((i * 7) % 20) / 19.0;
        const cplx s(re, im);  // s = i lambda
        const cplx lambda = -I * s;
        EXPECT_LE(std::abs(c_function(lambda, kSL2) - c_function_integral(lambda)), 1e-6) << s;
    }
    EXPECT_LE(std::abs(c_function_integral(cplx(0, -0.5)) - 1.0), 1e-10);
    EXPECT_LE(std::abs(c_function_integral(cplx(0, -1.0)) - c_function(cplx(0, -1.0), kSL2)), 1e-6);
    EXPECT_THROW(c_function_integral(1.0), DomainError);
}

TEST(CFunction, ModulusSquaredPositive)
{
    for (double l : {0.1, 0.5, 3.0, 10.0}) {
        const cplx p = c_function(l, kSL2) * c_function(-l, kSL2);
        EXPECT_GT(p.real(), 0.0);
        EXPECT_LE(std::abs(p.imag()), 1e-14 * p.real());
    }
}

TEST(CFunction, PoleGuard)
{
    EXPECT_THROW(c_function(0.0, kSL2), SingularityError);
    EXPECT_THROW(c_function(cplx(0, 1.0), kSL2), SingularityError);
}

TEST(Plancherel, CaseSelection)
{
    EXPECT_EQ(plancherel_case(RootDatum::rank_one(2, 0)), PlancherelCase::A);
    EXPECT_EQ(plancherel_case(RootDatum::rank_one(1, 0)), PlancherelCase::B);
    EXPECT_EQ(plancherel_case(RootDatum::rank_one(4, 3)), PlancherelCase::C);
    EXPECT_EQ(plancherel_case(RootDatum::rank_one(2, 1)), PlancherelCase::D);
    EXPECT_THROW(plancherel_case(RootDatum::rank_one(3, 1)), DomainError);
    EXPECT_THROW(plancherel_case(RootDatum::rank_one(2, 2)), DomainError);
}

TEST(Plancherel, RatioConstantSL2)
{
    const double r0 = plancherel_density(0.5, kSL2) / (0.5 * std::tanh(kPi * 0.5));
    for (double l : {1.0, 2.0, 4.0}) EXPECT_NEAR(plancherel_density(l, kSL2) / (l * std::tanh(kPi * l)) / r0, 1.0, 1e-8);
    // Gamma identity |c|^{-2} = pi lambda tanh(pi lambda).
    EXPECT_NEAR(r0, kPi, 1e-10);
}

TEST(Plancherel, EvenCaseIsPolynomial)
{
    const auto r = RootDatum::rank_one(2, 0);
    const double c = plancherel_density(1.0, r);
    for (double l : {0.5, 2.0, 3.0}) EXPECT_NEAR(plancherel_density(l, r), c * l * l, 1e-10 * c * l * l);
}

TEST(Plancherel, AllCasesMatchCFunction)
{
    for (auto [ma, m2] : {std::pair{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {2, 1}, {4, 1}, {4, 3}, {6, 1}, {8, 7}}) {
        const auto r = RootDatum::rank_one(ma, m2);
        for (double l : {0.25, 0.7, 1.3, 2.0, 5.0, 8.0}) {
            const cplx cc = c_function(l, r) * c_function(-l, r);
            EXPECT_NEAR(plancherel_density(l, r) * cc.real(), 1.0, 1e-7) << ma << "," << m2 << " l=" << l;
            EXPECT_NEAR(plancherel_density(-l, r), plancherel_density(l, r), 1e-12 * plancherel_density(l, r));
        }
    }
}

TEST(Plancherel, PositiveAndIncreasing)
{
    double prev = 0;
    for (double l = 0.05; l < 20; l += 0.05) {
        const double d = plancherel_density(l, kSL2);
        EXPECT_GT(d, prev);
        prev = d;
    }
}

TEST(EFunction, Values)
{
    // mpmath reference for m = (1,0), lambda = 1.3.
    const cplx e = e_function(1.3, kSL2);
    EXPECT_LE(std::abs(e - cplx(-0.20622652147614157387, -0.78870194101021336136)), 1e-12);
    for (double l = -6; l <= 6; l += 0.25) {
        if (l == 0) continue;
        EXPECT_GT(std::abs(e_function(l, kSL2)), 1e-12);
        const cplx a = e_function(cplx(-l, -0.3), kSL2);
        const cplx b = std::conj(e_function(cplx(l, -0.3), kSL2));
        EXPECT_LE(std::abs(a - b), 1e-12 * std::abs(a));
    }
}

TEST(Eigenvalue, FormulaAndFiniteDifference)
{
    EXPECT_NEAR(laplace_eigenvalue(0.0, kSL2).real(), -0.25, 0);
    EXPECT_NEAR(laplace_eigenvalue(1.0, kSL2).real(), -1.25, 0);
    for (double l : {0.5, 1.0, 2.0}) {
        auto e = [&](DiskPoint z) { return std::exp(cplx(0.5, l) * horocycle_bracket(z, BoundaryPoint(1.0))); };
        const DiskPoint z({0.2, -0.3});
        const cplx fd = hyperbolic_laplacian_fd(e, z, 2.5e-3);
        EXPECT_LE(std::abs(fd - laplace_eigenvalue(l, kSL2) * e(z)), 1e-4);
    }
}
