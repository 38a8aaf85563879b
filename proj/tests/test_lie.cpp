#include "psd/errors.hpp"
#include "psd/lie.hpp"
#include "test_config.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace psd;
using psd::testing::max_abs;
using psd::testing::random_sl;

namespace {

GroupTag tag_for(int n) { return n == 2 ? GroupTag::SL2 : GroupTag::SL3; }

Mat recompose(const IwasawaKAN& f, GroupTag tag, Eigen::Index dim) { return f.k * a_matrix(tag, f.aLog, dim) * f.n; }

bool unit_upper(const Mat& n)
{
    for (Eigen::Index i = 0; i < n.rows(); ++i) {
        if (std::abs(n(i, i) - 1.0) > 1e-12) return false;
        for (Eigen::Index j = 0; j < i; ++j)
            if (n(i, j) != 0.0) return false;
    }
    return true;
}

}  // namespace

TEST(Iwasawa, DiagonalElementIsPureA)
{
    Mat m(2, 2);
    m << std::exp(0.5), 0, 0, std::exp(-0.5);
    const auto f = iwasawa_kan(GroupElement(m, GroupTag::SL2));
    EXPECT_LT(max_abs(f.k - Mat::Identity(2, 2)), 1e-15);
    EXPECT_NEAR(f.aLog(0), 1.0, 1e-15);
    EXPECT_LT(max_abs(f.n - Mat::Identity(2, 2)), 1e-15);
}

TEST(Iwasawa, InverseUnipotentTimesWeyl)
{
    const auto g = sl2_n(1.0).inverse() * weyl_longest(GroupTag::SL2);
    EXPECT_NEAR(iwasawa_kan(g).aLog(0), std::log(2.0), 1e-14);
}

TEST(Iwasawa, RandomReconstructionSL2SL3)
{
    auto gen = psd::testing::rng(1);
    for (int n : {2, 3}) {
        for (int i = 0; i < 1000; ++i) {
            const GroupElement g(random_sl(gen, n), tag_for(n));
            const auto f = iwasawa_kan(g);
            EXPECT_LT(max_abs(recompose(f, g.tag(), n) - g.matrix()), 1e-10);
            EXPECT_LT(max_abs(f.k.transpose() * f.k - Mat::Identity(n, n)), 1e-12);
            EXPECT_NEAR(f.k.determinant(), 1.0, 1e-12);
            EXPECT_TRUE(unit_upper(f.n));
        }
    }
}

TEST(Iwasawa, Deterministic)
{
    auto gen = psd::testing::rng(2);
    const GroupElement g(random_sl(gen, 3), GroupTag::SL3);
    const auto a = iwasawa_kan(g);
    const auto b = iwasawa_kan(g);
    EXPECT_TRUE((a.k.array() == b.k.array()).all());
    EXPECT_TRUE((a.aLog.array() == b.aLog.array()).all());
    EXPECT_TRUE((a.n.array() == b.n.array()).all());
}

TEST(IwasawaH, KAndA)
{
    for (double th : {0.0, 0.3, 1.7, -2.9}) EXPECT_NEAR(iwasawa_H(sl2_k(th))(0), 0.0, 1e-14);
    for (double t : {-3.0, -0.2, 0.0, 1.0, 4.5}) EXPECT_NEAR(iwasawa_H(sl2_a(t))(0), t, 1e-13);
}

TEST(IwasawaH, LeftKRightNInvariance)
{
    auto gen = psd::testing::rng(3);
    std::uniform_real_distribution<double> ud(-3, 3);
    for (int i = 0; i < 100; ++i) {
        const GroupElement g(random_sl(gen, 2), GroupTag::SL2);
        const double h = iwasawa_H(g)(0);
        EXPECT_NEAR(iwasawa_H(sl2_k(ud(gen)) * g * sl2_n(ud(gen)))(0), h, 1e-10);
    }
}

TEST(IwasawaH, EqualsMinusAOfInverse)
{
    // Oracle for A(g): the last row of g = n a k has norm a_last, so for SL2
    // A(g) = -ln(g10^2 + g11^2).
    auto gen = psd::testing::rng(4);
    for (int i = 0; i < 200; ++i) {
        const GroupElement g(random_sl(gen, 2), GroupTag::SL2);
        const Mat gi = g.inverse().matrix();
        const double aOfInverse = -std::log(gi(1, 0) * gi(1, 0) + gi(1, 1) * gi(1, 1));
        EXPECT_NEAR(iwasawa_H(g)(0), -aOfInverse, 1e-10);
        EXPECT_NEAR(iwasawa_nak(g.inverse()).aLog(0), aOfInverse, 1e-10);
    }
}

TEST(IwasawaNAK, Examples)
{
    const auto fa = iwasawa_nak(sl2_a(0.8));
    EXPECT_LT(max_abs(fa.n - Mat::Identity(2, 2)), 1e-14);
    EXPECT_NEAR(fa.aLog(0), 0.8, 1e-14);
    EXPECT_LT(max_abs(fa.k - Mat::Identity(2, 2)), 1e-14);
    const auto fn = iwasawa_nak(sl2_n(1.7));
    EXPECT_LT(max_abs(fn.n - sl2_n(1.7).matrix()), 1e-14);
    EXPECT_NEAR(fn.aLog(0), 0.0, 1e-14);
    EXPECT_LT(max_abs(fn.k - Mat::Identity(2, 2)), 1e-14);
}

TEST(IwasawaNAK, RandomReconstruction)
{
    auto gen = psd::testing::rng(5);
    for (int n : {2, 3}) {
        for (int i = 0; i < 500; ++i) {
            const GroupElement g(random_sl(gen, n), tag_for(n));
            const auto f = iwasawa_nak(g);
            const Mat rec = f.n * a_matrix(g.tag(), f.aLog, n) * f.k;
            EXPECT_LT(max_abs(rec - g.matrix()), 1e-10);
            // Independent check of the last A coordinate from the last row.
            if (n == 3) EXPECT_NEAR(f.aLog(2), std::log(g.matrix().row(2).norm()), 1e-10);
        }
    }
}

TEST(Cartan, PureA)
{
    const auto f = cartan_kak(sl2_a(1.4));
    EXPECT_NEAR(f.aLog(0), 0.7, 1e-13);
    EXPECT_NEAR(f.aLog(1), -0.7, 1e-13);
}

TEST(Cartan, LogSingularValuesAndReconstruction)
{
    auto gen = psd::testing::rng(6);
    for (int n : {2, 3}) {
        for (int i = 0; i < 300; ++i) {
            const GroupElement g(random_sl(gen, n), tag_for(n));
            const auto f = cartan_kak(g);
            Eigen::SelfAdjointEigenSolver<Mat> es(g.matrix().transpose() * g.matrix());
            Vec oracle = (0.5 * es.eigenvalues().array().log()).matrix().reverse();
            // The eigenvalues of g^T g lose about cond(g)^2 eps in the small
            // singular values, so the oracle is only good to ~1e-9.
            EXPECT_LT((f.aLog - oracle).cwiseAbs().maxCoeff(), 1e-8);
            EXPECT_LT(max_abs(f.k1 * f.aLog.array().exp().matrix().asDiagonal() * f.k2 - g.matrix()), 1e-10);
            EXPECT_NEAR(f.aLog.sum(), 0.0, 1e-12);
            for (Eigen::Index j = 1; j < n; ++j) EXPECT_GE(f.aLog(j - 1), f.aLog(j));
            EXPECT_NEAR(f.k1.determinant(), 1.0, 1e-12);
            EXPECT_NEAR(f.k2.determinant(), 1.0, 1e-12);
        }
    }
}

TEST(Cartan, KBiInvariance)
{
    auto gen = psd::testing::rng(7);
    for (int i = 0; i < 100; ++i) {
        const GroupElement g(random_sl(gen, 3), GroupTag::SL3);
        const Mat k = cartan_kak(GroupElement(random_sl(gen, 3), GroupTag::SL3)).k1;
        const Mat k2 = iwasawa_kan(GroupElement(random_sl(gen, 3), GroupTag::SL3)).k;
        const auto a = cartan_kak(g).aLog;
        const auto b = cartan_kak(GroupElement(k * g.matrix() * k2, GroupTag::SL3)).aLog;
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Weyl, Representatives)
{
    Mat w2(2, 2);
    w2 << 0, 1, -1, 0;
    EXPECT_EQ(weyl_longest(GroupTag::SL2).matrix(), w2);
    Mat w3(3, 3);
    w3 << 0, 0, 1, 0, -1, 0, 1, 0, 0;
    EXPECT_EQ(weyl_longest(GroupTag::SL3).matrix(), w3);
    for (int n : {2, 3, 4, 5, 6}) {
        const auto w = weyl_longest(GroupTag::SLn, n);
        const Mat sq = w.matrix() * w.matrix();
        EXPECT_TRUE(sq.isDiagonal());
        EXPECT_TRUE((sq.diagonal().array().abs() == 1.0).all());
    }
}

TEST(Weyl, ActionOnA)
{
    const auto w = weyl_longest(GroupTag::SL2);
    const double t = 0.9;
    const Mat conj = w.matrix() * sl2_a(t).matrix() * w.inverse().matrix();
    EXPECT_LT(max_abs(conj - sl2_a(-t).matrix()), 1e-15);
    EXPECT_NEAR(weyl_act(GroupTag::SL2, Vec::Constant(1, t))(0), -t, 0);

    const auto w3 = weyl_longest(GroupTag::SL3);
    Vec a(3);
    a << 0.7, -0.2, -0.5;
    const Mat c3 = w3.matrix() * a.array().exp().matrix().asDiagonal() * w3.inverse().matrix();
    const Vec got = c3.diagonal().array().log().matrix();
    EXPECT_LT((got - weyl_act(GroupTag::SL3, a)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_GT((weyl_act(GroupTag::SL3, a) + a).cwiseAbs().maxCoeff(), 0.1);
}

TEST(Hnw, SL2GridSymmetric)
{
    for (int i = 0; i <= 200; ++i) {
        const double u = -5.0 + 0.05 * i;
        const auto r = check_Hnw_symmetry(GroupTag::SL2, Vec::Constant(1, u));
        EXPECT_LE(r.residual, 1e-10);
        EXPECT_NEAR(r.sPrime, std::log1p(u * u), 1e-10);
    }
}

TEST(Hnw, SL3CounterexampleAndSymmetricPoint)
{
    Vec p(3);
    p << 1, 1, 1;
    const auto r = check_Hnw_symmetry(GroupTag::SL3, p);
    EXPECT_NEAR(r.s, 0.5 * std::log(3.0), 1e-10);
    EXPECT_NEAR(r.sPrime, 0.5 * std::log(2.0), 1e-10);
    EXPECT_NEAR(r.residual, 0.5 * std::log(1.5), 1e-10);

    // Oracle: the first column of k a n has norm a_1.
    p << 0, 1, 1;
    const auto q = check_Hnw_symmetry(GroupTag::SL3, p);
    Mat n(3, 3);
    n << 1, 0, 1, 0, 1, 1, 0, 0, 1;
    const Mat w = weyl_longest(GroupTag::SL3).matrix();
    EXPECT_NEAR(q.s, std::log((n * w).col(0).norm()), 1e-12);
    EXPECT_NEAR(q.sPrime, std::log((n.inverse() * w).col(0).norm()), 1e-12);
    EXPECT_LE(q.residual, 1e-12);
}

TEST(Hnw, UnsupportedTag)
{
    EXPECT_THROW(check_Hnw_symmetry(GroupTag::SLn, Vec::Zero(3)), DomainError);
}

TEST(Cocycle, SL2)
{
    auto gen = psd::testing::rng(8);
    std::uniform_real_distribution<double> ud(-3, 3);
    for (int i = 0; i < 200; ++i) {
        const GroupElement g1(random_sl(gen, 2), GroupTag::SL2);
        const GroupElement g2(random_sl(gen, 2), GroupTag::SL2);
        const auto k = sl2_k(ud(gen));
        const auto g2k = g2 * k;
        const GroupElement kk = GroupElement::trusted(iwasawa_kan(g2k).k, GroupTag::SL2);
        const double lhs = iwasawa_H(g1 * g2k)(0);
        const double rhs = iwasawa_H(g1 * kk)(0) + iwasawa_H(g2k)(0);
        EXPECT_NEAR(lhs, rhs, 1e-9);
    }
}

TEST(GroupElement, RejectsInvariantViolations)
{
    Mat m(2, 2);
    m << 2, 0, 0, 1;
    EXPECT_THROW(GroupElement(m, GroupTag::SL2), DomainError);
    Mat s = Mat::Identity(3, 3);
    s(0, 1) = 0.5;
    EXPECT_THROW(GroupElement(s, GroupTag::SOH), DomainError);
    EXPECT_THROW(cartan_kak(soh_a(2, 0.3)), DomainError);
}

TEST(Hyperbolic, ExamplesAndAgreement)
{
    for (double t : {-1.5, 0.0, 0.4, 2.0}) EXPECT_NEAR(hyperbolic_H(soh_a(3, t)), t, 1e-13);
    auto gen = psd::testing::rng(9);
    for (int i = 0; i < 100; ++i) {
        const Mat rot = iwasawa_kan(GroupElement(random_sl(gen, 3), GroupTag::SL3)).k;
        EXPECT_NEAR(hyperbolic_H(soh_k(rot)), 0.0, 1e-13);
        std::normal_distribution<double> nd;
        Vec z(2);
        z << nd(gen), nd(gen);
        const double t = nd(gen);
        const auto g = soh_k(rot) * soh_a(3, t) * soh_n(z);
        const GroupElement checked(g.matrix(), GroupTag::SOH);
        EXPECT_NEAR(hyperbolic_H(checked), t, 1e-10);
        const auto f = iwasawa_kan(checked);
        EXPECT_NEAR(f.aLog(0), t, 1e-10);
        EXPECT_LT(max_abs(f.k * soh_a(3, f.aLog(0)).matrix() * f.n - g.matrix()), 1e-10);
    }
}

TEST(Hyperbolic, HnwSymmetricAndMatrixOracle)
{
    auto gen = psd::testing::rng(10);
    std::normal_distribution<double> nd;
    for (int dimZ : {1, 2, 3}) {
        for (int i = 0; i < 50; ++i) {
            Vec z(dimZ);
            for (int j = 0; j < dimZ; ++j) z(j) = nd(gen);
            const auto r = check_Hnw_symmetry(GroupTag::SOH, z);
            EXPECT_LE(r.residual, 1e-10);
            // Matrix oracle: the SOH KAN factorisation of n(z) w.
            const auto w = weyl_longest(GroupTag::SOH, dimZ + 2);
            EXPECT_NEAR(iwasawa_kan(soh_n(z) * w).aLog(0), r.s, 1e-10);
            EXPECT_NEAR(r.s, std::log1p(z.squaredNorm()), 1e-10);
        }
    }
}

TEST(Hyperbolic, UnipotentGroupLawAndNormalisation)
{
    Vec z(3), y(3);
    z << 0.3, -1.1, 0.4;
    y << -0.7, 0.2, 1.5;
    EXPECT_LT(max_abs((soh_n(z) * soh_n(y)).matrix() - soh_n(z + y).matrix()), 1e-13);
    const Mat c = soh_a(4, 0.8).matrix() * soh_n(z).matrix() * soh_a(4, -0.8).matrix();
    EXPECT_LT(max_abs(c - soh_n(std::exp(0.8) * z).matrix()), 1e-12);
    EXPECT_NO_THROW(GroupElement(soh_n(z).matrix(), GroupTag::SOH));
}

TEST(Hyperbolic, WeylReversesA)
{
    const auto w = weyl_longest(GroupTag::SOH, 4);
    const Mat c = w.matrix() * soh_a(3, 0.6).matrix() * w.inverse().matrix();
    EXPECT_LT(max_abs(c - soh_a(3, -0.6).matrix()), 1e-15);
}

TEST(RootDatum, Rho)
{
    EXPECT_DOUBLE_EQ(RootDatum::rank_one(1, 0).rho, 0.5);
    EXPECT_DOUBLE_EQ(RootDatum::rank_one(2, 1).rho, 2.0);
    EXPECT_THROW(RootDatum::rank_one(-1, 0), DomainError);
}
