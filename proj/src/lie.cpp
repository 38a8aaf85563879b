#include "psd/lie.hpp"

#include "psd/errors.hpp"

#include <cmath>
#include <string>

namespace psd {

namespace {

double scale_of(const Mat& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

Mat soh_form(Eigen::Index dim)
{
    Mat j = -Mat::Identity(dim, dim);
    j(0, 0) = 1.0;
    return j;
}

void require_square(const Mat& m)
{
    if (m.rows() != m.cols() || m.rows() < 2)
        throw DomainError("group element must be a square matrix of size >= 2");
}

}  // namespace

std::string_view tag_name(GroupTag tag)
{
    switch (tag) {
    case GroupTag::SL2: return "SL2";
    case GroupTag::SL3: return "SL3";
    case GroupTag::SLn: return "SLn";
    case GroupTag::SOH: return "SOH";
    }
    return "?";
}

GroupElement::GroupElement(Mat m, GroupTag tag) : m_(std::move(m)), tag_(tag)
{
    require_square(m_);
    if (tag_ == GroupTag::SL2 && m_.rows() != 2)
        throw DomainError("SL2 element must be 2x2");
    if (tag_ == GroupTag::SL3 && m_.rows() != 3)
        throw DomainError("SL3 element must be 3x3");
    if (!m_.allFinite())
        throw DomainError("group element has non-finite entries");
    const double s = scale_of(m_);
    const double det = m_.determinant();
    if (std::abs(det - 1.0) > 1e-10 * std::pow(s, static_cast<double>(m_.rows())))
        throw DomainError("invariant violated: |det - 1| > 1e-10 (det = " + std::to_string(det) + ")");
    if (tag_ == GroupTag::SOH) {
        if (m_.rows() < 3)
            throw DomainError("SOH(n) needs n >= 2");
        const Mat j = soh_form(m_.rows());
        if ((m_.transpose() * j * m_ - j).cwiseAbs().maxCoeff() > 1e-10 * s * s)
            throw DomainError("invariant violated: matrix does not preserve the form of signature (1,n)");
    }
}

GroupElement GroupElement::trusted(Mat m, GroupTag tag) { return GroupElement(std::move(m), tag, Trusted{}); }

GroupElement GroupElement::operator*(const GroupElement& o) const
{
    if (o.tag_ != tag_ || o.dim() != dim())
        throw DomainError("product of elements from different groups");
    return trusted(m_ * o.m_, tag_);
}

GroupElement GroupElement::inverse() const
{
    if (tag_ == GroupTag::SL2) {
        Mat inv(2, 2);
        inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
        return trusted(std::move(inv), tag_);
    }
    if (tag_ == GroupTag::SOH) {
        const Mat j = soh_form(dim());
        return trusted(j * m_.transpose() * j, tag_);
    }
    return trusted(m_.inverse(), tag_);
}

RootDatum RootDatum::rank_one(int mAlpha, int m2Alpha)
{
    if (mAlpha < 0 || m2Alpha < 0)
        throw DomainError("root multiplicities must be non-negative");
    if (mAlpha == 0)
        throw DomainError("m_alpha must be positive");
    return RootDatum{1, mAlpha, m2Alpha, 0.5 * (mAlpha + 2.0 * m2Alpha)};
}

GroupElement sl2_a(double t)
{
    Mat m(2, 2);
    m << std::exp(t / 2), 0.0, 0.0, std::exp(-t / 2);
    return GroupElement::trusted(std::move(m), GroupTag::SL2);
}

GroupElement sl2_n(double u)
{
    Mat m(2, 2);
    m << 1.0, u, 0.0, 1.0;
    return GroupElement::trusted(std::move(m), GroupTag::SL2);
}

GroupElement sl2_nbar(double v)
{
    Mat m(2, 2);
    m << 1.0, 0.0, v, 1.0;
    return GroupElement::trusted(std::move(m), GroupTag::SL2);
}

GroupElement sl2_k(double theta)
{
    const double c = std::cos(theta), s = std::sin(theta);
    Mat m(2, 2);
    m << c, s, -s, c;
    return GroupElement::trusted(std::move(m), GroupTag::SL2);
}

GroupElement soh_a(int n, double t)
{
    if (n < 2)
        throw DomainError("SOH(n) needs n >= 2");
    Mat m = Mat::Identity(n + 1, n + 1);
    m(0, 0) = m(n, n) = std::cosh(t);
    m(0, n) = m(n, 0) = std::sinh(t);
    return GroupElement::trusted(std::move(m), GroupTag::SOH);
}

GroupElement soh_n(const Vec& z)
{
    const auto n = z.size() + 1;
    if (n < 2)
        throw DomainError("SOH(n) needs n >= 2");
    const double h = 0.5 * z.squaredNorm();
    Mat m = Mat::Identity(n + 1, n + 1);
    m(0, 0) = 1.0 + h;
    m(0, n) = -h;
    m(n, 0) = h;
    m(n, n) = 1.0 - h;
    m.block(0, 1, 1, n - 1) = z.transpose();
    m.block(n, 1, 1, n - 1) = z.transpose();
    m.block(1, 0, n - 1, 1) = z;
    m.block(1, n, n - 1, 1) = -z;
    return GroupElement::trusted(std::move(m), GroupTag::SOH);
}

GroupElement soh_k(const Mat& rotation)
{
    const auto n = rotation.rows();
    Mat m = Mat::Zero(n + 1, n + 1);
    m(0, 0) = rotation.determinant() > 0 ? 1.0 : -1.0;
    m.block(1, 1, n, n) = rotation;
    return GroupElement(std::move(m), GroupTag::SOH);
}

Mat a_matrix(GroupTag tag, const Vec& aLog, Eigen::Index dim)
{
    switch (tag) {
    case GroupTag::SL2: return sl2_a(aLog(0)).matrix();
    case GroupTag::SOH: return soh_a(static_cast<int>(dim - 1), aLog(0)).matrix();
    default: return aLog.array().exp().matrix().asDiagonal();
    }
}

namespace {

IwasawaKAN kan_sl(const GroupElement& g)
{
    Eigen::HouseholderQR<Mat> qr(g.matrix());
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    const auto n = r.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (r(i, i) < 0) {
            q.col(i) *= -1.0;
            r.row(i) *= -1.0;
        }
    }
    Vec d = r.diagonal();
    Mat nn = d.cwiseInverse().asDiagonal() * r;
    for (Eigen::Index i = 0; i < n; ++i) nn(i, i) = 1.0;
    IwasawaKAN out{std::move(q), Vec(), std::move(nn)};
    if (g.tag() == GroupTag::SL2) {
        out.aLog = Vec::Constant(1, std::log(d(0)) - std::log(d(1)));
    } else {
        out.aLog = d.array().log().matrix();
    }
    return out;
}

// Reflection-based rotation Q in O(n) with Q * e_last = e and det Q = sign.
Mat rotation_to(const Vec& e, double sign)
{
    const auto n = e.size();
    Mat q = Mat::Identity(n, n);
    Vec v = e;
    v(n - 1) -= 1.0;
    if (v.norm() > 1e-14) {
        q -= 2.0 * v * v.transpose() / v.squaredNorm();
    }
    if ((q.determinant() > 0) != (sign > 0)) q.col(0) *= -1.0;
    return q;
}

IwasawaKAN kan_soh(const GroupElement& g)
{
    const auto dim = g.dim();
    const auto n = dim - 1;
    Vec xi = Vec::Zero(dim);
    xi(0) = xi(n) = 1.0;
    const Vec v = g.matrix() * xi;
    const double t = std::log(std::abs(v(0)));
    const double sigma = v(0) > 0 ? 1.0 : -1.0;
    const Vec e = v.tail(n) / v.tail(n).norm();
    Mat k0 = Mat::Zero(dim, dim);
    k0(0, 0) = sigma;
    k0.block(1, 1, n, n) = rotation_to(e, sigma);
    const Mat p = soh_a(static_cast<int>(n), -t).matrix() * k0.transpose() * g.matrix();
    const Mat vb = p.block(1, 1, n - 1, n - 1);
    const Vec z = vb.transpose() * p.block(1, 0, n - 1, 1);
    Mat m = Mat::Identity(dim, dim);
    m.block(1, 1, n - 1, n - 1) = vb;
    return IwasawaKAN{k0 * m, Vec::Constant(1, t), soh_n(z).matrix()};
}

}  // namespace

IwasawaKAN iwasawa_kan(const GroupElement& g)
{
    return g.tag() == GroupTag::SOH ? kan_soh(g) : kan_sl(g);
}

Vec iwasawa_H(const GroupElement& g) { return iwasawa_kan(g).aLog; }

double sl2_H(const Eigen::Matrix2d& g) { return std::log(g(0, 0) * g(0, 0) + g(1, 0) * g(1, 0)); }

IwasawaNAK iwasawa_nak(const GroupElement& g)
{
    IwasawaKAN inv = iwasawa_kan(g.inverse());
    Mat n = g.tag() == GroupTag::SOH ? GroupElement::trusted(inv.n, g.tag()).inverse().matrix()
                                     : Mat(inv.n.inverse());
    return IwasawaNAK{std::move(n), -inv.aLog, inv.k.transpose()};
}

CartanKAK cartan_kak(const GroupElement& g)
{
    if (g.tag() == GroupTag::SOH)
        throw DomainError("cartan_kak expects a real SL tag");
    Eigen::JacobiSVD<Mat> svd(g.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat u = svd.matrixU();
    Mat v = svd.matrixV();
    if (u.determinant() < 0) {
        u.col(u.cols() - 1) *= -1.0;
        v.col(v.cols() - 1) *= -1.0;
    }
    Vec aLog = svd.singularValues().array().log().matrix();
    aLog.array() -= aLog.mean();
    return CartanKAK{std::move(u), std::move(aLog), v.transpose()};
}

GroupElement weyl_longest(GroupTag tag, int dim)
{
    switch (tag) {
    case GroupTag::SL2: dim = 2; break;
    case GroupTag::SL3: dim = 3; break;
    case GroupTag::SLn:
        if (dim < 2) throw DomainError("weyl_longest(SLn) needs dim >= 2");
        break;
    case GroupTag::SOH: {
        if (dim < 3) throw DomainError("weyl_longest(SOH) needs dim >= 3");
        Mat m = Mat::Identity(dim, dim);
        m(1, 1) = -1.0;
        m(dim - 1, dim - 1) = -1.0;
        return GroupElement(std::move(m), tag);
    }
    }
    Mat m = Mat::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) m(k, dim - 1 - k) = 1.0;
    if ((dim * (dim - 1) / 2) % 2 == 1) m(dim / 2, dim - 1 - dim / 2) = -1.0;
    return GroupElement(std::move(m), tag);
}

Vec weyl_act(GroupTag tag, const Vec& aLog)
{
    if (tag == GroupTag::SL2 || tag == GroupTag::SOH) return -aLog;
    return aLog.reverse();
}

HnwRecord check_Hnw_symmetry(GroupTag tag, const Vec& p)
{
    switch (tag) {
    case GroupTag::SL2: {
        if (p.size() != 1) throw DomainError("SL2 expects one parameter u");
        const auto w = weyl_longest(tag);
        const double s = iwasawa_H(sl2_n(p(0)) * w)(0);
        const double sp = iwasawa_H(sl2_n(-p(0)) * w)(0);
        return {s, sp, std::abs(s - sp)};
    }
    case GroupTag::SL3: {
        if (p.size() != 3) throw DomainError("SL3 expects parameters (d, e, f)");
        Mat n(3, 3);
        n << 1, p(0), p(1), 0, 1, p(2), 0, 0, 1;
        const auto ng = GroupElement::trusted(n, tag);
        const auto w = weyl_longest(tag);
        const double s = iwasawa_H(ng * w)(0);
        const double sp = iwasawa_H(ng.inverse() * w)(0);
        return {s, sp, std::abs(s - sp)};
    }
    case GroupTag::SOH: {
        const auto w = weyl_longest(tag, static_cast<int>(p.size() + 2));
        const double s = hyperbolic_H(soh_n(p) * w);
        const double sp = hyperbolic_H(soh_n(-p) * w);
        return {s, sp, std::abs(s - sp)};
    }
    case GroupTag::SLn: break;
    }
    throw DomainError("check_Hnw_symmetry: unsupported tag " + std::string(tag_name(tag)));
}

double hyperbolic_H(const GroupElement& g)
{
    if (g.tag() != GroupTag::SOH)
        throw DomainError("hyperbolic_H expects an SOH element");
    const auto n = g.dim() - 1;
    return std::log(std::abs(g.matrix()(0, 0) + g.matrix()(0, n)));
}

}  // namespace psd
