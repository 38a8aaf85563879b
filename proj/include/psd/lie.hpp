#pragma once

#include <Eigen/Dense>

#include <string_view>

namespace psd {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

enum class GroupTag { SL2, SL3, SLn, SOH };

std::string_view tag_name(GroupTag tag);

// Square real matrix with a group tag. The constructor validates det = 1 and,
// for SOH(n), preservation of the form diag(1,-1,...,-1).
class GroupElement {
public:
    GroupElement(Mat m, GroupTag tag);

    const Mat& matrix() const { return m_; }
    GroupTag tag() const { return tag_; }
    Eigen::Index dim() const { return m_.rows(); }

    GroupElement operator*(const GroupElement& o) const;
    GroupElement inverse() const;

    // Skip validation; for products of already validated factors.
    static GroupElement trusted(Mat m, GroupTag tag);

private:
    struct Trusted {};
    GroupElement(Mat m, GroupTag tag, Trusted) : m_(std::move(m)), tag_(tag) {}
    Mat m_;
    GroupTag tag_;
};

// aLog: one entry (the geodesic coordinate t) for the rank-one tags SL2 and
// SOH; the diagonal logs ln r_ii for SL3 / SLn.
struct IwasawaKAN {
    Mat k;
    Vec aLog;
    Mat n;
};

struct IwasawaNAK {
    Mat n;
    Vec aLog;
    Mat k;
};

// aLog in diagonal-log coordinates, non-increasing, summing to 0.
struct CartanKAK {
    Mat k1;
    Vec aLog;
    Mat k2;
};

struct RootDatum {
    int rank = 1;
    int mAlpha = 1;
    int m2Alpha = 0;
    double rho = 0.5;

    static RootDatum rank_one(int mAlpha, int m2Alpha);
};

// SL(2,R) building blocks.
GroupElement sl2_a(double t);
GroupElement sl2_n(double u);
GroupElement sl2_k(double theta);
GroupElement sl2_nbar(double v);

// SOH(n) = SO(1,n) building blocks, matrices of size n+1.
GroupElement soh_a(int n, double t);
GroupElement soh_n(const Vec& z);
GroupElement soh_k(const Mat& rotation);

// Diagonal A element diag(exp(aLog)) of an SL group; aLog rank-one t for SL2.
Mat a_matrix(GroupTag tag, const Vec& aLog, Eigen::Index dim);

IwasawaKAN iwasawa_kan(const GroupElement& g);
Vec iwasawa_H(const GroupElement& g);
IwasawaNAK iwasawa_nak(const GroupElement& g);
CartanKAK cartan_kak(const GroupElement& g);

// Scalar H for SL2, faster than the full factorisation: ln(g00^2 + g10^2).
double sl2_H(const Eigen::Matrix2d& g);

GroupElement weyl_longest(GroupTag tag, int dim = 0);

// Ad(w) acting on a diagonal-log vector of A.
Vec weyl_act(GroupTag tag, const Vec& aLog);

struct HnwRecord {
    double s;
    double sPrime;
    double residual;
};

// SL2: nParams = (u). SL3: nParams = (d, e, f) with n = [[1,d,e],[0,1,f],[0,0,1]].
// SOH(n): nParams = z in R^{n-1}.
HnwRecord check_Hnw_symmetry(GroupTag tag, const Vec& nParams);

// ln|g00 + g0n| for SOH(n).
double hyperbolic_H(const GroupElement& g);

}  // namespace psd
