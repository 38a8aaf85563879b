#pragma once

#include "psd/geometry.hpp"
#include "psd/quadrature.hpp"
#include "psd/spectral.hpp"

#include <json.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace psd {

using DiskFunction = std::function<cplx(DiskPoint)>;

// Normalising constant of the inversion integral over lambda > 0 with density
// |c(lambda)|^{-2}, area measure on X and normalised db.
double inversion_constant();

// exp(-1/(1-(d/r0)^2)) for d < r0, else 0.
double bump_profile(double d, double r0);
DiskFunction bump(double r0, DiskPoint center = origin);

// Grid values of a compactly supported function on X; exact zeros beyond
// supportRadius (measured from the grid centre).
struct SampledFunctionX {
    std::shared_ptr<const DiskQuadrature> grid;
    std::vector<cplx> values;
    double supportRadius = 0.0;

    static SampledFunctionX sample(std::shared_ptr<const DiskQuadrature> grid, const DiskFunction& f, double supportRadius);
    SampledFunctionX operator+(const SampledFunctionX& o) const;
    SampledFunctionX operator*(cplx s) const;
};

struct FourierData {
    std::vector<double> lambdaGrid;
    CircleQuadrature bGrid;
    std::vector<cplx> values;  // row-major, index k * nB + j

    std::size_t nLambda() const { return lambdaGrid.size(); }
    std::size_t nB() const { return bGrid.nodes.size(); }
    cplx at(std::size_t k, std::size_t j) const { return values[k * nB() + j]; }
};

// Cell widths for an increasing grid on (0, Lambda]; the midpoint grid gets
// equal widths Lambda / n.
std::vector<double> spectral_weights(const std::vector<double>& lambdaGrid);

FourierData helgason_ft(const SampledFunctionX& f, const std::vector<double>& lambdaGrid, const CircleQuadrature& bGrid);

DiskFunction helgason_inverse(const FourierData& F);

struct PlancherelSides {
    cplx spaceSide;
    cplx spectralSide;
};

PlancherelSides plancherel_check(const SampledFunctionX& f1, const SampledFunctionX& f2,
                                 const std::vector<double>& lambdaGrid, const CircleQuadrature& bGrid);

struct Atom {
    BoundaryPoint b;
    cplx weight;
};

struct BoundaryDensity {
    CircleQuadrature grid;
    std::vector<cplx> samples;
};

// Finite atomic measure plus an optional sampled density on B.
struct BoundaryMeasure {
    std::vector<Atom> atoms;
    std::optional<BoundaryDensity> density;

    void validate() const;
    double total_variation() const;
    // Atoms followed by the density's quadrature nodes as weighted atoms.
    std::vector<Atom> discretised() const;
};

DiskFunction poisson_transform(const BoundaryMeasure& T, SpectralParam lambda);

// Atom b -> g.b with weight multiplied by e^{-(i lambda + rho)<g.o, g.b>}.
BoundaryMeasure push_forward(const BoundaryMeasure& T, const GroupElement& g, SpectralParam lambda);

struct FourierConfig {
    double Lambda = 24.0;
    int nLambda = 400;
    int nB = 128;
    int nRadial = 120;
    int nAngular = 192;
    double refRadius = 2.5;  // reference bump for round trips
};

// Round trip of a reference bump; returns the constant that makes the
// inversion exact at the probe points (least squares).
double calibrate_inversion_constant(const FourierConfig& cfg);

namespace detail {
// acc[k] += sum_i base_i e^{-i lambda_k s_i} (re and im kept apart).
void accumulate_phases(std::vector<double>& re, std::vector<double>& im, const std::vector<double>& grid, bool uniform,
                       const std::vector<cplx>& base, const std::vector<double>& s);
bool is_uniform(const std::vector<double>& grid);
}  // namespace detail

void to_json(nlohmann::json& j, const FourierData& F);
void from_json(const nlohmann::json& j, FourierData& F);

}  // namespace psd
