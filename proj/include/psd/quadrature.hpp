#pragma once

#include "psd/geometry.hpp"

#include <json.hpp>

#include <vector>

namespace psd {

enum class RadialRule { Simpson, GaussLegendre };

// Nodes and weights for hyperbolic area 4 dx dy / (1-|z|^2)^2 on the geodesic
// ball of radius maxRadius around `center`.
struct DiskQuadrature {
    std::vector<DiskPoint> nodes;
    std::vector<double> weights;
    double maxRadius = 0.0;
    cplx center{0.0, 0.0};
    int nRadial = 0;
    int nAngular = 0;
    RadialRule rule = RadialRule::Simpson;

    double total_weight() const;
};

// Normalised arc measure db (weights 1/m).
struct CircleQuadrature {
    std::vector<BoundaryPoint> nodes;
    std::vector<double> weights;
};

// Symmetric rule with positive weights on [-1, 1]; callers map it onto the
// exact support interval of their integrand.
struct LineQuadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

// Radial nodes z = tanh(s/2) e^{i theta} with s uniform in (0, maxRadius]
// (Simpson, nRadial even) or Gauss-Legendre in s, times nAngular angles.
DiskQuadrature disk_quadrature(double maxRadius, int nRadial, int nAngular, RadialRule rule = RadialRule::Simpson);

// Same grid pushed forward by the translation o -> center (an isometry, so the
// weights are unchanged).
DiskQuadrature centered(const DiskQuadrature& q, DiskPoint center);

CircleQuadrature circle_quadrature(int m);

LineQuadrature line_quadrature(int panels, int order);

// Midpoint nodes (k + 1/2) Lambda / n on (0, Lambda].
std::vector<double> midpoint_grid(double Lambda, int n);

double hyperbolic_ball_area(double radius);

void to_json(nlohmann::json& j, const DiskQuadrature& q);
void from_json(const nlohmann::json& j, DiskQuadrature& q);
void to_json(nlohmann::json& j, const CircleQuadrature& q);
void from_json(const nlohmann::json& j, CircleQuadrature& q);

}  // namespace psd
