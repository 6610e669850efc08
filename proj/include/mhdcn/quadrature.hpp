/**
 * @file quadrature.hpp
 * @brief Quadrature on the reference triangle {(xi, eta): xi, eta >= 0, xi + eta <= 1}.
 */
#pragma once

#include <array>
#include <vector>

namespace mhdcn {

struct QuadPoint {
    double xi;
    double eta;
    double weight;

    /// (lambda0, lambda1, lambda2) = (1 - xi - eta, xi, eta).
    [[nodiscard]] std::array<double, 3> barycentric() const noexcept { return {1.0 - xi - eta, xi, eta}; }
};

struct QuadratureRule {
    std::vector<QuadPoint> points;
    /// Largest total polynomial degree integrated exactly.
    int exact_degree = 0;
};

inline constexpr int kMaxQuadratureDegree = 12;

/**
 * Collapsed (Duffy) product of Gauss-Legendre rules. Weights are positive
 * and sum to the reference area 1/2. Accepts 1 <= degree <= 12.
 */
QuadratureRule gauss_rule(int degree);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace mhdcn
