/**
 * @file element.hpp
 * @brief Affine map from the reference triangle to a mesh triangle.
 */
#pragma once

#include "mhdcn/mesh.hpp"

#include <array>

namespace mhdcn {

struct ElementGeometry {
    Point origin;
    double jac[2][2];
    double inv[2][2];
    double det;

    ElementGeometry(const Mesh& mesh, std::size_t t)
    {
        const auto [a, b, c] = mesh.triangle_vertices(t);
        origin = a;
        jac[0][0] = b.x - a.x;
        jac[0][1] = c.x - a.x;
        jac[1][0] = b.y - a.y;
        jac[1][1] = c.y - a.y;
        det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        inv[0][0] = jac[1][1] / det;
        inv[0][1] = -jac[0][1] / det;
        inv[1][0] = -jac[1][0] / det;
        inv[1][1] = jac[0][0] / det;
    }

    [[nodiscard]] Point map(double xi, double eta) const noexcept
    {
        return {origin.x + jac[0][0] * xi + jac[0][1] * eta, origin.y + jac[1][0] * xi + jac[1][1] * eta};
    }

    /// Physical gradient from a reference gradient (J^{-T} g).
    [[nodiscard]] std::array<double, 2> grad(const std::array<double, 2>& g) const noexcept
    {
        return {inv[0][0] * g[0] + inv[1][0] * g[1], inv[0][1] * g[0] + inv[1][1] * g[1]};
    }
};

} // namespace mhdcn
