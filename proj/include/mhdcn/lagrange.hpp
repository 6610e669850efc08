/**
 * @file lagrange.hpp
 * @brief Nodal Lagrange bases of degree r on the reference triangle.
 */
#pragma once

#include "mhdcn/quadrature.hpp"

#include <array>
#include <vector>

namespace mhdcn {

/**
 * Equispaced Lagrange basis. Local node k sits at (a/r, b/r) with a + b <= r,
 * enumerated b-major: (0,0), (1,0), ..., (r,0), (0,1), ..., (0,r).
 */
class LagrangeBasis {
public:
    explicit LagrangeBasis(int degree);

    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(nodes_.size()); }
    /// Lattice coordinates (a, b) of each local node.
    [[nodiscard]] const std::vector<std::array<int, 2>>& nodes() const noexcept { return nodes_; }

    void values(double xi, double eta, std::vector<double>& out) const;
    /// Reference gradients (d/dxi, d/deta) per basis function.
    void gradients(double xi, double eta, std::vector<std::array<double, 2>>& out) const;

private:
    int degree_;
    std::vector<std::array<int, 2>> nodes_;
};

/// Basis values and reference gradients at every point of a rule.
struct BasisTable {
    int degree = 0;
    int num_basis = 0;
    std::vector<std::vector<double>> phi;
    std::vector<std::vector<std::array<double, 2>>> dphi;
};

BasisTable tabulate(const LagrangeBasis& basis, const QuadratureRule& rule);

} // namespace mhdcn
