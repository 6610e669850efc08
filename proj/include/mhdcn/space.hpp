/**
 * @file space.hpp
 * @brief Continuous Lagrange finite-element spaces on the structured mesh.
 */
#pragma once

#include "mhdcn/lagrange.hpp"
#include "mhdcn/mesh.hpp"

#include <memory>
#include <span>
#include <vector>

namespace mhdcn {

enum class ConstraintKind {
    None,
    /// Every boundary dof of every component is zero (velocity space).
    FullDirichlet,
    /// Zero tangential trace: the component parallel to each side is zero
    /// (first component on bottom/top, second on left/right, both at corners).
    TangentialZero,
    /// Scalar space with zero mean, enforced through a Lagrange multiplier
    /// by whoever solves for it; no dof is pinned.
    MeanZero,
};

/**
 * Lattice dof layout: scalar dof (I, J), 0 <= I, J <= r*n, has index
 * J*(r*n+1) + I and sits at (I, J)/(r*n). Vector dofs are component-blocked:
 * component c of scalar dof s has index c*num_scalar_dofs() + s.
 */
class Space {
public:
    Space(MeshPtr mesh, int degree, int components, ConstraintKind constraint);

    [[nodiscard]] const Mesh& mesh() const noexcept { return *mesh_; }
    [[nodiscard]] const MeshPtr& mesh_ptr() const noexcept { return mesh_; }
    [[nodiscard]] int degree() const noexcept { return basis_.degree(); }
    [[nodiscard]] int components() const noexcept { return components_; }
    [[nodiscard]] ConstraintKind constraint() const noexcept { return constraint_; }
    [[nodiscard]] const LagrangeBasis& basis() const noexcept { return basis_; }

    [[nodiscard]] int lattice_size() const noexcept { return lattice_; }
    [[nodiscard]] int num_scalar_dofs() const noexcept { return lattice_ * lattice_; }
    [[nodiscard]] int num_dofs() const noexcept { return components_ * num_scalar_dofs(); }
    [[nodiscard]] int dofs_per_element() const noexcept { return basis_.size(); }

    [[nodiscard]] Point dof_point(int scalar_dof) const;
    /// Scalar dofs of triangle t in local basis order.
    [[nodiscard]] std::span<const int> element_dofs(std::size_t t) const;
    [[nodiscard]] int global_dof(std::size_t t, int component, int local) const
    {
        return component * num_scalar_dofs() + element_dofs(t)[local];
    }

    /// 1 for dofs fixed to zero by the constraint kind, else 0; length num_dofs().
    [[nodiscard]] const std::vector<char>& constrained_mask() const noexcept { return mask_; }
    [[nodiscard]] const std::vector<int>& constrained_dofs() const noexcept { return constrained_; }
    [[nodiscard]] bool is_constrained(int dof) const { return mask_[dof] != 0; }

    /// True if scalar dof lies on the boundary of the unit square.
    [[nodiscard]] bool on_boundary(int scalar_dof) const;

private:
    MeshPtr mesh_;
    LagrangeBasis basis_;
    int components_;
    ConstraintKind constraint_;
    int lattice_;
    std::vector<int> element_dofs_;
    std::vector<char> mask_;
    std::vector<int> constrained_;
};

using SpacePtr = std::shared_ptr<const Space>;

SpacePtr build_space(MeshPtr mesh, int degree, int components, ConstraintKind constraint);

} // namespace mhdcn
