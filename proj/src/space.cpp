#include "mhdcn/space.hpp"

#include "mhdcn/error.hpp"

#include <string>

namespace mhdcn {

Space::Space(MeshPtr mesh, int degree, int components, ConstraintKind constraint)
    : mesh_(std::move(mesh)), basis_(degree), components_(components), constraint_(constraint)
{
    if (!mesh_) {
        throw InvalidArgument("build_space: null mesh");
    }
    if (components != 1 && components != 2) {
        throw InvalidArgument("build_space: components must be 1 or 2, got " + std::to_string(components));
    }
    if (constraint == ConstraintKind::MeanZero && components != 1) {
        throw InvalidArgument("build_space: mean_zero requires a scalar space");
    }
    if (constraint == ConstraintKind::TangentialZero && components != 2) {
        throw InvalidArgument("build_space: tangential_zero requires a 2-component space");
    }

    const int n = mesh_->subdivisions();
    const int r = degree;
    lattice_ = r * n + 1;

    const int nloc = basis_.size();
    element_dofs_.resize(mesh_->num_triangles() * nloc);
    for (std::size_t t = 0; t < mesh_->num_triangles(); ++t) {
        const auto [ci, cj, upper] = mesh_->cell_of(t);
        for (int k = 0; k < nloc; ++k) {
            const auto [a, b] = basis_.nodes()[k];
            const int I = upper ? ci * r + a : ci * r + a + b;
            const int J = upper ? cj * r + a + b : cj * r + b;
            element_dofs_[t * nloc + k] = J * lattice_ + I;
        }
    }

    mask_.assign(num_dofs(), 0);
    const int last = lattice_ - 1;
    const int ns = num_scalar_dofs();
    for (int J = 0; J < lattice_; ++J) {
        for (int I = 0; I < lattice_; ++I) {
            const int s = J * lattice_ + I;
            const bool horizontal = J == 0 || J == last;
            const bool vertical = I == 0 || I == last;
            switch (constraint_) {
            case ConstraintKind::FullDirichlet:
                if (horizontal || vertical) {
                    for (int c = 0; c < components_; ++c) {
                        mask_[c * ns + s] = 1;
                    }
                }
                break;
            case ConstraintKind::TangentialZero:
                if (horizontal) {
                    mask_[s] = 1;
                }
                if (vertical) {
                    mask_[ns + s] = 1;
                }
                break;
            case ConstraintKind::None:
            case ConstraintKind::MeanZero:
                break;
            }
        }
    }
    for (int d = 0; d < num_dofs(); ++d) {
        if (mask_[d]) {
            constrained_.push_back(d);
        }
    }
}

Point Space::dof_point(int scalar_dof) const
{
    const int denom = lattice_ - 1;
    return {static_cast<double>(scalar_dof % lattice_) / denom, static_cast<double>(scalar_dof / lattice_) / denom};
}

std::span<const int> Space::element_dofs(std::size_t t) const
{
    const std::size_t nloc = static_cast<std::size_t>(basis_.size());
    return {element_dofs_.data() + t * nloc, nloc};
}

bool Space::on_boundary(int scalar_dof) const
{
    const int I = scalar_dof % lattice_;
    const int J = scalar_dof / lattice_;
    return I == 0 || J == 0 || I == lattice_ - 1 || J == lattice_ - 1;
}

SpacePtr build_space(MeshPtr mesh, int degree, int components, ConstraintKind constraint)
{
    return std::make_shared<const Space>(std::move(mesh), degree, components, constraint);
}

} // namespace mhdcn
