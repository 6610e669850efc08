#include "mhdcn/fe_function.hpp"

#include "mhdcn/element.hpp"
#include "mhdcn/error.hpp"
#include "mhdcn/quadrature.hpp"

#include <string>

namespace mhdcn {

FeFunction::FeFunction(SpacePtr space) : space_(std::move(space))
{
    if (!space_) {
        throw InvalidArgument("FeFunction: null space");
    }
    coeffs_.assign(space_->num_dofs(), 0.0);
}

FeFunction::FeFunction(SpacePtr space, std::vector<double> coefficients)
    : space_(std::move(space)), coeffs_(std::move(coefficients))
{
    if (!space_) {
        throw InvalidArgument("FeFunction: null space");
    }
    if (coeffs_.size() != static_cast<std::size_t>(space_->num_dofs())) {
        throw InvalidArgument("FeFunction: coefficient length " + std::to_string(coeffs_.size()) +
                              " does not match dof count " + std::to_string(space_->num_dofs()));
    }
}

void FeFunction::check_triangle(std::size_t t) const
{
    if (t >= space_->mesh().num_triangles()) {
        throw InvalidArgument("FeFunction: triangle index " + std::to_string(t) + " out of range");
    }
}

Vec2 FeFunction::value(std::size_t t, const std::array<double, 3>& bary) const
{
    check_triangle(t);
    std::vector<double> phi;
    space_->basis().values(bary[1], bary[2], phi);
    const auto dofs = space_->element_dofs(t);
    const int ns = space_->num_scalar_dofs();
    Vec2 out{0.0, 0.0};
    for (int c = 0; c < space_->components(); ++c) {
        for (std::size_t k = 0; k < dofs.size(); ++k) {
            out[c] += coeffs_[c * ns + dofs[k]] * phi[k];
        }
    }
    return out;
}

Mat2 FeFunction::gradient(std::size_t t, const std::array<double, 3>& bary) const
{
    check_triangle(t);
    std::vector<std::array<double, 2>> dphi;
    space_->basis().gradients(bary[1], bary[2], dphi);
    const ElementGeometry geo(space_->mesh(), t);
    const auto dofs = space_->element_dofs(t);
    const int ns = space_->num_scalar_dofs();
    Mat2 out{};
    for (std::size_t k = 0; k < dofs.size(); ++k) {
        const auto g = geo.grad(dphi[k]);
        for (int c = 0; c < space_->components(); ++c) {
            const double coef = coeffs_[c * ns + dofs[k]];
            out[c][0] += coef * g[0];
            out[c][1] += coef * g[1];
        }
    }
    return out;
}

FeFunction interpolate(const SpacePtr& space, const ScalarFunction& f, double t)
{
    if (space->components() != 1) {
        throw InvalidArgument("interpolate: scalar function on a vector space");
    }
    FeFunction fn(space);
    auto& c = fn.coefficients();
    for (int s = 0; s < space->num_scalar_dofs(); ++s) {
        c[s] = space->is_constrained(s) ? 0.0 : f(space->dof_point(s), t);
    }
    return fn;
}

FeFunction interpolate(const SpacePtr& space, const VectorFunction& f, double t)
{
    if (space->components() != 2) {
        throw InvalidArgument("interpolate: vector function on a scalar space");
    }
    FeFunction fn(space);
    auto& c = fn.coefficients();
    const int ns = space->num_scalar_dofs();
    for (int s = 0; s < ns; ++s) {
        const Vec2 v = f(space->dof_point(s), t);
        c[s] = space->is_constrained(s) ? 0.0 : v[0];
        c[ns + s] = space->is_constrained(ns + s) ? 0.0 : v[1];
    }
    return fn;
}

double integral(const FeFunction& fn)
{
    const Space& space = fn.space();
    const QuadratureRule rule = gauss_rule(std::max(1, space.degree()));
    const BasisTable table = tabulate(space.basis(), rule);
    double total = 0.0;
    for (std::size_t t = 0; t < space.mesh().num_triangles(); ++t) {
        const double det = std::abs(ElementGeometry(space.mesh(), t).det);
        const auto dofs = space.element_dofs(t);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            double v = 0.0;
            for (std::size_t k = 0; k < dofs.size(); ++k) {
                v += fn.coefficients()[dofs[k]] * table.phi[q][k];
            }
            total += rule.points[q].weight * det * v;
        }
    }
    return total;
}

void remove_mean(FeFunction& fn)
{
    if (fn.space().components() != 1) {
        throw InvalidArgument("remove_mean: scalar space required");
    }
    // The unit square has area 1, and nodal value 1 everywhere is the constant 1.
    const double mean = integral(fn);
    for (double& c : fn.coefficients()) {
        c -= mean;
    }
}

} // namespace mhdcn
