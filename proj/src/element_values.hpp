// Per-element basis data on a fixed quadrature rule (internal).
#pragma once

#include "mhdcn/element.hpp"
#include "mhdcn/fe_function.hpp"
#include "mhdcn/lagrange.hpp"
#include "mhdcn/quadrature.hpp"

#include <cmath>
#include <vector>

namespace mhdcn::detail {

class ElementValues {
public:
    ElementValues(const Space& space, const QuadratureRule& rule)
        : space_(space), rule_(rule), table_(tabulate(space.basis(), rule)), nloc_(space.dofs_per_element()),
          nq_(static_cast<int>(rule.points.size())), grad_(static_cast<std::size_t>(nq_) * nloc_), jxw_(nq_),
          points_(nq_)
    {
    }

    void reinit(std::size_t t)
    {
        t_ = t;
        const ElementGeometry geo(space_.mesh(), t);
        const double area_scale = std::abs(geo.det);
        for (int q = 0; q < nq_; ++q) {
            const auto& qp = rule_.points[q];
            jxw_[q] = qp.weight * area_scale;
            points_[q] = geo.map(qp.xi, qp.eta);
            for (int k = 0; k < nloc_; ++k) {
                grad_[q * nloc_ + k] = geo.grad(table_.dphi[q][k]);
            }
        }
    }

    [[nodiscard]] std::size_t triangle() const noexcept { return t_; }
    [[nodiscard]] int num_points() const noexcept { return nq_; }
    [[nodiscard]] int num_local() const noexcept { return nloc_; }
    [[nodiscard]] double phi(int q, int k) const noexcept { return table_.phi[q][k]; }
    [[nodiscard]] const Vec2& grad(int q, int k) const noexcept { return grad_[q * nloc_ + k]; }
    [[nodiscard]] double jxw(int q) const noexcept { return jxw_[q]; }
    [[nodiscard]] Point point(int q) const noexcept { return points_[q]; }

    /// Value of fn (on this space) at point q of the current element.
    [[nodiscard]] Vec2 value(const FeFunction& fn, int q) const
    {
        const auto dofs = space_.element_dofs(t_);
        const int ns = space_.num_scalar_dofs();
        const auto& c = fn.coefficients();
        Vec2 v{0.0, 0.0};
        for (int comp = 0; comp < space_.components(); ++comp) {
            for (int k = 0; k < nloc_; ++k) {
                v[comp] += c[comp * ns + dofs[k]] * table_.phi[q][k];
            }
        }
        return v;
    }

    [[nodiscard]] Mat2 gradient(const FeFunction& fn, int q) const
    {
        const auto dofs = space_.element_dofs(t_);
        const int ns = space_.num_scalar_dofs();
        const auto& c = fn.coefficients();
        Mat2 g{};
        for (int comp = 0; comp < space_.components(); ++comp) {
            for (int k = 0; k < nloc_; ++k) {
                const double coef = c[comp * ns + dofs[k]];
                g[comp][0] += coef * grad_[q * nloc_ + k][0];
                g[comp][1] += coef * grad_[q * nloc_ + k][1];
            }
        }
        return g;
    }

    /// Global dofs of the current element, component-major (c * nloc + k).
    void global_dofs(std::vector<int>& out) const
    {
        const auto dofs = space_.element_dofs(t_);
        const int ns = space_.num_scalar_dofs();
        out.resize(static_cast<std::size_t>(space_.components()) * nloc_);
        for (int comp = 0; comp < space_.components(); ++comp) {
            for (int k = 0; k < nloc_; ++k) {
                out[comp * nloc_ + k] = comp * ns + dofs[k];
            }
        }
    }

private:
    const Space& space_;
    const QuadratureRule& rule_;
    BasisTable table_;
    int nloc_;
    int nq_;
    std::vector<Vec2> grad_;
    std::vector<double> jxw_;
    std::vector<Point> points_;
    std::size_t t_ = 0;
};

} // namespace mhdcn::detail
