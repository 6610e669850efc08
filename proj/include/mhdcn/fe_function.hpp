/**
 * @file fe_function.hpp
 * @brief Coefficient vectors bound to a space, interpolation and point evaluation.
 */
#pragma once

#include "mhdcn/space.hpp"

#include <array>
#include <functional>
#include <vector>

namespace mhdcn {

using Vec2 = std::array<double, 2>;
/// Row c holds the gradient of component c.
using Mat2 = std::array<Vec2, 2>;

using ScalarFunction = std::function<double(Point, double)>;
using VectorFunction = std::function<Vec2(Point, double)>;
using GradientFunction = std::function<Mat2(Point, double)>;

class FeFunction {
public:
    FeFunction() = default;
    explicit FeFunction(SpacePtr space);
    FeFunction(SpacePtr space, std::vector<double> coefficients);

    [[nodiscard]] const Space& space() const noexcept { return *space_; }
    [[nodiscard]] const SpacePtr& space_ptr() const noexcept { return space_; }
    [[nodiscard]] std::vector<double>& coefficients() noexcept { return coeffs_; }
    [[nodiscard]] const std::vector<double>& coefficients() const noexcept { return coeffs_; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }

    /// Value at a barycentric point of triangle t; second entry is 0 for scalar spaces.
    [[nodiscard]] Vec2 value(std::size_t t, const std::array<double, 3>& bary) const;
    /// Gradient at a barycentric point; row c is the gradient of component c.
    [[nodiscard]] Mat2 gradient(std::size_t t, const std::array<double, 3>& bary) const;

private:
    void check_triangle(std::size_t t) const;

    SpacePtr space_;
    std::vector<double> coeffs_;
};

/// Nodal interpolant; constrained dofs are then set to zero.
FeFunction interpolate(const SpacePtr& space, const ScalarFunction& f, double t = 0.0);
FeFunction interpolate(const SpacePtr& space, const VectorFunction& f, double t = 0.0);

/// Value and gradient of fn at a barycentric point of triangle t.
inline Vec2 eval(const FeFunction& fn, std::size_t t, const std::array<double, 3>& bary) { return fn.value(t, bary); }
inline Mat2 eval_gradient(const FeFunction& fn, std::size_t t, const std::array<double, 3>& bary)
{
    return fn.gradient(t, bary);
}

/// Integral of a scalar function (first component) over the domain.
double integral(const FeFunction& fn);
/// Subtract the spatial mean from a scalar function (the constant is in the space).
void remove_mean(FeFunction& fn);

} // namespace mhdcn
