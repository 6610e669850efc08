/**
 * @file projections.hpp
 * @brief L2, Stokes and Maxwell projections and the discrete gradient.
 */
#pragma once

#include "mhdcn/fe_function.hpp"
#include "mhdcn/forms.hpp"
#include "mhdcn/sparse.hpp"

#include <functional>
#include <vector>

namespace mhdcn {

struct ProjectionResult {
    FeFunction field;
    SolverReport report;
};

struct StokesProjectionResult {
    FeFunction velocity;
    FeFunction pressure;
    SolverReport report;
};

/// (f - P f, q) = 0 for every q in the space; zero-mean for MeanZero spaces.
ProjectionResult l2_project(const SpacePtr& space, const ScalarFunction& f, double t = 0.0);
ProjectionResult l2_project(const SpacePtr& space, const VectorFunction& f, double t = 0.0);
ProjectionResult l2_project(const SpacePtr& space, const FeFunction& f);

/**
 * nu (grad(u - Ru), grad v) - (p - Rp, div v) = 0 and (div(u - Ru), q) = 0
 * with Rp of zero mean (one multiplier row). The analytic pressure enters
 * only through (p, div v), so its mean does not matter.
 */
StokesProjectionResult stokes_project(const SpacePtr& velocity, const SpacePtr& pressure, const VectorFunction& u,
                                      const GradientFunction& grad_u, const ScalarFunction& p, double nu = 1.0,
                                      double t = 0.0);
StokesProjectionResult stokes_project(const SpacePtr& velocity, const SpacePtr& pressure, const FeFunction& u,
                                      const FeFunction& p, double nu = 1.0);

/// (curl(H - PiH), curl w) + (div(H - PiH), div w) = 0 for w in the tangential-zero space.
ProjectionResult maxwell_project(const SpacePtr& magnetic, const GradientFunction& grad_h, double t = 0.0);
ProjectionResult maxwell_project(const SpacePtr& magnetic, const FeFunction& h);

/**
 * (v, grad_h q) = -(div v, q) for all v in the velocity space. Caches the
 * constrained vector mass matrix and the divergence matrix.
 */
class DiscreteGradient {
public:
    DiscreteGradient(SpacePtr velocity, SpacePtr pressure);

    [[nodiscard]] ProjectionResult operator()(const FeFunction& q) const;
    [[nodiscard]] const CsrMatrix& divergence() const noexcept { return divergence_; }
    [[nodiscard]] const CsrMatrix& velocity_mass() const noexcept { return mass_; }

private:
    SpacePtr velocity_;
    SpacePtr pressure_;
    CsrMatrix mass_;
    CsrMatrix divergence_;
};

ProjectionResult discrete_gradient(const SpacePtr& velocity, const FeFunction& q);

/// Squared L2 norm of an FE function (vector norm for 2-component spaces).
double l2_norm_squared(const FeFunction& fn);
double l2_norm(const FeFunction& fn);

struct InverseRatio {
    int n;
    double h;
    /// h * ||grad_h q||_L2 / ||q||_L2
    double ratio;
};

/// Builds P_r x P_{r-1} on each n and samples a pressure with the given
/// generator (which should return a zero-mean function).
using PressureSampler = std::function<FeFunction(const SpacePtr& pressure_space)>;
std::vector<InverseRatio> measure_inverse_constant(const std::vector<int>& mesh_sizes, int velocity_degree,
                                                   const PressureSampler& sampler);

} // namespace mhdcn
