/**
 * @file scheme.hpp
 * @brief Decoupled Crank-Nicolson projection time stepping for incompressible MHD.
 *
 * Unknowns per level: magnetic field H (tangential-zero P_r vector space),
 * velocity u (Dirichlet P_r vector space) and pressure p (mean-zero P_{r-1}).
 * Level 1 comes from one coupled, linearized backward-Euler solve. Each later
 * step solves the coupled (H, uhat) system with extrapolated coefficients and
 * then a Darcy-type projection for (u, p).
 */
#pragma once

#include "mhdcn/direct_solver.hpp"
#include "mhdcn/fe_function.hpp"
#include "mhdcn/mms.hpp"
#include "mhdcn/params.hpp"
#include "mhdcn/projections.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace mhdcn {

/// Spaces and the matrices that do not change between steps (all unconstrained).
struct Discretization {
    MeshPtr mesh;
    SpacePtr velocity;
    SpacePtr pressure;
    SpacePtr magnetic;
    CsrMatrix mass_u;    ///< M_X
    CsrMatrix stiffness; ///< A
    CsrMatrix mass_h;    ///< M_S
    CsrMatrix curl_div;  ///< K
    CsrMatrix div;       ///< D, rows on the pressure space
    std::vector<double> mean; ///< integral of each pressure basis function
};

/// P_r / P_{r-1} / P_r on the n x n unit-square mesh.
Discretization build_discretization(int n, int degree);

/// Initial data and sources. Missing sources mean zero.
struct ProblemData {
    VectorFunction u0;
    GradientFunction grad_u0;
    VectorFunction h0;
    GradientFunction grad_h0;
    ScalarFunction p0;
    VectorFunction f;
    VectorFunction g;
};

ProblemData problem_from_example(const ExampleSpec& spec, const PhysicalParams& params);
/// Zero data, zero sources.
ProblemData zero_problem();

struct SchemeState {
    FeFunction h_prev;
    FeFunction h_curr;
    FeFunction u_prev;
    FeFunction u_curr;
    FeFunction p_curr;
    int step = 0;
    double time = 0.0;
};

struct StepDiagnostics {
    int step = 0;
    double time = 0.0;
    double energy = 0.0;
    /// max_q |(div u, q)| / ||u||, absolute when u = 0.
    double divergence_residual = 0.0;
    /// ||(u - uhat)/tau + grad_h(dp)/2|| relative to ||(u - uhat)/tau||; 0 on the first step.
    double equivalence_residual = 0.0;
    SolverReport stage_a;
    SolverReport stage_b;
};

class Scheme {
public:
    Scheme(const Discretization& disc, PhysicalParams params, ProblemData data, double tau);

    /// H^0 = Maxwell projection of H_0; (u^0, p^0) = Stokes projection of (u_0, p_0).
    SchemeState initialize_t0() const;
    /// Coupled linearized backward Euler from level 0 to level 1.
    SchemeState first_step_backward_euler(const SchemeState& s0, StepDiagnostics* diag = nullptr);
    /// One Crank-Nicolson step from levels (n-1, n) to n+1. u_hat receives the
    /// intermediate velocity when non-null.
    SchemeState cn_step(const SchemeState& s, StepDiagnostics* diag = nullptr, FeFunction* u_hat = nullptr);

    /// |u|^2 + |H|^2 + |H^n - H^{n-1}|^2 / 4 + tau^2 |grad_h p|^2 / 4.
    double energy(const SchemeState& s) const;
    double divergence_residual(const FeFunction& u) const;
    /// Residual of M(u - uhat)/tau + M grad_h(dp)/2 = 0 with grad_h computed separately.
    double equivalence_residual(const FeFunction& u, const FeFunction& u_hat, const FeFunction& dp) const;

    /// The equivalence check costs one extra mass solve per step.
    void set_check_equivalence(bool on) noexcept { check_equivalence_ = on; }

    [[nodiscard]] double tau() const noexcept { return tau_; }
    [[nodiscard]] const Discretization& discretization() const noexcept { return disc_; }
    [[nodiscard]] const DiscreteGradient& gradient() const noexcept { return grad_; }

    /// Stage-A matrix and right side for the given state; exposed for tests.
    struct StageASystem {
        CsrMatrix matrix;
        std::vector<double> rhs;
    };
    StageASystem assemble_stage_a(const SchemeState& s) const;

private:
    void factorize_stage_b();

    const Discretization& disc_;
    PhysicalParams params_;
    ProblemData data_;
    double tau_;
    DiscreteGradient grad_;
    DirectSolver stage_a_;
    DirectSolver stage_b_;
    bool stage_b_ready_ = false;
    bool check_equivalence_ = true;
};

struct RunConfig {
    int example = 1;
    int degree = 3;
    int n = 20;
    int steps = 40;
    double final_time = 1.0;
    PhysicalParams params;
    bool compute_energy = true;
    bool check_equivalence = true;
};

struct ErrorReport {
    double e_u = 0.0;
    double e_h = 0.0;
    double e_p = 0.0;
    double e_grad_u = 0.0;
    double e_grad_h = 0.0;
    double e_curl_h = 0.0;
};

struct Trajectory {
    std::vector<StepDiagnostics> diagnostics;
    double initial_energy = 0.0;
    SchemeState final_state;
    std::optional<ErrorReport> errors;
};

/// Called after each completed step; u_hat is null on the first step.
using StepObserver = std::function<void(const SchemeState&, const FeFunction* u_hat)>;

/// Initialization, one backward-Euler step, then N - 1 Crank-Nicolson steps.
/// Errors are filled for examples with a closed-form solution.
Trajectory run(const RunConfig& config, const StepObserver& observer = {});

} // namespace mhdcn
