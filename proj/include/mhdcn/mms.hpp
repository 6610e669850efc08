/**
 * @file mms.hpp
 * @brief Manufactured solutions, closed-form sources, error norms and convergence orders.
 *
 * Examples 1 and 2 share u = t^4 U(x), H = t^4 B(x) with
 *   U = (sin^2(pi x) sin(2 pi y), -sin(2 pi x) sin^2(pi y)),
 *   B = (-sin(2 pi y) cos(2 pi x), sin(2 pi x) cos(2 pi y)),
 * and differ in the pressure:
 *   example 1: p = t^4 sin^2(2 pi x) sin^2(2 pi y) - 1/4  (grad p = 0 on the boundary),
 *   example 2: p = t^4 sin(2 pi x) sin(2 pi y).
 * Example 3 is source free with initial data (U, B, sin(2 pi x) sin(2 pi y)).
 */
#pragma once

#include "mhdcn/fe_function.hpp"
#include "mhdcn/params.hpp"

#include <vector>

namespace mhdcn {

class ExampleSpec {
public:
    explicit ExampleSpec(int id);

    [[nodiscard]] int id() const noexcept { return id_; }
    /// Examples 1 and 2 have closed-form solutions; example 3 only initial data.
    [[nodiscard]] bool has_exact_solution() const noexcept { return id_ != 3; }

    [[nodiscard]] Vec2 velocity(Point x, double t) const;
    [[nodiscard]] Mat2 velocity_gradient(Point x, double t) const;
    [[nodiscard]] Vec2 velocity_dt(Point x, double t) const;
    [[nodiscard]] Vec2 magnetic(Point x, double t) const;
    [[nodiscard]] Mat2 magnetic_gradient(Point x, double t) const;
    [[nodiscard]] Vec2 magnetic_dt(Point x, double t) const;
    [[nodiscard]] double pressure(Point x, double t) const;
    [[nodiscard]] Vec2 pressure_gradient(Point x, double t) const;
    /// Spatial mean of the exact pressure over the unit square.
    [[nodiscard]] double pressure_mean(double t) const;

    /// g = mu dH/dt + curl curl H / sigma - mu curl(u x H)
    [[nodiscard]] Vec2 magnetic_source(Point x, double t, const PhysicalParams& params) const;
    /// f = du/dt + (u . grad) u - nu Lap u + grad p + mu H x curl H
    [[nodiscard]] Vec2 momentum_source(Point x, double t, const PhysicalParams& params) const;

private:
    [[nodiscard]] double time_factor(double t) const noexcept;
    [[nodiscard]] double time_factor_dt(double t) const noexcept;
    void require_time(double t) const;

    int id_;
};

struct ExactFields {
    VectorFunction u;
    GradientFunction grad_u;
    VectorFunction h;
    GradientFunction grad_h;
    ScalarFunction p;
};

struct SourceTerms {
    VectorFunction f;
    VectorFunction g;
};

ExactFields exact_fields(const ExampleSpec& spec);
/// Zero for example 3.
SourceTerms source_terms(const ExampleSpec& spec, const PhysicalParams& params);

/// Quadrature degree for error norms: two above assembly.
int error_quadrature_degree(int r);

/// ||fn - exact(., t)||_L2
double error_l2(const FeFunction& fn, const VectorFunction& exact, double t);
double error_l2(const FeFunction& fn, const ScalarFunction& exact, double t);
/// Pressure error with the spatial mean of the exact pressure removed first.
double error_l2_pressure(const FeFunction& fn, const ScalarFunction& exact, double t);
/// ||grad fn - grad_exact(., t)||_L2 (Frobenius over components).
double error_gradient(const FeFunction& fn, const GradientFunction& grad_exact, double t);
/// ||curl fn - curl exact||_L2 from the exact gradient.
double error_curl(const FeFunction& fn, const GradientFunction& grad_exact, double t);

/**
 * Time-accumulated energy-norm errors
 *   e_grad_u = (tau sum_{n>=2} ||grad(ubar_h^{n-1/2} - ubar^{n-1/2})||^2)^{1/2},
 *     ubar_h^{n-1/2} = (uhat_h^n + u_h^{n-1})/2, ubar^{n-1/2} = (u(t_n) + u(t_{n-1}))/2,
 *   e_grad_H = (tau sum_{n>=2} ||grad(H_h^n - H(t_n))||^2)^{1/2}, plus the curl variant.
 */
class EnergyNormErrorAccumulator {
public:
    EnergyNormErrorAccumulator(ExampleSpec spec, double tau);

    void add_step(int n, const FeFunction& u_hat, const FeFunction& u_prev, const FeFunction& h);

    [[nodiscard]] double grad_u() const;
    [[nodiscard]] double grad_h() const;
    [[nodiscard]] double curl_h() const;
    [[nodiscard]] int steps() const noexcept { return steps_; }

private:
    ExampleSpec spec_;
    double tau_;
    double sum_u_ = 0.0;
    double sum_h_ = 0.0;
    double sum_curl_ = 0.0;
    int steps_ = 0;
};

struct ConvergenceOrders {
    std::vector<double> pairwise;
    /// Least-squares slope of log e against log s over all points.
    double least_squares = 0.0;
};

/// order_i = log(e_i / e_{i+1}) / log(s_i / s_{i+1}).
ConvergenceOrders convergence_order(const std::vector<double>& errors, const std::vector<double>& steps);

} // namespace mhdcn
