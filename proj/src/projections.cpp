#include "mhdcn/projections.hpp"

#include "element_values.hpp"
#include "mhdcn/direct_solver.hpp"
#include "mhdcn/error.hpp"
#include "mhdcn/mesh.hpp"

#include <cmath>

namespace mhdcn {

namespace {

CsrMatrix column_matrix(const std::vector<double>& v)
{
    const int n = static_cast<int>(v.size());
    std::vector<int> ptr(n + 1);
    std::vector<int> idx(n, 0);
    for (int i = 0; i <= n; ++i) {
        ptr[i] = i;
    }
    return CsrMatrix(n, 1, std::move(ptr), std::move(idx), v);
}

CsrMatrix row_matrix(const std::vector<double>& v)
{
    const int n = static_cast<int>(v.size());
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) {
        idx[i] = i;
    }
    return CsrMatrix(1, n, {0, n}, std::move(idx), v);
}

ProjectionResult solve_mass_system(const SpacePtr& space, std::vector<double> rhs)
{
    CsrMatrix mass = mass_matrix(space).matrix;
    apply_zero_constraints(mass, rhs, space->constrained_mask());
    SolveResult sol = solve_spd(mass, rhs);
    ProjectionResult out{FeFunction(space, std::move(sol.x)), sol.report};
    if (space->constraint() == ConstraintKind::MeanZero) {
        remove_mean(out.field);
    }
    return out;
}

StokesProjectionResult solve_stokes_system(const SpacePtr& velocity, const SpacePtr& pressure,
                                           std::vector<double> rhs_u, std::vector<double> rhs_p, double nu)
{
    const CsrMatrix a = stiffness_matrix(velocity).matrix;
    const CsrMatrix d = divergence_matrix(velocity, pressure).matrix;
    const CsrMatrix dt = d.transpose();
    const std::vector<double> mean = mean_functional(*pressure);
    const CsrMatrix mcol = column_matrix(mean);
    const CsrMatrix mrow = row_matrix(mean);

    const int nu_dofs = velocity->num_dofs();
    const int np = pressure->num_dofs();
    CsrMatrix system = block_matrix({nu_dofs, np, 1}, {nu_dofs, np, 1},
                                    {{{nu, &a}, {-1.0, &dt}, {}},
                                     {{-1.0, &d}, {}, {1.0, &mcol}},
                                     {{}, {1.0, &mrow}, {}}});
    std::vector<double> rhs(nu_dofs + np + 1, 0.0);
    std::copy(rhs_u.begin(), rhs_u.end(), rhs.begin());
    for (int i = 0; i < np; ++i) {
        rhs[nu_dofs + i] = -rhs_p[i];
    }
    std::vector<char> mask(rhs.size(), 0);
    std::copy(velocity->constrained_mask().begin(), velocity->constrained_mask().end(), mask.begin());
    apply_zero_constraints(system, rhs, mask);

    SolveResult sol = solve_direct(system, rhs);
    StokesProjectionResult out{FeFunction(velocity), FeFunction(pressure), sol.report};
    std::copy(sol.x.begin(), sol.x.begin() + nu_dofs, out.velocity.coefficients().begin());
    std::copy(sol.x.begin() + nu_dofs, sol.x.begin() + nu_dofs + np, out.pressure.coefficients().begin());
    return out;
}

ProjectionResult solve_maxwell_system(const SpacePtr& magnetic, std::vector<double> rhs)
{
    CsrMatrix k = curlcurl_divdiv_matrix(magnetic).matrix;
    apply_zero_constraints(k, rhs, magnetic->constrained_mask());
    SolveResult sol = solve_direct(k, rhs);
    return {FeFunction(magnetic, std::move(sol.x)), sol.report};
}

int functional_degree(const Space& space) { return std::min(assembly_degree(space.degree()) + 2, 12); }

} // namespace

ProjectionResult l2_project(const SpacePtr& space, const ScalarFunction& f, double t)
{
    return solve_mass_system(space, load_vector(space, f, t));
}

ProjectionResult l2_project(const SpacePtr& space, const VectorFunction& f, double t)
{
    return solve_mass_system(space, load_vector(space, f, t));
}

ProjectionResult l2_project(const SpacePtr& space, const FeFunction& f)
{
    if (f.space_ptr() != space) {
        throw InvalidArgument("l2_project: FE input must live on the target space");
    }
    return solve_mass_system(space, mass_matrix(space).matrix * f.coefficients());
}

StokesProjectionResult stokes_project(const SpacePtr& velocity, const SpacePtr& pressure, const VectorFunction&,
                                      const GradientFunction& grad_u, const ScalarFunction& p, double nu, double t)
{
    if (velocity->constraint() != ConstraintKind::FullDirichlet || pressure->components() != 1) {
        throw InvalidArgument("stokes_project: expects a Dirichlet velocity space and a scalar pressure space");
    }
    const int degree = functional_degree(*velocity);
    std::vector<double> rhs_u = assemble_functional(
        *velocity,
        [&](Point x) {
            const Mat2 g = grad_u(x, t);
            const double pv = p(x, t);
            FunctionalDensity d;
            d.grad = {Vec2{nu * g[0][0] - pv, nu * g[0][1]}, Vec2{nu * g[1][0], nu * g[1][1] - pv}};
            return d;
        },
        degree);
    std::vector<double> rhs_p = assemble_functional(
        *pressure,
        [&](Point x) {
            const Mat2 g = grad_u(x, t);
            return FunctionalDensity{{g[0][0] + g[1][1], 0.0}, {}};
        },
        degree);
    return solve_stokes_system(velocity, pressure, std::move(rhs_u), std::move(rhs_p), nu);
}

StokesProjectionResult stokes_project(const SpacePtr& velocity, const SpacePtr& pressure, const FeFunction& u,
                                      const FeFunction& p, double nu)
{
    if (u.space_ptr() != velocity || p.space_ptr() != pressure) {
        throw InvalidArgument("stokes_project: FE inputs must live on the target spaces");
    }
    const CsrMatrix a = stiffness_matrix(velocity).matrix;
    const CsrMatrix d = divergence_matrix(velocity, pressure).matrix;
    std::vector<double> rhs_u = a * u.coefficients();
    for (double& v : rhs_u) {
        v *= nu;
    }
    d.multiply_transpose_add(-1.0, p.coefficients(), rhs_u);
    return solve_stokes_system(velocity, pressure, std::move(rhs_u), d * u.coefficients(), nu);
}

ProjectionResult maxwell_project(const SpacePtr& magnetic, const GradientFunction& grad_h, double t)
{
    if (magnetic->constraint() != ConstraintKind::TangentialZero) {
        throw InvalidArgument("maxwell_project: expects a tangential-zero magnetic space");
    }
    std::vector<double> rhs = assemble_functional(
        *magnetic,
        [&](Point x) {
            const Mat2 g = grad_h(x, t);
            const double curl = g[1][0] - g[0][1];
            const double div = g[0][0] + g[1][1];
            FunctionalDensity d;
            // curl w = dx w2 - dy w1, div w = dx w1 + dy w2.
            d.grad = {Vec2{div, -curl}, Vec2{curl, div}};
            return d;
        },
        functional_degree(*magnetic));
    return solve_maxwell_system(magnetic, std::move(rhs));
}

ProjectionResult maxwell_project(const SpacePtr& magnetic, const FeFunction& h)
{
    if (h.space_ptr() != magnetic) {
        throw InvalidArgument("maxwell_project: FE input must live on the target space");
    }
    return solve_maxwell_system(magnetic, curlcurl_divdiv_matrix(magnetic).matrix * h.coefficients());
}

DiscreteGradient::DiscreteGradient(SpacePtr velocity, SpacePtr pressure)
    : velocity_(std::move(velocity)), pressure_(std::move(pressure)), mass_(mass_matrix(velocity_).matrix),
      divergence_(divergence_matrix(velocity_, pressure_).matrix)
{
    apply_zero_constraints(mass_, velocity_->constrained_mask());
}

ProjectionResult DiscreteGradient::operator()(const FeFunction& q) const
{
    if (q.space_ptr() != pressure_) {
        throw InvalidArgument("discrete_gradient: pressure lives on a different space");
    }
    std::vector<double> rhs(velocity_->num_dofs(), 0.0);
    divergence_.multiply_transpose_add(-1.0, q.coefficients(), rhs);
    const auto& mask = velocity_->constrained_mask();
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        if (mask[i]) {
            rhs[i] = 0.0;
        }
    }
    SolveResult sol = solve_spd(mass_, rhs);
    return {FeFunction(velocity_, std::move(sol.x)), sol.report};
}

ProjectionResult discrete_gradient(const SpacePtr& velocity, const FeFunction& q)
{
    return DiscreteGradient(velocity, q.space_ptr())(q);
}

double l2_norm_squared(const FeFunction& fn)
{
    const Space& space = fn.space();
    const QuadratureRule rule = gauss_rule(std::min(2 * space.degree(), kMaxQuadratureDegree));
    detail::ElementValues ev(space, rule);
    double total = 0.0;
    for (std::size_t t = 0; t < space.mesh().num_triangles(); ++t) {
        ev.reinit(t);
        for (int q = 0; q < ev.num_points(); ++q) {
            const Vec2 v = ev.value(fn, q);
            total += ev.jxw(q) * (v[0] * v[0] + v[1] * v[1]);
        }
    }
    return total;
}

double l2_norm(const FeFunction& fn) { return std::sqrt(l2_norm_squared(fn)); }

std::vector<InverseRatio> measure_inverse_constant(const std::vector<int>& mesh_sizes, int velocity_degree,
                                                   const PressureSampler& sampler)
{
    std::vector<InverseRatio> out;
    for (int n : mesh_sizes) {
        const MeshPtr mesh = make_mesh(n);
        const SpacePtr velocity = build_space(mesh, velocity_degree, 2, ConstraintKind::FullDirichlet);
        const SpacePtr pressure = build_space(mesh, velocity_degree - 1, 1, ConstraintKind::MeanZero);
        const FeFunction q = sampler(pressure);
        const ProjectionResult grad = DiscreteGradient(velocity, pressure)(q);
        if (!grad.report.success) {
            throw SolverFailure("measure_inverse_constant: mass solve failed on n=" + std::to_string(n) + ": " +
                                grad.report.message);
        }
        out.push_back({n, mesh->h(), mesh->h() * l2_norm(grad.field) / l2_norm(q)});
    }
    return out;
}

} // namespace mhdcn
