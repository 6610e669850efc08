#include "mhdcn/error.hpp"
#include "mhdcn/forms.hpp"
#include "mhdcn/mesh.hpp"
#include "mhdcn/mms.hpp"
#include "mhdcn/projections.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace mhdcn {
namespace {

constexpr double pi = std::numbers::pi;

struct Spaces {
    SpacePtr velocity;
    SpacePtr pressure;
    SpacePtr magnetic;
};

Spaces make_spaces(int n, int r)
{
    const auto mesh = make_mesh(n);
    return {build_space(mesh, r, 2, ConstraintKind::FullDirichlet), build_space(mesh, r - 1, 1, ConstraintKind::MeanZero),
            build_space(mesh, r, 2, ConstraintKind::TangentialZero)};
}

std::vector<double> random_vector(std::size_t n, std::mt19937& rng)
{
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) {
        x = uni(rng);
    }
    return v;
}

// Random coefficients with constrained dofs zeroed.
FeFunction random_in_space(const SpacePtr& s, std::mt19937& rng)
{
    FeFunction f(s, random_vector(s->num_dofs(), rng));
    for (int i = 0; i < s->num_dofs(); ++i) {
        if (s->is_constrained(i)) {
            f.coefficients()[i] = 0.0;
        }
    }
    if (s->constraint() == ConstraintKind::MeanZero) {
        remove_mean(f);
    }
    return f;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

TEST(L2Projection, ReproducesPolynomialsOfTheSpace)
{
    const auto s = build_space(make_mesh(3), 2, 1, ConstraintKind::None);
    const ScalarFunction f = [](Point p, double) { return 1.0 + p.x * p.y - 2.0 * p.y * p.y; };
    const ProjectionResult r = l2_project(s, f);
    ASSERT_TRUE(r.report.success);
    EXPECT_LT(error_l2(r.field, f, 0.0), 1e-11);
}

TEST(L2Projection, IdempotentOnSpace)
{
    std::mt19937 rng(2);
    const Spaces sp = make_spaces(4, 2);
    for (const SpacePtr& s : {sp.velocity, sp.pressure, sp.magnetic}) {
        const FeFunction f = random_in_space(s, rng);
        const ProjectionResult r = l2_project(s, f);
        ASSERT_TRUE(r.report.success);
        EXPECT_LT(max_diff(r.field.coefficients(), f.coefficients()), 1e-10);
    }
}

TEST(L2Projection, MeanZeroSpaceRemovesMean)
{
    const Spaces sp = make_spaces(4, 2);
    const ProjectionResult r = l2_project(sp.pressure, ScalarFunction([](Point p, double) { return 3.0 + p.x; }));
    EXPECT_NEAR(integral(r.field), 0.0, 1e-12);
    EXPECT_LT(error_l2(r.field, ScalarFunction([](Point p, double) { return p.x - 0.5; }), 0.0), 1e-11);
}

TEST(L2Projection, RejectsForeignSpace)
{
    const Spaces a = make_spaces(2, 2);
    const Spaces b = make_spaces(2, 2);
    EXPECT_THROW((void)l2_project(a.velocity, FeFunction(b.velocity)), InvalidArgument);
}

TEST(StokesProjection, IdempotentOnDiscretePair)
{
    std::mt19937 rng(5);
    const Spaces sp = make_spaces(4, 2);
    // any discrete pair is first projected; its image must be fixed
    const FeFunction u = random_in_space(sp.velocity, rng);
    const FeFunction p = random_in_space(sp.pressure, rng);
    const StokesProjectionResult first = stokes_project(sp.velocity, sp.pressure, u, p);
    ASSERT_TRUE(first.report.success);
    const StokesProjectionResult second = stokes_project(sp.velocity, sp.pressure, first.velocity, first.pressure);
    ASSERT_TRUE(second.report.success);
    EXPECT_LT(max_diff(second.velocity.coefficients(), first.velocity.coefficients()), 1e-10);
    EXPECT_LT(max_diff(second.pressure.coefficients(), first.pressure.coefficients()), 1e-10);
}

TEST(StokesProjection, DiscretelyDivergenceFreeWithMeanZeroPressure)
{
    const Spaces sp = make_spaces(6, 2);
    const ExampleSpec spec(2);
    const ExactFields ex = exact_fields(spec);
    const StokesProjectionResult r = stokes_project(sp.velocity, sp.pressure, ex.u, ex.grad_u, ex.p, 1.0, 1.0);
    ASSERT_TRUE(r.report.success);
    const CsrMatrix d = divergence_matrix(sp.velocity, sp.pressure).matrix;
    for (double v : d * r.velocity.coefficients()) {
        EXPECT_LT(std::abs(v), 1e-12);
    }
    EXPECT_NEAR(integral(r.pressure), 0.0, 1e-12);
}

TEST(StokesProjection, OrthogonalityResiduals)
{
    // nu (grad(u - Ru), grad v) - (p - Rp, div v) = 0 for all discrete v
    const Spaces sp = make_spaces(4, 2);
    const ExampleSpec spec(1);
    const ExactFields ex = exact_fields(spec);
    const double nu = 0.5;
    const StokesProjectionResult r = stokes_project(sp.velocity, sp.pressure, ex.u, ex.grad_u, ex.p, nu, 1.0);
    const CsrMatrix a = stiffness_matrix(sp.velocity).matrix;
    const CsrMatrix d = divergence_matrix(sp.velocity, sp.pressure).matrix;
    const auto lhs_exact = assemble_functional(
        *sp.velocity,
        [&](Point x) {
            const Mat2 g = ex.grad_u(x, 1.0);
            const double p = ex.p(x, 1.0);
            FunctionalDensity den;
            den.grad = {Vec2{nu * g[0][0] - p, nu * g[0][1]}, Vec2{nu * g[1][0], nu * g[1][1] - p}};
            return den;
        },
        error_quadrature_degree(2));
    std::vector<double> lhs_h = a * r.velocity.coefficients();
    for (double& v : lhs_h) {
        v *= nu;
    }
    d.multiply_transpose_add(-1.0, r.pressure.coefficients(), lhs_h);
    for (int i = 0; i < sp.velocity->num_dofs(); ++i) {
        if (!sp.velocity->is_constrained(i)) {
            EXPECT_NEAR(lhs_h[i], lhs_exact[i], 1e-10) << "dof " << i;
        }
    }
}

TEST(StokesProjection, ConvergesAtOptimalRate)
{
    const ExampleSpec spec(2);
    const ExactFields ex = exact_fields(spec);
    std::vector<double> errs;
    for (int n : {4, 8}) {
        const Spaces sp = make_spaces(n, 2);
        const StokesProjectionResult r = stokes_project(sp.velocity, sp.pressure, ex.u, ex.grad_u, ex.p, 1.0, 1.0);
        errs.push_back(error_l2(r.velocity, ex.u, 1.0));
    }
    EXPECT_GT(std::log2(errs[0] / errs[1]), 2.5);
}

TEST(MaxwellProjection, IdempotentOnSpace)
{
    std::mt19937 rng(9);
    const Spaces sp = make_spaces(4, 2);
    const FeFunction h = random_in_space(sp.magnetic, rng);
    const ProjectionResult r = maxwell_project(sp.magnetic, h);
    ASSERT_TRUE(r.report.success);
    EXPECT_LT(max_diff(r.field.coefficients(), h.coefficients()), 1e-10);
}

TEST(MaxwellProjection, OrthogonalityAndTangentialTrace)
{
    const Spaces sp = make_spaces(4, 3);
    const ExampleSpec spec(1);
    const ExactFields ex = exact_fields(spec);
    const ProjectionResult r = maxwell_project(sp.magnetic, ex.grad_h, 1.0);
    ASSERT_TRUE(r.report.success);
    for (int dof : sp.magnetic->constrained_dofs()) {
        EXPECT_EQ(r.field.coefficients()[dof], 0.0);
    }
    const CsrMatrix k = curlcurl_divdiv_matrix(sp.magnetic).matrix;
    const auto rhs = assemble_functional(
        *sp.magnetic,
        [&](Point x) {
            const Mat2 g = ex.grad_h(x, 1.0);
            const double curl = g[1][0] - g[0][1];
            const double div = g[0][0] + g[1][1];
            FunctionalDensity den;
            den.grad = {Vec2{div, -curl}, Vec2{curl, div}};
            return den;
        },
        error_quadrature_degree(3));
    const auto kh = k * r.field.coefficients();
    for (int i = 0; i < sp.magnetic->num_dofs(); ++i) {
        if (!sp.magnetic->is_constrained(i)) {
            EXPECT_NEAR(kh[i], rhs[i], 1e-10);
        }
    }
}

TEST(MaxwellProjection, ConvergesAtOptimalRate)
{
    const ExactFields ex = exact_fields(ExampleSpec(1));
    std::vector<double> errs;
    for (int n : {4, 8}) {
        const Spaces sp = make_spaces(n, 3);
        errs.push_back(error_l2(maxwell_project(sp.magnetic, ex.grad_h, 1.0).field, ex.h, 1.0));
    }
    EXPECT_GT(std::log2(errs[0] / errs[1]), 3.5);
}

TEST(DiscreteGradient, ZeroPressureGivesZeroField)
{
    const Spaces sp = make_spaces(3, 2);
    const ProjectionResult g = discrete_gradient(sp.velocity, FeFunction(sp.pressure));
    ASSERT_TRUE(g.report.success);
    for (double v : g.field.coefficients()) {
        EXPECT_EQ(v, 0.0);
    }
}

TEST(DiscreteGradient, AdjointToDivergence)
{
    std::mt19937 rng(31);
    const Spaces sp = make_spaces(5, 2);
    const DiscreteGradient grad(sp.velocity, sp.pressure);
    const CsrMatrix m = mass_matrix(sp.velocity).matrix;
    for (int trial = 0; trial < 10; ++trial) {
        const FeFunction v = random_in_space(sp.velocity, rng);
        const FeFunction q = random_in_space(sp.pressure, rng);
        const ProjectionResult g = grad(q);
        ASSERT_TRUE(g.report.success);
        const double vg = dot(v.coefficients(), m * g.field.coefficients());
        const double divq = dot(q.coefficients(), grad.divergence() * v.coefficients());
        EXPECT_LE(std::abs(vg + divq), 1e-10) << "trial " << trial;
    }
}

TEST(DiscreteGradient, ApproachesTrueGradientUnderRefinement)
{
    const ScalarFunction q = [](Point p, double) { return std::sin(2 * pi * p.x) * std::sin(2 * pi * p.y); };
    const VectorFunction dq = [](Point p, double) {
        return Vec2{2 * pi * std::cos(2 * pi * p.x) * std::sin(2 * pi * p.y),
                    2 * pi * std::sin(2 * pi * p.x) * std::cos(2 * pi * p.y)};
    };
    std::vector<double> errs;
    for (int n : {8, 16}) {
        const Spaces sp = make_spaces(n, 2);
        const ProjectionResult g = discrete_gradient(sp.velocity, interpolate(sp.pressure, q));
        errs.push_back(error_l2(g.field, dq, 0.0));
    }
    EXPECT_GT(std::log2(errs[0] / errs[1]), 0.2);
}

TEST(Norms, L2NormOfKnownField)
{
    const auto s = build_space(make_mesh(2), 2, 2, ConstraintKind::None);
    const FeFunction f = interpolate(s, VectorFunction([](Point p, double) { return Vec2{p.x, 1.0}; }));
    EXPECT_NEAR(l2_norm_squared(f), 1.0 / 3.0 + 1.0, 1e-13);
    EXPECT_NEAR(l2_norm(f), std::sqrt(4.0 / 3.0), 1e-13);
}

TEST(InverseInequality, RatioBoundedForRandomPressures)
{
    const PressureSampler sampler = [](const SpacePtr& pressure) {
        std::mt19937 rng(pressure->mesh().subdivisions());
        FeFunction q(pressure, random_vector(pressure->num_dofs(), rng));
        remove_mean(q);
        return q;
    };
    const auto ratios = measure_inverse_constant({8, 16, 32}, 2, sampler);
    ASSERT_EQ(ratios.size(), 3u);
    double lo = ratios[0].ratio;
    double hi = ratios[0].ratio;
    for (const auto& r : ratios) {
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
        EXPECT_GT(r.ratio, 0.0);
    }
    EXPECT_LE(hi / lo, 3.0);
}

TEST(InverseInequality, SmoothPressureDoesNotSaturate)
{
    const PressureSampler sampler = [](const SpacePtr& pressure) {
        return interpolate(pressure, ScalarFunction([](Point p, double) {
                               return std::sin(2 * pi * p.x) * std::sin(2 * pi * p.y);
                           }));
    };
    const auto ratios = measure_inverse_constant({8, 16, 32}, 2, sampler);
    EXPECT_LT(ratios[2].ratio, ratios[0].ratio);
}

} // namespace
} // namespace mhdcn
