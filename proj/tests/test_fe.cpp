#include "mhdcn/error.hpp"
#include "mhdcn/fe_function.hpp"
#include "mhdcn/quadrature.hpp"
#include "mhdcn/space.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace mhdcn {
namespace {

double factorial(int k)
{
    double f = 1.0;
    for (int i = 2; i <= k; ++i) {
        f *= i;
    }
    return f;
}

// integral of xi^a eta^b over the reference triangle = a! b! / (a + b + 2)!
double monomial_integral(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

double integrate(const QuadratureRule& rule, int a, int b)
{
    double s = 0.0;
    for (const auto& p : rule.points) {
        s += p.weight * std::pow(p.xi, a) * std::pow(p.eta, b);
    }
    return s;
}

TEST(Quadrature, ConstantAndLinear)
{
    const QuadratureRule rule = gauss_rule(1);
    EXPECT_NEAR(integrate(rule, 0, 0), 0.5, 1e-15);
    EXPECT_NEAR(integrate(rule, 1, 0), 1.0 / 6.0, 1e-15);
}

TEST(Quadrature, HighDegreeMonomial)
{
    const QuadratureRule rule = gauss_rule(10);
    ASSERT_GE(rule.exact_degree, 10);
    EXPECT_NEAR(integrate(rule, 5, 5), 120.0 * 120.0 / 479001600.0, 1e-16);
}

TEST(Quadrature, ExactUpToAdvertisedDegree)
{
    for (int d = 1; d <= kMaxQuadratureDegree; ++d) {
        const QuadratureRule rule = gauss_rule(d);
        EXPECT_GE(rule.exact_degree, d);
        double wsum = 0.0;
        for (const auto& p : rule.points) {
            wsum += p.weight;
            EXPECT_GE(p.xi, 0.0);
            EXPECT_GE(p.eta, 0.0);
            EXPECT_LE(p.xi + p.eta, 1.0 + 1e-15);
        }
        EXPECT_NEAR(wsum, 0.5, 1e-14);
        for (int a = 0; a <= rule.exact_degree; ++a) {
            for (int b = 0; a + b <= rule.exact_degree; ++b) {
                EXPECT_NEAR(integrate(rule, a, b), monomial_integral(a, b), 1e-15) << "d=" << d << " a=" << a
                                                                                    << " b=" << b;
            }
        }
    }
}

TEST(Quadrature, RejectsUnsupportedDegree)
{
    EXPECT_THROW(gauss_rule(0), InvalidArgument);
    EXPECT_THROW(gauss_rule(13), InvalidArgument);
}

TEST(Lagrange, KroneckerAtNodesAndPartitionOfUnity)
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int r = 1; r <= 4; ++r) {
        const LagrangeBasis basis(r);
        EXPECT_EQ(basis.size(), (r + 1) * (r + 2) / 2);
        std::vector<double> phi;
        std::vector<std::array<double, 2>> dphi;
        for (int k = 0; k < basis.size(); ++k) {
            const auto [a, b] = basis.nodes()[k];
            basis.values(static_cast<double>(a) / r, static_cast<double>(b) / r, phi);
            for (int j = 0; j < basis.size(); ++j) {
                EXPECT_NEAR(phi[j], j == k ? 1.0 : 0.0, 1e-13);
            }
        }
        for (int s = 0; s < 20; ++s) {
            double xi = uni(rng);
            double eta = uni(rng);
            if (xi + eta > 1.0) {
                xi = 1.0 - xi;
                eta = 1.0 - eta;
            }
            basis.values(xi, eta, phi);
            basis.gradients(xi, eta, dphi);
            double sum = 0.0, gx = 0.0, gy = 0.0;
            for (int j = 0; j < basis.size(); ++j) {
                sum += phi[j];
                gx += dphi[j][0];
                gy += dphi[j][1];
            }
            EXPECT_NEAR(sum, 1.0, 1e-13);
            EXPECT_NEAR(gx, 0.0, 1e-11);
            EXPECT_NEAR(gy, 0.0, 1e-11);
        }
    }
}

TEST(Lagrange, GradientsMatchFiniteDifferences)
{
    const LagrangeBasis basis(3);
    std::vector<double> p0, px, py;
    std::vector<std::array<double, 2>> g;
    const double xi = 0.21, eta = 0.33, d = 1e-6;
    basis.gradients(xi, eta, g);
    basis.values(xi - d, eta, p0);
    basis.values(xi + d, eta, px);
    for (int k = 0; k < basis.size(); ++k) {
        EXPECT_NEAR(g[k][0], (px[k] - p0[k]) / (2 * d), 1e-7);
    }
    basis.values(xi, eta - d, p0);
    basis.values(xi, eta + d, py);
    for (int k = 0; k < basis.size(); ++k) {
        EXPECT_NEAR(g[k][1], (py[k] - p0[k]) / (2 * d), 1e-7);
    }
}

TEST(Space, DofCounts)
{
    EXPECT_EQ(build_space(make_mesh(1), 1, 1, ConstraintKind::None)->num_dofs(), 4);
    EXPECT_EQ(build_space(make_mesh(2), 2, 1, ConstraintKind::None)->num_dofs(), 25);
    EXPECT_EQ(build_space(make_mesh(10), 3, 1, ConstraintKind::None)->num_dofs(), 961);
    EXPECT_EQ(build_space(make_mesh(3), 2, 2, ConstraintKind::FullDirichlet)->num_dofs(), 2 * 49);
}

TEST(Space, ElementDofsAreAtMappedNodes)
{
    const MeshPtr mesh = make_mesh(3);
    for (int r = 1; r <= 3; ++r) {
        const SpacePtr space = build_space(mesh, r, 1, ConstraintKind::None);
        for (std::size_t t = 0; t < mesh->num_triangles(); ++t) {
            const auto v = mesh->triangle_vertices(t);
            const auto dofs = space->element_dofs(t);
            ASSERT_EQ(static_cast<int>(dofs.size()), (r + 1) * (r + 2) / 2);
            for (int k = 0; k < space->dofs_per_element(); ++k) {
                const double xi = static_cast<double>(space->basis().nodes()[k][0]) / r;
                const double eta = static_cast<double>(space->basis().nodes()[k][1]) / r;
                const double x = v[0].x + xi * (v[1].x - v[0].x) + eta * (v[2].x - v[0].x);
                const double y = v[0].y + xi * (v[1].y - v[0].y) + eta * (v[2].y - v[0].y);
                const Point p = space->dof_point(dofs[k]);
                EXPECT_NEAR(p.x, x, 1e-14);
                EXPECT_NEAR(p.y, y, 1e-14);
            }
        }
    }
}

TEST(Space, TangentialConstraintComponents)
{
    const SpacePtr s = build_space(make_mesh(2), 2, 2, ConstraintKind::TangentialZero);
    const int ns = s->num_scalar_dofs();
    const int L = s->lattice_size();
    auto idx = [L](int I, int J) { return J * L + I; };
    // Bottom side interior node: H1 fixed, H2 free.
    EXPECT_TRUE(s->is_constrained(idx(2, 0)));
    EXPECT_FALSE(s->is_constrained(ns + idx(2, 0)));
    // Left side interior node: H2 fixed, H1 free.
    EXPECT_FALSE(s->is_constrained(idx(0, 2)));
    EXPECT_TRUE(s->is_constrained(ns + idx(0, 2)));
    // Corner: both.
    EXPECT_TRUE(s->is_constrained(idx(4, 4)));
    EXPECT_TRUE(s->is_constrained(ns + idx(4, 4)));
    // Interior: none.
    EXPECT_FALSE(s->is_constrained(idx(2, 2)));
    EXPECT_FALSE(s->is_constrained(ns + idx(2, 2)));
    // H1 on the two horizontal lattice rows, H2 on the two vertical columns.
    EXPECT_EQ(s->constrained_dofs().size(), 20u);
}

TEST(Space, DirichletConstrainsAllBoundaryDofs)
{
    const SpacePtr s = build_space(make_mesh(4), 3, 2, ConstraintKind::FullDirichlet);
    const int boundary_scalar = 4 * (s->lattice_size() - 1);
    EXPECT_EQ(s->constrained_dofs().size(), static_cast<std::size_t>(2 * boundary_scalar));
}

TEST(Space, InvalidCombinationsRejected)
{
    const MeshPtr mesh = make_mesh(2);
    EXPECT_THROW(build_space(mesh, 2, 2, ConstraintKind::MeanZero), InvalidArgument);
    EXPECT_THROW(build_space(mesh, 2, 1, ConstraintKind::TangentialZero), InvalidArgument);
    EXPECT_THROW(build_space(mesh, 0, 1, ConstraintKind::None), InvalidArgument);
    EXPECT_THROW(build_space(mesh, 2, 3, ConstraintKind::None), InvalidArgument);
}

std::array<double, 3> random_bary(std::mt19937& rng)
{
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double a = uni(rng), b = uni(rng);
    if (a + b > 1.0) {
        a = 1.0 - a;
        b = 1.0 - b;
    }
    return {1.0 - a - b, a, b};
}

Point physical(const Mesh& mesh, std::size_t t, const std::array<double, 3>& bary)
{
    const auto v = mesh.triangle_vertices(t);
    return {bary[0] * v[0].x + bary[1] * v[1].x + bary[2] * v[2].x, bary[0] * v[0].y + bary[1] * v[1].y + bary[2] * v[2].y};
}

TEST(Interpolate, ConstantReproduced)
{
    const SpacePtr s = build_space(make_mesh(3), 2, 1, ConstraintKind::None);
    const FeFunction f = interpolate(s, [](Point, double) { return 3.25; });
    for (double c : f.coefficients()) {
        EXPECT_EQ(c, 3.25);
    }
}

TEST(Interpolate, ReproducesPolynomialsUpToDegree)
{
    std::mt19937 rng(11);
    const MeshPtr mesh = make_mesh(4);
    for (int r = 1; r <= 4; ++r) {
        const SpacePtr s = build_space(mesh, r, 1, ConstraintKind::None);
        auto poly = [r](Point p, double) {
            double v = 0.0;
            for (int a = 0; a <= r; ++a) {
                for (int b = 0; a + b <= r; ++b) {
                    v += (1.0 + a - 0.5 * b) * std::pow(p.x, a) * std::pow(p.y, b);
                }
            }
            return v;
        };
        const FeFunction f = interpolate(s, poly);
        for (int k = 0; k < 50; ++k) {
            const std::size_t t = rng() % mesh->num_triangles();
            const auto bary = random_bary(rng);
            EXPECT_NEAR(f.value(t, bary)[0], poly(physical(*mesh, t, bary), 0.0), 1e-12);
        }
    }
}

double interpolation_l2_error(int n, int r)
{
    const MeshPtr mesh = make_mesh(n);
    const SpacePtr s = build_space(mesh, r, 1, ConstraintKind::None);
    auto f = [](Point p, double) { return std::sin(2 * std::numbers::pi * p.x) * std::sin(2 * std::numbers::pi * p.y); };
    const FeFunction fh = interpolate(s, f);
    const QuadratureRule rule = gauss_rule(12);
    double err = 0.0;
    for (std::size_t t = 0; t < mesh->num_triangles(); ++t) {
        const double area = mesh->signed_area(t);
        for (const auto& qp : rule.points) {
            const auto bary = qp.barycentric();
            const double d = fh.value(t, bary)[0] - f(physical(*mesh, t, bary), 0.0);
            err += 2.0 * area * qp.weight * d * d;
        }
    }
    return std::sqrt(err);
}

TEST(Interpolate, QuadraticConvergesAtThirdOrder)
{
    const double e8 = interpolation_l2_error(8, 2);
    const double e16 = interpolation_l2_error(16, 2);
    const double e32 = interpolation_l2_error(32, 2);
    EXPECT_NEAR(std::log2(e8 / e16), 3.0, 0.15);
    EXPECT_NEAR(std::log2(e16 / e32), 3.0, 0.1);
}

TEST(Interpolate, ConstrainedDofsZeroed)
{
    const SpacePtr s = build_space(make_mesh(3), 2, 2, ConstraintKind::FullDirichlet);
    const FeFunction f = interpolate(s, [](Point, double) { return Vec2{1.0, 2.0}; });
    for (int d = 0; d < s->num_dofs(); ++d) {
        EXPECT_EQ(f.coefficients()[d], s->is_constrained(d) ? 0.0 : (d < s->num_scalar_dofs() ? 1.0 : 2.0));
    }
}

TEST(Eval, LinearMidEdge)
{
    const MeshPtr mesh = make_mesh(3);
    const SpacePtr s = build_space(mesh, 1, 1, ConstraintKind::None);
    const FeFunction f = interpolate(s, [](Point p, double) { return p.x + p.y; });
    const std::array<double, 3> mid{0.5, 0.5, 0.0};
    for (std::size_t t = 0; t < mesh->num_triangles(); ++t) {
        const Point p = physical(*mesh, t, mid);
        EXPECT_NEAR(eval(f, t, mid)[0], p.x + p.y, 1e-15);
    }
}

TEST(Eval, GradientOfQuadraticAtCentroid)
{
    const MeshPtr mesh = make_mesh(5);
    const SpacePtr s = build_space(mesh, 2, 1, ConstraintKind::None);
    const FeFunction f = interpolate(s, [](Point p, double) { return p.x * p.x + p.y * p.y; });
    const std::array<double, 3> c{1.0 / 3, 1.0 / 3, 1.0 / 3};
    for (std::size_t t = 0; t < mesh->num_triangles(); ++t) {
        const Point p = physical(*mesh, t, c);
        const Mat2 g = eval_gradient(f, t, c);
        EXPECT_NEAR(g[0][0], 2 * p.x, 1e-12);
        EXPECT_NEAR(g[0][1], 2 * p.y, 1e-12);
    }
}

TEST(Eval, OutOfRangeTriangleRejected)
{
    const SpacePtr s = build_space(make_mesh(2), 2, 1, ConstraintKind::None);
    const FeFunction f(s);
    EXPECT_THROW((void)f.value(8, {1.0, 0.0, 0.0}), InvalidArgument);
}

TEST(FeFunction, LengthChecked)
{
    const SpacePtr s = build_space(make_mesh(2), 2, 1, ConstraintKind::None);
    EXPECT_THROW(FeFunction(s, std::vector<double>(3, 0.0)), InvalidArgument);
}

TEST(FeFunction, RemoveMean)
{
    const SpacePtr s = build_space(make_mesh(4), 2, 1, ConstraintKind::MeanZero);
    FeFunction f = interpolate(s, [](Point p, double) { return 1.0 + p.x * p.x; });
    EXPECT_NEAR(integral(f), 1.0 + 1.0 / 3.0, 1e-14);
    remove_mean(f);
    EXPECT_NEAR(integral(f), 0.0, 1e-14);
}

} // namespace
} // namespace mhdcn
