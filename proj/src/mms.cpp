#include "mhdcn/mms.hpp"

#include "element_values.hpp"
#include "mhdcn/error.hpp"
#include "mhdcn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mhdcn {

void PhysicalParams::validate() const
{
    if (!(nu > 0.0) || !(sigma > 0.0) || !(mu > 0.0)) {
        throw InvalidArgument("nu, sigma and mu must be positive");
    }
}

namespace {

constexpr double pi = std::numbers::pi;

// Second derivatives of one component: xx, xy, yy.
struct Hess {
    double xx, xy, yy;
};

struct Shape {
    Vec2 v;
    Mat2 g;
    std::array<Hess, 2> hess;
};

// U = (sin^2(pi x) sin(2 pi y), -sin(2 pi x) sin^2(pi y))
Shape velocity_shape(Point x)
{
    const double sa = std::sin(pi * x.x), sb = std::sin(pi * x.y);
    const double sA = std::sin(2 * pi * x.x), cA = std::cos(2 * pi * x.x);
    const double sB = std::sin(2 * pi * x.y), cB = std::cos(2 * pi * x.y);
    const double pi2 = pi * pi;
    Shape s{};
    s.v = {sa * sa * sB, -sA * sb * sb};
    s.g[0] = {pi * sA * sB, 2 * pi * sa * sa * cB};
    s.g[1] = {-2 * pi * cA * sb * sb, -pi * sA * sB};
    s.hess[0] = {2 * pi2 * cA * sB, 2 * pi2 * sA * cB, -4 * pi2 * sa * sa * sB};
    s.hess[1] = {4 * pi2 * sA * sb * sb, -2 * pi2 * cA * sB, -2 * pi2 * sA * cB};
    return s;
}

// B = (-sin(2 pi y) cos(2 pi x), sin(2 pi x) cos(2 pi y))
Shape magnetic_shape(Point x)
{
    const double sA = std::sin(2 * pi * x.x), cA = std::cos(2 * pi * x.x);
    const double sB = std::sin(2 * pi * x.y), cB = std::cos(2 * pi * x.y);
    const double pi2 = pi * pi;
    Shape s{};
    s.v = {-sB * cA, sA * cB};
    s.g[0] = {2 * pi * sB * sA, -2 * pi * cB * cA};
    s.g[1] = {2 * pi * cA * cB, -2 * pi * sA * sB};
    s.hess[0] = {4 * pi2 * sB * cA, 4 * pi2 * cB * sA, 4 * pi2 * sB * cA};
    s.hess[1] = {-4 * pi2 * sA * cB, -4 * pi2 * cA * sB, -4 * pi2 * sA * cB};
    return s;
}

Vec2 scaled(const Vec2& v, double a) { return {a * v[0], a * v[1]}; }

Mat2 scaled(const Mat2& m, double a) { return {scaled(m[0], a), scaled(m[1], a)}; }

} // namespace

ExampleSpec::ExampleSpec(int id) : id_(id)
{
    if (id < 1 || id > 3) {
        throw InvalidArgument("unknown example " + std::to_string(id));
    }
}

double ExampleSpec::time_factor(double t) const noexcept { return id_ == 3 ? 1.0 : t * t * t * t; }

double ExampleSpec::time_factor_dt(double t) const noexcept { return id_ == 3 ? 0.0 : 4.0 * t * t * t; }

void ExampleSpec::require_time(double t) const
{
    if (id_ == 3 && t != 0.0) {
        throw InvalidArgument("example 3 has no closed-form solution for t > 0");
    }
}

Vec2 ExampleSpec::velocity(Point x, double t) const
{
    require_time(t);
    return scaled(velocity_shape(x).v, time_factor(t));
}

Mat2 ExampleSpec::velocity_gradient(Point x, double t) const
{
    require_time(t);
    return scaled(velocity_shape(x).g, time_factor(t));
}

Vec2 ExampleSpec::velocity_dt(Point x, double t) const
{
    require_time(t);
    return scaled(velocity_shape(x).v, time_factor_dt(t));
}

Vec2 ExampleSpec::magnetic(Point x, double t) const
{
    require_time(t);
    return scaled(magnetic_shape(x).v, time_factor(t));
}

Mat2 ExampleSpec::magnetic_gradient(Point x, double t) const
{
    require_time(t);
    return scaled(magnetic_shape(x).g, time_factor(t));
}

Vec2 ExampleSpec::magnetic_dt(Point x, double t) const
{
    require_time(t);
    return scaled(magnetic_shape(x).v, time_factor_dt(t));
}

double ExampleSpec::pressure(Point x, double t) const
{
    require_time(t);
    const double sA = std::sin(2 * pi * x.x), sB = std::sin(2 * pi * x.y);
    if (id_ == 1) {
        return time_factor(t) * sA * sA * sB * sB - 0.25;
    }
    return time_factor(t) * sA * sB;
}

Vec2 ExampleSpec::pressure_gradient(Point x, double t) const
{
    require_time(t);
    const double sA = std::sin(2 * pi * x.x), cA = std::cos(2 * pi * x.x);
    const double sB = std::sin(2 * pi * x.y), cB = std::cos(2 * pi * x.y);
    const double T = time_factor(t);
    if (id_ == 1) {
        return {T * 2 * pi * std::sin(4 * pi * x.x) * sB * sB, T * 2 * pi * sA * sA * std::sin(4 * pi * x.y)};
    }
    return {T * 2 * pi * cA * sB, T * 2 * pi * sA * cB};
}

double ExampleSpec::pressure_mean(double t) const
{
    require_time(t);
    if (id_ == 1) {
        return 0.25 * time_factor(t) - 0.25;
    }
    return 0.0;
}

Vec2 ExampleSpec::magnetic_source(Point x, double t, const PhysicalParams& params) const
{
    if (id_ == 3) {
        return {0.0, 0.0};
    }
    const double T = time_factor(t);
    const Shape u = velocity_shape(x);
    const Shape b = magnetic_shape(x);

    // curl curl B = (d_y c, -d_x c) with c = d_x B2 - d_y B1
    const double cx = b.hess[1].xx - b.hess[0].xy;
    const double cy = b.hess[1].xy - b.hess[0].yy;
    // curl(U x B) = (d_y s, -d_x s) with s = U1 B2 - U2 B1
    const double sx = u.g[0][0] * b.v[1] + u.v[0] * b.g[1][0] - u.g[1][0] * b.v[0] - u.v[1] * b.g[0][0];
    const double sy = u.g[0][1] * b.v[1] + u.v[0] * b.g[1][1] - u.g[1][1] * b.v[0] - u.v[1] * b.g[0][1];

    const double dT = time_factor_dt(t);
    return {params.mu * dT * b.v[0] + T * cy / params.sigma - params.mu * T * T * sy,
            params.mu * dT * b.v[1] - T * cx / params.sigma + params.mu * T * T * sx};
}

Vec2 ExampleSpec::momentum_source(Point x, double t, const PhysicalParams& params) const
{
    if (id_ == 3) {
        return {0.0, 0.0};
    }
    const double T = time_factor(t);
    const double dT = time_factor_dt(t);
    const Shape u = velocity_shape(x);
    const Shape b = magnetic_shape(x);
    const Vec2 gp = pressure_gradient(x, t);
    const double c = b.g[1][0] - b.g[0][1];
    Vec2 f{};
    for (int i = 0; i < 2; ++i) {
        const double adv = u.v[0] * u.g[i][0] + u.v[1] * u.g[i][1];
        const double lap = u.hess[i].xx + u.hess[i].yy;
        f[i] = dT * u.v[i] + T * T * adv - params.nu * T * lap + gp[i];
    }
    // B x c = (B2 c, -B1 c)
    f[0] += params.mu * T * T * b.v[1] * c;
    f[1] -= params.mu * T * T * b.v[0] * c;
    return f;
}

ExactFields exact_fields(const ExampleSpec& spec)
{
    return {[spec](Point x, double t) { return spec.velocity(x, t); },
            [spec](Point x, double t) { return spec.velocity_gradient(x, t); },
            [spec](Point x, double t) { return spec.magnetic(x, t); },
            [spec](Point x, double t) { return spec.magnetic_gradient(x, t); },
            [spec](Point x, double t) { return spec.pressure(x, t); }};
}

SourceTerms source_terms(const ExampleSpec& spec, const PhysicalParams& params)
{
    return {[spec, params](Point x, double t) { return spec.momentum_source(x, t, params); },
            [spec, params](Point x, double t) { return spec.magnetic_source(x, t, params); }};
}

int error_quadrature_degree(int r) { return std::min(3 * r + 2, kMaxQuadratureDegree); }

namespace {

template <typename Integrand>
double integrate_error(const Space& space, Integrand&& integrand)
{
    const QuadratureRule rule = gauss_rule(error_quadrature_degree(space.degree()));
    detail::ElementValues ev(space, rule);
    double sum = 0.0;
    for (std::size_t t = 0; t < space.mesh().num_triangles(); ++t) {
        ev.reinit(t);
        for (int q = 0; q < ev.num_points(); ++q) {
            sum += integrand(ev, q) * ev.jxw(q);
        }
    }
    return sum;
}

} // namespace

double error_l2(const FeFunction& fn, const VectorFunction& exact, double t)
{
    const double s = integrate_error(fn.space(), [&](const detail::ElementValues& ev, int q) {
        const Vec2 a = ev.value(fn, q);
        const Vec2 b = exact(ev.point(q), t);
        return (a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]);
    });
    return std::sqrt(s);
}

double error_l2(const FeFunction& fn, const ScalarFunction& exact, double t)
{
    const double s = integrate_error(fn.space(), [&](const detail::ElementValues& ev, int q) {
        const double d = ev.value(fn, q)[0] - exact(ev.point(q), t);
        return d * d;
    });
    return std::sqrt(s);
}

double error_l2_pressure(const FeFunction& fn, const ScalarFunction& exact, double t)
{
    const double mean = integrate_error(fn.space(), [&](const detail::ElementValues& ev, int q) {
        return exact(ev.point(q), t);
    });
    const double s = integrate_error(fn.space(), [&](const detail::ElementValues& ev, int q) {
        const double d = ev.value(fn, q)[0] - (exact(ev.point(q), t) - mean);
        return d * d;
    });
    return std::sqrt(s);
}

double error_gradient(const FeFunction& fn, const GradientFunction& grad_exact, double t)
{
    const double s = integrate_error(fn.space(), [&](const detail::ElementValues& ev, int q) {
        const Mat2 a = ev.gradient(fn, q);
        const Mat2 b = grad_exact(ev.point(q), t);
        double e = 0.0;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                e += (a[i][j] - b[i][j]) * (a[i][j] - b[i][j]);
            }
        }
        return e;
    });
    return std::sqrt(s);
}

double error_curl(const FeFunction& fn, const GradientFunction& grad_exact, double t)
{
    const double s = integrate_error(fn.space(), [&](const detail::ElementValues& ev, int q) {
        const Mat2 a = ev.gradient(fn, q);
        const Mat2 b = grad_exact(ev.point(q), t);
        const double d = (a[1][0] - a[0][1]) - (b[1][0] - b[0][1]);
        return d * d;
    });
    return std::sqrt(s);
}

EnergyNormErrorAccumulator::EnergyNormErrorAccumulator(ExampleSpec spec, double tau) : spec_(spec), tau_(tau)
{
    if (!spec.has_exact_solution()) {
        throw InvalidArgument("energy-norm errors need a closed-form solution");
    }
    if (!(tau > 0.0)) {
        throw InvalidArgument("time step must be positive");
    }
}

void EnergyNormErrorAccumulator::add_step(int n, const FeFunction& u_hat, const FeFunction& u_prev,
                                          const FeFunction& h)
{
    if (n < 2) {
        throw InvalidArgument("energy-norm errors accumulate from step 2");
    }
    if (u_hat.size() != u_prev.size()) {
        throw InvalidArgument("velocity snapshots live on different spaces");
    }
    const double tn = n * tau_;
    const double tm = (n - 1) * tau_;
    std::vector<double> avg(u_hat.size());
    for (std::size_t i = 0; i < avg.size(); ++i) {
        avg[i] = 0.5 * (u_hat.coefficients()[i] + u_prev.coefficients()[i]);
    }
    const FeFunction ubar(u_hat.space_ptr(), std::move(avg));
    const ExampleSpec spec = spec_;
    const GradientFunction grad_bar = [spec, tn, tm](Point x, double) {
        const Mat2 a = spec.velocity_gradient(x, tn);
        const Mat2 b = spec.velocity_gradient(x, tm);
        Mat2 m{};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                m[i][j] = 0.5 * (a[i][j] + b[i][j]);
            }
        }
        return m;
    };
    const GradientFunction grad_h = [spec](Point x, double t) { return spec.magnetic_gradient(x, t); };

    const double eu = error_gradient(ubar, grad_bar, tn);
    const double eh = error_gradient(h, grad_h, tn);
    const double ec = error_curl(h, grad_h, tn);
    sum_u_ += tau_ * eu * eu;
    sum_h_ += tau_ * eh * eh;
    sum_curl_ += tau_ * ec * ec;
    ++steps_;
}

double EnergyNormErrorAccumulator::grad_u() const { return std::sqrt(sum_u_); }
double EnergyNormErrorAccumulator::grad_h() const { return std::sqrt(sum_h_); }
double EnergyNormErrorAccumulator::curl_h() const { return std::sqrt(sum_curl_); }

ConvergenceOrders convergence_order(const std::vector<double>& errors, const std::vector<double>& steps)
{
    if (errors.size() != steps.size()) {
        throw InvalidArgument("errors and step sizes differ in length");
    }
    if (errors.size() < 2) {
        throw InvalidArgument("at least two refinement levels are needed");
    }
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!(errors[i] > 0.0) || !std::isfinite(errors[i])) {
            throw InvalidArgument("errors must be positive and finite");
        }
        if (!(steps[i] > 0.0)) {
            throw InvalidArgument("step sizes must be positive");
        }
        if (i > 0 && steps[i] == steps[i - 1]) {
            throw InvalidArgument("step sizes must be distinct");
        }
    }
    ConvergenceOrders out;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        out.pairwise.push_back(std::log(errors[i] / errors[i + 1]) / std::log(steps[i] / steps[i + 1]));
    }
    const double m = static_cast<double>(errors.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        const double x = std::log(steps[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    out.least_squares = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return out;
}

} // namespace mhdcn
