#include "mhdcn/scheme.hpp"

#include "mhdcn/error.hpp"
#include "mhdcn/forms.hpp"
#include "mhdcn/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mhdcn {

namespace {

CsrMatrix column_matrix(const std::vector<double>& v)
{
    const int n = static_cast<int>(v.size());
    std::vector<int> ptr(n + 1);
    for (int i = 0; i <= n; ++i) {
        ptr[i] = i;
    }
    return CsrMatrix(n, 1, std::move(ptr), std::vector<int>(n, 0), v);
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

FeFunction extrapolate(const FeFunction& curr, const FeFunction& prev)
{
    std::vector<double> c(curr.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = 1.5 * curr.coefficients()[i] - 0.5 * prev.coefficients()[i];
    }
    return FeFunction(curr.space_ptr(), std::move(c));
}

double quadratic_form(const CsrMatrix& m, const std::vector<double>& x)
{
    return dot(x, m * x);
}

void axpy(double a, const std::vector<double>& x, std::vector<double>& y)
{
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += a * x[i];
    }
}

[[noreturn]] void fail(int step, const char* stage, const SolverReport& report)
{
    throw SolverFailure("step " + std::to_string(step) + " " + stage + ": " + report.message +
                        " (relative residual " + std::to_string(report.relative_residual) + ")");
}

} // namespace

Discretization build_discretization(int n, int degree)
{
    if (degree < 2) {
        throw InvalidArgument("velocity degree must be at least 2");
    }
    if (n < 2) {
        throw InvalidArgument("mesh needs at least 2 subdivisions");
    }
    Discretization d;
    d.mesh = make_mesh(n);
    d.velocity = build_space(d.mesh, degree, 2, ConstraintKind::FullDirichlet);
    d.pressure = build_space(d.mesh, degree - 1, 1, ConstraintKind::MeanZero);
    d.magnetic = build_space(d.mesh, degree, 2, ConstraintKind::TangentialZero);
    d.mass_u = mass_matrix(d.velocity).matrix;
    d.stiffness = stiffness_matrix(d.velocity).matrix;
    d.mass_h = mass_matrix(d.magnetic).matrix;
    d.curl_div = curlcurl_divdiv_matrix(d.magnetic).matrix;
    d.div = divergence_matrix(d.velocity, d.pressure).matrix;
    d.mean = mean_functional(*d.pressure);
    return d;
}

ProblemData problem_from_example(const ExampleSpec& spec, const PhysicalParams& params)
{
    const ExactFields ex = exact_fields(spec);
    ProblemData data{ex.u, ex.grad_u, ex.h, ex.grad_h, ex.p, {}, {}};
    if (spec.has_exact_solution()) {
        const SourceTerms src = source_terms(spec, params);
        data.f = src.f;
        data.g = src.g;
    }
    return data;
}

ProblemData zero_problem()
{
    const VectorFunction zero_v = [](Point, double) { return Vec2{0.0, 0.0}; };
    const GradientFunction zero_g = [](Point, double) { return Mat2{}; };
    return {zero_v, zero_g, zero_v, zero_g, [](Point, double) { return 0.0; }, {}, {}};
}

Scheme::Scheme(const Discretization& disc, PhysicalParams params, ProblemData data, double tau)
    : disc_(disc), params_(params), data_(std::move(data)), tau_(tau), grad_(disc.velocity, disc.pressure)
{
    params_.validate();
    if (!(tau > 0.0)) {
        throw InvalidArgument("time step must be positive");
    }
}

SchemeState Scheme::initialize_t0() const
{
    const StokesProjectionResult stokes =
        stokes_project(disc_.velocity, disc_.pressure, data_.u0, data_.grad_u0, data_.p0, params_.nu, 0.0);
    if (!stokes.report.success) {
        fail(0, "Stokes projection", stokes.report);
    }
    const ProjectionResult maxwell = maxwell_project(disc_.magnetic, data_.grad_h0, 0.0);
    if (!maxwell.report.success) {
        fail(0, "Maxwell projection", maxwell.report);
    }
    SchemeState s;
    s.h_prev = maxwell.field;
    s.h_curr = maxwell.field;
    s.u_prev = stokes.velocity;
    s.u_curr = stokes.velocity;
    s.p_curr = stokes.pressure;
    return s;
}

SchemeState Scheme::first_step_backward_euler(const SchemeState& s0, StepDiagnostics* diag)
{
    const int nh = disc_.magnetic->num_dofs();
    const int nu = disc_.velocity->num_dofs();
    const int np = disc_.pressure->num_dofs();
    const double mu = params_.mu;
    const double t1 = tau_;

    const CsrMatrix c = coupling_u_cross_H(disc_.velocity, disc_.magnetic, s0.h_curr).matrix;
    const CsrMatrix l = coupling_lorentz(disc_.magnetic, disc_.velocity, s0.h_curr).matrix;
    const CsrMatrix n = convection_matrix(disc_.velocity, s0.u_curr).matrix;
    const CsrMatrix hb = linear_combination({{mu / tau_, &disc_.mass_h}, {1.0 / params_.sigma, &disc_.curl_div}});
    const CsrMatrix ub =
        linear_combination({{1.0 / tau_, &disc_.mass_u}, {params_.nu, &disc_.stiffness}, {1.0, &n}});
    const CsrMatrix dt = disc_.div.transpose();
    const CsrMatrix mcol = column_matrix(disc_.mean);
    const CsrMatrix mrow = row_matrix(disc_.mean);

    CsrMatrix system = block_matrix({nh, nu, np, 1}, {nh, nu, np, 1},
                                    {{{1.0, &hb}, {-mu, &c}, {}, {}},
                                     {{mu, &l}, {1.0, &ub}, {-1.0, &dt}, {}},
                                     {{}, {-1.0, &disc_.div}, {}, {1.0, &mcol}},
                                     {{}, {}, {1.0, &mrow}, {}}});

    std::vector<double> rhs(nh + nu + np + 1, 0.0);
    {
        std::vector<double> rh = disc_.mass_h * s0.h_curr.coefficients();
        for (double& v : rh) {
            v *= mu / tau_;
        }
        if (data_.g) {
            axpy(1.0, load_vector(disc_.magnetic, data_.g, t1), rh);
        }
        std::copy(rh.begin(), rh.end(), rhs.begin());
        std::vector<double> ru = disc_.mass_u * s0.u_curr.coefficients();
        for (double& v : ru) {
            v /= tau_;
        }
        if (data_.f) {
            axpy(1.0, load_vector(disc_.velocity, data_.f, t1), ru);
        }
        std::copy(ru.begin(), ru.end(), rhs.begin() + nh);
    }

    std::vector<char> mask(rhs.size(), 0);
    std::copy(disc_.magnetic->constrained_mask().begin(), disc_.magnetic->constrained_mask().end(), mask.begin());
    std::copy(disc_.velocity->constrained_mask().begin(), disc_.velocity->constrained_mask().end(),
              mask.begin() + nh);
    apply_zero_constraints(system, rhs, mask);

    DirectSolver solver;
    const SolverReport fact = solver.factorize(system);
    if (!fact.success) {
        fail(1, "backward Euler", fact);
    }
    const SolveResult sol = solver.solve(rhs);
    if (!sol.report.success) {
        fail(1, "backward Euler", sol.report);
    }

    SchemeState s;
    s.h_prev = s0.h_curr;
    s.u_prev = s0.u_curr;
    s.h_curr = FeFunction(disc_.magnetic, std::vector<double>(sol.x.begin(), sol.x.begin() + nh));
    s.u_curr = FeFunction(disc_.velocity, std::vector<double>(sol.x.begin() + nh, sol.x.begin() + nh + nu));
    s.p_curr =
        FeFunction(disc_.pressure, std::vector<double>(sol.x.begin() + nh + nu, sol.x.begin() + nh + nu + np));
    s.step = 1;
    s.time = t1;

    if (diag != nullptr) {
        diag->step = 1;
        diag->time = t1;
        diag->divergence_residual = divergence_residual(s.u_curr);
        diag->equivalence_residual = 0.0;
        diag->stage_a = sol.report;
        diag->stage_b = sol.report;
    }
    return s;
}

Scheme::StageASystem Scheme::assemble_stage_a(const SchemeState& s) const
{
    const int nh = disc_.magnetic->num_dofs();
    const int nu = disc_.velocity->num_dofs();
    const double mu = params_.mu;
    const double sigma = params_.sigma;
    const double nu_visc = params_.nu;
    const double t_half = (s.step + 0.5) * tau_;

    const FeFunction h_tilde = extrapolate(s.h_curr, s.h_prev);
    const FeFunction u_tilde = extrapolate(s.u_curr, s.u_prev);
    const CsrMatrix c = coupling_u_cross_H(disc_.velocity, disc_.magnetic, h_tilde).matrix;
    const CsrMatrix l = coupling_lorentz(disc_.magnetic, disc_.velocity, h_tilde).matrix;
    const CsrMatrix n = convection_matrix(disc_.velocity, u_tilde).matrix;

    const CsrMatrix hb = linear_combination({{mu / tau_, &disc_.mass_h}, {0.75 / sigma, &disc_.curl_div}});
    const CsrMatrix ub =
        linear_combination({{1.0 / tau_, &disc_.mass_u}, {0.5 * nu_visc, &disc_.stiffness}, {0.5, &n}});

    StageASystem out{block_matrix({nh, nu}, {nh, nu}, {{{1.0, &hb}, {-0.5 * mu, &c}}, {{0.75 * mu, &l}, {1.0, &ub}}}),
                     std::vector<double>(nh + nu, 0.0)};

    const auto& hn = s.h_curr.coefficients();
    const auto& hm = s.h_prev.coefficients();
    const auto& un = s.u_curr.coefficients();

    std::vector<double> rh(nh, 0.0);
    disc_.mass_h.multiply_add(mu / tau_, hn, rh);
    disc_.curl_div.multiply_add(-0.25 / sigma, hm, rh);
    c.multiply_add(0.5 * mu, un, rh);
    if (data_.g) {
        axpy(1.0, load_vector(disc_.magnetic, data_.g, t_half), rh);
    }

    std::vector<double> ru(nu, 0.0);
    disc_.mass_u.multiply_add(1.0 / tau_, un, ru);
    disc_.stiffness.multiply_add(-0.5 * nu_visc, un, ru);
    n.multiply_add(-0.5, un, ru);
    disc_.div.multiply_transpose_add(1.0, s.p_curr.coefficients(), ru);
    l.multiply_add(-0.25 * mu, hm, ru);
    if (data_.f) {
        axpy(1.0, load_vector(disc_.velocity, data_.f, t_half), ru);
    }

    std::copy(rh.begin(), rh.end(), out.rhs.begin());
    std::copy(ru.begin(), ru.end(), out.rhs.begin() + nh);

    std::vector<char> mask(nh + nu, 0);
    std::copy(disc_.magnetic->constrained_mask().begin(), disc_.magnetic->constrained_mask().end(), mask.begin());
    std::copy(disc_.velocity->constrained_mask().begin(), disc_.velocity->constrained_mask().end(),
              mask.begin() + nh);
    apply_zero_constraints(out.matrix, out.rhs, mask);
    return out;
}

void Scheme::factorize_stage_b()
{
    const int nu = disc_.velocity->num_dofs();
    const int np = disc_.pressure->num_dofs();
    const CsrMatrix dt = disc_.div.transpose();
    const CsrMatrix mcol = column_matrix(disc_.mean);
    const CsrMatrix mrow = row_matrix(disc_.mean);
    CsrMatrix system = block_matrix({nu, np, 1}, {nu, np, 1},
                                    {{{1.0, &disc_.mass_u}, {-0.5 * tau_, &dt}, {}},
                                     {{-0.5 * tau_, &disc_.div}, {}, {1.0, &mcol}},
                                     {{}, {1.0, &mrow}, {}}});
    std::vector<char> mask(nu + np + 1, 0);
    std::copy(disc_.velocity->constrained_mask().begin(), disc_.velocity->constrained_mask().end(), mask.begin());
    apply_zero_constraints(system, mask);
    const SolverReport rep = stage_b_.factorize(system);
    if (!rep.success) {
        fail(0, "stage B factorization", rep);
    }
    stage_b_ready_ = true;
}

SchemeState Scheme::cn_step(const SchemeState& s, StepDiagnostics* diag, FeFunction* u_hat_out)
{
    if (s.step < 1) {
        throw InvalidArgument("cn_step needs two time levels; run the backward-Euler step first");
    }
    const int next = s.step + 1;
    const int nh = disc_.magnetic->num_dofs();
    const int nu = disc_.velocity->num_dofs();
    const int np = disc_.pressure->num_dofs();

    // Stage A: coupled (H^{n+1}, uhat^{n+1}).
    const StageASystem sys = assemble_stage_a(s);
    const SolverReport fact = stage_a_.factorize(sys.matrix);
    if (!fact.success) {
        fail(next, "stage A", fact);
    }
    const SolveResult a = stage_a_.solve(sys.rhs);
    if (!a.report.success) {
        fail(next, "stage A", a.report);
    }
    FeFunction h_next(disc_.magnetic, std::vector<double>(a.x.begin(), a.x.begin() + nh));
    FeFunction u_hat(disc_.velocity, std::vector<double>(a.x.begin() + nh, a.x.end()));

    // Stage B: projection onto discretely divergence-free fields.
    if (!stage_b_ready_) {
        factorize_stage_b();
    }
    std::vector<double> rhs(nu + np + 1, 0.0);
    disc_.mass_u.multiply(u_hat.coefficients(), std::span<double>(rhs.data(), nu));
    const auto& mask = disc_.velocity->constrained_mask();
    for (int i = 0; i < nu; ++i) {
        if (mask[i]) {
            rhs[i] = 0.0;
        }
    }
    const SolveResult b = stage_b_.solve(rhs);
    if (!b.report.success) {
        fail(next, "stage B", b.report);
    }
    FeFunction u_next(disc_.velocity, std::vector<double>(b.x.begin(), b.x.begin() + nu));
    FeFunction dp(disc_.pressure, std::vector<double>(b.x.begin() + nu, b.x.begin() + nu + np));
    std::vector<double> p = s.p_curr.coefficients();
    axpy(1.0, dp.coefficients(), p);

    SchemeState out;
    out.h_prev = s.h_curr;
    out.h_curr = std::move(h_next);
    out.u_prev = s.u_curr;
    out.u_curr = std::move(u_next);
    out.p_curr = FeFunction(disc_.pressure, std::move(p));
    out.step = next;
    out.time = next * tau_;

    if (diag != nullptr) {
        diag->step = next;
        diag->time = out.time;
        diag->divergence_residual = divergence_residual(out.u_curr);
        diag->equivalence_residual = check_equivalence_ ? equivalence_residual(out.u_curr, u_hat, dp) : 0.0;
        diag->stage_a = a.report;
        diag->stage_b = b.report;
    }
    if (u_hat_out != nullptr) {
        *u_hat_out = std::move(u_hat);
    }
    return out;
}

double Scheme::energy(const SchemeState& s) const
{
    std::vector<double> jump = s.h_curr.coefficients();
    axpy(-1.0, s.h_prev.coefficients(), jump);
    const ProjectionResult gp = grad_(s.p_curr);
    if (!gp.report.success) {
        throw SolverFailure("energy: discrete gradient solve failed: " + gp.report.message);
    }
    return quadratic_form(disc_.mass_u, s.u_curr.coefficients()) +
           quadratic_form(disc_.mass_h, s.h_curr.coefficients()) + 0.25 * quadratic_form(disc_.mass_h, jump) +
           0.25 * tau_ * tau_ * quadratic_form(disc_.mass_u, gp.field.coefficients());
}

double Scheme::divergence_residual(const FeFunction& u) const
{
    const std::vector<double> r = disc_.div * u.coefficients();
    double worst = 0.0;
    for (double v : r) {
        worst = std::max(worst, std::abs(v));
    }
    const double norm = std::sqrt(std::max(0.0, quadratic_form(disc_.mass_u, u.coefficients())));
    return norm > 0.0 ? worst / norm : worst;
}

double Scheme::equivalence_residual(const FeFunction& u, const FeFunction& u_hat, const FeFunction& dp) const
{
    const ProjectionResult g = grad_(dp);
    if (!g.report.success) {
        throw SolverFailure("equivalence check: discrete gradient solve failed: " + g.report.message);
    }
    std::vector<double> lhs(u.size());
    std::vector<double> r(u.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        lhs[i] = (u.coefficients()[i] - u_hat.coefficients()[i]) / tau_;
        r[i] = lhs[i] + 0.5 * g.field.coefficients()[i];
    }
    const double rn = std::sqrt(std::max(0.0, quadratic_form(disc_.mass_u, r)));
    const double ln = std::sqrt(std::max(0.0, quadratic_form(disc_.mass_u, lhs)));
    return ln > 0.0 ? rn / ln : rn;
}

Trajectory run(const RunConfig& config, const StepObserver& observer)
{
    if (config.steps < 1) {
        throw InvalidArgument("step count must be at least 1");
    }
    if (!(config.final_time > 0.0)) {
        throw InvalidArgument("final time must be positive");
    }
    const ExampleSpec spec(config.example);
    const Discretization disc = build_discretization(config.n, config.degree);
    const double tau = config.final_time / config.steps;
    Scheme scheme(disc, config.params, problem_from_example(spec, config.params), tau);
    scheme.set_check_equivalence(config.check_equivalence);

    Trajectory traj;
    SchemeState s = scheme.initialize_t0();
    if (config.compute_energy) {
        traj.initial_energy = scheme.energy(s);
    }

    std::optional<EnergyNormErrorAccumulator> acc;
    if (spec.has_exact_solution()) {
        acc.emplace(spec, tau);
    }

    StepDiagnostics d;
    s = scheme.first_step_backward_euler(s, &d);
    if (config.compute_energy) {
        d.energy = scheme.energy(s);
    }
    traj.diagnostics.push_back(d);
    if (observer) {
        observer(s, nullptr);
    }

    FeFunction u_hat;
    for (int k = 2; k <= config.steps; ++k) {
        s = scheme.cn_step(s, &d, &u_hat);
        if (config.compute_energy) {
            d.energy = scheme.energy(s);
        }
        traj.diagnostics.push_back(d);
        if (acc) {
            acc->add_step(k, u_hat, s.u_prev, s.h_curr);
        }
        if (observer) {
            observer(s, &u_hat);
        }
    }

    if (acc) {
        const ExactFields ex = exact_fields(spec);
        const double t = s.time;
        ErrorReport e;
        e.e_u = error_l2(s.u_curr, ex.u, t);
        e.e_h = error_l2(s.h_curr, ex.h, t);
        e.e_p = error_l2_pressure(s.p_curr, ex.p, t);
        e.e_grad_u = acc->grad_u();
        e.e_grad_h = acc->grad_h();
        e.e_curl_h = acc->curl_h();
        traj.errors = e;
    }
    traj.final_state = std::move(s);
    return traj;
}

} // namespace mhdcn
