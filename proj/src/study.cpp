#include "mhdcn/study.hpp"

#include "mhdcn/error.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>

namespace mhdcn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> error_values(const ErrorReport& e)
{
    return {e.e_u, e.e_h, e.e_p, e.e_grad_u, e.e_grad_h, e.e_curl_h};
}

RunConfig run_config(const SimulationConfig& config, int steps, int n)
{
    RunConfig rc;
    rc.example = config.example;
    rc.degree = config.degree;
    rc.n = n;
    rc.steps = steps;
    rc.final_time = config.final_time;
    rc.params = config.params;
    return rc;
}

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << std::setprecision(10);
    return out;
}

} // namespace

StudyRow run_single(const SimulationConfig& config, int steps, int n)
{
    StudyRow row;
    row.steps = steps;
    row.n = n;
    row.tau = config.final_time / steps;
    row.h = 1.0 / n;
    row.errors = {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
    try {
        Trajectory traj = run(run_config(config, steps, n));
        row.diagnostics = std::move(traj.diagnostics);
        if (traj.errors) {
            row.errors = *traj.errors;
        }
    } catch (const Error& e) {
        row.status = std::string("failed: ") + e.what();
    }
    return row;
}

std::vector<OrderRow> compute_orders(const std::vector<StudyRow>& rows, bool temporal)
{
    std::vector<const StudyRow*> ok;
    for (const StudyRow& r : rows) {
        if (r.status == "ok" && std::isfinite(r.errors.e_u)) {
            ok.push_back(&r);
        }
    }
    if (ok.size() < 2) {
        return {};
    }
    std::vector<double> steps;
    for (const StudyRow* r : ok) {
        steps.push_back(temporal ? r->tau : r->h);
    }
    std::vector<OrderRow> out(ok.size());
    for (std::size_t i = 0; i + 1 < ok.size(); ++i) {
        out[i].label = (temporal ? std::to_string(ok[i]->steps) + "->" + std::to_string(ok[i + 1]->steps)
                                 : std::to_string(ok[i]->n) + "->" + std::to_string(ok[i + 1]->n));
    }
    out.back().label = "least_squares";
    for (std::size_t c = 0; c < kErrorColumns.size(); ++c) {
        std::vector<double> errs;
        for (const StudyRow* r : ok) {
            errs.push_back(error_values(r->errors)[c]);
        }
        try {
            const ConvergenceOrders o = convergence_order(errs, steps);
            for (std::size_t i = 0; i < o.pairwise.size(); ++i) {
                out[i].orders.push_back(o.pairwise[i]);
            }
            out.back().orders.push_back(o.least_squares);
        } catch (const InvalidArgument&) {
            for (OrderRow& r : out) {
                r.orders.push_back(kNaN);
            }
        }
    }
    return out;
}

StudyResult run_temporal_study(const SimulationConfig& config)
{
    if (config.ladder.empty()) {
        throw UsageError("temporal study needs a ladder");
    }
    StudyResult result;
    for (const LadderEntry& e : config.ladder) {
        result.rows.push_back(run_single(config, e.steps, e.n));
    }
    result.orders = compute_orders(result.rows, true);
    return result;
}

int spatial_step_count(int n, double final_time)
{
    const double tau = std::pow(1.0 / n, 1.5);
    return static_cast<int>(std::ceil(final_time / tau - 1e-9));
}

StudyResult run_spatial_study(const SimulationConfig& config)
{
    StudyResult result;
    for (int n : config.sizes) {
        result.rows.push_back(run_single(config, spatial_step_count(n, config.final_time), n));
    }
    result.orders = compute_orders(result.rows, false);
    return result;
}

EnergyResult run_energy_study(const SimulationConfig& config)
{
    if (config.example != 3) {
        throw UsageError("the energy study runs the source-free example 3");
    }
    RunConfig rc = run_config(config, config.steps, config.n);
    rc.check_equivalence = false;
    const Trajectory traj = run(rc);
    EnergyResult out;
    for (const StepDiagnostics& d : traj.diagnostics) {
        out.records.push_back({d.step, d.time, d.energy});
    }
    for (std::size_t i = 1; i < out.records.size(); ++i) {
        const double prev = out.records[i - 1].energy;
        if (out.records[i].energy > prev * (1.0 + kEnergyRelativeTolerance)) {
            out.monotone = false;
            if (!out.first_violation) {
                out.first_violation = out.records[i].step;
            }
        }
    }
    return out;
}

void write_errors_csv(std::ostream& out, const StudyResult& result)
{
    out << "tau,n,h,N";
    for (const std::string& c : kErrorColumns) {
        out << ',' << c;
    }
    out << ",status\n";
    for (const StudyRow& r : result.rows) {
        out << r.tau << ',' << r.n << ',' << r.h << ',' << r.steps;
        for (double v : error_values(r.errors)) {
            out << ',' << v;
        }
        out << ",\"" << r.status << "\"\n";
    }
    if (!result.orders.empty()) {
        out << "Order,,,";
        for (double v : result.orders.back().orders) {
            out << ',' << v;
        }
        out << ",least_squares\n";
    }
}

void write_orders_csv(std::ostream& out, const StudyResult& result)
{
    out << "pair";
    for (const std::string& c : kErrorColumns) {
        out << ',' << c;
    }
    out << '\n';
    for (const OrderRow& r : result.orders) {
        out << r.label;
        for (double v : r.orders) {
            out << ',' << v;
        }
        out << '\n';
    }
}

void write_diagnostics_csv(std::ostream& out, const std::vector<StudyRow>& rows)
{
    out << "N,n,step,t,energy,divergence_residual,equivalence_residual,stage_a_residual,stage_b_residual\n";
    for (const StudyRow& r : rows) {
        for (const StepDiagnostics& d : r.diagnostics) {
            out << r.steps << ',' << r.n << ',' << d.step << ',' << d.time << ',' << d.energy << ','
                << d.divergence_residual << ',' << d.equivalence_residual << ',' << d.stage_a.relative_residual << ','
                << d.stage_b.relative_residual << '\n';
        }
    }
}

void write_energy_csv(std::ostream& out, const EnergyResult& result)
{
    out << "n,t,E\n";
    for (const EnergyRecord& r : result.records) {
        out << r.step << ',' << r.time << ',' << r.energy << '\n';
    }
}

int run_study(const SimulationConfig& config, std::ostream& log)
{
    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    for (const std::string& msg : config.log) {
        log << "config: " << msg << '\n';
    }

    if (config.study == StudyMode::Energy) {
        const EnergyResult e = run_energy_study(config);
        auto csv = open_output(dir / "energy.csv");
        write_energy_csv(csv, e);
        auto series = open_output(dir / "energy_series.dat");
        for (const EnergyRecord& r : e.records) {
            series << r.time << ' ' << r.energy << '\n';
        }
        if (!e.monotone) {
            log << "ENERGY INCREASE at step " << *e.first_violation
                << ": the scheme violated its discrete energy law\n";
            return 1;
        }
        log << "energy nonincreasing over " << e.records.size() << " steps\n";
        return 0;
    }

    StudyResult result;
    if (config.study == StudyMode::Temporal) {
        result = run_temporal_study(config);
    } else if (config.study == StudyMode::Spatial) {
        result = run_spatial_study(config);
    } else {
        result.rows.push_back(run_single(config, config.steps, config.n));
        if (config.example == 3) {
            EnergyResult e;
            for (const StepDiagnostics& d : result.rows.front().diagnostics) {
                e.records.push_back({d.step, d.time, d.energy});
            }
            auto csv = open_output(dir / "energy.csv");
            write_energy_csv(csv, e);
        }
    }

    {
        auto csv = open_output(dir / "errors.csv");
        write_errors_csv(csv, result);
    }
    {
        auto csv = open_output(dir / "orders.csv");
        write_orders_csv(csv, result);
    }
    {
        auto csv = open_output(dir / "diagnostics.csv");
        write_diagnostics_csv(csv, result.rows);
    }

    int status = 0;
    log << std::setprecision(4) << std::scientific;
    for (const StudyRow& r : result.rows) {
        log << "N=" << r.steps << " n=" << r.n << " e_u=" << r.errors.e_u << " e_H=" << r.errors.e_h
            << " e_p=" << r.errors.e_p << " e_grad_u=" << r.errors.e_grad_u << " e_grad_H=" << r.errors.e_grad_h
            << " [" << r.status << "]\n";
        if (r.status != "ok") {
            status = 1;
        }
    }
    log << std::fixed << std::setprecision(2);
    for (const OrderRow& o : result.orders) {
        log << "order " << o.label << ':';
        for (std::size_t c = 0; c < o.orders.size(); ++c) {
            log << ' ' << kErrorColumns[c] << '=' << o.orders[c];
        }
        log << '\n';
    }
    return status;
}

} // namespace mhdcn
