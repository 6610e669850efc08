/**
 * @file study.hpp
 * @brief Convergence and energy study drivers with CSV output.
 */
#pragma once

#include "mhdcn/config.hpp"
#include "mhdcn/scheme.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mhdcn {

struct StudyRow {
    int steps = 0;
    int n = 0;
    double tau = 0.0;
    /// Ladder mesh parameter 1/n.
    double h = 0.0;
    ErrorReport errors;
    /// "ok" or "failed: <cause>"
    std::string status = "ok";
    std::vector<StepDiagnostics> diagnostics;
};

/// Orders per error column, same order as kErrorColumns.
struct OrderRow {
    std::string label;
    std::vector<double> orders;
};

inline const std::vector<std::string> kErrorColumns{"e_u", "e_H", "e_p", "e_grad_u", "e_grad_H", "e_curl_H"};

struct StudyResult {
    std::vector<StudyRow> rows;
    /// Pairwise rows followed by a least-squares row; empty with fewer than two successful rows.
    std::vector<OrderRow> orders;
};

struct EnergyRecord {
    int step;
    double time;
    double energy;
};

struct EnergyResult {
    std::vector<EnergyRecord> records;
    bool monotone = true;
    /// First step whose energy exceeded its predecessor by more than the tolerance.
    std::optional<int> first_violation;
};

inline constexpr double kEnergyRelativeTolerance = 1e-12;

/// Runs one resolution and records errors; solver failures land in the status.
StudyRow run_single(const SimulationConfig& config, int steps, int n);

/// Rows follow the ladder; orders use tau as the step parameter.
StudyResult run_temporal_study(const SimulationConfig& config);
/// tau = h^{3/2} with h = 1/n over config.sizes; orders use h.
StudyResult run_spatial_study(const SimulationConfig& config);
/// E_h^n for n = 1..N with a monotonicity check.
EnergyResult run_energy_study(const SimulationConfig& config);

/// Step count giving tau <= h^{3/2} over [0, T].
int spatial_step_count(int n, double final_time);

/// Order rows from the emitted error values; uses `steps` as the step parameter.
std::vector<OrderRow> compute_orders(const std::vector<StudyRow>& rows, bool temporal);

void write_errors_csv(std::ostream& out, const StudyResult& result);
void write_orders_csv(std::ostream& out, const StudyResult& result);
void write_diagnostics_csv(std::ostream& out, const std::vector<StudyRow>& rows);
void write_energy_csv(std::ostream& out, const EnergyResult& result);

/// Dispatches on config.study and writes the CSV files into config.out_dir.
/// Returns 0 on success, 1 if any run failed or the energy increased.
int run_study(const SimulationConfig& config, std::ostream& log);

} // namespace mhdcn
