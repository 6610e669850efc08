/**
 * @file config.hpp
 * @brief Run configuration from command-line flags and key=value files.
 */
#pragma once

#include "mhdcn/params.hpp"

#include <string>
#include <vector>

namespace mhdcn {

enum class StudyMode { Single, Temporal, Spatial, Energy };

std::string to_string(StudyMode mode);

/// One rung of a refinement ladder: N time steps on an n x n mesh.
struct LadderEntry {
    int steps;
    int n;
};

struct SimulationConfig {
    int example = 0;
    int degree = 3;
    int n = 20;
    int steps = 40;
    double final_time = 1.0;
    PhysicalParams params;
    std::string out_dir = "out";
    StudyMode study = StudyMode::Single;
    std::vector<LadderEntry> ladder;
    /// Mesh sizes for the spatial study.
    std::vector<int> sizes{8, 16, 32};
    bool show_help = false;
    /// Messages about file values overridden by flags.
    std::vector<std::string> log;

    [[nodiscard]] double tau() const { return final_time / steps; }
    /// Throws UsageError on the first violated invariant.
    void validate() const;
};

/// "40:20,80:40" -> {(40, 20), (80, 40)}
std::vector<LadderEntry> parse_ladder(const std::string& text);
std::vector<int> parse_sizes(const std::string& text);

/// Flags override values read from --config FILE. Throws UsageError.
SimulationConfig parse_config(const std::vector<std::string>& args);
SimulationConfig parse_config(int argc, const char* const* argv);

std::string usage();

} // namespace mhdcn
