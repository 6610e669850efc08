#include "mhdcn/config.hpp"
#include "mhdcn/error.hpp"
#include "mhdcn/study.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mhdcn {
namespace {

std::filesystem::path temp_dir(const std::string& name)
{
    const auto p = std::filesystem::temp_directory_path() / ("mhdcn_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

TEST(ParseConfig, CoarseLadderResolution)
{
    const SimulationConfig c = parse_config({"--example", "1", "--degree", "3", "--nt", "40", "--n", "20"});
    EXPECT_EQ(c.example, 1);
    EXPECT_EQ(c.degree, 3);
    EXPECT_EQ(c.steps, 40);
    EXPECT_EQ(c.n, 20);
    EXPECT_DOUBLE_EQ(c.tau(), 1.0 / 40);
    // h = 1/n = 2 tau
    EXPECT_DOUBLE_EQ(1.0 / c.n, 2 * c.tau());
    EXPECT_EQ(c.study, StudyMode::Single);
}

TEST(ParseConfig, Defaults)
{
    const SimulationConfig c = parse_config({"--example", "3"});
    EXPECT_EQ(c.params.nu, 1.0);
    EXPECT_EQ(c.params.sigma, 1.0);
    EXPECT_EQ(c.params.mu, 1.0);
    EXPECT_EQ(c.final_time, 1.0);
}

TEST(ParseConfig, EmptyArgumentsAreUsageError)
{
    EXPECT_THROW((void)parse_config(std::vector<std::string>{}), UsageError);
}

TEST(ParseConfig, InvalidInputs)
{
    EXPECT_THROW((void)parse_config({"--example", "1", "--bogus", "3"}), UsageError);
    EXPECT_THROW((void)parse_config({"--example", "1", "--nt", "ten"}), UsageError);
    EXPECT_THROW((void)parse_config({"--nt", "10"}), UsageError);
    EXPECT_THROW((void)parse_config({"--example", "5"}), UsageError);
    EXPECT_THROW((void)parse_config({"--example", "1", "--degree", "1"}), UsageError);
    EXPECT_THROW((void)parse_config({"--example", "1", "--n", "1"}), UsageError);
    EXPECT_THROW((void)parse_config({"--example", "1", "--T", "-1"}), UsageError);
    EXPECT_THROW((void)parse_config({"--example", "1", "--nu", "0"}), UsageError);
    EXPECT_THROW((void)parse_config({"--example", "1", "--study", "weekly"}), UsageError);
    EXPECT_THROW((void)parse_config({"--example", "1", "--study", "temporal"}), UsageError);
}

TEST(ParseConfig, FlagOverridesFileAndIsLogged)
{
    const auto dir = temp_dir("cfg");
    const auto file = dir / "run.cfg";
    std::ofstream(file) << "# comment\nexample = 2\nnt=80\nmu = 0.5\n";
    const SimulationConfig c = parse_config({"--config", file.string(), "--nt", "40"});
    EXPECT_EQ(c.example, 2);
    EXPECT_EQ(c.steps, 40);
    EXPECT_EQ(c.params.mu, 0.5);
    ASSERT_EQ(c.log.size(), 1u);
    EXPECT_NE(c.log[0].find("nt"), std::string::npos);
    EXPECT_NE(c.log[0].find("80"), std::string::npos);
}

TEST(ParseConfig, BadConfigFile)
{
    const auto dir = temp_dir("badcfg");
    std::ofstream(dir / "a.cfg") << "example 1\n";
    std::ofstream(dir / "b.cfg") << "colour = red\n";
    EXPECT_THROW((void)parse_config({"--config", (dir / "a.cfg").string()}), UsageError);
    EXPECT_THROW((void)parse_config({"--config", (dir / "b.cfg").string()}), UsageError);
    EXPECT_THROW((void)parse_config({"--config", (dir / "missing.cfg").string()}), UsageError);
}

TEST(ParseConfig, HelpRequested)
{
    EXPECT_TRUE(parse_config({"--help"}).show_help);
    EXPECT_NE(usage().find("--ladder"), std::string::npos);
}

TEST(Ladder, ParseAndValidate)
{
    const auto l = parse_ladder("40:20, 80:40,160:80");
    ASSERT_EQ(l.size(), 3u);
    EXPECT_EQ(l[1].steps, 80);
    EXPECT_EQ(l[1].n, 40);
    EXPECT_THROW((void)parse_ladder("40-20"), UsageError);
    EXPECT_THROW((void)parse_config({"--example", "1", "--study", "temporal", "--ladder", "80:40,40:20"}), UsageError);
    const auto c = parse_config({"--example", "2", "--study", "temporal", "--ladder", "40:20,80:40"});
    EXPECT_EQ(c.study, StudyMode::Temporal);
    EXPECT_EQ(c.ladder.size(), 2u);
    EXPECT_EQ(parse_sizes("8,16,32"), (std::vector<int>{8, 16, 32}));
}

TEST(Study, SpatialStepCount)
{
    EXPECT_EQ(spatial_step_count(8, 1.0), 23);
    EXPECT_EQ(spatial_step_count(16, 1.0), 64);
    EXPECT_EQ(spatial_step_count(32, 1.0), 182);
}

TEST(Study, OrdersRecomputeFromEmittedValues)
{
    std::vector<StudyRow> rows(3);
    for (int i = 0; i < 3; ++i) {
        rows[i].steps = 10 << i;
        rows[i].tau = 1.0 / rows[i].steps;
        const double e = std::pow(rows[i].tau, 2);
        rows[i].errors = {e, 2 * e, 3 * e, 4 * e, 5 * e, 6 * e};
    }
    rows[2].status = "failed: test";
    const auto orders = compute_orders(rows, true);
    ASSERT_EQ(orders.size(), 2u);
    EXPECT_EQ(orders[0].label, "10->20");
    EXPECT_EQ(orders[1].label, "least_squares");
    for (double o : orders[1].orders) {
        EXPECT_NEAR(o, 2.0, 1e-12);
    }
    EXPECT_TRUE(compute_orders({rows[0]}, true).empty());
}

TEST(Study, CsvIsDeterministic)
{
    SimulationConfig c = parse_config({"--example", "1", "--degree", "2", "--study", "temporal", "--ladder", "2:2,4:4"});
    const StudyResult a = run_temporal_study(c);
    const StudyResult b = run_temporal_study(c);
    std::ostringstream sa, sb;
    write_errors_csv(sa, a);
    write_errors_csv(sb, b);
    EXPECT_EQ(sa.str(), sb.str());
    EXPECT_EQ(sa.str().rfind("tau,n,h,N,e_u,e_H,e_p,e_grad_u,e_grad_H,e_curl_H,status", 0), 0u);
    EXPECT_NE(sa.str().find("Order"), std::string::npos);
}

TEST(Study, SingleRungHasNoOrderRow)
{
    SimulationConfig c = parse_config({"--example", "1", "--degree", "2", "--study", "temporal", "--ladder", "2:2"});
    const StudyResult r = run_temporal_study(c);
    std::ostringstream s;
    write_errors_csv(s, r);
    EXPECT_EQ(s.str().find("Order"), std::string::npos);
}

TEST(Study, EnergyStudyRowsAndFiles)
{
    const auto dir = temp_dir("energy");
    SimulationConfig c = parse_config(
        {"--example", "3", "--degree", "2", "--n", "4", "--nt", "2", "--study", "energy", "--out", dir.string()});
    const EnergyResult e = run_energy_study(c);
    EXPECT_EQ(e.records.size(), 2u);
    EXPECT_TRUE(e.monotone);
    std::ostringstream log;
    EXPECT_EQ(run_study(c, log), 0);
    EXPECT_TRUE(std::filesystem::exists(dir / "energy.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "energy_series.dat"));

    c.example = 1;
    EXPECT_THROW((void)run_energy_study(c), UsageError);
}

TEST(Study, RunStudyWritesAllTables)
{
    const auto dir = temp_dir("temporal");
    const SimulationConfig c = parse_config({"--example", "2", "--degree", "2", "--study", "temporal", "--ladder",
                                             "2:2,4:4", "--out", dir.string()});
    std::ostringstream log;
    EXPECT_EQ(run_study(c, log), 0);
    for (const char* f : {"errors.csv", "orders.csv", "diagnostics.csv"}) {
        EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
    }
    std::ifstream diag(dir / "diagnostics.csv");
    int lines = 0;
    for (std::string line; std::getline(diag, line);) {
        ++lines;
    }
    EXPECT_EQ(lines, 1 + 2 + 4);
}

} // namespace
} // namespace mhdcn
