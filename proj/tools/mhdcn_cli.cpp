// Command-line driver: single runs, convergence studies and the energy study.
#include "mhdcn/config.hpp"
#include "mhdcn/error.hpp"
#include "mhdcn/study.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    try {
        const mhdcn::SimulationConfig config = mhdcn::parse_config(argc, argv);
        if (config.show_help) {
            std::cout << mhdcn::usage();
            return 0;
        }
        return mhdcn::run_study(config, std::cout);
    } catch (const mhdcn::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
