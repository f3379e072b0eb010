// SPDX-License-Identifier: Apache-2.0
#include "nandsim/acceptance.hpp"
#include "nandsim/errors.hpp"
#include "nandsim/kernels.hpp"
#include "nandsim/paths.hpp"

#include <iostream>

// Usage: nandsim_accept [config.yaml] [results.csv]
int main(int argc, char **argv)
{
    using namespace nandsim;
    try {
        const ExperimentConfig cfg = load_config(argc > 1 ? argv[1] : config_path("default.yaml"));
        const std::string out = argc > 2 ? argv[2] : cfg.output_dir + "/acceptance.csv";
        std::cout << "kernels: " << kernels::isa_name(kernels::active().isa) << ", seed " << cfg.seed << "\n";
        const auto results = run_acceptance(cfg, std::cout);
        acceptance_csv(results).write(out, cfg.hash(), cfg.seed);
        int failed = 0;
        for (const auto &r : results)
            failed += !r.pass;
        std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
        return failed ? 4 : 0;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError &e) {
        std::cerr << "model domain error: " << e.what() << "\n";
        return 3;
    }
}
