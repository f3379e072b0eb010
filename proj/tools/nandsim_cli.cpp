// SPDX-License-Identifier: Apache-2.0
#include "nandsim/acceptance.hpp"
#include "nandsim/errors.hpp"
#include "nandsim/experiments.hpp"
#include "nandsim/kernels.hpp"
#include "nandsim/paths.hpp"
#include "nandsim/plot.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace nandsim;

namespace {

struct Common {
    std::string config = config_path("default.yaml");
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string mode;
};

void add_common(CLI::App *app, Common &c)
{
    app->add_option("-c,--config", c.config, "experiment config (YAML)");
    app->add_option("-o,--out", c.out, "output CSV path");
    app->add_option("--seed", c.seed, "override the config seed");
    app->add_option("--mode", c.mode, "override the simulation mode")->check(CLI::IsMember({"analytic", "mc"}));
}

ExperimentConfig resolve(const Common &c)
{
    ExperimentConfig cfg = load_config(c.config);
    if (c.seed) {
        cfg.seed = *c.seed;
        cfg.sim.seed = *c.seed;
    }
    if (c.mode == "mc")
        cfg.sim.mode = SimMode::MonteCarlo;
    else if (c.mode == "analytic")
        cfg.sim.mode = SimMode::Analytic;
    return cfg;
}

std::string out_path(const Common &c, const ExperimentConfig &cfg, const std::string &name)
{
    return c.out.empty() ? (std::filesystem::path(cfg.output_dir) / name).string() : c.out;
}

std::string sibling(const std::string &path, const std::string &suffix)
{
    std::filesystem::path p(path);
    return (p.parent_path() / (p.stem().string() + suffix + p.extension().string())).string();
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"3D NAND error model simulator and mitigation evaluation harness"};
    app.require_subcommand(1);

    Common sweep_o, life_o, rep_o, acc_o;
    auto *sweep = app.add_subcommand("sweep", "RBER sweep over the configured PEC grid and policies");
    add_common(sweep, sweep_o);
    double sweep_retention = 0.0;
    std::vector<std::string> sweep_policies;
    sweep->add_option("--retention", sweep_retention, "retention time in seconds");
    sweep->add_option("--policies", sweep_policies, "policies to compare");

    auto *life = app.add_subcommand("lifetime", "endurance of each mitigation stack");
    add_common(life, life_o);
    bool with_fcr = false;
    life->add_flag("--fcr", with_fcr, "also report the refresh lifetime");

    auto *rep = app.add_subcommand("replicate", "refit the model rows from Monte Carlo characterization");
    add_common(rep, rep_o);

    auto *layout = app.add_subcommand("liraid-layout", "print a RAID group assignment table");
    int chips = 4, wordlines = 4;
    bool conventional = false;
    layout->add_option("-m,--chips", chips, "chips per RAID group");
    layout->add_option("-n,--wordlines", wordlines, "wordlines per block");
    layout->add_flag("--conventional", conventional, "layer-unaware layout");

    auto *plot = app.add_subcommand("plot", "render SVG charts from a result CSV");
    std::string plot_csv, plot_dir = ".";
    plot->add_option("csv", plot_csv, "sweep or lifetime CSV")->required();
    plot->add_option("-o,--out-dir", plot_dir, "directory for SVG files");

    auto *accept = app.add_subcommand("accept", "run the acceptance criteria");
    add_common(accept, acc_o);
    std::vector<int> only;
    accept->add_option("--only", only, "criterion ids to run")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) {
            ExperimentConfig cfg = resolve(sweep_o);
            if (sweep_retention > 0.0)
                cfg.sweep_retention_s = sweep_retention;
            if (!sweep_policies.empty())
                cfg.sweep_policies = sweep_policies;
            const std::string path = out_path(sweep_o, cfg, "sweep.csv");
            run_rber_sweep(cfg).csv(cfg.seed).write(path, cfg.hash(), cfg.seed);
            std::cout << "wrote " << path << "\n";
        } else if (*life) {
            const ExperimentConfig cfg = resolve(life_o);
            const LifetimeResult r = run_lifetime(cfg);
            const std::string path = out_path(life_o, cfg, "lifetime.csv");
            r.csv().write(path, cfg.hash(), cfg.seed);
            r.curve_csv().write(sibling(path, "_curve"), cfg.hash(), cfg.seed);
            for (const auto &s : r.stacks)
                std::cout << s.name << ": endurance " << s.endurance << " PEC, " << s.ratio << "x, ECC overhead "
                          << 100 * s.ecc_overhead << "% (" << 100 * s.ecc_reduction << "% lower)\n";
            if (with_fcr) {
                const FcrResult f = run_fcr(cfg);
                CsvTable t({"period_s", "lifetime_no_refresh", "lifetime_refresh", "factor", "write_amplification"});
                t.add({CsvTable::num(cfg.fcr_period_s), CsvTable::num(f.lifetime_no_refresh),
                       CsvTable::num(f.lifetime_refresh), CsvTable::num(f.factor),
                       CsvTable::num(f.write_amplification)});
                t.write(sibling(path, "_fcr"), cfg.hash(), cfg.seed);
                std::cout << "fcr: " << f.lifetime_no_refresh << " -> " << f.lifetime_refresh << " PEC ("
                          << f.factor << "x)\n";
            }
            std::cout << "wrote " << path << "\n";
        } else if (*rep) {
            const ExperimentConfig cfg = resolve(rep_o);
            const ReplicationResult r = run_characterization_replication(cfg);
            const std::string path = out_path(rep_o, cfg, "replicate.csv");
            r.csv().write(path, cfg.hash(), cfg.seed);
            r.gamma_csv().write(sibling(path, "_gamma"), cfg.hash(), cfg.seed);
            std::cout << "gamma fit over " << r.gamma_pages << " pages: shape " << r.gamma_shape << ", KL "
                      << r.gamma_kl << " nats\nwrote " << path << "\n";
        } else if (*layout) {
            const RaidGeometry g{chips, wordlines};
            std::cout << (conventional ? layout_conventional(g) : layout_li_raid(g)).format_table();
        } else if (*plot) {
            for (const auto &f : emit_plots(plot_csv, plot_dir))
                std::cout << "wrote " << f << "\n";
        } else if (*accept) {
            const ExperimentConfig cfg = resolve(acc_o);
            std::cout << "kernels: " << kernels::isa_name(kernels::active().isa) << ", seed " << cfg.seed
                      << ", config " << cfg.hash() << "\n";
            const auto results = run_acceptance(cfg, std::cout, only);
            const std::string path = out_path(acc_o, cfg, "acceptance.csv");
            acceptance_csv(results).write(path, cfg.hash(), cfg.seed);
            int failed = 0;
            for (const auto &r : results)
                failed += !r.pass;
            std::cout << results.size() - failed << "/" << results.size() << " criteria passed; wrote " << path
                      << "\n";
            return failed ? 4 : 0;
        }
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError &e) {
        std::cerr << "model domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
