// SPDX-License-Identifier: Apache-2.0
#include "nandsim/config.hpp"
#include "nandsim/paths.hpp"

#include "../common/yaml_util.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

namespace nandsim {

namespace {

using namespace yaml_util;

std::vector<double> log_spaced(double lo, double hi, int n)
{
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = std::round(lo * std::pow(hi / lo, n > 1 ? double(i) / (n - 1) : 0.0));
    return out;
}

std::vector<double> seq(double start, double stop, double step)
{
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double v = start + i * step;
        if (v > stop + 1e-9 * std::abs(step))
            break;
        out.push_back(v);
    }
    return out;
}

PecGrid read_grid(const std::string &file, const YAML::Node &n, PecGrid g)
{
    if (!n)
        return g;
    g.start = get_or(file, n, "start", g.start);
    g.stop = get_or(file, n, "stop", g.stop);
    g.step = get_or(file, n, "step", g.step);
    if (!(g.step > 0.0) || g.stop < g.start || g.start < 0.0)
        fail(file, n, "PEC grid must be ascending with a positive step");
    return g;
}

std::vector<double> read_list(const std::string &file, const YAML::Node &parent, const char *key,
                              std::vector<double> fallback)
{
    const YAML::Node n = parent[key];
    if (!n)
        return fallback;
    if (!n.IsSequence())
        fail(file, n, std::string("'") + key + "' must be a list");
    std::vector<double> out;
    for (const auto &e : n) {
        try {
            out.push_back(e.as<double>());
        } catch (const YAML::Exception &) {
            fail(file, e, std::string("bad number in '") + key + "'");
        }
    }
    return out;
}

void require_ascending(const std::string &file, const YAML::Node &n, const std::vector<double> &v,
                       const char *what)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            fail(file, n, std::string(what) + " must be strictly ascending");
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(const std::vector<double> &v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + fmt(v[i]);
    return s + "]";
}

} // namespace

std::vector<double> PecGrid::points() const { return seq(start, stop, step); }

LayerVariationProfile ProfileKnots::build() const
{
    auto knots = [this](const std::vector<double> &y) {
        Knots k;
        for (std::size_t i = 0; i < x.size(); ++i)
            k.points.emplace_back(x[i], y[i]);
        return k;
    };
    return LayerVariationProfile::from_knots(layers, knots(mu_er), knots(sigma_er), knots(mu_p1), knots(sigma_p1));
}

ExperimentConfig default_config()
{
    ExperimentConfig c;
    c.model_file = config_path("retention_wear.yaml");
    c.remar_train_pec = seq(0.0, 20000.0, 2000.0);
    c.remar_train_retention_s = log_spaced(420.0, 24.0 * 86400.0, 9);
    return c;
}

ExperimentConfig load_config(const std::string &path)
{
    const YAML::Node root = load_file(path);
    if (!root.IsMap())
        fail(path, root, "top level must be a map");
    ExperimentConfig c = default_config();
    c.source = path;
    const std::filesystem::path dir = std::filesystem::path(path).parent_path();

    if (!root["seed"])
        fail(path, root, "missing key 'seed'");
    c.seed = get<std::uint64_t>(path, root, "seed");
    c.sim.seed = c.seed;

    const auto mode = get_or<std::string>(path, root, "mode", "analytic");
    if (mode == "analytic")
        c.sim.mode = SimMode::Analytic;
    else if (mode == "mc")
        c.sim.mode = SimMode::MonteCarlo;
    else
        fail(path, root["mode"], "mode must be 'analytic' or 'mc'");

    if (const YAML::Node n = root["model_file"]) {
        std::filesystem::path p = get<std::string>(path, root, "model_file");
        if (p.is_relative())
            p = dir / p;
        if (!std::filesystem::exists(p))
            fail(path, n, "model file not found: " + p.string());
        c.model_file = p.string();
    }

    if (const YAML::Node g = root["geometry"]) {
        auto &geo = c.sim.geometry;
        geo.n_chips = get_or(path, g, "chips", geo.n_chips);
        geo.blocks_per_chip = get_or(path, g, "blocks_per_chip", geo.blocks_per_chip);
        geo.wordlines_per_block = get_or(path, g, "wordlines_per_block", geo.wordlines_per_block);
        geo.cells_per_wordline = get_or(path, g, "cells_per_wordline", geo.cells_per_wordline);
        if (geo.n_chips < 1 || geo.blocks_per_chip < 2 || geo.wordlines_per_block < 1 || geo.cells_per_wordline < 1)
            fail(path, g, "geometry needs >= 1 chip, >= 2 blocks per chip, >= 1 wordline and cell");
    }
    if (const YAML::Node v = root["voltage_grid"]) {
        c.sim.v_min = get_or(path, v, "min", c.sim.v_min);
        c.sim.v_max = get_or(path, v, "max", c.sim.v_max);
        c.sim.dwell_s = get_or(path, v, "dwell_s", c.sim.dwell_s);
        if (!(c.sim.v_min < c.sim.v_max))
            fail(path, v, "voltage grid needs min < max");
    }

    if (const YAML::Node p = root["layer_profile"]) {
        auto &k = c.profile;
        k.layers = get_or(path, p, "layers", c.sim.geometry.wordlines_per_block);
        k.x = read_list(path, p, "knots_x", k.x);
        require_ascending(path, p["knots_x"], k.x, "knots_x");
        const std::size_t n = k.x.size();
        auto ys = [&](const char *key) {
            auto y = read_list(path, p, key, std::vector<double>(n, 0.0));
            if (y.size() != n)
                fail(path, p[key], std::string("'") + key + "' must have one value per knot");
            return y;
        };
        k.mu_er = ys("mu_er");
        k.sigma_er = ys("sigma_er");
        k.mu_p1 = ys("mu_p1");
        k.sigma_p1 = ys("sigma_p1");
        try {
            (void)k.build();
        } catch (const ConfigError &e) {
            fail(path, p, e.what());
        }
    } else {
        c.profile.layers = c.sim.geometry.wordlines_per_block;
    }

    if (const YAML::Node i = root["interference"]) {
        c.program.enabled = get_or(path, i, "program", c.program.enabled);
        c.program.coupling_next_wl = get_or(path, i, "next_wl", c.program.coupling_next_wl);
        c.program.coupling_prev_wl = get_or(path, i, "prev_wl", c.program.coupling_prev_wl);
        c.retention_interference.enabled = get_or(path, i, "retention", c.retention_interference.enabled);
        const double scale = get_or(path, i, "retention_scale", 1.0);
        for (auto &row : c.retention_interference.shift_adjust)
            for (double &x : row)
                x *= scale;
    }
    if (const YAML::Node d = root["read_disturb"])
        c.disturb.enabled = get_or(path, d, "enabled", c.disturb.enabled);
    if (const YAML::Node r = root["read_errors"]) {
        c.read_error.enabled = get_or(path, r, "enabled", c.read_error.enabled);
        c.read_error.amplitude = get_or(path, r, "amplitude", c.read_error.amplitude);
        c.read_error.decay = get_or(path, r, "decay", c.read_error.decay);
    }

    if (const YAML::Node p = root["policies"]) {
        if (const YAML::Node f = p["fixed_default"]) {
            c.policy.fixed_default_pec = get_or(path, f, "pec", c.policy.fixed_default_pec);
            c.policy.fixed_default_retention_s = get_or(path, f, "retention_s", c.policy.fixed_default_retention_s);
        }
        c.policy.sota_reference_s = get_or(path, p, "sota_reference_s", c.policy.sota_reference_s);
    }
    if (const YAML::Node l = root["lavar"]) {
        c.lavar_learn_pec = get_or(path, l, "learn_pec", c.lavar_learn_pec);
        c.lavar_learn_retention_s = get_or(path, l, "learn_retention_s", c.lavar_learn_retention_s);
    }
    if (const YAML::Node r = root["remar"]) {
        c.remar_train_pec = read_list(path, r, "train_pec", c.remar_train_pec);
        require_ascending(path, r["train_pec"], c.remar_train_pec, "train_pec");
        c.remar_train_retention_s = read_list(path, r, "train_retention_s", c.remar_train_retention_s);
        require_ascending(path, r["train_retention_s"], c.remar_train_retention_s, "train_retention_s");
        if (c.remar_train_pec.size() < 2 || c.remar_train_retention_s.size() < 2)
            fail(path, r, "ReMAR training needs at least two PEC and two retention points");
    }
    if (const YAML::Node s = root["sweep"]) {
        c.sweep_retention_s = get_or(path, s, "retention_s", c.sweep_retention_s);
        c.sweep_pec = read_grid(path, s["pec"], c.sweep_pec);
        if (const YAML::Node pol = s["policies"]) {
            c.sweep_policies.clear();
            for (const auto &e : pol)
                c.sweep_policies.push_back(e.as<std::string>());
            for (const auto &name : c.sweep_policies)
                if (name != "fixed" && name != "sota" && name != "agnostic" && name != "lavar" &&
                    name != "remar" && name != "full")
                    fail(path, pol, "unknown policy '" + name + "'");
        }
    }
    if (const YAML::Node l = root["lifetime"]) {
        c.lifetime_retention_s = get_or(path, l, "retention_s", c.lifetime_retention_s);
        c.lifetime_pec = read_grid(path, l["pec"], c.lifetime_pec);
        const auto stat = get_or<std::string>(path, l, "group_statistic", "mean");
        if (stat == "mean")
            c.group_statistic = GroupStatistic::Mean;
        else if (stat == "max")
            c.group_statistic = GroupStatistic::Max;
        else
            fail(path, l["group_statistic"], "group_statistic must be 'mean' or 'max'");
    }
    if (const YAML::Node f = root["fcr"]) {
        c.fcr_period_s = get_or(path, f, "period_s", c.fcr_period_s);
        if (!(c.fcr_period_s > 0.0))
            fail(path, f, "FCR period must be positive");
    }
    if (const YAML::Node e = root["ecc"]) {
        c.ecc.k = get_or(path, e, "k", c.ecc.k);
        c.ecc.m = get_or(path, e, "m", c.ecc.m);
        c.ecc.target_uncorrectable = get_or(path, e, "target_uncorrectable", c.ecc.target_uncorrectable);
        c.ecc.rber_limit = get_or(path, e, "rber_limit", c.ecc.rber_limit);
        try {
            c.ecc.validate();
        } catch (const std::exception &ex) {
            fail(path, e, ex.what());
        }
    }
    if (const YAML::Node r = root["replicate"])
        c.replicate_cells = get_or(path, r, "cells_per_wordline", c.replicate_cells);
    c.output_dir = get_or(path, root, "output_dir", c.output_dir);
    if (std::filesystem::path(c.output_dir).is_relative())
        c.output_dir = (dir / c.output_dir).string();

    for (double t : {c.sweep_retention_s, c.lifetime_retention_s, c.lavar_learn_retention_s,
                     c.policy.sota_reference_s, c.policy.fixed_default_retention_s})
        if (!(t > 0.0))
            fail(path, root, "retention times must be positive");
    return c;
}

ErrorModels ExperimentConfig::build_models() const
{
    ErrorModels m;
    m.wear = RetentionWearModel::load(model_file);
    m.profile = profile.build();
    m.program = program;
    m.disturb = disturb;
    m.read_error = read_error;
    m.retention_interference = retention_interference;
    return m;
}

std::string ExperimentConfig::canonical() const
{
    std::ostringstream os;
    const auto &g = sim.geometry;
    os << "seed=" << seed << "\nmode=" << (sim.mode == SimMode::MonteCarlo ? "mc" : "analytic")
       << "\ngeometry=" << g.n_chips << "," << g.blocks_per_chip << "," << g.wordlines_per_block << ","
       << g.cells_per_wordline << "\nvgrid=" << fmt(sim.v_min) << "," << fmt(sim.v_max)
       << "\nprofile=" << profile.layers << fmt(profile.x) << fmt(profile.mu_er) << fmt(profile.sigma_er)
       << fmt(profile.mu_p1) << fmt(profile.sigma_p1) << "\nprogram=" << program.enabled << ","
       << fmt(program.coupling_next_wl) << "," << fmt(program.coupling_prev_wl)
       << "\nretention_interference=" << retention_interference.enabled;
    for (const auto &row : retention_interference.shift_adjust)
        for (double x : row)
            os << "," << fmt(x);
    os << "\ndisturb=" << disturb.enabled << "\nread_error=" << read_error.enabled << ","
       << fmt(read_error.amplitude) << "," << fmt(read_error.decay) << "\nfixed=" << fmt(policy.fixed_default_pec)
       << "," << fmt(policy.fixed_default_retention_s) << "\nsota=" << fmt(policy.sota_reference_s)
       << "\nlavar=" << fmt(lavar_learn_pec) << "," << fmt(lavar_learn_retention_s)
       << "\nremar=" << fmt(remar_train_pec) << fmt(remar_train_retention_s) << "\nsweep=" << fmt(sweep_retention_s)
       << fmt(sweep_pec.points());
    for (const auto &p : sweep_policies)
        os << "," << p;
    os << "\nlifetime=" << fmt(lifetime_retention_s) << fmt(lifetime_pec.points())
       << (group_statistic == GroupStatistic::Mean ? ",mean" : ",max") << "\nfcr=" << fmt(fcr_period_s)
       << "\necc=" << ecc.k << "," << ecc.m << "," << fmt(ecc.target_uncorrectable) << "," << fmt(ecc.rber_limit)
       << "\nreplicate=" << replicate_cells << "\n";
    // Model rows by value so the hash does not depend on where the file lives.
    const RetentionWearModel wear = RetentionWearModel::load(model_file);
    for (int i = 0; i < kNumVars; ++i) {
        const ModelRow &r = wear.row(static_cast<Var>(i));
        os << var_key(static_cast<Var>(i)) << "=" << fmt(r.alpha) << "," << fmt(r.beta) << "," << fmt(r.gamma)
           << "," << fmt(r.delta) << "\n";
    }
    return os.str();
}

std::string ExperimentConfig::hash() const
{
    // FNV-1a, 64 bit.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace nandsim
