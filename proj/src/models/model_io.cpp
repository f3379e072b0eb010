// SPDX-License-Identifier: Apache-2.0
#include "nandsim/models.hpp"
#include "nandsim/paths.hpp"

#include "../common/yaml_util.hpp"

namespace nandsim {

RetentionWearModel RetentionWearModel::load(const std::string &path)
{
    using namespace yaml_util;
    const YAML::Node root = load_file(path);
    ModelDomain dom;
    if (const YAML::Node d = root["domain"]) {
        dom.t_min = get_or(path, d, "t_min_s", dom.t_min);
        dom.t_max = get_or(path, d, "t_max_s", dom.t_max);
        dom.pec_max = get_or(path, d, "pec_max", dom.pec_max);
    }
    const YAML::Node rows = root["rows"];
    if (!rows || !rows.IsMap())
        fail(path, root, "missing 'rows' map");
    std::array<ModelRow, kNumVars> out{};
    std::array<bool, kNumVars> seen{};
    for (const auto &kv : rows) {
        const auto key = kv.first.as<std::string>();
        const auto var = var_from_key(key);
        if (!var)
            fail(path, kv.first, "unknown model row '" + key + "'");
        const YAML::Node r = kv.second;
        ModelRow row;
        row.alpha = get_or(path, r, "alpha", 0.0);
        row.beta = get_or(path, r, "beta", 0.0);
        row.gamma = get<double>(path, r, "gamma");
        row.delta = get<double>(path, r, "delta");
        row.adj_r2 = get_or(path, r, "adj_r2", 0.0);
        out[static_cast<int>(*var)] = row;
        seen[static_cast<int>(*var)] = true;
    }
    for (int i = 0; i < kNumVars; ++i)
        if (!seen[i])
            fail(path, rows, "missing model row '" + std::string(var_key(static_cast<Var>(i))) + "'");
    if (!(dom.t_min > 1.0 && dom.t_max > dom.t_min && dom.pec_max > 0.0))
        fail(path, root["domain"], "invalid model domain");
    return RetentionWearModel(out, dom);
}

RetentionWearModel RetentionWearModel::load_default() { return load(config_path("retention_wear.yaml")); }

} // namespace nandsim
