// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nandsim/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <string>

namespace nandsim::yaml_util {

[[noreturn]] inline void fail(const std::string &file, const YAML::Node &n, const std::string &msg)
{
    const YAML::Mark m = n.Mark();
    if (m.is_null())
        throw ConfigError(file + ": " + msg);
    throw ConfigError(file + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1) +
                      ": " + msg);
}

inline YAML::Node load_file(const std::string &file)
{
    try {
        return YAML::LoadFile(file);
    } catch (const YAML::BadFile &) {
        throw ConfigError(file + ": cannot open file");
    } catch (const YAML::ParserException &e) {
        throw ConfigError(file + ":" + std::to_string(e.mark.line + 1) + ":" +
                          std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
}

template <typename T>
T get(const std::string &file, const YAML::Node &parent, const char *key)
{
    const YAML::Node n = parent[key];
    if (!n)
        fail(file, parent, std::string("missing key '") + key + "'");
    try {
        return n.as<T>();
    } catch (const YAML::Exception &) {
        fail(file, n, std::string("bad value for '") + key + "'");
    }
}

template <typename T>
T get_or(const std::string &file, const YAML::Node &parent, const char *key, T fallback)
{
    const YAML::Node n = parent[key];
    if (!n)
        return fallback;
    try {
        return n.as<T>();
    } catch (const YAML::Exception &) {
        fail(file, n, std::string("bad value for '") + key + "'");
    }
}

} // namespace nandsim::yaml_util
