// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdlib>
#include <string>

#ifndef NANDSIM_DEFAULT_CONFIG_DIR
#define NANDSIM_DEFAULT_CONFIG_DIR "config"
#endif

namespace nandsim {

// Shipped config directory; NANDSIM_CONFIG_DIR overrides the build-time location.
inline std::string config_path(const std::string &name)
{
    const char *env = std::getenv("NANDSIM_CONFIG_DIR");
    return std::string(env && *env ? env : NANDSIM_DEFAULT_CONFIG_DIR) + "/" + name;
}

} // namespace nandsim
