// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace nandsim {

// Bad or inconsistent configuration input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A model was asked to evaluate outside the range it was fitted over.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nandsim
