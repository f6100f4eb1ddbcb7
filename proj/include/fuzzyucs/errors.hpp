#pragma once

#include <stdexcept>
#include <string>

namespace fuzzyucs {

// Malformed or unusable input data (CSV parse failures, empty columns, ...).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration value or unknown configuration key.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fuzzyucs
