#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace onm {

// Invalid parameters are reported with std::invalid_argument throughout.
// The types below cover the remaining failure classes.

/// A filter design produced an unusable (e.g. unstable) realization.
class DesignError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A statistic is undefined for the given data (zero variance, too few samples).
class UndefinedStatistic : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Scenario file problem. `path` is a JSON-pointer style location ("/noise/0/rate").
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Warning sink for non-fatal diagnostics. Defaults to stderr.
using WarningHandler = std::function<void(const std::string&)>;

void set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

} // namespace onm
