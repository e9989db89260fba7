#pragma once

#include <stdexcept>
#include <string>

namespace cricpred {

// Bad input data: unparseable file, broken cross-reference, failed validation.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Contract misuse: invalid configuration, unknown hyperparameter,
// feature-name mismatch between training and prediction.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Builds a "file:line:column: message" DataError for CSV parse failures.
inline DataError parse_error(const std::string& file, std::size_t line,
                             std::size_t column, const std::string& message) {
    return DataError(file + ":" + std::to_string(line) + ":" +
                     std::to_string(column) + ": " + message);
}

}  // namespace cricpred
