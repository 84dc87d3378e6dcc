#pragma once

#include <stdexcept>
#include <string>

namespace rebalance {

/// Raised for invalid data or parameters (bad CSV, schema/metric mismatch,
/// out-of-range percentages, unknown classes).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for malformed invocations; the CLI maps it to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rebalance
