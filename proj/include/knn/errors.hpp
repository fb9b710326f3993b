#pragma once

#include <stdexcept>

namespace knn {

// Invalid parameter or parameter combination. CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File access failure or malformed file. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rejected input data, e.g. non-finite or out-of-domain coordinates.
// CLI exit code 3.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Broken internal invariant, e.g. the same neighbor index arriving from
// two different lanes at merge time. Always a bug, never bad user input.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace knn
