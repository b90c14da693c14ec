#pragma once

#include <stdexcept>
#include <string>

namespace equivect {

// Input that fails validation (malformed spec, bad flag value).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input outside what this implementation supports (non-standard
// image position, no concrete fiber model available, non-twin demo request).
struct ScopeError : std::runtime_error {
    explicit ScopeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace equivect
