#pragma once

#include <stdexcept>
#include <string>

namespace pathint {

/// Raised when a request would enumerate or allocate past a configured cap
/// (e.g. classical summation over an intractably large grid).
class cap_exceeded_error : public std::runtime_error {
public:
    explicit cap_exceeded_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an observed value escapes a declared bound, e.g. an integrand
/// exceeding its stated range at an evaluated point.
class bound_violation_error : public std::runtime_error {
public:
    explicit bound_violation_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pathint
