#pragma once

#include <stdexcept>
#include <string>

namespace cbound {

// Thrown when an internally derived quantity violates a consistency
// tolerance (collapsed feasibility interval, invariant drift, a planner
// missing a target it constructed). Signals a bug, not bad user input;
// user input problems throw std::domain_error instead.
class internal_error : public std::runtime_error {
public:
    explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cbound
