#pragma once

#include <stdexcept>
#include <string>

namespace kitaev {

// Arguments outside an operation's domain (bad labels, mismatched sizes, ...).
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// Request exceeds a configured size guard (full enumeration, dense ceiling, ...).
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// A sector basis violated its closure contract (image state missing from the set).
class closure_error : public std::runtime_error {
public:
    explicit closure_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace kitaev
