#pragma once

#include <stdexcept>
#include <string>

namespace cvdv {

// Parameter outside its mathematical domain (bad lambda, empty spectrum, ...).
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Truncation too short for the requested construction. Carries the smallest
// truncation that would have been accepted.
class insufficient_truncation : public std::runtime_error {
public:
    insufficient_truncation(const std::string& what, int required)
        : std::runtime_error(what), required_truncation(required) {}
    int required_truncation;
};

}  // namespace cvdv
