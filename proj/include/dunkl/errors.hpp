#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace dunkl {

// Precondition / argument violations.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A numerical routine could not reach its tolerance; carries what it did reach.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}
    double estimate() const { return estimate_; }

private:
    double estimate_;
};

namespace detail {
template <class... Args>
std::string concat(const Args&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}
}  // namespace detail

template <class... Args>
[[noreturn]] void throw_domain(const Args&... args) {
    throw DomainError(detail::concat(args...));
}

}  // namespace dunkl
