#ifndef QECOMP_ERRORS_HPP
#define QECOMP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qecomp {

/// Radius or argument outside the domain of a geometric quantity
/// (period violation, pole, ordering).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Parameters for which a constant or theorem is undefined (2p <= n+k, beta <= 1, mu < 1/k).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The graded quadrature did not reach its tolerance within the allowed refinements.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration document problem; key() names the offending dotted key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace qecomp

#endif
