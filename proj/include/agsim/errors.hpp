#pragma once

#include <stdexcept>
#include <string>

namespace agsim {

/// Invalid physical parameters (violated domain bound).
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Flux bias at or beyond half a flux quantum: SQUID inductance diverges.
class singular_bias_error : public domain_error {
public:
    explicit singular_bias_error(const std::string& what) : domain_error(what) {}
};

/// Inconsistent run configuration (geometry, boundaries, strides).
class config_error : public std::invalid_argument {
public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Time integration produced NaN/overflow.
class divergence_error : public std::runtime_error {
public:
    divergence_error(const std::string& what, long step)
        : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
    long step() const { return step_; }

private:
    long step_;
};

/// Result failed an internal accuracy check (tolerances, conserved quantities).
class accuracy_error : public std::runtime_error {
public:
    explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

/// Eigenbasis truncation not converged.
class cutoff_error : public std::runtime_error {
public:
    explicit cutoff_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace agsim
