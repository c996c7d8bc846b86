#pragma once

#include <cmath>
#include <stdexcept>

namespace pii {

/// Gamma function for positive real argument.
inline double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
    return std::tgamma(x);
}

/// log Gamma for positive real argument.
inline double log_gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma_fn: argument must be positive");
    return std::lgamma(x);
}

}  // namespace pii
