#pragma once

#include <cmath>
#include <string>

#include "ratmap/error.hpp"

namespace ratmap {

/// Coefficients of the map x -> (a x^3 + b x^2 + c x + d) / x^3.
///
/// Aggregate construction is the unchecked entry point. Use
/// make_validated() (model.hpp) for parameters that are guaranteed to keep
/// every orbit positive.
struct Params {
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;
    double d = 1.0;

    bool positive() const { return a > 0.0 && b > 0.0 && d > 0.0 && std::isfinite(c); }

    friend bool operator==(const Params&, const Params&) = default;
};

inline void require_positive(double a, double b, double d) {
    if (!(a > 0.0 && b > 0.0 && d > 0.0) || !std::isfinite(a) || !std::isfinite(b) ||
        !std::isfinite(d)) {
        throw precondition_error("a, b and d must be finite and strictly positive");
    }
}

inline void require_positive(const Params& p) {
    require_positive(p.a, p.b, p.d);
    if (!std::isfinite(p.c)) throw precondition_error("c must be finite");
}

}  // namespace ratmap
