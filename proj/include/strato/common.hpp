#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>

namespace strato {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// Japanese bracket <x> = sqrt(1 + x^2), the smooth surrogate for |x|.
inline double bracket(double x) { return std::sqrt(1.0 + x * x); }

/// <log<x>>, the log-corrected bracket used in the critical-regime envelopes.
inline double log_bracket(double x) { return bracket(std::log(bracket(x))); }

/// Principal-branch power w^e with the cut along the negative real axis of w.
inline cplx cpow_principal(cplx w, cplx e) {
    if (w == cplx(0.0) && e != cplx(0.0)) return 0.0;
    return std::exp(e * std::log(w));
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParams : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct DegenerateConnection : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct Divergent : Error { using Error::Error; };
struct InvalidMode : Error { using Error::Error; };
struct StepFailure : Error { using Error::Error; };
struct TruncationError : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct NotConvex : Error { using Error::Error; };
struct BadWindow : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };
struct NonPositiveValues : Error { using Error::Error; };
struct UnsupportedCombination : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace strato
