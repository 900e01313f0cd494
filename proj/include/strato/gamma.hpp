#pragma once

#include "strato/common.hpp"

namespace strato {

namespace detail {

// Lanczos g = 7, 9-term coefficient set; ~15 significant digits on the
// right half plane.
inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_coeff[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

} // namespace detail

namespace testing {
/// Scales the gamma prefactor of the 1/z connection formula by (1 + delta).
/// Sensitivity canary for the validation suites; zero in real use. A
/// uniform scaling of gamma itself would cancel in the balanced ratios,
/// which is why the hook sits on the assembled prefactor.
inline double& gamma_prefactor_perturbation() {
    static double delta = 0.0;
    return delta;
}
} // namespace testing

/// True if z is within tol of a nonpositive integer (a gamma pole).
inline bool is_nonpositive_integer(cplx z, double tol = 1e-12) {
    if (std::abs(z.imag()) > tol) return false;
    double r = z.real();
    return r < 0.5 && std::abs(r - std::round(r)) <= tol;
}

/// log Gamma(z), principal value up to multiples of 2*pi*i. Safe to use in
/// exp() of signed sums; individual imaginary parts are not continuous.
inline cplx log_gamma(cplx z) {
    if (is_nonpositive_integer(z, 1e-300))
        throw InvalidParams("log_gamma: pole at nonpositive integer");
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(cplx(pi)) - std::log(std::sin(pi * z)) - log_gamma(cplx(1.0) - z);
    }
    cplx x = detail::lanczos_coeff[0];
    cplx zm1 = z - 1.0;
    for (int i = 1; i < 9; ++i) x += detail::lanczos_coeff[i] / (zm1 + double(i));
    cplx t = zm1 + detail::lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (zm1 + 0.5) * std::log(t) - t + std::log(x);
}

inline cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

/// Digamma psi(z) = Gamma'(z)/Gamma(z) via reflection + recurrence + the
/// Bernoulli asymptotic series.
inline cplx digamma(cplx z) {
    if (is_nonpositive_integer(z, 1e-300))
        throw InvalidParams("digamma: pole at nonpositive integer");
    cplx result = 0.0;
    if (z.real() < 0.5) {
        // psi(1-z) = psi(z) + pi cot(pi z)
        result -= pi * std::cos(pi * z) / std::sin(pi * z);
        z = 1.0 - z;
    }
    while (z.real() < 8.0) {
        result -= 1.0 / z;
        z += 1.0;
    }
    cplx w2 = 1.0 / (z * z);
    // B_{2k}/(2k) z^{-2k} terms
    cplx series = w2 * (1.0 / 12.0 + w2 * (-1.0 / 120.0 + w2 * (1.0 / 252.0
                + w2 * (-1.0 / 240.0 + w2 * (1.0 / 132.0 + w2 * (-691.0 / 32760.0))))));
    result += std::log(z) - 0.5 / z - series;
    return result;
}

} // namespace strato
