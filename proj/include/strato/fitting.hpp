#pragma once

#include "strato/common.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace strato {

/// Fitted power law N(t) ~ C <t>^alpha (<log<t>>)^gamma over a window.
struct DecayFit {
    double alpha = 0.0;
    std::optional<double> gamma;
    std::array<double, 2> window{0.0, 0.0};
    double r2 = 0.0;
    double stderr_alpha = 0.0;
    int n_points = 0;
};

namespace detail {

/// Solve the symmetric p x p normal equations in place; tiny sizes only.
template <int P>
inline std::array<double, P> solve_normal(std::array<std::array<double, P>, P> A,
                                          std::array<double, P> b) {
    for (int i = 0; i < P; ++i) {
        int piv = i;
        for (int r = i + 1; r < P; ++r)
            if (std::abs(A[r][i]) > std::abs(A[piv][i])) piv = r;
        std::swap(A[i], A[piv]);
        std::swap(b[i], b[piv]);
        if (std::abs(A[i][i]) < 1e-300) throw InsufficientData("fit: singular normal equations");
        for (int r = i + 1; r < P; ++r) {
            double f = A[r][i] / A[i][i];
            for (int c = i; c < P; ++c) A[r][c] -= f * A[i][c];
            b[r] -= f * b[i];
        }
    }
    std::array<double, P> x{};
    for (int i = P - 1; i >= 0; --i) {
        double s = b[i];
        for (int c = i + 1; c < P; ++c) s -= A[i][c] * x[c];
        x[i] = s / A[i][i];
    }
    return x;
}

} // namespace detail

/// Least-squares power-law fit of log N against log <t> (optionally with the
/// log <log<t>> regressor for the critical-regime correction).
inline DecayFit fit_decay(std::span<const double> times, std::span<const double> values,
                          std::array<double, 2> window, bool with_log_correction) {
    if (times.size() != values.size())
        throw InvalidParams("fit_decay: times and values differ in length");

    std::vector<double> x1, x2, y;
    for (std::size_t i = 0; i < times.size(); ++i) {
        double t = times[i];
        if (t < window[0] || t > window[1]) continue;
        if (values[i] <= 0.0) throw NonPositiveValues("fit_decay: nonpositive value in window");
        x1.push_back(std::log(bracket(t)));
        x2.push_back(std::log(log_bracket(t)));
        y.push_back(std::log(values[i]));
    }
    const int n = int(y.size());
    if (n < 8) throw InsufficientData("fit_decay: fewer than 8 points in the fit window");

    DecayFit fit;
    fit.window = window;
    fit.n_points = n;

    const int p = with_log_correction ? 3 : 2;
    // columns: [1, x1, (x2)]
    std::array<std::array<double, 3>, 3> A{};
    std::array<double, 3> b{};
    for (int i = 0; i < n; ++i) {
        double row[3] = {1.0, x1[i], x2[i]};
        for (int r = 0; r < p; ++r) {
            b[r] += row[r] * y[i];
            for (int c = 0; c < p; ++c) A[r][c] += row[r] * row[c];
        }
    }

    std::array<double, 3> beta{};
    if (p == 2) {
        auto sol = detail::solve_normal<2>({{{A[0][0], A[0][1]}, {A[1][0], A[1][1]}}},
                                           {b[0], b[1]});
        beta = {sol[0], sol[1], 0.0};
    } else {
        auto sol = detail::solve_normal<3>(A, b);
        beta = sol;
    }

    double ssr = 0.0, sst = 0.0, ymean = 0.0;
    for (int i = 0; i < n; ++i) ymean += y[i] / n;
    for (int i = 0; i < n; ++i) {
        double pred = beta[0] + beta[1] * x1[i] + beta[2] * x2[i];
        ssr += (y[i] - pred) * (y[i] - pred);
        sst += (y[i] - ymean) * (y[i] - ymean);
    }
    fit.alpha = beta[1];
    if (with_log_correction) fit.gamma = beta[2];
    fit.r2 = sst > 0.0 ? 1.0 - ssr / sst : 1.0;

    // stderr of alpha from the inverse normal matrix
    double sigma2 = n > p ? ssr / (n - p) : 0.0;
    // invert the small matrix by solving for the unit vector of the alpha column
    std::array<double, 3> e{0.0, 1.0, 0.0};
    if (p == 2) {
        auto col = detail::solve_normal<2>({{{A[0][0], A[0][1]}, {A[1][0], A[1][1]}}},
                                           {e[0], e[1]});
        fit.stderr_alpha = std::sqrt(std::max(0.0, sigma2 * col[1]));
    } else {
        auto col = detail::solve_normal<3>(A, e);
        fit.stderr_alpha = std::sqrt(std::max(0.0, sigma2 * col[1]));
    }
    return fit;
}

} // namespace strato
