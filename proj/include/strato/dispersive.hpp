#pragma once

#include "strato/common.hpp"
#include "strato/gamma.hpp"
#include "strato/quadrature.hpp"

#include <span>
#include <utility>
#include <vector>

namespace strato {

enum class DispersionModel { Boussinesq, FullEuler };

/// No-shear (R = 0) internal-wave parameters. N = sqrt(beta g) is the
/// Brunt-Vaisala frequency; the full-Euler branch carries the beta^2/4
/// shift of the weighted Laplacian.
struct DispersionParams {
    double N = 1.0;
    double beta = 0.0;
    DispersionModel model = DispersionModel::Boussinesq;
};

/// Dispersion relation lambda(k, eta); k = 0 modes are stationary.
inline double dispersion(int k, double eta, const DispersionParams& p) {
    if (k == 0) throw InvalidMode("dispersion: k = 0 modes are stationary");
    double denom = double(k) * k + eta * eta;
    if (p.model == DispersionModel::FullEuler) denom += 0.25 * p.beta * p.beta;
    return std::abs(double(k)) * p.N / std::sqrt(denom);
}

/// Exact oscillatory evolution of one no-shear mode:
/// psi = C1 e^{i lambda t} + C2 e^{-i lambda t}, C12 = (psi0 +- (lambda/k) T0)/2.
inline std::pair<cplx, cplx> evolve_no_shear_mode(int k, double eta, const DispersionParams& p,
                                                  double t, cplx psi0, cplx T0) {
    const double lam = dispersion(k, eta, p);
    const cplx C1 = 0.5 * (psi0 + lam / double(k) * T0);
    const cplx C2 = 0.5 * (psi0 - lam / double(k) * T0);
    const cplx ep = std::polar(1.0, lam * t), em = std::conj(ep);
    cplx psi = C1 * ep + C2 * em;
    cplx T = double(k) / lam * (C1 * ep - C2 * em);
    return {psi, T};
}

/// Conserved per-mode energy density: N^2 |T|^2 + (k^2+eta^2) |psi|^2
/// (the full-Euler branch adds beta^2/4 to the gradient weight).
inline double mode_energy(int k, double eta, const DispersionParams& p, cplx psi, cplx T) {
    double grad = double(k) * k + eta * eta;
    if (p.model == DispersionModel::FullEuler) grad += 0.25 * p.beta * p.beta;
    return p.N * p.N * std::norm(T) + grad * std::norm(psi);
}

/// I(t,y) = int_{-n}^{n} e^{i(lambda(k,eta) t + eta y)} d eta by
/// phase-seeded adaptive Gauss-Kronrod panels.
inline cplx oscillatory_integral(int k, double N, double t, double y, double n,
                                 double abs_tol = 1e-8) {
    if (t == 0.0) throw InvalidParams("oscillatory_integral: t must be nonzero");
    if (n <= std::abs(double(k)) / std::sqrt(2.0))
        throw InvalidParams("oscillatory_integral: n must exceed the inflection points |k|/sqrt(2)");
    DispersionParams p{N, 0.0, DispersionModel::Boussinesq};
    auto f = [&](double eta) { return std::polar(1.0, dispersion(k, eta, p) * t + eta * y); };
    // total phase variation bounds the oscillation count
    const double lam0 = dispersion(k, 0.0, p), lamn = dispersion(k, n, p);
    const double phase = std::abs(t) * 2.0 * (lam0 - lamn) + std::abs(y) * 2.0 * n;
    const std::size_t seed = std::min<std::size_t>(
        200000, std::max<std::size_t>(16, std::size_t(phase / 1.5) + 1));
    return quad::integrate_adaptive(f, -n, n, abs_tol, seed).value;
}

enum class VdcKind { First, Second };

struct VdcReport {
    bool ok;
    double lhs; // |int e^{ih}|
    double rhs; // the Van der Corput bound
};

/// Check |int_a^b e^{ih}| against 2 (min|h'|)^{-1} or 4 (min|h''|)^{-1/2}
/// from a dense sampling of a convex (or concave) phase.
inline VdcReport vdc_bound_check(std::span<const double> h, double a, double b, VdcKind which) {
    const std::size_t n = h.size();
    if (n < 16) throw InvalidParams("vdc_bound_check: need at least 16 phase samples");
    const double dx = (b - a) / double(n - 1);

    // convexity from second differences; the tolerance absorbs rounding of
    // the sampled phase itself (an exactly linear phase is admissible)
    int sign = 0;
    double hscale = 0.0;
    for (double v : h) hscale = std::max(hscale, std::abs(v));
    const double d2_tol = 64.0 * 1e-16 * std::max(1.0, hscale);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double d2 = h[i + 1] - 2.0 * h[i] + h[i - 1];
        if (std::abs(d2) <= d2_tol) continue;
        int s = d2 > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (sign != s)
            throw NotConvex("vdc_bound_check: mixed-sign second differences");
    }

    double min_d1 = 1e300, min_d2 = 1e300;
    for (std::size_t i = 0; i + 1 < n; ++i)
        min_d1 = std::min(min_d1, std::abs((h[i + 1] - h[i]) / dx));
    for (std::size_t i = 1; i + 1 < n; ++i)
        min_d2 = std::min(min_d2, std::abs((h[i + 1] - 2.0 * h[i] + h[i - 1]) / (dx * dx)));

    // composite quadrature on the samples (trapezoid; sampling is dense)
    cplx integral = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        integral += 0.5 * dx * (std::polar(1.0, h[i]) + std::polar(1.0, h[i + 1]));

    VdcReport r;
    r.lhs = std::abs(integral);
    r.rhs = which == VdcKind::First ? 2.0 / min_d1 : 4.0 / std::sqrt(min_d2);
    r.ok = r.lhs <= r.rhs * (1.0 + 1e-6);
    return r;
}

/// The t^{-1/3} sharpness construction: a profile supported near the
/// third-order stationary point eta* = k/sqrt(2) of g = lambda + c eta with
/// c = 2N/(3 sqrt(3) k), for which t^{1/3} |int f e^{i g t}| approaches
/// sqrt(3) Gamma(1/3).
struct SharpnessReport {
    double eta_star;
    double ray_speed; // c
    double u_star;    // g(eta*)
    double g3;        // g'''(eta*)
    double limit;     // sqrt(3) Gamma(1/3)
    std::vector<double> t;
    std::vector<double> scaled; // t^{1/3} |2 pi psi_hat(t; k, ct)|
};

inline SharpnessReport sharpness_profile(int k, double N, double delta,
                                         std::span<const double> t_values) {
    if (k == 0) throw InvalidMode("sharpness_profile: k = 0");
    const double kk = double(k);
    const double eta_star = kk / std::sqrt(2.0);
    const double c = 2.0 * N / (3.0 * std::sqrt(3.0) * kk);
    DispersionParams p{N, 0.0, DispersionModel::Boussinesq};

    const double u_star = dispersion(k, eta_star, p) + c * eta_star;
    const double g3 = N / (kk * kk * kk) * (16.0 / 27.0) * std::sqrt(3.0);

    // Taylor coefficients of g - u* at eta*, from the derivatives of
    // L(w) = (1+w^2)^{-1/2} at w* = 1/sqrt(2); both the direct g - u* and
    // g' cancel catastrophically near the stationary point.
    const double w32 = 1.5; // 1 + w*^2
    const double L3 = (9.0 / std::sqrt(2.0) - 6.0 / (2.0 * std::sqrt(2.0))) * std::pow(w32, -3.5);
    const double L4 = (9.0 - 72.0 * 0.5 + 24.0 * 0.25) * std::pow(w32, -4.5);
    const double L5 = (-225.0 + 600.0 * 0.5 - 120.0 * 0.25) / std::sqrt(2.0) * std::pow(w32, -5.5);
    const double c3 = N / (6.0 * kk * kk * kk) * L3;
    const double c4 = N / (24.0 * kk * kk * kk * kk) * L4;
    const double c5 = N / (120.0 * std::pow(kk, 5)) * L5;
    const double d_switch = 2e-3 * std::abs(kk);

    auto g_minus_ustar = [&](double eta) {
        const double d = eta - eta_star;
        if (std::abs(d) < d_switch) return d * d * d * (c3 + d * (c4 + d * c5));
        return dispersion(k, eta, p) + c * eta - u_star;
    };
    auto gp = [&](double eta) {
        const double d = eta - eta_star;
        if (std::abs(d) < d_switch) return d * d * (3.0 * c3 + d * (4.0 * c4 + d * 5.0 * c5));
        double q = kk * kk + eta * eta;
        return -std::abs(kk) * N * eta / std::pow(q, 1.5) + c;
    };

    // the window must keep g strictly monotone off the stationary point
    const int probes = 400;
    for (int i = 0; i <= probes; ++i) {
        double eta = eta_star - delta + 2.0 * delta * i / probes;
        if (std::abs(eta - eta_star) < 1e-6 * delta) continue;
        if (gp(eta) <= 0.0)
            throw BadWindow("sharpness_profile: g is not monotone on the window");
    }

    const double f_limit = std::cbrt(g3) * std::pow(6.0, 2.0 / 3.0) / 2.0;
    auto f = [&](double eta) {
        double dg = g_minus_ustar(eta);
        if (std::abs(dg) < 1e-300) return f_limit;
        return gp(eta) / std::pow(std::abs(dg), 2.0 / 3.0);
    };
    auto g = [&](double eta) { return u_star + g_minus_ustar(eta); };

    SharpnessReport rep;
    rep.eta_star = eta_star;
    rep.ray_speed = c;
    rep.u_star = u_star;
    rep.g3 = g3;
    rep.limit = std::sqrt(3.0) * std::exp(log_gamma(cplx(1.0 / 3.0))).real();
    for (double t : t_values) {
        auto integrand = [&](double eta) { return f(eta) * std::polar(1.0, g(eta) * t); };
        const double phase = std::abs(t) * std::abs(g(eta_star + delta) - g(eta_star - delta));
        const std::size_t seed =
            std::min<std::size_t>(100000, std::max<std::size_t>(32, std::size_t(phase / 1.5) + 1));
        auto J = quad::integrate_adaptive(integrand, eta_star - delta, eta_star + delta, 1e-8,
                                          seed);
        rep.t.push_back(t);
        rep.scaled.push_back(std::cbrt(t) * std::abs(J.value));
    }
    return rep;
}

} // namespace strato
