#pragma once

#include "strato/common.hpp"
#include "strato/gamma.hpp"

#include <algorithm>
#include <array>

namespace strato::hyp {

/// Parameters (a, b; c) of the Gauss hypergeometric function F(a,b;c;z).
struct HypParams {
    cplx a, b, c;
};

/// The argument sets the solvers actually visit. NegativeRealAxis is the
/// Boussinesq branch (z = -s^2), HalfLine (Re z = 1/2) the full-Euler one.
enum class EvalDomain { NegativeRealAxis, HalfLine, UnitPoint, ConvergenceDisk };

struct SeriesOptions {
    double radius = 0.7;    // direct-series dispatch radius
    double tol = 1e-14;     // relative term cutoff
    int max_terms = 10000;
};

inline constexpr double tol_degenerate = 1e-3; // band around integer a-b

namespace detail {

using ld = long double;
using lcplx = std::complex<long double>;

struct SumResult {
    cplx value;
    double est_error; // relative
    int terms;
};

/// Defining power series, accumulated in extended precision. No radius
/// check; callers pick arguments for which it converges.
inline SumResult series_sum(cplx a, cplx b, cplx c, cplx z, int max_terms, double tol) {
    if (is_nonpositive_integer(c))
        throw InvalidParams("f21 series: c is a nonpositive integer");
    lcplx la(a.real(), a.imag()), lb(b.real(), b.imag()), lc(c.real(), c.imag());
    lcplx lz(z.real(), z.imag());
    lcplx term = 1.0L, sum = 1.0L;
    ld peak = 1.0L;
    int consecutive_small = 0;
    for (int n = 0; n < max_terms; ++n) {
        term *= (la + ld(n)) * (lb + ld(n)) / ((lc + ld(n)) * ld(n + 1)) * lz;
        sum += term;
        ld ts = std::abs(term), ss = std::abs(sum);
        peak = std::max(peak, ss);
        if (ts < tol * ss) {
            if (++consecutive_small >= 3) {
                double cond = double(peak / std::max(ss, ld(1e-300)));
                return {cplx(double(sum.real()), double(sum.imag())),
                        double(ts / std::max(ss, ld(1e-300))) + 1e-19 * n * cond, n + 1};
            }
        } else {
            consecutive_small = 0;
        }
    }
    double ss = double(std::abs(sum));
    double rel = double(std::abs(term)) / std::max(ss, 1e-300);
    return {cplx(double(sum.real()), double(sum.imag())), std::max(rel, 1e-15), max_terms};
}

inline double dist_to_integers(cplx w) {
    return std::abs(w - cplx(std::round(w.real()), 0.0));
}

/// Pfaff transform z -> z/(z-1); maps the negative real axis into [0,1).
inline SumResult pfaff(const HypParams& p, cplx z, const SeriesOptions& opt) {
    cplx w = z / (z - 1.0);
    SumResult r = series_sum(p.a, p.c - p.b, p.c, w, opt.max_terms, opt.tol);
    r.value *= cpow_principal(1.0 - z, -p.a);
    return r;
}

/// Second Pfaff form (the roles of a and b exchanged); kept for the
/// consistency validators.
inline SumResult pfaff_alt(const HypParams& p, cplx z, const SeriesOptions& opt) {
    cplx w = z / (z - 1.0);
    SumResult r = series_sum(p.c - p.a, p.b, p.c, w, opt.max_terms, opt.tol);
    r.value *= cpow_principal(1.0 - z, -p.b);
    return r;
}

/// 1/z connection formula at infinity; requires a-b off the integers.
inline SumResult connection_infinity(const HypParams& p, cplx z, const SeriesOptions& opt) {
    const cplx a = p.a, b = p.b, c = p.c;
    cplx zi = 1.0 / z;
    cplx mz = -z;

    auto coeff = [&](cplx num1, cplx den1, cplx den2) -> cplx {
        // Gamma(c) Gamma(num1) / (Gamma(den1) Gamma(den2)); zero at 1/Gamma poles
        if (is_nonpositive_integer(den1) || is_nonpositive_integer(den2)) return 0.0;
        cplx pref = std::exp(log_gamma(c) + log_gamma(num1) - log_gamma(den1) - log_gamma(den2));
        return pref * (1.0 + testing::gamma_prefactor_perturbation());
    };

    SumResult ra = series_sum(a, a - c + 1.0, a - b + 1.0, zi, opt.max_terms, opt.tol);
    SumResult rb = series_sum(b, b - c + 1.0, b - a + 1.0, zi, opt.max_terms, opt.tol);
    cplx ta = coeff(b - a, b, c - a) * cpow_principal(mz, -a) * ra.value;
    cplx tb = coeff(a - b, a, c - b) * cpow_principal(mz, -b) * rb.value;
    cplx sum = ta + tb;
    double cancel = (std::abs(ta) + std::abs(tb)) / std::max(std::abs(sum), 1e-300);
    double err = std::max(ra.est_error, rb.est_error) + 1e-16 * cancel;
    return {sum, err, std::max(ra.terms, rb.terms)};
}

/// Logarithmic 1/z expansion for the confluent parameter case a = b
/// (the critical Richardson number): for c - a off the integers,
///   F(a,a;c;z) = G(c)/(G(a)G(c-a)) (-z)^{-a} sum_n (a)_n (a-c+1)_n / (n!)^2
///                z^{-n} [log(-z) + 2 psi(n+1) - psi(a+n) - psi(c-a-n)].
inline SumResult log_case_infinity(const HypParams& p, cplx z, const SeriesOptions& opt) {
    const cplx a = 0.5 * (p.a + p.b), c = p.c;
    const cplx lead = std::exp(log_gamma(c) - log_gamma(a) - log_gamma(c - a));
    const cplx lmz = std::log(-z);
    cplx zi = 1.0 / z;

    cplx coef = 1.0; // (a)_n (a-c+1)_n / (n!)^2 z^{-n}
    cplx psi_n1 = digamma(cplx(1.0));
    cplx psi_an = digamma(a);
    cplx psi_can = digamma(c - a);
    cplx sum = 0.0;
    double peak = 0.0;
    int consecutive_small = 0;
    for (int n = 0; n < opt.max_terms; ++n) {
        cplx term = coef * (lmz + 2.0 * psi_n1 - psi_an - psi_can);
        sum += term;
        double ts = std::abs(term), ss = std::abs(sum);
        peak = std::max(peak, ss);
        if (ts < opt.tol * ss) {
            if (++consecutive_small >= 3) {
                cplx value = lead * cpow_principal(-z, -a) * sum;
                return {value, ts / std::max(ss, 1e-300) + 2e-16 * n * (peak / std::max(ss, 1e-300)),
                        n + 1};
            }
        } else {
            consecutive_small = 0;
        }
        coef *= (a + double(n)) * (a - c + 1.0 + double(n)) / (double(n + 1) * double(n + 1)) * zi;
        psi_n1 += 1.0 / double(n + 1);
        psi_an += 1.0 / (a + double(n));
        psi_can -= 1.0 / (c - a - double(n) - 1.0);
    }
    throw NonConvergence("f21 log-case expansion did not converge");
}

/// Analytic continuation along a straight segment by integrating Euler's
/// hypergeometric ODE with fixed-step RK4. Fallback for the thin seam
/// around |z| = 1 on the half line.
inline cplx ode_continue(const HypParams& p, cplx z0, cplx f0, cplx fp0, cplx z1, int nsteps = 4000) {
    const cplx a = p.a, b = p.b, c = p.c;
    auto rhs = [&](cplx z, const std::array<cplx, 2>& y) -> std::array<cplx, 2> {
        cplx fpp = ((a + b + 1.0) * z - c) / (z * (1.0 - z)) * y[1] + a * b / (z * (1.0 - z)) * y[0];
        return {y[1], fpp};
    };
    std::array<cplx, 2> y{f0, fp0};
    cplx h = (z1 - z0) / double(nsteps);
    cplx z = z0;
    for (int i = 0; i < nsteps; ++i) {
        auto k1 = rhs(z, y);
        auto k2 = rhs(z + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
        auto k3 = rhs(z + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
        auto k4 = rhs(z + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
        y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        z += h;
    }
    return y[0];
}

} // namespace detail

/// True when a-b sits inside the degenerate band around the integers but is
/// not exactly zero; the standard connection formula is unusable there.
inline bool near_degenerate(const HypParams& p, double tol = tol_degenerate) {
    double d = detail::dist_to_integers(p.a - p.b);
    return d < tol && std::abs(p.a - p.b) > 1e-12;
}

inline bool exactly_confluent(const HypParams& p) { return std::abs(p.a - p.b) <= 1e-12; }

/// Truncated defining power series. Requires |z| <= opt.radius.
inline cplx f21_series(const HypParams& p, cplx z, const SeriesOptions& opt = {}) {
    if (std::abs(z) > opt.radius)
        throw DomainError("f21_series: |z| exceeds the series radius");
    auto r = detail::series_sum(p.a, p.b, p.c, z, opt.max_terms, opt.tol);
    if (r.terms >= opt.max_terms)
        throw NonConvergence("f21_series: term budget exhausted");
    return r.value;
}

/// F(a,b;c;1) by the Gauss formula.
inline cplx f21_at_one(const HypParams& p) {
    if (p.a == cplx(0.0) || p.b == cplx(0.0)) return 1.0; // terminating series
    cplx d = p.c - p.a - p.b;
    if (d.real() <= 0.0)
        throw Divergent("f21_at_one: Re(c) <= Re(a+b), F(a,b;c;1) diverges");
    return std::exp(log_gamma(p.c) + log_gamma(d) - log_gamma(p.c - p.a) - log_gamma(p.c - p.b));
}

/// Evaluate F(a,b;c;z) on one of the supported domains, dispatching between
/// the direct series, the Pfaff transform, the 1/z connection formula and
/// the confluent log expansion.
inline cplx f21(const HypParams& p, cplx z, EvalDomain d, const SeriesOptions& opt = {}) {
    const double az = std::abs(z);

    switch (d) {
    case EvalDomain::ConvergenceDisk:
        if (az > opt.radius) throw DomainError("f21: z outside the convergence disk domain");
        return f21_series(p, z, opt);

    case EvalDomain::UnitPoint:
        if (std::abs(z - 1.0) > 1e-12) throw DomainError("f21: UnitPoint requires z = 1");
        return f21_at_one(p);

    case EvalDomain::NegativeRealAxis: {
        if (z.real() > 0.0 || std::abs(z.imag()) > 1e-12 * (1.0 + az))
            throw DomainError("f21: z is not on the negative real axis");
        z = cplx(std::min(z.real(), 0.0), 0.0);
        if (az <= opt.radius) return f21_series(p, z, opt);
        if (az <= 2.0) return detail::pfaff(p, z, opt).value;
        if (exactly_confluent(p)) return detail::log_case_infinity(p, z, opt).value;
        if (near_degenerate(p))
            throw DegenerateConnection("f21: a-b within the degenerate band of an integer");
        return detail::connection_infinity(p, z, opt).value;
    }

    case EvalDomain::HalfLine: {
        if (std::abs(z.real() - 0.5) > 1e-9 * (1.0 + std::abs(z.imag())))
            throw DomainError("f21: z is not on the line Re z = 1/2");
        if (az <= opt.radius) return f21_series(p, z, opt);
        bool conn_ok = !near_degenerate(p) && !exactly_confluent(p);
        if (az >= 2.0) {
            if (!conn_ok) throw DegenerateConnection("f21: degenerate a-b on the half line");
            return detail::connection_infinity(p, z, opt).value;
        }
        // Seam: the Pfaff image has |w| = 1 here, so race the direct series
        // (|z| < 1) against the connection formula (|z| > 1) with a raised
        // term budget and keep the better-attested value.
        SeriesOptions wide = opt;
        wide.max_terms = std::max(opt.max_terms, 200000);
        detail::SumResult best{0.0, 1e300, 0};
        if (az < 1.0) {
            auto r = detail::series_sum(p.a, p.b, p.c, z, wide.max_terms, wide.tol);
            if (r.terms < wide.max_terms && r.est_error < best.est_error) best = r;
        }
        if (az > 1.0 && conn_ok) {
            auto r = detail::connection_infinity(p, z, wide);
            if (r.est_error < best.est_error) best = r;
        }
        if (best.est_error < 1e-8) return best.value;
        // Hard seam: continue the solution of the hypergeometric ODE from an
        // anchor on the same vertical line where the series converges fast.
        cplx anchor(0.5, (z.imag() >= 0 ? 1.0 : -1.0) * std::sqrt(0.45 - 0.25));
        cplx f0 = f21_series(p, anchor, opt);
        cplx fp0 = p.a * p.b / p.c * f21_series({p.a + 1.0, p.b + 1.0, p.c + 1.0}, anchor, opt);
        return detail::ode_continue(p, anchor, f0, fp0, z);
    }
    }
    throw DomainError("f21: unknown domain");
}

/// dF/dz through the contiguous relation dF/dz = (ab/c) F(a+1,b+1;c+1;z).
inline cplx f21_derivative(const HypParams& p, cplx z, EvalDomain d, const SeriesOptions& opt = {}) {
    if (p.a == cplx(0.0) || p.b == cplx(0.0)) return 0.0;
    return p.a * p.b / p.c * f21({p.a + 1.0, p.b + 1.0, p.c + 1.0}, z, d, opt);
}

/// The three contiguous expressions of the derivative; form 0 is the one
/// f21_derivative uses, forms 1 and 2 exist for cross-checking.
inline cplx f21_derivative_form(const HypParams& p, cplx z, EvalDomain d, int form,
                                const SeriesOptions& opt = {}) {
    switch (form) {
    case 0:
        return f21_derivative(p, z, d, opt);
    case 1: {
        if (std::abs(z) < 1e-300) return p.a * p.b / p.c; // series limit
        cplx fm = f21({p.a, p.b, p.c - 1.0}, z, d, opt);
        cplx f0 = f21(p, z, d, opt);
        return (p.c - 1.0) / z * (fm - f0);
    }
    case 2: {
        cplx fp = f21({p.a, p.b, p.c + 1.0}, z, d, opt);
        cplx f0 = f21(p, z, d, opt);
        return ((p.c - p.a) * (p.c - p.b) * fp + p.c * (p.a + p.b - p.c) * f0) / (p.c * (1.0 - z));
    }
    default:
        throw InvalidParams("f21_derivative_form: form must be 0, 1 or 2");
    }
}

/// Relative deviation of the numerically assembled Wronskian of the
/// solution pair {F(a,b;c;z), z^{1-c} F(1+a-c,1+b-c;2-c;z)} from the
/// closed form (1-c) z^{-c} (1-z)^{c-1-a-b}.
inline double wronskian_residual(const HypParams& p, cplx z, EvalDomain d,
                                 const SeriesOptions& opt = {}) {
    const cplx a = p.a, b = p.b, c = p.c;
    if (detail::dist_to_integers(c) < 1e-12)
        throw InvalidParams("wronskian_residual: c must be noninteger");
    if (d == EvalDomain::NegativeRealAxis) z = cplx(std::min(z.real(), -0.0), +0.0);

    HypParams q{1.0 + a - c, 1.0 + b - c, 2.0 - c};
    cplx f1 = f21(p, z, d, opt);
    cplx f1p = f21_derivative(p, z, d, opt);
    cplx F2 = f21(q, z, d, opt);
    cplx F2p = f21_derivative(q, z, d, opt);
    cplx f2 = cpow_principal(z, 1.0 - c) * F2;
    cplx f2p = (1.0 - c) * cpow_principal(z, -c) * F2 + cpow_principal(z, 1.0 - c) * F2p;

    cplx w_num = f1 * f2p - f1p * f2;
    cplx w_exact = (1.0 - c) * cpow_principal(z, -c) * cpow_principal(1.0 - z, c - 1.0 - a - b);
    return std::abs(w_num - w_exact) / std::abs(w_exact);
}

/// Pfaff-transformed evaluations (both printed forms), for the consistency
/// validators.
inline cplx f21_via_pfaff(const HypParams& p, cplx z, const SeriesOptions& opt = {}) {
    return detail::pfaff(p, z, opt).value;
}
inline cplx f21_via_pfaff_alt(const HypParams& p, cplx z, const SeriesOptions& opt = {}) {
    return detail::pfaff_alt(p, z, opt).value;
}

/// Euler-transform evaluation F = (1-z)^{c-a-b} F(c-a,c-b;c;z).
inline cplx f21_via_euler_transform(const HypParams& p, cplx z, EvalDomain d,
                                    const SeriesOptions& opt = {}) {
    HypParams q{p.c - p.a, p.c - p.b, p.c};
    return cpow_principal(1.0 - z, p.c - p.a - p.b) * f21(q, z, d, opt);
}

} // namespace strato::hyp
