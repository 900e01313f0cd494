#pragma once

#include "strato/common.hpp"
#include "strato/hypergeometric.hpp"

#include <span>

namespace strato {

enum class Regime { Homogeneous, Subcritical, Critical, Supercritical, NoShear };

/// Physical and nondimensional parameters of the stratified Couette setup.
/// nu = sqrt(1/4 - B^2) is kept complex so the sub/super-critical regimes
/// share one code path.
struct RegimeParams {
    double R = 1.0;    // shear rate
    double beta = 0.0; // stratification rate
    double g = 1.0;    // gravity
    double B2 = 0.0;   // Richardson number beta*g/R^2
    cplx nu;           // sqrt(1/4 - B2)
    Regime regime = Regime::Homogeneous;

    static cplx nu_of(double B2) {
        return B2 <= 0.25 ? cplx(std::sqrt(0.25 - B2), 0.0) : cplx(0.0, std::sqrt(B2 - 0.25));
    }

    static Regime regime_of(double B2) {
        if (B2 == 0.0) return Regime::Homogeneous;
        if (B2 < 0.25) return Regime::Subcritical;
        if (B2 == 0.25) return Regime::Critical;
        return Regime::Supercritical;
    }

    static RegimeParams from_physical(double R, double beta, double g) {
        if (R == 0.0) return RegimeParams{0.0, beta, g, 0.0, 0.0, Regime::NoShear};
        double B2 = beta * g / (R * R);
        return RegimeParams{R, beta, g, B2, nu_of(B2), regime_of(B2)};
    }

    /// Nondimensional construction: R = 1 and a consistent (beta, g) pair.
    static RegimeParams from_richardson(double B2, double beta = -1.0) {
        if (B2 < 0.0) throw InvalidParams("RegimeParams: B2 must be nonnegative");
        if (beta < 0.0) beta = B2 > 0.0 ? B2 : 0.0;
        double g = B2 > 0.0 ? B2 / beta : 1.0;
        return RegimeParams{1.0, beta, g, B2, nu_of(B2), regime_of(B2)};
    }
};

/// Convert lab time to the nondimensional shear time t' = R t.
inline double shear_time(const RegimeParams& p, double t_lab) { return p.R * t_lab; }

/// One Fourier mode (k, eta); k = 0 columns are conserved and handled by
/// projection in the field module.
struct ModeIndex {
    int k = 1;
    double eta = 0.0;
};

struct ShearVariables {
    double s;  // t - eta/k
    double s0; // -eta/k
};

inline ShearVariables shear_vars(const ModeIndex& m, double t) {
    if (m.k == 0) throw InvalidMode("shear_vars: k = 0");
    double s0 = -m.eta / m.k;
    return {t + s0, s0};
}

/// Complex amplitudes of one mode at one time, sheared-frame representation.
struct ModeState {
    cplx phi; // stream function
    cplx tau; // relative density
    cplx vx;  // = i k s phi
    cplx vy;  // = i k phi
};

struct SpecialSolutions {
    cplx g1, g2, g1p, g2p;
};

/// The two hypergeometric solutions g1, g2 of the mode ODE and their
/// s-derivatives, evaluated at z = -s^2 via the chain rule.
inline SpecialSolutions special_solutions(cplx nu, double s) {
    using namespace hyp;
    const cplx u(-s * s, 0.0);
    const EvalDomain d = EvalDomain::NegativeRealAxis;
    HypParams p1{0.75 - 0.5 * nu, 0.75 + 0.5 * nu, 0.5};
    HypParams p2{1.25 - 0.5 * nu, 1.25 + 0.5 * nu, 1.5};
    cplx F1 = f21(p1, u, d);
    cplx F1p = f21_derivative(p1, u, d);
    cplx F2 = f21(p2, u, d);
    cplx F2p = f21_derivative(p2, u, d);
    SpecialSolutions r;
    r.g1 = F1;
    r.g1p = -2.0 * s * F1p;
    r.g2 = s * F2;
    r.g2p = F2 - 2.0 * s * s * F2p;
    return r;
}

struct ModeCoefficients {
    cplx C1, C2;
};

/// Coefficients of phi = C1 g1(s) + C2 g2(s) from the initial data
/// (psi0, T0) of the mode; Delta = (1+s0^2)^{-2}.
inline ModeCoefficients mode_coefficients(const ModeIndex& m, const RegimeParams& p, cplx psi0,
                                          cplx T0) {
    if (m.k == 0) throw InvalidMode("mode_coefficients: k = 0");
    if (p.B2 <= 0.0) throw InvalidParams("mode_coefficients: requires B2 > 0");
    const double s0 = -m.eta / m.k;
    const double q = 1.0 + s0 * s0;
    const double delta = 1.0 / (q * q);
    const auto gs = special_solutions(p.nu, s0);
    const cplx iB2_q = cplx(0.0, p.B2) / q;
    const cplx T0_k = T0 / double(m.k);
    ModeCoefficients c;
    c.C1 = ((gs.g2p + 2.0 * s0 / q * gs.g2) * psi0 - iB2_q * gs.g2 * T0_k) / delta;
    c.C2 = ((-gs.g1p - 2.0 * s0 / q * gs.g1) * psi0 + iB2_q * gs.g1 * T0_k) / delta;
    return c;
}

inline ModeState assemble_state(const ModeIndex& m, double s, cplx phi, cplx tau) {
    ModeState st;
    st.phi = phi;
    st.tau = tau;
    st.vy = cplx(0.0, double(m.k)) * phi;
    st.vx = s * st.vy;
    return st;
}

/// Closed-form evolution of one stratified mode (B2 > 0).
inline ModeState evolve_mode(const ModeIndex& m, const RegimeParams& p, double t, cplx psi0,
                             cplx T0) {
    if (m.k == 0) throw InvalidMode("evolve_mode: k = 0");
    if (p.B2 <= 0.0) throw InvalidParams("evolve_mode: B2 = 0 is the homogeneous branch");
    const auto sv = shear_vars(m, t);
    const auto c = mode_coefficients(m, p, psi0, T0);
    const auto gs = special_solutions(p.nu, sv.s);
    const cplx phi = c.C1 * gs.g1 + c.C2 * gs.g2;
    const cplx phi_t = c.C1 * gs.g1p + c.C2 * gs.g2p;
    const cplx tau = -cplx(0.0, double(m.k)) / p.B2 *
                     ((1.0 + sv.s * sv.s) * phi_t + 2.0 * sv.s * phi);
    return assemble_state(m, sv.s, phi, tau);
}

/// Homogeneous fluid (beta = 0): the density is frozen and the stream
/// function is rational in s; g stays dimensional here.
inline ModeState evolve_mode_homogeneous(const ModeIndex& m, double t, cplx psi0, cplx rho0,
                                         double g = 1.0) {
    if (m.k == 0) throw InvalidMode("evolve_mode_homogeneous: k = 0");
    const auto sv = shear_vars(m, t);
    const double q0 = 1.0 + sv.s0 * sv.s0;
    const double q = 1.0 + sv.s * sv.s;
    const cplx phi = (q0 * psi0 + cplx(0.0, t * g / m.k) * rho0) / q;
    return assemble_state(m, sv.s, phi, rho0);
}

/// Max over the grid of |phi(t)| against the decay envelope
/// <s>^{-3/2+Re nu} <s0>^{3/2+Re nu} (log-corrected in the critical
/// regime). Finite, grid-stable values certify the decay estimate.
inline double envelope_bound_ratio(const ModeIndex& m, const RegimeParams& p,
                                   std::span<const double> t_grid, cplx psi0, cplx T0) {
    const double data = std::abs(psi0) +
                        std::abs(T0) / (bracket(-m.eta / m.k) * std::abs(double(m.k)));
    if (data == 0.0) return 0.0;
    const double re_nu = p.nu.real();
    double worst = 0.0;
    for (double t : t_grid) {
        const auto sv = shear_vars(m, t);
        const auto st = evolve_mode(m, p, t, psi0, T0);
        double env = std::pow(bracket(sv.s), -1.5 + re_nu) * std::pow(bracket(sv.s0), 1.5 + re_nu);
        if (p.regime == Regime::Critical) env *= log_bracket(sv.s) * log_bracket(sv.s0);
        worst = std::max(worst, std::abs(st.phi) / (env * data));
    }
    return worst;
}

} // namespace strato
