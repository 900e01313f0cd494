#pragma once

#include "strato/common.hpp"
#include "strato/hypergeometric.hpp"
#include "strato/boussinesq.hpp"

namespace strato {

/// Per-mode parameters of the full linearized Euler system in the
/// e^{-beta y/2}-weighted variables.
struct EulerModeParams {
    int k;
    double eta;
    double beta;
    double B2;
    double m;      // sqrt(beta^2/4 + k^2)
    double kappa;  // k/m, in (0,1) by modulus
    double beta1;  // beta/(2m), in (0,1)
    cplx nu;       // sqrt(1/4 - B2)
    cplx s_tilde0; // s0 - i beta/(2k)

    static EulerModeParams make(int k, double eta, double beta, double B2) {
        if (k == 0) throw InvalidMode("EulerModeParams: k = 0");
        if (beta <= 0.0)
            throw InvalidParams("EulerModeParams: beta = 0 belongs to the Boussinesq homogeneous branch");
        if (B2 <= 0.0) throw InvalidParams("EulerModeParams: requires B2 > 0");
        EulerModeParams p;
        p.k = k;
        p.eta = eta;
        p.beta = beta;
        p.B2 = B2;
        p.m = std::sqrt(0.25 * beta * beta + double(k) * double(k));
        p.kappa = double(k) / p.m;
        p.beta1 = beta / (2.0 * p.m);
        p.nu = RegimeParams::nu_of(B2);
        p.s_tilde0 = cplx(-eta / k, -beta / (2.0 * k));
        return p;
    }

    double s0() const { return -eta / k; }
};

/// Weighted amplitudes of one mode: chi = e^{-beta y/2} phi and
/// mu = e^{-beta y/2} tau, plus the weighted velocity amplitudes.
struct WeightedModeState {
    cplx chi;
    cplx mu;
    cplx wvx; // amplitude of e^{-beta y/2} v^x = (-d_y + t d_z - beta/2) chi
    cplx wvy; // = i k chi
};

struct EulerSpecialSolutions {
    cplx g3, g4, g3p, g4p;
};

/// g3, g4 and their s-derivatives at v = (1 + i kappa s)/2 on the line
/// Re v = 1/2; dv/ds = i kappa / 2.
inline EulerSpecialSolutions euler_special_solutions(const EulerModeParams& p, double s) {
    using namespace hyp;
    if (hyp::detail::dist_to_integers(2.0 * p.nu) < hyp::tol_degenerate)
        throw DegenerateConnection(
            "euler_special_solutions: B2 within the critical band, use the ODE oracle");
    const cplx v(0.5, 0.5 * p.kappa * s);
    const cplx dv(0.0, 0.5 * p.kappa);
    const EvalDomain d = EvalDomain::HalfLine;
    HypParams p3{1.5 - p.nu, 1.5 + p.nu, 2.0 - p.beta1};
    HypParams p4{0.5 + p.beta1 - p.nu, 0.5 + p.beta1 + p.nu, p.beta1};
    cplx F3 = f21(p3, v, d);
    cplx F3p = f21_derivative(p3, v, d);
    cplx F4 = f21(p4, v, d);
    cplx F4p = f21_derivative(p4, v, d);
    const cplx w = cpow_principal(v, p.beta1 - 1.0);
    EulerSpecialSolutions r;
    r.g3 = F3;
    r.g3p = dv * F3p;
    r.g4 = w * F4;
    r.g4p = (p.beta1 - 1.0) * cpow_principal(v, p.beta1 - 2.0) * dv * F4 + w * dv * F4p;
    return r;
}

/// Wronskian g3 g4' - g3' g4, closed form; never zero since
/// |kappa|, beta1 in (0,1).
inline cplx euler_wronskian(const EulerModeParams& p, double s0) {
    const cplx v0(0.5, 0.5 * p.kappa * s0);
    const cplx one_minus_v0(0.5, -0.5 * p.kappa * s0);
    return cplx(0.0, 0.5 * p.kappa) * (p.beta1 - 1.0) *
           cpow_principal(v0, p.beta1 - 2.0) * cpow_principal(one_minus_v0, -2.0 - p.beta1);
}

struct EulerModeCoefficients {
    cplx C3, C4;
};

inline EulerModeCoefficients euler_mode_coefficients(const EulerModeParams& p, cplx Psi0,
                                                     cplx Upsilon0) {
    const double s0 = p.s0();
    const cplx delta = euler_wronskian(p, s0);
    const double q = 1.0 + std::norm(p.s_tilde0);
    const auto gs = euler_special_solutions(p, s0);
    const cplx iB2_q = cplx(0.0, p.B2) / q;
    const cplx U_k = Upsilon0 / double(p.k);
    EulerModeCoefficients c;
    c.C3 = ((gs.g4p + 2.0 * p.s_tilde0 / q * gs.g4) * Psi0 - iB2_q * gs.g4 * U_k) / delta;
    c.C4 = ((-gs.g3p - 2.0 * p.s_tilde0 / q * gs.g3) * Psi0 + iB2_q * gs.g3 * U_k) / delta;
    return c;
}

/// Closed-form evolution of one weighted full-Euler mode. Near B2 = 1/4 the
/// hypergeometric connection degenerates and DegenerateConnection
/// propagates; callers fall back to the ODE oracle there.
inline WeightedModeState evolve_euler_mode(const EulerModeParams& p, double t, cplx Psi0,
                                           cplx Upsilon0) {
    const double s = t + p.s0();
    const auto c = euler_mode_coefficients(p, Psi0, Upsilon0);
    const auto gs = euler_special_solutions(p, s);
    const cplx chi = c.C3 * gs.g3 + c.C4 * gs.g4;
    const cplx chi_t = c.C3 * gs.g3p + c.C4 * gs.g4p;
    const cplx s_tilde = cplx(s, -p.beta / (2.0 * p.k));
    const double q = 1.0 + std::norm(s_tilde);
    WeightedModeState st;
    st.chi = chi;
    st.mu = -cplx(0.0, double(p.k)) / p.B2 * (q * chi_t + 2.0 * s_tilde * chi);
    st.wvy = cplx(0.0, double(p.k)) * chi;
    st.wvx = (cplx(0.0, double(p.k) * s) - 0.5 * p.beta) * chi;
    return st;
}

} // namespace strato
