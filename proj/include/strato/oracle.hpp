#pragma once

#include "strato/boussinesq.hpp"
#include "strato/euler.hpp"
#include "strato/ode.hpp"

#include <span>
#include <variant>
#include <vector>

namespace strato {

/// Independent adaptive time integration of the per-mode ODEs. The closed
/// forms never enter here; this is the brute-force side of every
/// closed-form-vs-oracle pairing.
enum class OdeKind {
    BoussinesqPhi,    // (1+s^2) phi_tt + 4 s phi_t + (2+B^2) phi = 0
    BoussinesqSystem, // first-order (f, tau) with phi = f / (k^2 (1+s^2))
    EulerChi,         // d_tt[(1+kappa^2 s^2) chi] - 2 i beta1 kappa chi_t + B^2 kappa^2 chi = 0
};

struct OdeSpec {
    OdeKind kind = OdeKind::BoussinesqPhi;
    ModeIndex mode;
    double B2 = 0.0;
    double g = 1.0;          // used by the homogeneous (B2 = 0) system only
    double beta = 0.0;       // EulerChi
    cplx psi0 = 0.0;         // psi0 (or Psi0 for EulerChi)
    cplx T0 = 0.0;           // T0 / Upsilon0 (rho0 when B2 = 0)
    double rtol = 1e-10;
    double atol = 1e-12;
};

struct OracleState {
    cplx phi;   // phi or chi
    cplx phi_t; // its time derivative
    cplx tau;   // tau / mu / rho, where defined
};

namespace detail {

inline cplx initial_phi_t(const ModeIndex& m, double B2, cplx psi0, cplx T0) {
    const double s0 = -m.eta / m.k;
    const double q = 1.0 + s0 * s0;
    return (cplx(0.0, B2 / m.k) * T0 - 2.0 * s0 * psi0) / q;
}

} // namespace detail

/// Integrate the spec'd mode ODE with dense output on t_grid.
inline std::vector<OracleState> integrate(const OdeSpec& spec, std::span<const double> t_grid) {
    if (spec.mode.k == 0) throw InvalidMode("oracle: k = 0");
    if (!t_grid.empty() && t_grid.front() != 0.0)
        throw InvalidParams("oracle: t_grid must start at 0");
    const double k = spec.mode.k;
    const double s0 = -spec.mode.eta / k;
    std::vector<OracleState> out;
    out.reserve(t_grid.size());

    ode::Dopri5<2> solver;
    solver.rtol = spec.rtol;
    solver.atol = spec.atol;

    switch (spec.kind) {
    case OdeKind::BoussinesqPhi: {
        const double B2 = spec.B2;
        auto rhs = [=](double t, const std::array<cplx, 2>& y) -> std::array<cplx, 2> {
            const double s = t + s0;
            return {y[1], -(4.0 * s * y[1] + (2.0 + B2) * y[0]) / (1.0 + s * s)};
        };
        std::array<cplx, 2> y0{spec.psi0, detail::initial_phi_t(spec.mode, B2, spec.psi0, spec.T0)};
        auto traj = solver.integrate(rhs, y0, t_grid);
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const double s = t_grid[i] + s0;
            cplx tau = B2 > 0.0
                           ? -cplx(0.0, k) / B2 * ((1.0 + s * s) * traj[i][1] + 2.0 * s * traj[i][0])
                           : cplx(0.0);
            out.push_back({traj[i][0], traj[i][1], tau});
        }
        return out;
    }
    case OdeKind::BoussinesqSystem: {
        const double B2 = spec.B2;
        if (B2 > 0.0) {
            // state (f, tau); f = k^2 (1+s^2) phi
            auto rhs = [=](double t, const std::array<cplx, 2>& y) -> std::array<cplx, 2> {
                const double s = t + s0;
                cplx phi = y[0] / (k * k * (1.0 + s * s));
                return {cplx(0.0, B2 * k) * y[1], cplx(0.0, k) * phi};
            };
            std::array<cplx, 2> y0{k * k * (1.0 + s0 * s0) * spec.psi0, spec.T0};
            auto traj = solver.integrate(rhs, y0, t_grid);
            for (std::size_t i = 0; i < traj.size(); ++i) {
                const double s = t_grid[i] + s0;
                cplx phi = traj[i][0] / (k * k * (1.0 + s * s));
                out.push_back({phi, 0.0, traj[i][1]});
            }
        } else {
            // homogeneous scaling: state (f, rho), f_t = i k g rho
            const double g = spec.g;
            auto rhs = [=](double, const std::array<cplx, 2>& y) -> std::array<cplx, 2> {
                return {cplx(0.0, k * g) * y[1], 0.0};
            };
            std::array<cplx, 2> y0{k * k * (1.0 + s0 * s0) * spec.psi0, spec.T0};
            auto traj = solver.integrate(rhs, y0, t_grid);
            for (std::size_t i = 0; i < traj.size(); ++i) {
                const double s = t_grid[i] + s0;
                cplx phi = traj[i][0] / (k * k * (1.0 + s * s));
                out.push_back({phi, 0.0, traj[i][1]});
            }
        }
        return out;
    }
    case OdeKind::EulerChi: {
        const auto p = EulerModeParams::make(spec.mode.k, spec.mode.eta, spec.beta, spec.B2);
        const double kap2 = p.kappa * p.kappa;
        const double B2 = spec.B2;
        // state (w, w_t) with w = (1 + kappa^2 s^2) chi
        auto rhs = [=](double t, const std::array<cplx, 2>& y) -> std::array<cplx, 2> {
            const double s = t + s0;
            const double P = 1.0 + kap2 * s * s;
            const cplx chi = y[0] / P;
            const cplx chi_t = (y[1] - 2.0 * kap2 * s * chi) / P;
            return {y[1], 2.0 * cplx(0.0, p.beta1 * p.kappa) * chi_t - B2 * kap2 * chi};
        };
        const double q0 = 1.0 + std::norm(p.s_tilde0);
        const cplx chi_t0 = (cplx(0.0, B2 / k) * spec.T0 - 2.0 * p.s_tilde0 * spec.psi0) / q0;
        const double P0 = 1.0 + kap2 * s0 * s0;
        std::array<cplx, 2> y0{P0 * spec.psi0, 2.0 * kap2 * s0 * spec.psi0 + P0 * chi_t0};
        auto traj = solver.integrate(rhs, y0, t_grid);
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const double s = t_grid[i] + s0;
            const double P = 1.0 + kap2 * s * s;
            const cplx chi = traj[i][0] / P;
            const cplx chi_t = (traj[i][1] - 2.0 * kap2 * s * chi) / P;
            const cplx s_tilde(s, -spec.beta / (2.0 * k));
            const cplx mu = -cplx(0.0, k) / B2 * ((1.0 + std::norm(s_tilde)) * chi_t +
                                                  2.0 * s_tilde * chi);
            out.push_back({chi, chi_t, mu});
        }
        return out;
    }
    }
    throw InvalidParams("oracle: unknown kind");
}

/// Run the closed form and the integrator on the same mode; max relative
/// deviation over the grid, with a small-denominator floor.
inline double compare_closed_form(const OdeSpec& spec, std::span<const double> t_grid) {
    constexpr double floor = 1e-14;
    auto oracle = integrate(spec, t_grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        cplx phi_c, tau_c;
        switch (spec.kind) {
        case OdeKind::BoussinesqPhi:
        case OdeKind::BoussinesqSystem: {
            if (spec.B2 > 0.0) {
                auto st = evolve_mode(spec.mode, RegimeParams::from_richardson(spec.B2),
                                      t_grid[i], spec.psi0, spec.T0);
                phi_c = st.phi;
                tau_c = st.tau;
            } else {
                auto st = evolve_mode_homogeneous(spec.mode, t_grid[i], spec.psi0, spec.T0, spec.g);
                phi_c = st.phi;
                tau_c = st.tau;
            }
            break;
        }
        case OdeKind::EulerChi: {
            auto p = EulerModeParams::make(spec.mode.k, spec.mode.eta, spec.beta, spec.B2);
            auto st = evolve_euler_mode(p, t_grid[i], spec.psi0, spec.T0);
            phi_c = st.chi;
            tau_c = st.mu;
            break;
        }
        }
        worst = std::max(worst, std::abs(phi_c - oracle[i].phi) / std::max(std::abs(phi_c), floor));
        if (spec.B2 > 0.0)
            worst = std::max(worst,
                             std::abs(tau_c - oracle[i].tau) / std::max(std::abs(tau_c), floor));
    }
    return worst;
}

} // namespace strato
