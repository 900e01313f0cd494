#pragma once

#include "strato/common.hpp"

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace strato::ode {

/// Embedded Dormand-Prince 5(4) pair with PI step-size control and the
/// standard continuous extension for dense output. State is a fixed-size
/// complex vector.
template <std::size_t N>
class Dopri5 {
public:
    using State = std::array<cplx, N>;
    using Rhs = std::function<State(double, const State&)>;

    double rtol = 1e-10;
    double atol = 1e-12;

    /// Integrate from t_grid.front() and return the dense-output states at
    /// every grid point (the first entry is the initial state itself).
    std::vector<State> integrate(const Rhs& f, State y0, std::span<const double> t_grid) const {
        if (t_grid.empty()) return {};
        std::vector<State> out;
        out.reserve(t_grid.size());
        out.push_back(y0);

        double t = t_grid.front();
        const double t_end = t_grid.back();
        std::size_t next = 1;
        if (next >= t_grid.size()) return out;

        State y = y0;
        State k1 = f(t, y);
        double h = initial_step(f, t, y, k1);
        double err_prev = 1.0;

        while (t < t_end) {
            if (h < 16.0 * 1e-16 * std::max(1.0, std::abs(t)))
                throw StepFailure("dopri5: step size underflow at t = " + std::to_string(t));
            h = std::min(h, t_end - t);

            State k2, k3, k4, k5, k6, k7, y1;
            stages(f, t, y, k1, h, k2, k3, k4, k5, k6, k7, y1);

            double err = error_norm(y, y1, k1, k3, k4, k5, k6, k7, h);
            if (err <= 1.0) {
                // accepted: dense output over (t, t+h]
                std::array<State, 5> rc = dense_coeffs(y, y1, k1, k3, k4, k5, k6, k7, h);
                while (next < t_grid.size() && t_grid[next] <= t + h + 1e-14 * std::max(1.0, std::abs(t + h))) {
                    double theta = (t_grid[next] - t) / h;
                    theta = std::clamp(theta, 0.0, 1.0);
                    out.push_back(dense_eval(rc, theta));
                    ++next;
                }
                t += h;
                y = y1;
                k1 = k7; // FSAL
                double fac = 0.9 * std::pow(err > 0 ? err : 1e-10, -0.2) *
                             std::pow(err_prev, 0.08);
                h *= std::clamp(fac, 0.2, 5.0);
                err_prev = std::max(err, 1e-10);
            } else {
                h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            }
        }
        while (next < t_grid.size()) { // guard: grid points equal to t_end
            out.push_back(y);
            ++next;
        }
        return out;
    }

    /// Fixed-step classic run of the same 5th-order stages (no controller);
    /// used by the convergence-order checks.
    State integrate_fixed(const Rhs& f, State y0, double t0, double t1, int nsteps) const {
        State y = y0;
        double h = (t1 - t0) / nsteps;
        for (int i = 0; i < nsteps; ++i) {
            double t = t0 + i * h;
            State k1 = f(t, y), k2, k3, k4, k5, k6, k7, y1;
            stages(f, t, y, k1, h, k2, k3, k4, k5, k6, k7, y1);
            y = y1;
        }
        return y;
    }

private:
    static State axpy(const State& y, std::initializer_list<std::pair<double, const State*>> terms,
                      double h) {
        State r = y;
        for (auto& [c, k] : terms)
            for (std::size_t i = 0; i < N; ++i) r[i] += h * c * (*k)[i];
        return r;
    }

    static void stages(const Rhs& f, double t, const State& y, const State& k1, double h,
                       State& k2, State& k3, State& k4, State& k5, State& k6, State& k7,
                       State& y1) {
        k2 = f(t + h / 5.0, axpy(y, {{1.0 / 5.0, &k1}}, h));
        k3 = f(t + 3.0 * h / 10.0, axpy(y, {{3.0 / 40.0, &k1}, {9.0 / 40.0, &k2}}, h));
        k4 = f(t + 4.0 * h / 5.0,
               axpy(y, {{44.0 / 45.0, &k1}, {-56.0 / 15.0, &k2}, {32.0 / 9.0, &k3}}, h));
        k5 = f(t + 8.0 * h / 9.0,
               axpy(y, {{19372.0 / 6561.0, &k1}, {-25360.0 / 2187.0, &k2},
                        {64448.0 / 6561.0, &k3}, {-212.0 / 729.0, &k4}}, h));
        k6 = f(t + h, axpy(y, {{9017.0 / 3168.0, &k1}, {-355.0 / 33.0, &k2},
                               {46732.0 / 5247.0, &k3}, {49.0 / 176.0, &k4},
                               {-5103.0 / 18656.0, &k5}}, h));
        y1 = axpy(y, {{35.0 / 384.0, &k1}, {500.0 / 1113.0, &k3}, {125.0 / 192.0, &k4},
                      {-2187.0 / 6784.0, &k5}, {11.0 / 84.0, &k6}}, h);
        k7 = f(t + h, y1);
    }

    double error_norm(const State& y, const State& y1, const State& k1, const State& k3,
                      const State& k4, const State& k5, const State& k6, const State& k7,
                      double h) const {
        constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                         e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
        double sum = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            cplx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * k7[i]);
            double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
            double r = std::abs(e) / sc;
            sum += r * r;
        }
        return std::sqrt(sum / N);
    }

    static std::array<State, 5> dense_coeffs(const State& y, const State& y1, const State& k1,
                                             const State& k3, const State& k4, const State& k5,
                                             const State& k6, const State& k7, double h) {
        constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                         d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                         d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
        std::array<State, 5> rc;
        for (std::size_t i = 0; i < N; ++i) {
            cplx dy = y1[i] - y[i];
            rc[0][i] = y[i];
            rc[1][i] = dy;
            rc[2][i] = h * k1[i] - dy;
            rc[3][i] = dy - h * k7[i] - rc[2][i];
            rc[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                            d7 * k7[i]);
        }
        return rc;
    }

    static State dense_eval(const std::array<State, 5>& rc, double theta) {
        State r;
        double th1 = 1.0 - theta;
        for (std::size_t i = 0; i < N; ++i)
            r[i] = rc[0][i] +
                   theta * (rc[1][i] + th1 * (rc[2][i] + theta * (rc[3][i] + th1 * rc[4][i])));
        return r;
    }

    double initial_step(const Rhs& f, double t, const State& y, const State& k1) const {
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double sc = atol + rtol * std::abs(y[i]);
            d0 += std::norm(y[i] / sc);
            d1 += std::norm(k1[i] / sc);
        }
        d0 = std::sqrt(d0 / N);
        d1 = std::sqrt(d1 / N);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        (void)f;
        (void)t;
        return h0;
    }
};

} // namespace strato::ode
