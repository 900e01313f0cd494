#pragma once

#include "strato/common.hpp"

#include <functional>
#include <queue>
#include <vector>

namespace strato {

/// Gauss-Kronrod 7/15 panel rule with adaptive bisection, worst panel
/// first. Integrand is complex valued on a real interval.
namespace quad {

namespace detail {

inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

} // namespace detail

struct Panel {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
inline Panel gk15(const F& f, double a, double b) {
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    cplx kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double x = detail::xgk[i] * h;
        cplx fv = i == 7 ? f(c) : f(c - x) + f(c + x);
        kron += detail::wgk[i] * fv;
        if (i % 2 == 1) gauss += detail::wg[i / 2] * fv;
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

struct AdaptiveResult {
    cplx value;
    double error;
    std::size_t panels;
};

/// Integrate f over [a,b] to an absolute tolerance. initial_panels seeds the
/// subdivision (oscillatory integrands want one panel per few radians of
/// phase); refinement bisects the worst panel until the error bound holds.
template <class F>
inline AdaptiveResult integrate_adaptive(const F& f, double a, double b, double abs_tol,
                                         std::size_t initial_panels = 8,
                                         std::size_t max_panels = 400000) {
    initial_panels = std::max<std::size_t>(1, std::min(initial_panels, max_panels / 2));
    std::priority_queue<Panel> heap;
    cplx total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i < initial_panels; ++i) {
        double pa = a + (b - a) * double(i) / double(initial_panels);
        double pb = a + (b - a) * double(i + 1) / double(initial_panels);
        Panel p = gk15(f, pa, pb);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    std::size_t panels = initial_panels;
    while (total_err > abs_tol && panels < max_panels) {
        Panel worst = heap.top();
        heap.pop();
        total -= worst.value;
        total_err -= worst.error;
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval exhausted at machine resolution; keep its estimate
            total += worst.value;
            total_err += worst.error;
            break;
        }
        Panel l = gk15(f, worst.a, mid), r = gk15(f, mid, worst.b);
        total += l.value + r.value;
        total_err += l.error + r.error;
        heap.push(l);
        heap.push(r);
        ++panels;
    }
    if (total_err > abs_tol)
        throw QuadratureFailure("integrate_adaptive: tolerance unmet with " +
                                std::to_string(panels) + " panels; worst interval [" +
                                std::to_string(heap.top().a) + ", " + std::to_string(heap.top().b) +
                                "]");
    return {total, total_err, panels};
}

} // namespace quad

} // namespace strato
