#pragma once

#include "strato/boussinesq.hpp"
#include "strato/dft.hpp"
#include "strato/dispersive.hpp"
#include "strato/euler.hpp"
#include "strato/oracle.hpp"
#include "strato/parallel.hpp"

#include <fstream>
#include <functional>
#include <string>
#include <vector>

namespace strato {

enum class Model { Boussinesq, FullEuler, NoShear };

/// Uniform grid: x in [0, 2pi) with Nx collocation points, y in [-Ly, Ly)
/// with Ny points. Both counts are powers of two; the eta grid is the
/// discrete-transform frequency set with spacing pi/Ly.
struct GridSpec {
    std::size_t Nx = 32;
    std::size_t Ny = 512;
    double Ly = 16.0;

    GridSpec() = default;
    GridSpec(std::size_t nx, std::size_t ny, double ly) : Nx(nx), Ny(ny), Ly(ly) {
        if (Nx == 0 || (Nx & (Nx - 1)) != 0 || Ny == 0 || (Ny & (Ny - 1)) != 0)
            throw InvalidParams("GridSpec: Nx and Ny must be powers of two");
        if (Ly <= 0.0) throw InvalidParams("GridSpec: Ly must be positive");
    }

    double dx() const { return 2.0 * pi / double(Nx); }
    double dy() const { return 2.0 * Ly / double(Ny); }
    double deta() const { return pi / Ly; }
    double x(std::size_t i) const { return dx() * double(i); }
    double y(std::size_t j) const { return -Ly + dy() * double(j); }
    int k_of(std::size_t i) const { return fft_signed_index(i, Nx); }
    double eta_of(std::size_t j) const { return deta() * fft_signed_index(j, Ny); }
    std::size_t size() const { return Nx * Ny; }
};

/// Mode-amplitude array over the (k, eta) grid. Storage is column major in
/// the x-mode index: entry (ik, jeta) lives at ik*Ny + jeta, both in FFT
/// bin order.
struct SpectralField {
    GridSpec grid;
    Model model = Model::Boussinesq;
    bool weight_applied = false; // e^{-beta y/2} folded into the samples
    std::vector<cplx> psi_hat;   // psi0 (or Psi0 when weighted)
    std::vector<cplx> T_hat;     // T0 (or Upsilon0 when weighted)
};

/// Physical samples, y-major: sample (ix, iy) at index iy*Nx + ix, matching
/// the CSV layout (one row per y, one column per x).
using PhysicalArray = std::vector<double>;

namespace fieldops {

/// Forward transform with the 1/(2pi) convention:
/// fhat(k,eta) = (1/2pi) Iint e^{-ikx-i eta y} f dx dy.
inline std::vector<cplx> forward(const GridSpec& g, const PhysicalArray& samples) {
    if (samples.size() != g.size()) throw InvalidParams("forward: sample count mismatch");
    std::vector<cplx> work(g.size());
    // y-major samples -> k-major columns
    std::vector<cplx> col(g.Ny), row(g.Nx);
    std::vector<cplx> out(g.size());
    // transform in x for each y row
    for (std::size_t j = 0; j < g.Ny; ++j) {
        for (std::size_t i = 0; i < g.Nx; ++i) row[i] = samples[j * g.Nx + i];
        fft_radix2(row, false);
        for (std::size_t i = 0; i < g.Nx; ++i) work[i * g.Ny + j] = row[i];
    }
    // transform in y down each k column, then fix the -Ly origin phase
    const double scale = g.dx() * g.dy() / (2.0 * pi);
    for (std::size_t i = 0; i < g.Nx; ++i) {
        for (std::size_t j = 0; j < g.Ny; ++j) col[j] = work[i * g.Ny + j];
        fft_radix2(col, false);
        for (std::size_t j = 0; j < g.Ny; ++j) {
            const double eta = g.eta_of(j);
            out[i * g.Ny + j] = col[j] * std::polar(scale, eta * g.Ly);
        }
    }
    return out;
}

/// Inverse of forward(); returns complex samples (imaginary parts are
/// rounding noise for Hermitian data).
inline std::vector<cplx> inverse(const GridSpec& g, const std::vector<cplx>& amps) {
    if (amps.size() != g.size()) throw InvalidParams("inverse: amplitude count mismatch");
    std::vector<cplx> work(g.size());
    std::vector<cplx> col(g.Ny), row(g.Nx);
    const double scale = g.deta() / (2.0 * pi);
    for (std::size_t i = 0; i < g.Nx; ++i) {
        for (std::size_t j = 0; j < g.Ny; ++j) {
            const double eta = g.eta_of(j);
            col[j] = amps[i * g.Ny + j] * std::polar(scale, -eta * g.Ly);
        }
        fft_radix2(col, true);
        for (std::size_t j = 0; j < g.Ny; ++j) work[i * g.Ny + j] = col[j];
    }
    std::vector<cplx> out(g.size());
    for (std::size_t j = 0; j < g.Ny; ++j) {
        for (std::size_t i = 0; i < g.Nx; ++i) row[i] = work[i * g.Ny + j];
        fft_radix2(row, true);
        for (std::size_t i = 0; i < g.Nx; ++i) out[j * g.Nx + i] = row[i];
    }
    return out;
}

/// Mixed representation of one k column: fhat(k, y_m) with the 1/sqrt(2pi)
/// x-only convention, i.e. (deta/sqrt(2pi)) sum_j e^{i y eta_j} fhat(k,eta_j).
inline std::vector<cplx> mixed_rep_column(const GridSpec& g, std::span<const cplx> column) {
    std::vector<cplx> col(g.Ny);
    const double scale = g.deta() / std::sqrt(2.0 * pi);
    for (std::size_t j = 0; j < g.Ny; ++j) {
        const double eta = g.eta_of(j);
        col[j] = column[j] * std::polar(scale, -eta * g.Ly);
    }
    fft_radix2(col, true);
    return col;
}

} // namespace fieldops

/// Ingest physical initial data (stream function and relative density).
/// FullEuler folds the e^{-beta y/2} weight into the samples before the
/// transform, so the stored amplitudes are (Psi0, Upsilon0); the weighted
/// no-shear variant opts in through apply_weight.
inline SpectralField ingest_initial_data(const GridSpec& g, const PhysicalArray& psi0,
                                         const PhysicalArray& T0, Model model, double beta = 0.0,
                                         bool apply_weight = false, double tol_trunc = 1e-9) {
    if (psi0.size() != g.size() || T0.size() != g.size())
        throw InvalidParams("ingest_initial_data: sample count mismatch");
    if (model == Model::FullEuler) apply_weight = true;
    if (apply_weight && beta <= 0.0)
        throw InvalidParams("ingest_initial_data: the e^{-beta y/2} weight requires beta > 0");

    double interior = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < g.Nx; ++i) {
        edge = std::max({edge, std::abs(psi0[0 * g.Nx + i]), std::abs(psi0[(g.Ny - 1) * g.Nx + i]),
                         std::abs(T0[0 * g.Nx + i]), std::abs(T0[(g.Ny - 1) * g.Nx + i])});
    }
    for (std::size_t n = 0; n < g.size(); ++n)
        interior = std::max({interior, std::abs(psi0[n]), std::abs(T0[n])});
    if (edge > tol_trunc * (1.0 + interior))
        throw TruncationError("ingest_initial_data: data does not decay at |y| = Ly");

    SpectralField f;
    f.grid = g;
    f.model = model;
    f.weight_applied = apply_weight;
    if (apply_weight) {
        PhysicalArray wpsi(g.size()), wT(g.size());
        for (std::size_t j = 0; j < g.Ny; ++j) {
            const double w = std::exp(-0.5 * beta * g.y(j));
            for (std::size_t i = 0; i < g.Nx; ++i) {
                wpsi[j * g.Nx + i] = w * psi0[j * g.Nx + i];
                wT[j * g.Nx + i] = w * T0[j * g.Nx + i];
            }
        }
        f.psi_hat = fieldops::forward(g, wpsi);
        f.T_hat = fieldops::forward(g, wT);
    } else {
        f.psi_hat = fieldops::forward(g, psi0);
        f.T_hat = fieldops::forward(g, T0);
    }
    return f;
}

/// Sheared-frame amplitudes of every component at a set of times.
struct SpectralSnapshot {
    GridSpec grid;
    Model model = Model::Boussinesq;
    double t = 0.0;
    bool sheared = true; // amplitudes live in the (k, eta) frame of (z, y)
    std::vector<cplx> stream; // phi (chi when weighted)
    std::vector<cplx> density; // tau (mu)
    std::vector<cplx> vx;      // i k s phi (weighted: (iks - beta/2) chi)
    std::vector<cplx> vy;      // i k phi
};

/// Evolve every mode of the field to each requested time. The full-Euler
/// critical band integrates the chi ODE once per mode with dense output;
/// all other regimes use the closed forms.
inline std::vector<SpectralSnapshot> evolve_field(const SpectralField& f, const RegimeParams& rp,
                                                  std::span<const double> times,
                                                  unsigned threads = 0) {
    const GridSpec& g = f.grid;
    std::vector<SpectralSnapshot> snaps(times.size());
    for (std::size_t it = 0; it < times.size(); ++it) {
        snaps[it].grid = g;
        snaps[it].model = f.model;
        snaps[it].t = times[it];
        snaps[it].stream.assign(g.size(), 0.0);
        snaps[it].density.assign(g.size(), 0.0);
        snaps[it].vx.assign(g.size(), 0.0);
        snaps[it].vy.assign(g.size(), 0.0);
    }

    const bool euler_critical =
        f.model == Model::FullEuler &&
        hyp::detail::dist_to_integers(2.0 * RegimeParams::nu_of(rp.B2)) < hyp::tol_degenerate;
    // exactly-critical Boussinesq has the exact log-case closed form; the
    // near-critical band around it does not and integrates instead
    const bool bouss_band =
        f.model == Model::Boussinesq && rp.B2 > 0.0 && std::abs(rp.nu) > 1e-12 &&
        hyp::detail::dist_to_integers(rp.nu) < hyp::tol_degenerate;

    parallel_for(g.Nx, [&](std::size_t i) {
        const int k = g.k_of(i);
        for (std::size_t j = 0; j < g.Ny; ++j) {
            const std::size_t n = i * g.Ny + j;
            const double eta = g.eta_of(j);
            const cplx psi0 = f.psi_hat[n];
            const cplx T0 = f.T_hat[n];

            // weighted models carry the -beta/2 shift of the x-velocity:
            // e^{-beta y/2} v^x = (-d_y + t d_z - beta/2) chi
            const cplx vx_shift = f.weight_applied ? cplx(-0.5 * rp.beta) : cplx(0.0);

            if (k == 0) {
                // x-mean column: conserved under every model here
                for (auto& s : snaps) {
                    s.stream[n] = psi0;
                    s.density[n] = T0;
                    s.vx[n] = (-cplx(0.0, eta) + vx_shift) * psi0;
                    s.vy[n] = 0.0;
                }
                continue;
            }

            if (f.model == Model::NoShear) {
                DispersionParams dp{std::sqrt(rp.beta * rp.g), rp.beta,
                                    f.weight_applied ? DispersionModel::FullEuler
                                                     : DispersionModel::Boussinesq};
                for (std::size_t it = 0; it < times.size(); ++it) {
                    auto [ps, Ts] = evolve_no_shear_mode(k, eta, dp, times[it], psi0, T0);
                    auto& s = snaps[it];
                    s.stream[n] = ps;
                    s.density[n] = Ts;
                    s.vx[n] = (-cplx(0.0, eta) + vx_shift) * ps;
                    s.vy[n] = cplx(0.0, double(k)) * ps;
                }
                continue;
            }

            const ModeIndex m{k, eta};
            if (f.model == Model::Boussinesq) {
                if (bouss_band) {
                    OdeSpec spec;
                    spec.kind = OdeKind::BoussinesqPhi;
                    spec.mode = m;
                    spec.B2 = rp.B2;
                    spec.psi0 = psi0;
                    spec.T0 = T0;
                    std::vector<double> grid;
                    std::size_t skip = 0;
                    if (times.empty() || times.front() != 0.0) {
                        grid.assign(1, 0.0);
                        skip = 1;
                    }
                    grid.insert(grid.end(), times.begin(), times.end());
                    auto traj = integrate(spec, grid);
                    for (std::size_t it = 0; it < times.size(); ++it) {
                        const double s = times[it] - eta / k;
                        auto& sn = snaps[it];
                        const auto& st = traj[it + skip];
                        sn.stream[n] = st.phi;
                        sn.density[n] = st.tau;
                        sn.vy[n] = cplx(0.0, double(k)) * st.phi;
                        sn.vx[n] = s * sn.vy[n];
                    }
                } else if (rp.B2 <= 0.0) {
                    for (std::size_t it = 0; it < times.size(); ++it) {
                        auto st = evolve_mode_homogeneous(m, times[it], psi0, T0, rp.g);
                        auto& s = snaps[it];
                        s.stream[n] = st.phi;
                        s.density[n] = st.tau;
                        s.vx[n] = st.vx;
                        s.vy[n] = st.vy;
                    }
                } else {
                    const auto c = mode_coefficients(m, rp, psi0, T0);
                    for (std::size_t it = 0; it < times.size(); ++it) {
                        const auto sv = shear_vars(m, times[it]);
                        const auto gs = special_solutions(rp.nu, sv.s);
                        const cplx phi = c.C1 * gs.g1 + c.C2 * gs.g2;
                        const cplx phi_t = c.C1 * gs.g1p + c.C2 * gs.g2p;
                        auto& s = snaps[it];
                        s.stream[n] = phi;
                        s.density[n] = -cplx(0.0, double(k)) / rp.B2 *
                                       ((1.0 + sv.s * sv.s) * phi_t + 2.0 * sv.s * phi);
                        s.vy[n] = cplx(0.0, double(k)) * phi;
                        s.vx[n] = sv.s * s.vy[n];
                    }
                }
                continue;
            }

            // FullEuler
            const auto ep = EulerModeParams::make(k, eta, rp.beta, rp.B2);
            if (euler_critical) {
                OdeSpec spec;
                spec.kind = OdeKind::EulerChi;
                spec.mode = m;
                spec.B2 = rp.B2;
                spec.beta = rp.beta;
                spec.psi0 = psi0;
                spec.T0 = T0;
                // the oracle marches from t = 0 even when this batch of
                // output times starts later
                std::vector<double> grid;
                std::size_t skip = 0;
                if (times.empty() || times.front() != 0.0) {
                    grid.assign(1, 0.0);
                    skip = 1;
                }
                grid.insert(grid.end(), times.begin(), times.end());
                auto traj = integrate(spec, grid);
                for (std::size_t it = 0; it < times.size(); ++it) {
                    const double s = times[it] + ep.s0();
                    auto& sn = snaps[it];
                    const auto& st = traj[it + skip];
                    sn.stream[n] = st.phi;
                    sn.density[n] = st.tau;
                    sn.vy[n] = cplx(0.0, double(k)) * st.phi;
                    sn.vx[n] = (cplx(0.0, double(k) * s) - 0.5 * rp.beta) * st.phi;
                }
            } else {
                for (std::size_t it = 0; it < times.size(); ++it) {
                    auto st = evolve_euler_mode(ep, times[it], psi0, T0);
                    auto& sn = snaps[it];
                    sn.stream[n] = st.chi;
                    sn.density[n] = st.mu;
                    sn.vx[n] = st.wvx;
                    sn.vy[n] = st.wvy;
                }
            }
        }
    }, threads);

    return snaps;
}

/// Physical-space view of one snapshot component: inverse transform in eta,
/// multiplication by the shear phase e^{-ikty}, inverse transform in x.
inline PhysicalArray to_physical(const SpectralSnapshot& snap, const std::vector<cplx>& amps) {
    const GridSpec& g = snap.grid;
    std::vector<cplx> shifted(g.size());
    const bool shear_phase = snap.model != Model::NoShear && snap.sheared;
    std::vector<cplx> col(g.Ny), row(g.Nx);
    const double scale = g.deta() / (2.0 * pi);
    std::vector<cplx> work(g.size());
    for (std::size_t i = 0; i < g.Nx; ++i) {
        for (std::size_t j = 0; j < g.Ny; ++j)
            col[j] = amps[i * g.Ny + j] * std::polar(scale, -g.eta_of(j) * g.Ly);
        fft_radix2(col, true);
        const int k = g.k_of(i);
        for (std::size_t j = 0; j < g.Ny; ++j) {
            cplx phase = shear_phase ? std::polar(1.0, -double(k) * snap.t * g.y(j)) : cplx(1.0);
            work[i * g.Ny + j] = col[j] * phase;
        }
    }
    PhysicalArray out(g.size());
    for (std::size_t j = 0; j < g.Ny; ++j) {
        for (std::size_t i = 0; i < g.Nx; ++i) row[i] = work[i * g.Ny + j];
        fft_radix2(row, true);
        for (std::size_t i = 0; i < g.Nx; ++i) out[j * g.Nx + i] = row[i].real();
    }
    return out;
}

/// Evolve in batches of times sized to a snapshot-memory budget and hand
/// each snapshot to fn(index, snapshot). Large grids stream through without
/// holding the whole schedule in memory.
template <class Fn>
inline void for_each_snapshot(const SpectralField& f, const RegimeParams& rp,
                              std::span<const double> times, unsigned threads, Fn&& fn,
                              std::size_t budget_bytes = std::size_t(256) << 20) {
    const std::size_t per_time = 4 * f.grid.size() * sizeof(cplx);
    const std::size_t chunk = std::max<std::size_t>(1, budget_bytes / std::max<std::size_t>(per_time, 1));
    for (std::size_t start = 0; start < times.size(); start += chunk) {
        std::size_t count = std::min(chunk, times.size() - start);
        auto snaps = evolve_field(f, rp, times.subspan(start, count), threads);
        for (std::size_t i = 0; i < count; ++i) fn(start + i, snaps[i]);
    }
}

enum class Projection { Full, PNeq0 };

/// L2 norm from sheared-frame amplitudes (Parseval; frame invariant).
inline double spectral_l2(const GridSpec& g, std::span<const cplx> amps,
                          Projection proj = Projection::Full) {
    double sum = 0.0;
    for (std::size_t i = 0; i < g.Nx; ++i) {
        if (proj == Projection::PNeq0 && g.k_of(i) == 0) continue;
        for (std::size_t j = 0; j < g.Ny; ++j) sum += std::norm(amps[i * g.Ny + j]);
    }
    return std::sqrt(sum * g.deta());
}

/// Sobolev H^{sx}_x H^{sy}_y norm of a spectral representation.
inline double sobolev_hxhy(const GridSpec& g, std::span<const cplx> amps, double sx, double sy,
                           Projection proj = Projection::Full) {
    double sum = 0.0;
    for (std::size_t i = 0; i < g.Nx; ++i) {
        const int k = g.k_of(i);
        if (proj == Projection::PNeq0 && k == 0) continue;
        const double wx = std::pow(1.0 + double(k) * double(k), sx);
        for (std::size_t j = 0; j < g.Ny; ++j) {
            const double eta = g.eta_of(j);
            sum += wx * std::pow(1.0 + eta * eta, sy) * std::norm(amps[i * g.Ny + j]);
        }
    }
    return std::sqrt(sum * g.deta());
}

/// Mixed L2_x Linf_y norm: (sum_k sup_y |fhat(k,y)|^2)^{1/2} with the
/// 1/sqrt(2pi) x-transform convention.
inline double l2x_linfy(const GridSpec& g, std::span<const cplx> amps,
                        Projection proj = Projection::PNeq0) {
    double sum = 0.0;
    for (std::size_t i = 0; i < g.Nx; ++i) {
        if (proj == Projection::PNeq0 && g.k_of(i) == 0) continue;
        auto col = fieldops::mixed_rep_column(g, std::span<const cplx>(&amps[i * g.Ny], g.Ny));
        double peak = 0.0;
        for (auto& v : col) peak = std::max(peak, std::abs(v));
        sum += peak * peak;
    }
    return std::sqrt(sum);
}

/// H^{sx}_x W^{sy,p}_y norm with integer sy >= 0 and p in {1, 2, inf}
/// (p = 0 encodes inf). y-derivatives are applied spectrally.
inline double sobolev_hxwy(const GridSpec& g, std::span<const cplx> amps, double sx, int sy,
                           double p, Projection proj = Projection::Full) {
    if (sy < 0) throw UnsupportedCombination("sobolev_hxwy: sy must be a nonnegative integer");
    double sum = 0.0;
    std::vector<cplx> deriv(g.Ny);
    for (std::size_t i = 0; i < g.Nx; ++i) {
        const int k = g.k_of(i);
        if (proj == Projection::PNeq0 && k == 0) continue;
        const double wx = std::pow(1.0 + double(k) * double(k), sx);
        double wnorm = 0.0;
        for (int d = 0; d <= sy; ++d) {
            for (std::size_t j = 0; j < g.Ny; ++j) {
                const cplx ieta(0.0, g.eta_of(j));
                deriv[j] = amps[i * g.Ny + j] * std::pow(ieta, d);
            }
            auto col = fieldops::mixed_rep_column(g, deriv);
            double lp = 0.0;
            if (p == 0.0) { // Linf
                for (auto& v : col) lp = std::max(lp, std::abs(v));
            } else if (p == 1.0) {
                for (auto& v : col) lp += std::abs(v) * g.dy();
            } else if (p == 2.0) {
                for (auto& v : col) lp += std::norm(v) * g.dy();
                lp = std::sqrt(lp);
            } else {
                throw UnsupportedCombination("sobolev_hxwy: p must be 1, 2 or inf");
            }
            wnorm += lp;
        }
        sum += wx * wnorm * wnorm;
    }
    return std::sqrt(sum);
}

/// L2 norm of physical samples (trapezoid in y degenerates to the plain sum
/// on the periodic-in-x, decaying-in-y grid).
inline double physical_l2(const GridSpec& g, const PhysicalArray& samples,
                          Projection proj = Projection::Full, double weight_beta = 0.0) {
    double sum = 0.0;
    std::vector<double> xmean(g.Ny, 0.0);
    if (proj == Projection::PNeq0) {
        for (std::size_t j = 0; j < g.Ny; ++j) {
            double m = 0.0;
            for (std::size_t i = 0; i < g.Nx; ++i) m += samples[j * g.Nx + i];
            xmean[j] = m / double(g.Nx);
        }
    }
    for (std::size_t j = 0; j < g.Ny; ++j) {
        const double w = weight_beta != 0.0 ? std::exp(-0.5 * weight_beta * g.y(j)) : 1.0;
        for (std::size_t i = 0; i < g.Nx; ++i) {
            double v = w * (samples[j * g.Nx + i] - xmean[j]);
            sum += v * v;
        }
    }
    return std::sqrt(sum * g.dx() * g.dy());
}

/// Remove the k = 0 column in place.
inline void project_pneq0(const GridSpec& g, std::vector<cplx>& amps) {
    for (std::size_t i = 0; i < g.Nx; ++i)
        if (g.k_of(i) == 0)
            for (std::size_t j = 0; j < g.Ny; ++j) amps[i * g.Ny + j] = 0.0;
}

// --- field I/O ------------------------------------------------------------

/// CSV: one row per y sample, one column per x sample.
inline void write_csv(const std::string& path, const GridSpec& g, const PhysicalArray& a) {
    std::ofstream out(path);
    if (!out) throw Error("write_csv: cannot open " + path);
    out.precision(17);
    for (std::size_t j = 0; j < g.Ny; ++j) {
        for (std::size_t i = 0; i < g.Nx; ++i) {
            if (i) out << ',';
            out << a[j * g.Nx + i];
        }
        out << '\n';
    }
}

/// Binary layout: u32 Nx, u32 Ny, f64 Ly, u32 model tag, then Ny*Nx
/// row-major (y-major) float64 samples, little endian.
inline void write_binary(const std::string& path, const GridSpec& g, Model model,
                         const PhysicalArray& a) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("write_binary: cannot open " + path);
    std::uint32_t nx = std::uint32_t(g.Nx), ny = std::uint32_t(g.Ny), tag = std::uint32_t(model);
    double ly = g.Ly;
    out.write(reinterpret_cast<const char*>(&nx), 4);
    out.write(reinterpret_cast<const char*>(&ny), 4);
    out.write(reinterpret_cast<const char*>(&ly), 8);
    out.write(reinterpret_cast<const char*>(&tag), 4);
    out.write(reinterpret_cast<const char*>(a.data()), std::streamsize(a.size() * 8));
}

struct BinaryField {
    GridSpec grid;
    Model model;
    PhysicalArray samples;
};

inline BinaryField read_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("read_binary: cannot open " + path);
    std::uint32_t nx = 0, ny = 0, tag = 0;
    double ly = 0.0;
    in.read(reinterpret_cast<char*>(&nx), 4);
    in.read(reinterpret_cast<char*>(&ny), 4);
    in.read(reinterpret_cast<char*>(&ly), 8);
    in.read(reinterpret_cast<char*>(&tag), 4);
    if (!in) throw Error("read_binary: truncated header in " + path);
    BinaryField f{GridSpec(nx, ny, ly), Model(tag), PhysicalArray(std::size_t(nx) * ny)};
    in.read(reinterpret_cast<char*>(f.samples.data()), std::streamsize(f.samples.size() * 8));
    if (!in) throw Error("read_binary: truncated payload in " + path);
    return f;
}

/// CSV carries no grid header; the caller supplies the grid and the layout
/// is validated against it.
inline PhysicalArray read_csv(const std::string& path, const GridSpec& g) {
    std::ifstream in(path);
    if (!in) throw Error("read_csv: cannot open " + path);
    PhysicalArray a;
    a.reserve(g.size());
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        std::size_t cols = 0, pos = 0;
        while (pos <= line.size()) {
            auto comma = line.find(',', pos);
            std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                           : comma - pos);
            a.push_back(std::stod(cell));
            ++cols;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (cols != g.Nx) throw Error("read_csv: row width mismatch in " + path);
    }
    if (rows != g.Ny) throw Error("read_csv: row count mismatch in " + path);
    return a;
}

} // namespace strato
