#pragma once

#include "strato/config.hpp"
#include "strato/field.hpp"
#include "strato/fitting.hpp"
#include "strato/validate.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace strato {

using json = nlohmann::ordered_json;

struct NormRequest {
    std::string name;
    enum class Component { Vx, Vy, Density, Stream } component;
    enum class Kind { L2, L2xLInfY } kind;
    Projection projection;
};

inline NormRequest parse_norm(const std::string& name) {
    NormRequest r;
    r.name = name;
    std::string rest = name;
    auto take = [&](const std::string& prefix) {
        if (rest.rfind(prefix, 0) == 0) {
            rest = rest.substr(prefix.size());
            return true;
        }
        return false;
    };
    if (take("vx_")) r.component = NormRequest::Component::Vx;
    else if (take("vy_")) r.component = NormRequest::Component::Vy;
    else if (take("density_")) r.component = NormRequest::Component::Density;
    else if (take("stream_")) r.component = NormRequest::Component::Stream;
    else throw ConfigError("norm " + name + ": unknown component prefix");

    r.projection = Projection::Full;
    std::string::size_type suffix = rest.find("_pneq0");
    if (suffix != std::string::npos) {
        r.projection = Projection::PNeq0;
        rest = rest.substr(0, suffix);
    }
    if (rest == "l2") r.kind = NormRequest::Kind::L2;
    else if (rest == "l2xlinf") r.kind = NormRequest::Kind::L2xLInfY;
    else throw ConfigError("norm " + name + ": unknown kind " + rest);
    return r;
}

inline double evaluate_norm(const SpectralSnapshot& snap, const NormRequest& req) {
    const std::vector<cplx>* amps = nullptr;
    switch (req.component) {
    case NormRequest::Component::Vx: amps = &snap.vx; break;
    case NormRequest::Component::Vy: amps = &snap.vy; break;
    case NormRequest::Component::Density: amps = &snap.density; break;
    case NormRequest::Component::Stream: amps = &snap.stream; break;
    }
    if (req.kind == NormRequest::Kind::L2) return spectral_l2(snap.grid, *amps, req.projection);
    return l2x_linfy(snap.grid, *amps, req.projection);
}

struct ExperimentResult {
    json report;
    std::vector<double> times;
    std::map<std::string, std::vector<double>> series;
};

/// Run one configured experiment: ingest, evolve, record norms, fit decays,
/// track conservation, and emit series_<norm>.csv plus report.json under
/// cfg.out_dir. Deterministic for a fixed config and seed.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write_files = true) {
    cfg.check();
    const GridSpec& g = cfg.grid;

    PhysicalArray psi0, T0;
    if (cfg.initial.recipe == InitialDataSpec::Recipe::File) {
        auto load = [&](const std::string& path) -> PhysicalArray {
            if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
                return read_csv(path, g);
            auto f = read_binary(path);
            if (f.grid.Nx != g.Nx || f.grid.Ny != g.Ny)
                throw ConfigError("run_experiment: file grid does not match the configured grid");
            return std::move(f.samples);
        };
        psi0 = load(cfg.initial.path);
        T0 = load(cfg.initial.path_T);
    } else {
        psi0 = cfg.initial.psi_samples(g);
        T0 = cfg.initial.T_samples(g);
    }

    auto rp = cfg.regime();
    auto fld = ingest_initial_data(g, psi0, T0, cfg.model, cfg.beta,
                                   cfg.model == Model::NoShear && cfg.weighted_noshear);
    auto times = cfg.schedule.times();

    std::vector<NormRequest> requests;
    for (const auto& name : cfg.norms) requests.push_back(parse_norm(name));

    ExperimentResult result;
    result.times = times;
    for (const auto& name : cfg.norms) result.series[name].assign(times.size(), 0.0);

    // conservation accumulators
    const bool noshear = cfg.model == Model::NoShear;
    double energy0 = 0.0, energy_drift = 0.0;
    double k0_drift = 0.0, k0_scale = 1e-300;

    for_each_snapshot(fld, rp, times, cfg.threads, [&](std::size_t it, const SpectralSnapshot& s) {
        for (std::size_t q = 0; q < requests.size(); ++q)
            result.series[cfg.norms[q]][it] = evaluate_norm(s, requests[q]);
        if (noshear) {
            const double N2 = cfg.beta * cfg.g;
            double e = 0.0;
            for (std::size_t i = 0; i < g.Nx; ++i)
                for (std::size_t j = 0; j < g.Ny; ++j) {
                    std::size_t n = i * g.Ny + j;
                    double grad = double(g.k_of(i)) * g.k_of(i) + g.eta_of(j) * g.eta_of(j);
                    if (fld.weight_applied) grad += 0.25 * cfg.beta * cfg.beta;
                    e += (N2 * std::norm(s.density[n]) + grad * std::norm(s.stream[n])) * g.deta();
                }
            if (it == 0) energy0 = e;
            else energy_drift = std::max(energy_drift, std::abs(e - energy0) / energy0);
        } else {
            for (std::size_t i = 0; i < g.Nx; ++i) {
                if (g.k_of(i) != 0) continue;
                for (std::size_t j = 0; j < g.Ny; ++j) {
                    std::size_t n = i * g.Ny + j;
                    k0_scale = std::max(k0_scale, std::abs(fld.T_hat[n]));
                    k0_drift = std::max(k0_drift, std::abs(s.density[n] - fld.T_hat[n]));
                }
            }
        }
    });

    json report;
    report["config"] = {{"model", cfg.model == Model::Boussinesq  ? "boussinesq"
                                  : cfg.model == Model::FullEuler ? "euler"
                                                                  : "noshear"},
                        {"R", cfg.R},
                        {"beta", cfg.beta},
                        {"g", cfg.g},
                        {"B2", cfg.B2},
                        {"grid", {{"nx", cfg.grid.Nx}, {"ny", cfg.grid.Ny}, {"ly", cfg.grid.Ly}}},
                        {"schedule",
                         {{"t_min", cfg.schedule.t_min},
                          {"t_max", cfg.schedule.t_max},
                          {"points", cfg.schedule.points},
                          {"spacing", cfg.schedule.log_spaced ? "log" : "linear"}}},
                        {"initial",
                         {{"amp_psi", cfg.initial.amp_psi},
                          {"amp_T", cfg.initial.amp_T},
                          {"sigma_y", cfg.initial.sigma_y},
                          {"kx", cfg.initial.kx}}},
                        {"norms", cfg.norms},
                        {"fit",
                         {{"window_lo", cfg.fit.window_lo},
                          {"window_hi", cfg.fit.window_hi},
                          {"log_correction", cfg.fit.log_correction}}},
                        {"seed", cfg.seed}};

    if (write_files) std::filesystem::create_directories(cfg.out_dir);

    report["fits"] = json::array();
    for (const auto& name : cfg.norms) {
        const std::vector<double>& values = result.series[name];

        if (write_files) {
            std::ofstream csv(cfg.out_dir + "/series_" + name + ".csv");
            csv.precision(17);
            csv << "t,value\n";
            for (std::size_t i = 0; i < times.size(); ++i)
                csv << times[i] << ',' << values[i] << '\n';
        }

        json jf;
        jf["norm"] = name;
        try {
            auto fit = fit_decay(times, values, {cfg.fit.window_lo, cfg.fit.window_hi},
                                 cfg.fit.log_correction);
            jf["alpha"] = fit.alpha;
            jf["gamma"] = fit.gamma ? json(*fit.gamma) : json(nullptr);
            jf["stderr"] = fit.stderr_alpha;
            jf["r2"] = fit.r2;
            jf["window"] = {fit.window[0], fit.window[1]};
            jf["points"] = fit.n_points;
        } catch (const Error& e) {
            jf["error"] = e.what();
        }
        report["fits"].push_back(jf);
    }

    report["conservation"] = json::array();
    if (noshear) {
        report["conservation"].push_back(
            {{"name", "wave_energy"}, {"max_rel_drift", energy_drift}});
    } else {
        // the x-mean column is a constant of the motion for every shear model
        report["conservation"].push_back(
            {{"name", "k0_column_invariance"}, {"max_rel_drift", k0_drift / k0_scale}});
    }

    report["validation"] = json::array();
    result.report = report;

    if (write_files) {
        std::ofstream out(cfg.out_dir + "/report.json");
        out << report.dump(2) << '\n';
    }
    return result;
}

/// Validation run wrapped into the report schema; nonzero count of failures
/// means a nonzero exit for the CLI.
inline json validation_report(const std::string& suite, std::uint64_t seed) {
    auto checks = validate_suite(suite, seed);
    json rep;
    rep["suite"] = suite;
    rep["checks"] = json::array();
    int failures = 0;
    for (auto& c : checks) {
        rep["checks"].push_back({{"name", c.name},
                                 {"pass", c.pass},
                                 {"measured", c.measured},
                                 {"threshold", c.threshold}});
        if (!c.pass) ++failures;
    }
    rep["failures"] = failures;
    return rep;
}

} // namespace strato
