// strato: configuration-driven runner for the linear stratified-Couette
// solvers: single-mode evolution, field experiments, regime sweeps, the
// no-shear dispersive suite, validation, and decay fitting.

#include <CLI11.hpp>

#include "strato/harness.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace strato;

namespace {

ExperimentConfig load_config(const std::string& path, const std::string& out_override,
                             long seed_override, long threads_override) {
    auto cf = ConfigFile::parse_file(path);
    auto cfg = ExperimentConfig::from(cf);
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (seed_override >= 0) cfg.seed = std::uint64_t(seed_override);
    if (threads_override >= 0) cfg.threads = unsigned(threads_override);
    return cfg;
}

int run_mode(const std::string& config_path, const std::string& out_dir, long seed, long threads) {
    auto cf = ConfigFile::parse_file(config_path);
    auto cfg = load_config(config_path, out_dir, seed, threads);
    const int k = int(cf.get_int("mode.k", 1));
    const double eta = cf.get_double("mode.eta", 0.0);
    const cplx psi0(cf.get_double("mode.psi0_re", 1.0), cf.get_double("mode.psi0_im", 0.0));
    const cplx T0(cf.get_double("mode.T0_re", 0.0), cf.get_double("mode.T0_im", 0.0));

    auto times = cfg.schedule.times();
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream csv(cfg.out_dir + "/mode_trajectory.csv");
    csv.precision(17);
    csv << "t,phi_re,phi_im,tau_re,tau_im,abs_vx,abs_vy\n";

    for (double t : times) {
        cplx phi, tau, vx, vy;
        if (cfg.model == Model::FullEuler) {
            auto p = EulerModeParams::make(k, eta, cfg.beta, cfg.B2);
            auto st = evolve_euler_mode(p, t, psi0, T0);
            phi = st.chi;
            tau = st.mu;
            vx = st.wvx;
            vy = st.wvy;
        } else if (cfg.model == Model::NoShear) {
            DispersionParams dp{std::sqrt(cfg.beta * cfg.g), cfg.beta, DispersionModel::Boussinesq};
            auto [ps, Ts] = evolve_no_shear_mode(k, eta, dp, t, psi0, T0);
            phi = ps;
            tau = Ts;
            vx = -cplx(0.0, eta) * ps;
            vy = cplx(0.0, double(k)) * ps;
        } else if (cfg.B2 > 0.0) {
            auto st = evolve_mode({k, eta}, cfg.regime(), t, psi0, T0);
            phi = st.phi;
            tau = st.tau;
            vx = st.vx;
            vy = st.vy;
        } else {
            auto st = evolve_mode_homogeneous({k, eta}, t, psi0, T0, cfg.g);
            phi = st.phi;
            tau = st.tau;
            vx = st.vx;
            vy = st.vy;
        }
        csv << t << ',' << phi.real() << ',' << phi.imag() << ',' << tau.real() << ','
            << tau.imag() << ',' << std::abs(vx) << ',' << std::abs(vy) << '\n';
    }
    std::cout << "wrote " << cfg.out_dir << "/mode_trajectory.csv (" << times.size() << " rows)\n";
    return 0;
}

int run_field(const std::string& config_path, const std::string& out_dir, long seed, long threads,
              bool snapshots) {
    auto cfg = load_config(config_path, out_dir, seed, threads);
    auto result = run_experiment(cfg);
    if (snapshots) {
        auto times = cfg.schedule.times();
        auto fld = ingest_initial_data(cfg.grid, cfg.initial.psi_samples(cfg.grid),
                                       cfg.initial.T_samples(cfg.grid), cfg.model, cfg.beta);
        for_each_snapshot(fld, cfg.regime(), times, cfg.threads,
                          [&](std::size_t i, const SpectralSnapshot& snap) {
                              char tag[32];
                              std::snprintf(tag, sizeof tag, "t%05.1f", times[i]);
                              auto phys = to_physical(snap, snap.vx);
                              write_csv(cfg.out_dir + "/vx_" + tag + ".csv", cfg.grid, phys);
                              write_binary(cfg.out_dir + "/vx_" + tag + ".bin", cfg.grid,
                                           cfg.model, phys);
                          });
    }
    std::cout << result.report["fits"].dump(2) << '\n';
    std::cout << "report: " << cfg.out_dir << "/report.json\n";
    return 0;
}

int run_sweep(const std::string& config_path, const std::string& out_dir, long seed,
              long threads) {
    auto cf = ConfigFile::parse_file(config_path);
    auto base = load_config(config_path, out_dir, seed, threads);
    auto list = cf.get_list("sweep.B2");
    if (list.empty()) throw ConfigError("sweep: config needs a sweep.B2 list");

    json summary = json::array();
    for (const auto& item : list) {
        auto sub = ConfigFile::parse("v = " + item);
        double B2 = sub.get_double("v");
        ExperimentConfig cfg = base;
        cfg.B2 = B2;
        if (cfg.model != Model::NoShear) {
            cfg.R = 1.0;
            cfg.beta = cfg.model == Model::FullEuler ? cfg.beta : (B2 > 0.0 ? B2 : 0.0);
            cfg.g = cfg.beta > 0.0 ? B2 / cfg.beta : 1.0;
        }
        cfg.fit.log_correction = std::abs(B2 - 0.25) < 1e-12;
        char tag[32];
        std::snprintf(tag, sizeof tag, "B2_%g", B2);
        cfg.out_dir = base.out_dir + "/" + tag;
        auto result = run_experiment(cfg);
        json entry;
        entry["B2"] = B2;
        entry["fits"] = result.report["fits"];
        summary.push_back(entry);
        std::cout << "B2 = " << B2 << " done -> " << cfg.out_dir << '\n';
    }
    std::filesystem::create_directories(base.out_dir);
    std::ofstream out(base.out_dir + "/sweep_summary.json");
    out << summary.dump(2) << '\n';
    std::cout << "summary: " << base.out_dir << "/sweep_summary.json\n";
    return 0;
}

int run_dispersive(const std::string& config_path, const std::string& out_dir, long seed,
                   long threads) {
    auto cf = ConfigFile::parse_file(config_path);
    auto cfg = load_config(config_path, out_dir, seed, threads);
    if (cfg.model != Model::NoShear)
        throw ConfigError("dispersive: config must set model.type = noshear");
    const double N = std::sqrt(cfg.beta * cfg.g);
    std::filesystem::create_directories(cfg.out_dir);

    // field run: conservation + mixed-norm decay series
    ExperimentConfig run = cfg;
    if (run.norms.empty()) run.norms = {"vx_l2xlinf_pneq0"};
    auto result = run_experiment(run);

    json summary;
    summary["config"] = result.report["config"];
    summary["conservation"] = result.report["conservation"];
    summary["fits"] = result.report["fits"];

    // |I(t)| on the third-order stationary ray
    const int k = int(cf.get_int("dispersive.k", 1));
    const double n = cf.get_double("dispersive.n", 2.0 * std::abs(k));
    const double c = 2.0 * N / (3.0 * std::sqrt(3.0) * k);
    std::ofstream icsv(cfg.out_dir + "/series_osc_integral.csv");
    icsv.precision(17);
    icsv << "t,value\n";
    std::vector<double> its, ivals;
    for (double t = 100.0; t <= 10000.0 * (1.0 + 1e-12); t *= std::pow(100.0, 0.125)) {
        double v = std::abs(oscillatory_integral(k, N, t, -c * t, n));
        its.push_back(t);
        ivals.push_back(v);
        icsv << t << ',' << v << '\n';
    }
    auto ifit = fit_decay(its, ivals, {100.0, 10000.0}, false);
    summary["osc_integral_fit"] = {{"alpha", ifit.alpha}, {"r2", ifit.r2}};

    // sharpness-of-t^{-1/3} report
    const double ts[3] = {1e2, 1e3, 1e4};
    auto rep = sharpness_profile(k, N, cf.get_double("dispersive.delta", 0.2), ts);
    summary["sharpness"] = {{"limit", rep.limit},
                            {"t", rep.t},
                            {"scaled", rep.scaled},
                            {"ratio_at_1e4", rep.scaled.back() / rep.limit}};

    std::ofstream out(cfg.out_dir + "/dispersive_summary.json");
    out << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int run_validate(const std::string& suite, std::uint64_t seed, double perturb_gamma,
                 const std::string& out_dir) {
    testing::gamma_prefactor_perturbation() = perturb_gamma;
    auto rep = validation_report(suite, seed);
    testing::gamma_prefactor_perturbation() = 0.0;

    int width = 0;
    for (auto& c : rep["checks"]) width = std::max(width, int(c["name"].get<std::string>().size()));
    for (auto& c : rep["checks"]) {
        std::printf("  %-*s  %s  (measured %.3e vs %.3e)\n", width,
                    c["name"].get<std::string>().c_str(),
                    c["pass"].get<bool>() ? "PASS" : "FAIL", c["measured"].get<double>(),
                    c["threshold"].get<double>());
    }
    int failures = rep["failures"].get<int>();
    std::printf("%s: %d checks, %d failures\n", suite.c_str(), int(rep["checks"].size()),
                failures);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream out(out_dir + "/validation.json");
        out << rep.dump(2) << '\n';
    }
    return failures == 0 ? 0 : 1;
}

int run_fit(const std::string& series_path, double lo, double hi, bool log_correction) {
    std::ifstream in(series_path);
    if (!in) throw Error("fit: cannot open " + series_path);
    std::string line;
    std::getline(in, line); // header
    std::vector<double> ts, vs;
    while (std::getline(in, line)) {
        auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        ts.push_back(std::stod(line.substr(0, comma)));
        vs.push_back(std::stod(line.substr(comma + 1)));
    }
    auto fit = fit_decay(ts, vs, {lo, hi}, log_correction);
    json out = {{"alpha", fit.alpha},
                {"gamma", fit.gamma ? json(*fit.gamma) : json(nullptr)},
                {"stderr", fit.stderr_alpha},
                {"r2", fit.r2},
                {"window", {lo, hi}},
                {"points", fit.n_points}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear stratified-Couette spectral toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    long seed = -1, threads = -1;
    bool snapshots = false;
    double perturb_gamma = 0.0;
    std::string suite = "all";
    std::string series_path;
    double win_lo = 20.0, win_hi = 200.0;
    bool log_corr = false;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "experiment config file");
        if (needs_config) opt->required();
        sub->add_option("--out", out_dir, "output directory override");
        sub->add_option("--seed", seed, "seed override");
        sub->add_option("--threads", threads, "worker thread count (0 = hardware)");
    };

    auto* mode = app.add_subcommand("mode", "evolve a single Fourier mode");
    add_common(mode, true);

    auto* field = app.add_subcommand("field", "evolve a full field and record norms");
    add_common(field, true);
    field->add_flag("--snapshots", snapshots, "also write vx field snapshots");

    auto* sweep = app.add_subcommand("sweep", "run the experiment across a Richardson-number list");
    add_common(sweep, true);

    auto* disp = app.add_subcommand("dispersive", "no-shear dispersive suite");
    add_common(disp, true);

    auto* val = app.add_subcommand("validate", "run a module validation suite");
    val->add_option("suite", suite, "hyp|ode|boussinesq|euler|dispersive|field|all");
    val->add_option("--seed", seed, "seed override");
    val->add_option("--out", out_dir, "write validation.json here");
    val->add_option("--perturb-gamma", perturb_gamma, "sensitivity canary: scale gamma by (1+x)")
        ->group(""); // hidden test hook

    auto* fit = app.add_subcommand("fit", "fit a decay exponent to a CSV series");
    fit->add_option("--series", series_path, "CSV with t,value columns")->required();
    fit->add_option("--window-lo", win_lo, "fit window lower edge");
    fit->add_option("--window-hi", win_hi, "fit window upper edge");
    fit->add_flag("--log-correction", log_corr, "add the log<log<t>> regressor");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(mode)) return run_mode(config_path, out_dir, seed, threads);
        if (app.got_subcommand(field))
            return run_field(config_path, out_dir, seed, threads, snapshots);
        if (app.got_subcommand(sweep)) return run_sweep(config_path, out_dir, seed, threads);
        if (app.got_subcommand(disp)) return run_dispersive(config_path, out_dir, seed, threads);
        if (app.got_subcommand(val))
            return run_validate(suite, seed < 0 ? 1 : std::uint64_t(seed), perturb_gamma, out_dir);
        if (app.got_subcommand(fit)) return run_fit(series_path, win_lo, win_hi, log_corr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
