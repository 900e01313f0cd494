#pragma once

#include "strato/common.hpp"
#include "strato/field.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace strato {

/// Flat key-value config with [section] headers and # comments. Keys are
/// addressed as "section.key".
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("config: cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse(ss.str());
    }

    static ConfigFile parse(const std::string& text) {
        ConfigFile cfg;
        std::string section;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigError("config: bad section header at line " +
                                      std::to_string(lineno));
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError("config: empty key at line " + std::to_string(lineno));
            cfg.values_[section.empty() ? key : section + "." + key] = value;
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("config: missing key " + key);
        return it->second;
    }
    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key) const { return to_double(key, get_string(key)); }
    double get_double(const std::string& key, double fallback) const {
        return has(key) ? get_double(key) : fallback;
    }

    long get_int(const std::string& key) const {
        try {
            return std::stol(get_string(key));
        } catch (const std::exception&) {
            throw ConfigError("config: key " + key + " is not an integer");
        }
    }
    long get_int(const std::string& key, long fallback) const {
        return has(key) ? get_int(key) : fallback;
    }

    bool get_bool(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        std::string v = get_string(key);
        if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
        if (v == "false" || v == "0" || v == "no" || v == "off") return false;
        throw ConfigError("config: key " + key + " is not a boolean");
    }

    std::vector<std::string> get_list(const std::string& key) const {
        std::vector<std::string> out;
        if (!has(key)) return out;
        std::istringstream in(get_string(key));
        std::string item;
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (!item.empty()) out.push_back(item);
        }
        return out;
    }

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    static std::string trim(const std::string& s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    }

    static double to_double(const std::string& key, const std::string& v) {
        // accept plain numbers and the p/q fraction shorthand
        auto slash = v.find('/');
        try {
            if (slash != std::string::npos) {
                double num = std::stod(v.substr(0, slash));
                double den = std::stod(v.substr(slash + 1));
                if (den == 0.0) throw ConfigError("config: zero denominator in " + key);
                return num / den;
            }
            return std::stod(v);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config: key " + key + " is not a number");
        }
    }

    std::map<std::string, std::string> values_;
};

struct ScheduleSpec {
    double t_min = 1.0;
    double t_max = 200.0;
    int points = 33;
    bool log_spaced = true;
    bool include_zero = true;

    std::vector<double> times() const {
        if (points < 2 || t_max <= t_min || t_min <= 0.0)
            throw ConfigError("schedule: need t_max > t_min > 0 and at least 2 points");
        std::vector<double> ts;
        if (include_zero) ts.push_back(0.0);
        for (int i = 0; i < points; ++i) {
            double f = double(i) / (points - 1);
            ts.push_back(log_spaced ? t_min * std::pow(t_max / t_min, f)
                                    : t_min + (t_max - t_min) * f);
        }
        return ts;
    }
};

struct InitialDataSpec {
    enum class Recipe { GaussianPacket, File };
    Recipe recipe = Recipe::GaussianPacket;
    double amp_psi = 1.0;
    double amp_T = 0.5;
    double sigma_y = 1.0;
    // packet centers; off-center packets give the modes eta-dependent
    // phases, so norms average over the supercritical oscillation instead
    // of sampling coherent zeros
    double y0_psi = 3.0;
    double y0_T = -2.0;
    int kx = 1;
    std::string path; // File recipe: binary field with psi0; T0 companion path
    std::string path_T;

    PhysicalArray psi_samples(const GridSpec& g) const {
        PhysicalArray a(g.size());
        for (std::size_t j = 0; j < g.Ny; ++j)
            for (std::size_t i = 0; i < g.Nx; ++i) {
                double dy = g.y(j) - y0_psi;
                a[j * g.Nx + i] = amp_psi * std::sin(kx * g.x(i)) *
                                  std::exp(-0.5 * dy * dy / (sigma_y * sigma_y));
            }
        return a;
    }
    PhysicalArray T_samples(const GridSpec& g) const {
        PhysicalArray a(g.size());
        for (std::size_t j = 0; j < g.Ny; ++j)
            for (std::size_t i = 0; i < g.Nx; ++i) {
                double dy = g.y(j) - y0_T;
                a[j * g.Nx + i] = amp_T * std::cos(kx * g.x(i)) *
                                  std::exp(-0.5 * dy * dy / (sigma_y * sigma_y));
            }
        return a;
    }
};

struct FitSpec {
    double window_lo = 20.0;
    double window_hi = 200.0;
    bool log_correction = false;
};

struct ExperimentConfig {
    Model model = Model::Boussinesq;
    double R = 1.0;
    double beta = 0.0;
    double g = 1.0;
    double B2 = 0.1875;
    bool weighted_noshear = false; // evolve e^{-beta y/2}-weighted no-shear fields
    GridSpec grid{32, 512, 16.0};
    InitialDataSpec initial;
    ScheduleSpec schedule;
    std::vector<std::string> norms{"vx_l2_pneq0", "vy_l2", "density_l2_pneq0"};
    FitSpec fit;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    unsigned threads = 0;

    RegimeParams regime() const {
        if (model == Model::NoShear || R == 0.0)
            return RegimeParams{0.0, beta, g, 0.0, 0.0, Regime::NoShear};
        RegimeParams rp = RegimeParams::from_physical(R, beta, g);
        return rp;
    }

    void check() const {
        if (model != Model::NoShear && R != 0.0) {
            double implied = beta * g / (R * R);
            if (std::abs(implied - B2) > 1e-12 * std::max(1.0, std::abs(B2)))
                throw ConfigError("config: B2 inconsistent with (R, beta, g)");
        }
        auto ts = schedule.times();
        for (std::size_t i = 1; i < ts.size(); ++i)
            if (ts[i] <= ts[i - 1]) throw ConfigError("config: schedule must ascend");
        if (fit.window_lo < 0.0 || fit.window_hi > schedule.t_max + 1e-9 ||
            fit.window_lo >= fit.window_hi)
            throw ConfigError("config: fit window must sit inside the schedule");
    }

    static ExperimentConfig from(const ConfigFile& c) {
        ExperimentConfig e;
        std::string model = c.get_string("model.type", "boussinesq");
        if (model == "boussinesq") e.model = Model::Boussinesq;
        else if (model == "euler") e.model = Model::FullEuler;
        else if (model == "noshear") e.model = Model::NoShear;
        else throw ConfigError("config: unknown model.type " + model);

        e.R = c.get_double("model.R", e.model == Model::NoShear ? 0.0 : 1.0);
        e.weighted_noshear = c.get_bool("model.weighted", false);
        if (c.has("model.B2") && !c.has("model.beta")) {
            e.B2 = c.get_double("model.B2");
            e.beta = e.B2 > 0.0 ? e.B2 : 0.0; // R = 1 normalization
            e.g = e.B2 > 0.0 ? 1.0 : c.get_double("model.g", 1.0);
        } else {
            e.beta = c.get_double("model.beta", 0.0);
            e.g = c.get_double("model.g", 1.0);
            e.B2 = c.has("model.B2") ? c.get_double("model.B2")
                                     : (e.R != 0.0 ? e.beta * e.g / (e.R * e.R) : 0.0);
        }

        e.grid = GridSpec(std::size_t(c.get_int("grid.nx", 32)),
                          std::size_t(c.get_int("grid.ny", 512)), c.get_double("grid.ly", 16.0));

        std::string recipe = c.get_string("initial.recipe", "gaussian_packet");
        if (recipe == "gaussian_packet") {
            e.initial.recipe = InitialDataSpec::Recipe::GaussianPacket;
            e.initial.amp_psi = c.get_double("initial.amp_psi", 1.0);
            e.initial.amp_T = c.get_double("initial.amp_T", 0.5);
            e.initial.sigma_y = c.get_double("initial.sigma_y", 1.0);
            e.initial.y0_psi = c.get_double("initial.y0_psi", 3.0);
            e.initial.y0_T = c.get_double("initial.y0_T", -2.0);
            e.initial.kx = int(c.get_int("initial.kx", 1));
        } else if (recipe == "file") {
            e.initial.recipe = InitialDataSpec::Recipe::File;
            e.initial.path = c.get_string("initial.psi_file");
            e.initial.path_T = c.get_string("initial.T_file");
        } else {
            throw ConfigError("config: unknown initial.recipe " + recipe);
        }

        e.schedule.t_min = c.get_double("schedule.t_min", 1.0);
        e.schedule.t_max = c.get_double("schedule.t_max", 200.0);
        e.schedule.points = int(c.get_int("schedule.points", 33));
        e.schedule.log_spaced = c.get_string("schedule.spacing", "log") == "log";
        e.schedule.include_zero = c.get_bool("schedule.include_zero", true);

        if (c.has("norms.record")) e.norms = c.get_list("norms.record");

        e.fit.window_lo = c.get_double("fit.window_lo", e.schedule.t_max / 10.0);
        e.fit.window_hi = c.get_double("fit.window_hi", e.schedule.t_max);
        e.fit.log_correction = c.get_bool("fit.log_correction", false);

        e.out_dir = c.get_string("output.dir", "out");
        e.seed = std::uint64_t(c.get_int("output.seed", 1));
        e.threads = unsigned(c.get_int("output.threads", 0));
        e.check();
        return e;
    }
};

} // namespace strato
