// Copyright 2026 The paulispec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "paulispec/experiments.hpp"

namespace ps = paulispec;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string geometry = "chain";
    std::size_t n_sites = 8;
    std::size_t lx = 3;
    std::size_t ly = 3;
    std::size_t depth = 8;
    std::size_t overlap = 1;
    double gamma = 0.0;
    std::string noise;
    long initial_site = -1;
    std::string axis = "Z";
    std::uint64_t seed = 0;
    std::string engine = "simulator";
    std::size_t realizations = 100;
    std::size_t threads = 1;
    std::string out = ".";
    std::size_t chi = 256;
    double rtn_threshold = 1e-12;
    std::size_t bins = ps::kDefaultHistogramBins;
    double u_min = ps::kDefaultHistogramUMin;
    double u_max = ps::kDefaultHistogramUMax;
    std::vector<std::size_t> depths;
    std::vector<double> gammas;
    std::vector<double> gamma_n;
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> overlaps;
    std::vector<int> ks{2};
    std::vector<std::size_t> n_p;
    // fit-kappa / threshold
    std::string input;
    std::string quantity = "mu";
    double reference = 3.0;
    double t_min = -1.0;
    double t_max = -1.0;
};

ps::ExperimentConfig make_config(const Options &o) {
    ps::ExperimentConfig c;
    c.circuit.geometry = ps::geometry_from_string(o.geometry);
    c.circuit.n_sites = o.n_sites;
    c.circuit.lx = o.lx;
    c.circuit.ly = o.ly;
    if (c.circuit.geometry == ps::Geometry::Grid) c.circuit.n_sites = o.lx * o.ly;
    c.circuit.depth = o.depth;
    c.circuit.overlap = o.overlap;
    c.circuit.gamma = o.gamma;
    if (!o.noise.empty()) c.circuit.noise = ps::noise_placement_from_string(o.noise);
    if (o.initial_site >= 0) c.circuit.initial_site = static_cast<std::size_t>(o.initial_site);
    if (o.axis.size() != 1) throw std::invalid_argument("axis must be one of X, Y, Z");
    c.circuit.initial_axis = ps::axis_from_char(o.axis[0]);
    c.circuit.master_seed = o.seed;
    c.sweep.depths = o.depths;
    c.sweep.gammas = o.gammas;
    c.sweep.gamma_n = o.gamma_n;
    c.sweep.sizes = o.sizes;
    c.sweep.overlaps = o.overlaps;
    c.sweep.ks = o.ks;
    c.sweep.n_p = o.n_p;
    c.n_realizations = o.realizations;
    c.engine = ps::engine_from_string(o.engine);
    c.threads = o.threads;
    c.out_dir = o.out;
    c.chi_mps = o.chi;
    c.rtn_threshold = o.rtn_threshold;
    c.hist_bins = o.bins;
    c.hist_u_min = o.u_min;
    c.hist_u_max = o.u_max;
    return c;
}

std::vector<std::vector<std::string>> read_csv(const std::string &path, std::vector<std::string> &header) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    auto split = [](const std::string &line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("'" + path + "' is empty");
    header = split(line);
    std::vector<std::vector<std::string>> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        rows.push_back(split(line));
        if (rows.back().size() != header.size()) throw std::runtime_error("ragged row in '" + path + "'");
    }
    return rows;
}

std::size_t column(const std::vector<std::string> &header, const std::string &name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw std::runtime_error("missing column '" + name + "'");
}

void run_fit_kappa(const Options &o, const fs::path &out) {
    std::vector<std::string> header;
    const auto rows = read_csv(o.input, header);
    const std::size_t cn = column(header, "N"), ct = column(header, "t"), cg = column(header, "gamma"),
                      ck = column(header, "k"), cq = column(header, "quantity"), cv = column(header, "value"),
                      ce = column(header, "stderr");
    std::map<std::tuple<std::size_t, double, int>, std::vector<ps::SeriesPoint>> groups;
    for (const auto &r : rows) {
        if (r[cq] != o.quantity) continue;
        groups[{std::stoul(r[cn]), std::stod(r[cg]), std::stoi(r[ck])}].push_back(
            {std::stod(r[ct]), std::stod(r[cv]), std::stod(r[ce])});
    }
    std::ofstream f(out / "kappa.csv");
    f.precision(17);
    f << "N,gamma,gammaN,k,kappa,kappa_stderr,t_min,t_max,r_squared,n_points\n";
    for (const auto &[key, series] : groups) {
        const auto [n, g, k] = key;
        const double nn = static_cast<double>(n);
        const double lo = o.t_min >= 0 ? o.t_min : 0.5 * nn;
        const double hi = o.t_max >= 0 ? o.t_max : 2.0 * nn;
        try {
            const ps::FitResult fit = ps::fit_kappa(series, o.reference, lo, hi);
            f << n << ',' << g << ',' << g * nn << ',' << k << ',' << fit.kappa << ',' << fit.kappa_stderr << ','
              << fit.t_min << ',' << fit.t_max << ',' << fit.r_squared << ',' << fit.n_points << '\n';
        } catch (const std::runtime_error &e) {
            std::cerr << "N=" << n << " gamma=" << g << ": " << e.what() << '\n';
        }
    }
}

void run_threshold(const Options &o, const fs::path &out) {
    std::vector<std::string> header;
    const auto rows = read_csv(o.input, header);
    const std::size_t cx = column(header, "gammaN"), cv = column(header, "kappa"),
                      ce = column(header, "kappa_stderr");
    std::vector<ps::SeriesPoint> series;
    for (const auto &r : rows) series.push_back({std::stod(r[cx]), std::stod(r[cv]), std::stod(r[ce])});
    const ps::ThresholdResult res = ps::locate_threshold(series);
    nlohmann::json doc = {{"gamma_c_N", res.value}, {"stderr", res.std_error}, {"sign_changes", res.sign_changes}};
    std::ofstream(out / "threshold.json") << doc.dump(2) << '\n';
    std::cout << doc.dump() << '\n';
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Pauli spectrum ensembles of noisy random circuits"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Configuration file (TOML/INI key = value)");
    app.allow_config_extras(CLI::config_extras_mode::error);

    Options o;
    app.add_option("--geometry", o.geometry, "chain, grid or rmpu")->capture_default_str();
    app.add_option("--N", o.n_sites, "Number of sites (chain, rmpu)")->capture_default_str();
    app.add_option("--lx", o.lx, "Grid columns")->capture_default_str();
    app.add_option("--ly", o.ly, "Grid rows")->capture_default_str();
    app.add_option("--depth", o.depth, "Brick layers")->capture_default_str();
    app.add_option("--r", o.overlap, "RMPU overlap")->capture_default_str();
    app.add_option("--gamma", o.gamma, "Depolarizing rate")->capture_default_str();
    app.add_option("--noise", o.noise, "per_qubit_per_layer, per_gate_support or none");
    app.add_option("--initial-site", o.initial_site, "Site of the initial Pauli");
    app.add_option("--axis", o.axis, "Initial Pauli axis")->capture_default_str();
    app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
    app.add_option("--engine", o.engine, "simulator, rtn, rmpu_exact or rmpu_asymptotic")->capture_default_str();
    app.add_option("--realizations", o.realizations, "Circuit realizations")->capture_default_str();
    app.add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--out", o.out, "Output directory")->capture_default_str();
    app.add_option("--chi", o.chi, "RTN bond dimension")->capture_default_str();
    app.add_option("--rtn-threshold", o.rtn_threshold, "RTN relative singular value cutoff")->capture_default_str();
    app.add_option("--bins", o.bins, "Histogram bins")->capture_default_str();
    app.add_option("--u-min", o.u_min, "Histogram lower edge")->capture_default_str();
    app.add_option("--u-max", o.u_max, "Histogram upper edge")->capture_default_str();
    app.add_option("--depths", o.depths, "Depth sweep")->delimiter(',');
    app.add_option("--gammas", o.gammas, "Rate sweep")->delimiter(',');
    app.add_option("--gamma-n", o.gamma_n, "Error-per-cycle sweep (rate = value / N)")->delimiter(',');
    app.add_option("--sizes", o.sizes, "N sweep")->delimiter(',');
    app.add_option("--overlaps", o.overlaps, "RMPU overlap sweep")->delimiter(',');
    app.add_option("--ks", o.ks, "Moment orders")->delimiter(',');
    app.add_option("--np", o.n_p, "Truncation sizes N_P")->delimiter(',');
    app.add_option("--input", o.input, "Input CSV for fit-kappa and threshold");
    app.add_option("--quantity", o.quantity, "Moment quantity fitted by fit-kappa")->capture_default_str();
    app.add_option("--reference", o.reference, "Reference value for fit-kappa")->capture_default_str();
    app.add_option("--t-min", o.t_min, "Fit window start (default N/2)");
    app.add_option("--t-max", o.t_max, "Fit window end (default 2N)");

    auto *moments = app.add_subcommand("moments", "Ensemble moments over a sweep");
    auto *hist = app.add_subcommand("spectrum-hist", "Pauli-spectrum histograms");
    auto *rmpu_exact = app.add_subcommand("rmpu-exact", "Exact RMPU moments");
    auto *rmpu_asym = app.add_subcommand("rmpu-asymptotic", "Asymptotic RMPU moments");
    auto *rtn = app.add_subcommand("rtn", "Replica tensor network moments for brickwork chains");
    auto *mse = app.add_subcommand("truncate-mse", "Truncation MSE versus N_P");
    auto *fit = app.add_subcommand("fit-kappa", "Fit decay rates to a moments CSV");
    auto *thr = app.add_subcommand("threshold", "Locate the sign change of kappa");
    auto *self = app.add_subcommand("selftest", "Oracle-equivalence suite");

    CLI11_PARSE(app, argc, argv);

    std::string command;
    for (int i = 0; i < argc; ++i) command += (i ? " " : "") + std::string(argv[i]);

    try {
        const fs::path out(o.out);
        fs::create_directories(out);
        const auto start = std::chrono::steady_clock::now();
        auto elapsed = [&] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        };
        if (*self) {
            bool ok = true;
            for (const auto &c : ps::run_selftest(o.seed, o.realizations, o.threads)) {
                std::printf("%s  %s  (%s)\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
                ok = ok && c.passed;
            }
            return ok ? 0 : 1;
        }
        if (*fit || *thr) {
            if (o.input.empty()) throw std::invalid_argument("--input is required");
            if (*fit) run_fit_kappa(o, out);
            else run_threshold(o, out);
            return 0;
        }
        ps::ExperimentConfig config = make_config(o);
        if (*rmpu_exact || *rmpu_asym) {
            config.circuit.geometry = ps::Geometry::Rmpu;
            config.engine = *rmpu_exact ? ps::Engine::RmpuExact : ps::Engine::RmpuAsymptotic;
        }
        if (*rtn) {
            config.circuit.geometry = ps::Geometry::Chain;
            config.engine = ps::Engine::Rtn;
        }
        std::string stem;
        if (*moments || *rmpu_exact || *rmpu_asym || *rtn) {
            stem = "moments";
            ps::write_moments_csv((out / "moments.csv").string(), config.engine, ps::run_ensemble(config));
        } else if (*hist) {
            stem = "histogram";
            ps::write_histogram_csv((out / "histogram.csv").string(), ps::run_histograms(config));
        } else if (*mse) {
            stem = "mse";
            ps::write_mse_csv((out / "mse.csv").string(), ps::run_truncation(config));
        }
        ps::write_sidecar((out / (stem + ".json")).string(), config, command, elapsed());
        std::cout << "wrote " << (out / (stem + ".csv")).string() << '\n';
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
