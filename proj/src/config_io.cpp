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

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "paulispec/experiments.hpp"
#include "paulispec/parallel.hpp"
#include "paulispec/rmpu_analytic.hpp"
#include "paulispec/rtn.hpp"
#include "paulispec/stats.hpp"
#include "paulispec/weingarten.hpp"

#ifndef PAULISPEC_VERSION
#define PAULISPEC_VERSION "unknown"
#endif

namespace paulispec {

namespace {

std::string num(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::ofstream open_out(const std::string &path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    return f;
}

}  // namespace

std::string code_version() { return PAULISPEC_VERSION; }

void write_moments_csv(const std::string &path, Engine engine, const std::vector<MomentEstimate> &rows) {
    auto f = open_out(path);
    f << kMomentsHeader << '\n';
    for (const MomentEstimate &e : rows) {
        const CircuitSpec &s = e.meta;
        f << to_string(engine) << ',' << to_string(s.geometry) << ',' << s.sites() << ','
          << (s.geometry == Geometry::Rmpu ? s.overlap : 0) << ',' << s.num_layers() << ',' << num(s.gamma) << ','
          << to_string(s.resolved_noise()) << ',' << e.k << ',' << to_string(e.quantity) << ',' << num(e.value)
          << ',' << num(e.std_error) << ',' << e.n_samples << ',' << s.master_seed << '\n';
    }
}

void write_histogram_csv(const std::string &path, const std::vector<HistogramRecord> &rows) {
    auto f = open_out(path);
    f << kHistogramHeader << '\n';
    for (const HistogramRecord &r : rows) {
        const SpectrumHistogram &h = r.histogram;
        for (std::size_t b = 0; b < h.n_bins(); ++b) {
            f << r.n_sites << ',' << r.depth << ',' << num(r.gamma) << ',' << num(h.bin_lo[b]) << ','
              << num(h.bin_hi[b]) << ',' << num(h.density[b]) << ',' << num(h.zero_mass) << ',' << r.n_samples
              << ',' << r.seed << '\n';
        }
    }
}

void write_mse_csv(const std::string &path, const std::vector<MseRecord> &rows) {
    auto f = open_out(path);
    f << kMseHeader << '\n';
    for (const MseRecord &r : rows) {
        f << r.n_sites << ',' << r.depth << ',' << num(r.gamma) << ',' << r.point.n_p << ',' << num(r.point.mse)
          << ',' << num(r.point.std_error) << ',' << r.point.n_samples << ',' << r.seed << '\n';
    }
}

std::string sidecar_json(const ExperimentConfig &config, const std::string &command, double wall_seconds) {
    using nlohmann::json;
    const CircuitSpec &c = config.circuit;
    json circuit = {
        {"geometry", to_string(c.geometry)},
        {"N", c.sites()},
        {"lx", c.lx},
        {"ly", c.ly},
        {"depth", c.depth},
        {"r", c.overlap},
        {"gamma", c.gamma},
        {"noise_placement", to_string(c.resolved_noise())},
        {"initial_site", c.resolved_initial_site()},
        {"initial_axis", std::string(1, axis_char(c.initial_axis))},
        {"seed", c.master_seed},
    };
    json sweep = {
        {"depths", config.sweep.depths}, {"gammas", config.sweep.gammas},     {"gamma_n", config.sweep.gamma_n},
        {"sizes", config.sweep.sizes},   {"overlaps", config.sweep.overlaps}, {"ks", config.sweep.ks},
        {"n_p", config.sweep.n_p},
    };
    json doc = {
        {"version", code_version()},
        {"command", command},
        {"engine", to_string(config.engine)},
        {"realizations", config.n_realizations},
        {"threads", config.threads},
        {"chi_mps", config.chi_mps},
        {"rtn_threshold", config.rtn_threshold},
        {"histogram", {{"bins", config.hist_bins}, {"u_min", config.hist_u_min}, {"u_max", config.hist_u_max}}},
        {"circuit", circuit},
        {"sweep", sweep},
        {"wall_seconds", wall_seconds},
    };
    return doc.dump(2);
}

void write_sidecar(const std::string &path, const ExperimentConfig &config, const std::string &command,
                   double wall_seconds) {
    auto f = open_out(path);
    f << sidecar_json(config, command, wall_seconds) << '\n';
}

namespace {

SelftestCase check(std::string name, double got, double want, double tol) {
    SelftestCase c;
    c.name = std::move(name);
    c.passed = std::abs(got - want) <= tol;
    std::ostringstream os;
    os.precision(10);
    os << "got " << got << " expected " << want << " tol " << tol;
    c.detail = os.str();
    return c;
}

RunningStats simulator_nu(const CircuitSpec &spec, int k, std::size_t realizations, std::size_t threads) {
    std::vector<double> v(realizations);
    parallel_for(realizations, threads,
                 [&](std::size_t r) { v[r] = moment_nu(run_circuit(spec, r).pauli_coefficients(), k); });
    RunningStats s;
    for (double x : v) s.add(x);
    return s;
}

}  // namespace

std::vector<SelftestCase> run_selftest(std::uint64_t seed, std::size_t realizations, std::size_t threads) {
    if (realizations < 2) throw std::invalid_argument("selftest needs at least 2 realizations");
    std::vector<SelftestCase> out;

    const auto wg = weingarten_matrix(2, 4.0);
    out.push_back(check("weingarten n=2 q=4 identity", wg.entries(0, 0), 1.0 / 15.0, 1e-12));
    out.push_back(check("weingarten n=2 q=4 swap", wg.entries(0, 1), -1.0 / 60.0, 1e-12));

    {
        const auto g = gram_matrix(3, 4.0);
        const auto w = weingarten_matrix(3, 4.0);
        const Eigen::MatrixXd r = g.entries * w.entries * g.entries - g.entries;
        out.push_back(check("G Wg G = G at n=3 q=4", r.cwiseAbs().maxCoeff(), 0.0, 1e-10));
    }

    {
        RmpuParams p;
        p.n_sites = 2;
        p.overlap = 1;
        p.gamma = 0.1;
        const double rmpu = rmpu_moment_exact(p);
        const double rtn = contract_brickwork(2, 1, 2, 2, 0.1).value;
        out.push_back(check("replica contraction vs transfer matrix, one gate", rtn, rmpu, 1e-10 * rmpu));
    }

    {
        RmpuParams p;
        p.n_sites = 4;
        p.overlap = 1;
        p.gamma = 0.05;
        CircuitSpec spec = CircuitSpec::rmpu(4, 1, 0.05);
        spec.master_seed = seed;
        const RunningStats s = simulator_nu(spec, 2, realizations, threads);
        out.push_back(check("transfer matrix vs simulator, rmpu N=4 r=1", s.mean(), rmpu_moment_exact(p),
                            4.0 * s.stderr_of_mean()));
    }

    {
        CircuitSpec spec = CircuitSpec::chain(6, 3, 0.02);
        spec.noise = NoisePlacement::PerGateSupport;
        spec.master_seed = seed;
        const RunningStats s = simulator_nu(spec, 2, realizations, threads);
        const double rtn = contract_brickwork(6, 3, 2, 2, 0.02).value;
        out.push_back(check("replica contraction vs simulator, chain N=6 t=3", s.mean(), rtn,
                            4.0 * s.stderr_of_mean()));
    }

    {
        const double gamma = 0.03;
        CircuitSpec spec = CircuitSpec::chain(6, 4, gamma);
        spec.noise = NoisePlacement::PerGateSupport;
        const double f = circuit_fidelity(spec, 4);
        const double rtn = contract_brickwork(6, 4, 1, 2, gamma).value;
        SelftestCase c = check("replica contraction k=1 stays within the fidelity envelope", rtn, 0.5 * (1.0 + f * f),
                               0.5 * (1.0 - f * f) + 1e-12);
        out.push_back(c);
    }
    return out;
}

}  // namespace paulispec
