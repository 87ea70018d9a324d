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

#include "paulispec/circuits.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paulispec {

std::string to_string(Geometry g) {
    switch (g) {
        case Geometry::Chain:
            return "chain";
        case Geometry::Grid:
            return "grid";
        case Geometry::Rmpu:
            break;
    }
    return "rmpu";
}

std::string to_string(NoisePlacement p) {
    switch (p) {
        case NoisePlacement::PerQubitPerLayer:
            return "per_qubit_per_layer";
        case NoisePlacement::PerGateSupport:
            return "per_gate_support";
        case NoisePlacement::None:
            break;
    }
    return "none";
}

Geometry geometry_from_string(const std::string &s) {
    if (s == "chain") return Geometry::Chain;
    if (s == "grid") return Geometry::Grid;
    if (s == "rmpu") return Geometry::Rmpu;
    throw std::invalid_argument("unknown geometry '" + s + "' (expected chain, grid or rmpu)");
}

NoisePlacement noise_placement_from_string(const std::string &s) {
    if (s == "per_qubit_per_layer") return NoisePlacement::PerQubitPerLayer;
    if (s == "per_gate_support") return NoisePlacement::PerGateSupport;
    if (s == "none") return NoisePlacement::None;
    throw std::invalid_argument("unknown noise placement '" + s + "'");
}

CircuitSpec CircuitSpec::chain(std::size_t n, std::size_t depth, double gamma) {
    CircuitSpec s;
    s.geometry = Geometry::Chain;
    s.n_sites = n;
    s.depth = depth;
    s.gamma = gamma;
    return s;
}

CircuitSpec CircuitSpec::grid(std::size_t lx, std::size_t ly, std::size_t depth, double gamma) {
    CircuitSpec s;
    s.geometry = Geometry::Grid;
    s.lx = lx;
    s.ly = ly;
    s.n_sites = lx * ly;
    s.depth = depth;
    s.gamma = gamma;
    return s;
}

CircuitSpec CircuitSpec::rmpu(std::size_t n, std::size_t r, double gamma) {
    CircuitSpec s;
    s.geometry = Geometry::Rmpu;
    s.n_sites = n;
    s.overlap = r;
    s.gamma = gamma;
    return s;
}

std::size_t CircuitSpec::sites() const { return geometry == Geometry::Grid ? lx * ly : n_sites; }

std::size_t CircuitSpec::num_layers() const {
    return geometry == Geometry::Rmpu ? n_sites - overlap : depth;
}

NoisePlacement CircuitSpec::resolved_noise() const {
    if (noise) {
        return *noise;
    }
    return geometry == Geometry::Rmpu ? NoisePlacement::PerGateSupport : NoisePlacement::PerQubitPerLayer;
}

std::size_t CircuitSpec::resolved_initial_site() const {
    if (initial_site) {
        return *initial_site;
    }
    switch (geometry) {
        case Geometry::Chain:
            return n_sites / 2;
        case Geometry::Grid:
            return (ly / 2) * lx + lx / 2;
        case Geometry::Rmpu:
            break;
    }
    return 0;
}

void CircuitSpec::validate() const {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("gamma must lie in [0, 1]");
    }
    switch (geometry) {
        case Geometry::Chain:
            if (n_sites < 1) throw std::invalid_argument("chain needs N >= 1");
            if (depth < 1) throw std::invalid_argument("chain needs depth >= 1");
            break;
        case Geometry::Grid:
            if (lx < 1 || ly < 1) throw std::invalid_argument("grid needs Lx, Ly >= 1");
            if (n_sites != 0 && n_sites != lx * ly) throw std::invalid_argument("grid N must equal Lx * Ly");
            if (depth < 1) throw std::invalid_argument("grid needs depth >= 1");
            break;
        case Geometry::Rmpu:
            if (n_sites < 2) throw std::invalid_argument("rmpu needs N >= 2");
            if (overlap < 1 || overlap > n_sites - 1) throw std::invalid_argument("rmpu needs 1 <= r <= N - 1");
            break;
    }
    if (resolved_initial_site() >= sites()) {
        throw std::invalid_argument("initial site out of range");
    }
}

namespace {

std::uint64_t splitmix64(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t realization, std::uint64_t gate_counter) {
    std::uint64_t state = master_seed;
    std::uint64_t h = splitmix64(state);
    state = h ^ (realization * 0xD6E8FEB86659FD93ULL);
    h = splitmix64(state);
    state = h ^ (gate_counter * 0xA0761D6478BD642FULL);
    return splitmix64(state);
}

RandomStream gate_stream(std::uint64_t master_seed, std::uint64_t realization, std::uint64_t gate_counter) {
    return RandomStream(derive_stream_seed(master_seed, realization, gate_counter));
}

std::vector<cplx> sample_haar_matrix(std::size_t q, RandomStream &stream) {
    if (q < 2) {
        throw std::invalid_argument("Haar dimension must be >= 2");
    }
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd z(q, q);
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
        for (Eigen::Index j = 0; j < z.cols(); ++j) {
            const double re = normal(stream);
            const double im = normal(stream);
            z(i, j) = cplx(re, im);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd qmat = qr.householderQ() * Eigen::MatrixXcd::Identity(q, q);
    const Eigen::MatrixXcd &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < qmat.cols(); ++j) {
        const cplx d = r(j, j);
        const double mag = std::abs(d);
        const cplx phase = mag > 0.0 ? d / mag : cplx(1.0, 0.0);
        qmat.col(j) *= phase;
    }
    std::vector<cplx> out(q * q);
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            out[i * q + j] = qmat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

GateMatrix sample_haar_unitary(std::size_t q, RandomStream &stream) {
    if (q < 2 || (q & (q - 1)) != 0) {
        throw std::invalid_argument("gate dimension must be a power of two >= 2");
    }
    GateMatrix g;
    for (std::size_t b = 0; (std::size_t{1} << b) < q; ++b) {
        g.support.push_back(b);
    }
    g.matrix = sample_haar_matrix(q, stream);
    return g;
}

std::vector<Support> layer_supports(const CircuitSpec &spec, std::size_t layer) {
    if (layer >= spec.num_layers()) {
        throw std::out_of_range("layer index out of range");
    }
    std::vector<Support> out;
    switch (spec.geometry) {
        case Geometry::Chain: {
            for (std::size_t a = layer % 2; a + 1 < spec.n_sites; a += 2) {
                out.push_back({a, a + 1});
            }
            break;
        }
        case Geometry::Grid: {
            const std::size_t phase = layer % 4;
            const std::size_t parity = phase % 2;
            if (phase < 2) {
                for (std::size_t row = 0; row < spec.ly; ++row) {
                    for (std::size_t c = parity; c + 1 < spec.lx; c += 2) {
                        out.push_back({row * spec.lx + c, row * spec.lx + c + 1});
                    }
                }
            } else {
                for (std::size_t col = 0; col < spec.lx; ++col) {
                    for (std::size_t r = parity; r + 1 < spec.ly; r += 2) {
                        out.push_back({r * spec.lx + col, (r + 1) * spec.lx + col});
                    }
                }
            }
            break;
        }
        case Geometry::Rmpu: {
            Support s;
            for (std::size_t a = layer; a <= layer + spec.overlap; ++a) {
                s.push_back(a);
            }
            out.push_back(std::move(s));
            break;
        }
    }
    return out;
}

double circuit_fidelity(const CircuitSpec &spec, std::size_t layers) {
    const double keep = 1.0 - spec.gamma;
    switch (spec.resolved_noise()) {
        case NoisePlacement::None:
            return 1.0;
        case NoisePlacement::PerQubitPerLayer:
            return std::pow(keep, static_cast<double>(spec.sites() * layers));
        case NoisePlacement::PerGateSupport: {
            std::size_t gates = 0;
            for (std::size_t l = 0; l < layers; ++l) {
                gates += layer_supports(spec, l).size();
            }
            return std::pow(keep, static_cast<double>(gates));
        }
    }
    return 1.0;
}

OperatorState run_circuit(const CircuitSpec &spec, std::uint64_t realization) {
    return run_circuit(spec, realization, LayerObserver{});
}

OperatorState run_circuit(const CircuitSpec &spec, std::uint64_t realization, const LayerObserver &observer) {
    spec.validate();
    const std::size_t n = spec.sites();
    OperatorState op = init_local_pauli(n, spec.resolved_initial_site(), spec.initial_axis);
    const NoisePlacement placement = spec.resolved_noise();
    const bool noisy = spec.gamma > 0.0 && placement != NoisePlacement::None;
    if (observer) {
        observer(0, op);
    }
    std::uint64_t gate_counter = 0;
    std::vector<bool> touched(n);
    // Sites where the operator may differ from the identity.
    std::vector<bool> active(n, false);
    active[spec.resolved_initial_site()] = true;
    for (std::size_t layer = 0; layer < spec.num_layers(); ++layer) {
        std::fill(touched.begin(), touched.end(), false);
        for (const Support &support : layer_supports(spec, layer)) {
            const std::uint64_t counter = gate_counter++;
            for (auto s : support) {
                touched[s] = true;
            }
            if (std::none_of(support.begin(), support.end(), [&](std::size_t s) { return active[s]; })) {
                continue;
            }
            for (auto s : support) {
                active[s] = true;
            }
            auto stream = gate_stream(spec.master_seed, realization, counter);
            GateMatrix gate;
            gate.support = support;
            gate.matrix = sample_haar_matrix(std::size_t{1} << support.size(), stream);
            apply_gate(op, gate);
            if (noisy) {
                if (placement == NoisePlacement::PerGateSupport) {
                    apply_depolarizing_joint(op, spec.gamma, support);
                } else {
                    apply_depolarizing(op, spec.gamma, support);
                }
            }
        }
        if (noisy && placement == NoisePlacement::PerQubitPerLayer) {
            std::vector<std::size_t> idle;
            for (std::size_t s = 0; s < n; ++s) {
                if (!touched[s] && active[s]) {
                    idle.push_back(s);
                }
            }
            apply_depolarizing(op, spec.gamma, idle);
        }
        if (observer) {
            observer(layer + 1, op);
        }
    }
    return op;
}

std::vector<bool> lightcone_sites(const CircuitSpec &spec, std::size_t layers) {
    spec.validate();
    std::vector<bool> cone(spec.sites(), false);
    cone[spec.resolved_initial_site()] = true;
    for (std::size_t layer = 0; layer < layers && layer < spec.num_layers(); ++layer) {
        for (const Support &support : layer_supports(spec, layer)) {
            bool hit = false;
            for (auto s : support) {
                hit = hit || cone[s];
            }
            if (hit) {
                for (auto s : support) {
                    cone[s] = true;
                }
            }
        }
    }
    return cone;
}

}  // namespace paulispec
