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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "paulispec/operator_sim.hpp"

namespace paulispec {

enum class Geometry { Chain, Grid, Rmpu };
enum class NoisePlacement { PerQubitPerLayer, PerGateSupport, None };

std::string to_string(Geometry g);
std::string to_string(NoisePlacement p);
Geometry geometry_from_string(const std::string &s);
NoisePlacement noise_placement_from_string(const std::string &s);

/// Sites of one gate, ordered; the first site is the least significant local bit.
using Support = std::vector<std::size_t>;

struct CircuitSpec {
    Geometry geometry = Geometry::Chain;
    std::size_t n_sites = 0;  // chain and rmpu; for grid this is lx * ly
    std::size_t lx = 0;       // grid columns
    std::size_t ly = 0;       // grid rows
    std::size_t depth = 1;    // brick layers (chain, grid); ignored for rmpu
    std::size_t overlap = 1;  // r for rmpu: gates act on r + 1 sites
    double gamma = 0.0;
    std::optional<NoisePlacement> noise;     // default depends on geometry
    std::optional<std::size_t> initial_site; // default depends on geometry
    PauliAxis initial_axis = PauliAxis::Z;
    std::uint64_t master_seed = 0;

    static CircuitSpec chain(std::size_t n, std::size_t depth, double gamma = 0.0);
    static CircuitSpec grid(std::size_t lx, std::size_t ly, std::size_t depth, double gamma = 0.0);
    static CircuitSpec rmpu(std::size_t n, std::size_t r, double gamma = 0.0);

    std::size_t sites() const;
    /// chain/grid: depth; rmpu: m = N - r.
    std::size_t num_layers() const;
    NoisePlacement resolved_noise() const;
    /// chain: floor(N/2); grid: the center (ly/2, lx/2); rmpu: 0.
    std::size_t resolved_initial_site() const;
    /// Throws std::invalid_argument on an inconsistent spec.
    void validate() const;
};

/// Random stream used for a single gate.
using RandomStream = std::mt19937_64;

/// SplitMix64-based hash of (master_seed, realization, gate_counter).
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t realization, std::uint64_t gate_counter);
RandomStream gate_stream(std::uint64_t master_seed, std::uint64_t realization, std::uint64_t gate_counter);

/// Haar-random q x q unitary (row-major) from a Ginibre sample and QR with the
/// phases of diag(R) divided out.
std::vector<cplx> sample_haar_matrix(std::size_t q, RandomStream &stream);

/// Haar-random gate on the local sites {0, ..., log2(q) - 1}; q must be a power of two >= 2.
GateMatrix sample_haar_unitary(std::size_t q, RandomStream &stream);

/// Gate supports of one layer.
///   chain: (0,1),(2,3),... on even layers, (1,2),(3,4),... on odd layers.
///   grid:  layers cycle horizontal-even, horizontal-odd, vertical-even, vertical-odd;
///          site index = row * lx + column.
///   rmpu:  the single support [layer, layer + r].
std::vector<Support> layer_supports(const CircuitSpec &spec, std::size_t layer);

/// Worst-case product of channel factors after `layers` layers:
/// per-qubit (1-g)^(N layers), per-gate (1-g)^(#gates), none 1.
double circuit_fidelity(const CircuitSpec &spec, std::size_t layers);

/// Called after each completed layer with the number of layers applied so far.
using LayerObserver = std::function<void(std::size_t layers_done, const OperatorState &op)>;

/// Evolves the initial local Pauli through all layers of the spec. Each layer
/// applies its Haar gates in order and the noise of the spec's placement.
OperatorState run_circuit(const CircuitSpec &spec, std::uint64_t realization);

/// As run_circuit, invoking the observer after every layer (and once with 0
/// before the first layer).
OperatorState run_circuit(const CircuitSpec &spec, std::uint64_t realization, const LayerObserver &observer);

/// Sites touched by at least one gate in layers [0, layers) that can be
/// causally connected to the initial site (the support of the lightcone).
std::vector<bool> lightcone_sites(const CircuitSpec &spec, std::size_t layers);

}  // namespace paulispec
