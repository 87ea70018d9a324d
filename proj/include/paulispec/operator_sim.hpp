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
#include <span>
#include <vector>

#include "paulispec/pauli_core.hpp"

namespace paulispec {

/// Largest N accepted without allow_large: a 2^13 x 2^13 complex matrix is ~1.1 GB.
inline constexpr std::size_t kMaxDenseSites = 13;

/// Heisenberg-picture operator O stored as a dense row-major D x D matrix.
class OperatorState {
   public:
    OperatorState() = default;
    /// Zero operator on n_sites qubits.
    explicit OperatorState(std::size_t n_sites, bool allow_large = false);

    static OperatorState from_matrix(std::size_t n_sites, std::vector<cplx> matrix, bool allow_large = false);

    std::size_t n_sites() const { return n_sites_; }
    std::size_t dim() const { return dim_; }

    cplx &at(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const cplx &at(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    std::span<cplx> data() { return data_; }
    std::span<const cplx> data() const { return data_; }

    PauliCoefficients pauli_coefficients() const { return pauli_transform(data_, dim_); }

    /// max |O - O^dagger|.
    double hermiticity_error() const;

   private:
    std::size_t n_sites_ = 0;
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

/// Unitary acting on an ordered list of qubits; support[0] is the least
/// significant bit of the local index.
struct GateMatrix {
    std::vector<std::size_t> support;
    std::vector<cplx> matrix;  // row-major q x q, q = 2^support.size()

    std::size_t local_dim() const { return std::size_t{1} << support.size(); }
    /// max |U U^dagger - 1|.
    double unitarity_error() const;
};

enum class PauliAxis { X, Y, Z };

PauliAxis axis_from_char(char c);
char axis_char(PauliAxis a);

/// The single-site Pauli `axis` at `site`, identity elsewhere.
OperatorState init_local_pauli(std::size_t n_sites, std::size_t site, PauliAxis axis, bool allow_large = false);

/// O <- U O U^dagger with U acting on gate.support.
void apply_gate(OperatorState &op, const GateMatrix &gate);

/// Sequential single-site depolarizing channels O <- (1-g) O + g Tr_s[O] (x) 1_s/2.
void apply_depolarizing(OperatorState &op, double gamma, std::span<const std::size_t> sites);

/// One depolarizing channel acting jointly on `sites`:
/// O <- (1-g) O + g Tr_S[O] (x) 1_S / 2^|S|.
void apply_depolarizing_joint(OperatorState &op, double gamma, std::span<const std::size_t> sites);

/// nu_1 = Tr[O^2] / D.
double hs_norm_sq(const OperatorState &op);

cplx trace(const OperatorState &op);

}  // namespace paulispec
