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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace paulispec {

using cplx = std::complex<double>;

/// Single-site Pauli letter, in the 2-bit encoding used for string indices.
enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(PauliLetter p);
PauliLetter letter_from_char(char c);

/// A Pauli string over N qubits.
///
/// Site s occupies bits [2s, 2s+1] of the index (little-endian), so the
/// word "XZ" (site 0 = X, site 1 = Z) has index 1 + 3*4 = 13.
class PauliString {
   public:
    PauliString(std::size_t n_sites, std::uint64_t index);

    static PauliString from_letters(std::string_view word);

    std::size_t n_sites() const { return n_sites_; }
    std::uint64_t index() const { return index_; }
    PauliLetter letter(std::size_t site) const;
    std::string letters() const;

    bool operator==(const PauliString &other) const = default;

   private:
    std::size_t n_sites_;
    std::uint64_t index_;
};

/// Encodes a word over {I,X,Y,Z}; throws std::invalid_argument on other letters.
PauliString encode_pauli(std::string_view word);
std::string decode_pauli(const PauliString &p);

/// True iff every letter is I or Z, i.e. <0...0|P|0...0> = 1.
bool zdiag_indicator(const PauliString &p);
bool zdiag_indicator(std::uint64_t index, std::size_t n_sites);

/// Real Pauli coefficients a_P = Tr[O P] / D of a Hermitian operator, stored
/// densely by string index.
struct PauliCoefficients {
    std::size_t n_sites = 0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t p) const { return values[p]; }
};

/// Largest imaginary part tolerated by pauli_transform before the input is
/// declared non-Hermitian.
inline constexpr double kHermitianTolerance = 1e-10;

/// Rotates a row-major D x D matrix into the Pauli basis with N site-local
/// 4x4 rotations, O(N 4^N). Throws std::invalid_argument when the matrix is
/// not square with D = 2^N, or when an imaginary residue exceeds
/// kHermitianTolerance.
PauliCoefficients pauli_transform(std::span<const cplx> matrix, std::size_t dim);

/// Same transform but reports the largest imaginary residue instead of
/// throwing on it.
PauliCoefficients pauli_transform_unchecked(std::span<const cplx> matrix, std::size_t dim,
                                            double *max_imag_residue);

/// Inverse transform: builds the row-major D x D matrix sum_P a_P P.
std::vector<cplx> pauli_to_matrix(const PauliCoefficients &coeffs);

/// Dense matrix of a single Pauli string.
std::vector<cplx> pauli_string_matrix(const PauliString &p);

/// Number of qubits N with 2^N == dim; throws if dim is not a power of two.
std::size_t qubits_for_dimension(std::size_t dim);

}  // namespace paulispec
