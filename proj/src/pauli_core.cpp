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

#include "paulispec/pauli_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paulispec {

namespace {

constexpr std::size_t kMaxStringSites = 31;

// Spreads bit b of x to bit 2b of the result.
std::vector<std::uint64_t> spread_table(std::size_t n_bits) {
    std::vector<std::uint64_t> table(std::size_t{1} << n_bits);
    for (std::size_t x = 0; x < table.size(); ++x) {
        std::uint64_t out = 0;
        for (std::size_t b = 0; b < n_bits; ++b) {
            out |= static_cast<std::uint64_t>((x >> b) & 1) << (2 * b);
        }
        table[x] = out;
    }
    return table;
}

}  // namespace

char letter_char(PauliLetter p) {
    static constexpr char chars[] = {'I', 'X', 'Y', 'Z'};
    return chars[static_cast<int>(p)];
}

PauliLetter letter_from_char(char c) {
    switch (c) {
        case 'I':
            return PauliLetter::I;
        case 'X':
            return PauliLetter::X;
        case 'Y':
            return PauliLetter::Y;
        case 'Z':
            return PauliLetter::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
    }
}

PauliString::PauliString(std::size_t n_sites, std::uint64_t index) : n_sites_(n_sites), index_(index) {
    if (n_sites == 0 || n_sites > kMaxStringSites) {
        throw std::invalid_argument("Pauli string length must be in [1, 31]");
    }
    if (index >> (2 * n_sites) != 0) {
        throw std::invalid_argument("Pauli index out of range for the number of sites");
    }
}

PauliString PauliString::from_letters(std::string_view word) {
    if (word.empty()) {
        throw std::invalid_argument("empty Pauli word");
    }
    if (word.size() > kMaxStringSites) {
        throw std::invalid_argument("Pauli word too long");
    }
    std::uint64_t index = 0;
    for (std::size_t s = 0; s < word.size(); ++s) {
        index |= static_cast<std::uint64_t>(letter_from_char(word[s])) << (2 * s);
    }
    return PauliString(word.size(), index);
}

PauliLetter PauliString::letter(std::size_t site) const {
    if (site >= n_sites_) {
        throw std::out_of_range("site out of range");
    }
    return static_cast<PauliLetter>((index_ >> (2 * site)) & 3);
}

std::string PauliString::letters() const {
    std::string out(n_sites_, 'I');
    for (std::size_t s = 0; s < n_sites_; ++s) {
        out[s] = letter_char(letter(s));
    }
    return out;
}

PauliString encode_pauli(std::string_view word) { return PauliString::from_letters(word); }

std::string decode_pauli(const PauliString &p) { return p.letters(); }

bool zdiag_indicator(std::uint64_t index, std::size_t n_sites) {
    for (std::size_t s = 0; s < n_sites; ++s) {
        auto l = (index >> (2 * s)) & 3;
        if (l == 1 || l == 2) {
            return false;
        }
    }
    return true;
}

bool zdiag_indicator(const PauliString &p) { return zdiag_indicator(p.index(), p.n_sites()); }

std::size_t qubits_for_dimension(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("operator dimension must be a power of two");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    if (n == 0) {
        throw std::invalid_argument("operator must act on at least one qubit");
    }
    return n;
}

PauliCoefficients pauli_transform_unchecked(std::span<const cplx> matrix, std::size_t dim,
                                            double *max_imag_residue) {
    if (matrix.size() != dim * dim) {
        throw std::invalid_argument("operator matrix is not square");
    }
    const std::size_t n = qubits_for_dimension(dim);
    std::vector<cplx> work(matrix.begin(), matrix.end());

    // Flat index f = i*D + j. Row bit s lives at bit n+s of f, column bit s at bit s.
    // Each pass maps the 2x2 block (i_s, j_s) to the letter slots
    // (0,0)->I, (0,1)->X, (1,0)->Y, (1,1)->Z.
    const std::size_t total = dim * dim;
    for (std::size_t s = 0; s < n; ++s) {
        const std::size_t col = std::size_t{1} << s;
        const std::size_t row = std::size_t{1} << (n + s);
        for (std::size_t f = 0; f < total; ++f) {
            if ((f & col) || (f & row)) {
                continue;
            }
            const cplx o00 = work[f];
            const cplx o01 = work[f + col];
            const cplx o10 = work[f + row];
            const cplx o11 = work[f + row + col];
            work[f] = 0.5 * (o00 + o11);
            work[f + col] = 0.5 * (o01 + o10);
            work[f + row] = cplx(0.0, 0.5) * (o01 - o10);
            work[f + row + col] = 0.5 * (o00 - o11);
        }
    }

    const auto spread = spread_table(n);
    PauliCoefficients out;
    out.n_sites = n;
    out.values.assign(total, 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const std::uint64_t hi = spread[i] << 1;
        for (std::size_t j = 0; j < dim; ++j) {
            const cplx v = work[i * dim + j];
            out.values[hi | spread[j]] = v.real();
            worst = std::max(worst, std::abs(v.imag()));
        }
    }
    if (max_imag_residue != nullptr) {
        *max_imag_residue = worst;
    }
    return out;
}

PauliCoefficients pauli_transform(std::span<const cplx> matrix, std::size_t dim) {
    double residue = 0.0;
    auto out = pauli_transform_unchecked(matrix, dim, &residue);
    if (residue > kHermitianTolerance) {
        throw std::invalid_argument("operator is not Hermitian: imaginary Pauli residue " +
                                    std::to_string(residue));
    }
    return out;
}

std::vector<cplx> pauli_to_matrix(const PauliCoefficients &coeffs) {
    const std::size_t n = coeffs.n_sites;
    if (n == 0 || coeffs.values.size() != (std::size_t{1} << (2 * n))) {
        throw std::invalid_argument("coefficient array does not have length 4^N");
    }
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t total = dim * dim;
    const auto spread = spread_table(n);
    std::vector<cplx> work(total);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::uint64_t hi = spread[i] << 1;
        for (std::size_t j = 0; j < dim; ++j) {
            work[i * dim + j] = coeffs.values[hi | spread[j]];
        }
    }
    for (std::size_t s = 0; s < n; ++s) {
        const std::size_t col = std::size_t{1} << s;
        const std::size_t row = std::size_t{1} << (n + s);
        for (std::size_t f = 0; f < total; ++f) {
            if ((f & col) || (f & row)) {
                continue;
            }
            const cplx ci = work[f];
            const cplx cx = work[f + col];
            const cplx cy = work[f + row];
            const cplx cz = work[f + row + col];
            const cplx iy = cplx(0.0, 1.0) * cy;
            work[f] = ci + cz;
            work[f + col] = cx - iy;
            work[f + row] = cx + iy;
            work[f + row + col] = ci - cz;
        }
    }
    return work;
}

std::vector<cplx> pauli_string_matrix(const PauliString &p) {
    PauliCoefficients c;
    c.n_sites = p.n_sites();
    c.values.assign(std::size_t{1} << (2 * p.n_sites()), 0.0);
    c.values[p.index()] = 1.0;
    return pauli_to_matrix(c);
}

}  // namespace paulispec
