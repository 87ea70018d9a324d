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

#include "paulispec/operator_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "paulispec/stats.hpp"

namespace paulispec {

namespace {

void check_sites(std::size_t n_sites, bool allow_large) {
    if (n_sites == 0) {
        throw std::invalid_argument("operator needs at least one site");
    }
    if (n_sites > kMaxDenseSites && !allow_large) {
        throw std::invalid_argument("N = " + std::to_string(n_sites) +
                                    " exceeds the dense memory guard (13); pass allow_large to override");
    }
    if (n_sites > 15) {
        throw std::invalid_argument("N > 15 cannot be stored densely");
    }
}

struct SupportLayout {
    std::vector<std::size_t> offsets;  // local index -> global bit pattern
    std::vector<std::size_t> bases;    // global indices with all support bits clear
};

SupportLayout layout_for(std::size_t n_sites, std::span<const std::size_t> support) {
    std::size_t mask = 0;
    for (auto s : support) {
        if (s >= n_sites) {
            throw std::out_of_range("site " + std::to_string(s) + " out of range for N = " + std::to_string(n_sites));
        }
        const std::size_t bit = std::size_t{1} << s;
        if (mask & bit) {
            throw std::invalid_argument("repeated site in support");
        }
        mask |= bit;
    }
    SupportLayout out;
    const std::size_t q = std::size_t{1} << support.size();
    out.offsets.resize(q);
    for (std::size_t a = 0; a < q; ++a) {
        std::size_t g = 0;
        for (std::size_t b = 0; b < support.size(); ++b) {
            if ((a >> b) & 1) {
                g |= std::size_t{1} << support[b];
            }
        }
        out.offsets[a] = g;
    }
    const std::size_t dim = std::size_t{1} << n_sites;
    out.bases.reserve(dim / q);
    for (std::size_t x = 0; x < dim; ++x) {
        if ((x & mask) == 0) {
            out.bases.push_back(x);
        }
    }
    return out;
}

}  // namespace

OperatorState::OperatorState(std::size_t n_sites, bool allow_large) {
    check_sites(n_sites, allow_large);
    n_sites_ = n_sites;
    dim_ = std::size_t{1} << n_sites;
    data_.assign(dim_ * dim_, cplx(0.0, 0.0));
}

OperatorState OperatorState::from_matrix(std::size_t n_sites, std::vector<cplx> matrix, bool allow_large) {
    OperatorState op(n_sites, allow_large);
    if (matrix.size() != op.data_.size()) {
        throw std::invalid_argument("matrix size does not match 2^N x 2^N");
    }
    op.data_ = std::move(matrix);
    return op;
}

double OperatorState::hermiticity_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
        }
    }
    return worst;
}

double GateMatrix::unitarity_error() const {
    const std::size_t q = local_dim();
    if (matrix.size() != q * q) {
        throw std::invalid_argument("gate matrix size does not match its support");
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = 0; b < q; ++b) {
            cplx acc = 0.0;
            for (std::size_t c = 0; c < q; ++c) {
                acc += matrix[a * q + c] * std::conj(matrix[b * q + c]);
            }
            worst = std::max(worst, std::abs(acc - (a == b ? 1.0 : 0.0)));
        }
    }
    return worst;
}

PauliAxis axis_from_char(char c) {
    switch (c) {
        case 'X':
        case 'x':
            return PauliAxis::X;
        case 'Y':
        case 'y':
            return PauliAxis::Y;
        case 'Z':
        case 'z':
            return PauliAxis::Z;
        default:
            throw std::invalid_argument(std::string("axis must be X, Y or Z, got '") + c + "'");
    }
}

char axis_char(PauliAxis a) {
    switch (a) {
        case PauliAxis::X:
            return 'X';
        case PauliAxis::Y:
            return 'Y';
        case PauliAxis::Z:
            break;
    }
    return 'Z';
}

OperatorState init_local_pauli(std::size_t n_sites, std::size_t site, PauliAxis axis, bool allow_large) {
    OperatorState op(n_sites, allow_large);
    if (site >= n_sites) {
        throw std::out_of_range("initial site " + std::to_string(site) + " out of range for N = " +
                                std::to_string(n_sites));
    }
    const std::size_t bit = std::size_t{1} << site;
    for (std::size_t i = 0; i < op.dim(); ++i) {
        const bool up = (i & bit) != 0;
        switch (axis) {
            case PauliAxis::X:
                op.at(i, i ^ bit) = 1.0;
                break;
            case PauliAxis::Y:
                // Y = [[0, -i], [i, 0]]
                op.at(i, i ^ bit) = up ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
                break;
            case PauliAxis::Z:
                op.at(i, i) = up ? -1.0 : 1.0;
                break;
        }
    }
    return op;
}

void apply_gate(OperatorState &op, const GateMatrix &gate) {
    const std::size_t q = gate.local_dim();
    if (gate.support.empty() || gate.matrix.size() != q * q) {
        throw std::invalid_argument("gate matrix dimension does not match its support");
    }
    if (gate.support.size() > op.n_sites()) {
        throw std::invalid_argument("gate acts on more sites than the operator has");
    }
    const auto layout = layout_for(op.n_sites(), gate.support);
    const std::size_t dim = op.dim();
    auto data = op.data();
    const cplx *u = gate.matrix.data();

    // Left multiplication: rows {b + off[a]} mix as U . rows.
    std::vector<cplx> rows(q * dim);
    for (std::size_t b : layout.bases) {
        for (std::size_t c = 0; c < q; ++c) {
            const cplx *src = &data[(b + layout.offsets[c]) * dim];
            std::copy(src, src + dim, rows.begin() + c * dim);
        }
        for (std::size_t a = 0; a < q; ++a) {
            cplx *dst = &data[(b + layout.offsets[a]) * dim];
            std::fill(dst, dst + dim, cplx(0.0, 0.0));
            for (std::size_t c = 0; c < q; ++c) {
                const cplx coef = u[a * q + c];
                if (coef == cplx(0.0, 0.0)) {
                    continue;
                }
                const cplx *src = &rows[c * dim];
                for (std::size_t j = 0; j < dim; ++j) {
                    dst[j] += coef * src[j];
                }
            }
        }
    }

    // Right multiplication by U^dagger: (O U^dag)_{i, b+off[a]} = sum_c O_{i, b+off[c]} conj(U_{a c}).
    std::vector<cplx> udag(q * q);
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t c = 0; c < q; ++c) {
            udag[c * q + a] = std::conj(u[a * q + c]);
        }
    }
    std::vector<cplx> w(q), out(q);
    for (std::size_t i = 0; i < dim; ++i) {
        cplx *row = &data[i * dim];
        for (std::size_t b : layout.bases) {
            for (std::size_t c = 0; c < q; ++c) {
                w[c] = row[b + layout.offsets[c]];
            }
            std::fill(out.begin(), out.end(), cplx(0.0, 0.0));
            for (std::size_t c = 0; c < q; ++c) {
                const cplx wc = w[c];
                const cplx *ud = &udag[c * q];
                for (std::size_t a = 0; a < q; ++a) {
                    out[a] += wc * ud[a];
                }
            }
            for (std::size_t a = 0; a < q; ++a) {
                row[b + layout.offsets[a]] = out[a];
            }
        }
    }
}

void apply_depolarizing_joint(OperatorState &op, double gamma, std::span<const std::size_t> sites) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("depolarizing rate must lie in [0, 1]");
    }
    if (sites.empty()) {
        return;
    }
    const auto layout = layout_for(op.n_sites(), sites);
    if (gamma == 0.0) {
        return;
    }
    const std::size_t q = layout.offsets.size();
    const double keep = 1.0 - gamma;
    const double inv_q = 1.0 / static_cast<double>(q);

    for (std::size_t bi : layout.bases) {
        for (std::size_t bj : layout.bases) {
            cplx partial = 0.0;
            for (std::size_t a = 0; a < q; ++a) {
                partial += op.at(bi + layout.offsets[a], bj + layout.offsets[a]);
            }
            partial *= inv_q;
            for (std::size_t a = 0; a < q; ++a) {
                const std::size_t row = bi + layout.offsets[a];
                for (std::size_t c = 0; c < q; ++c) {
                    cplx &v = op.at(row, bj + layout.offsets[c]);
                    v = keep * v + (a == c ? gamma * partial : cplx(0.0, 0.0));
                }
            }
        }
    }
}

void apply_depolarizing(OperatorState &op, double gamma, std::span<const std::size_t> sites) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("depolarizing rate must lie in [0, 1]");
    }
    for (std::size_t s : sites) {
        const std::size_t one[] = {s};
        apply_depolarizing_joint(op, gamma, one);
    }
}

double hs_norm_sq(const OperatorState &op) {
    NeumaierSum acc;
    for (const cplx &v : op.data()) {
        acc.add(std::norm(v));
    }
    return acc.value() / static_cast<double>(op.dim());
}

cplx trace(const OperatorState &op) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < op.dim(); ++i) {
        acc += op.at(i, i);
    }
    return acc;
}

}  // namespace paulispec
