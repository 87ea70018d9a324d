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

#include "paulispec/weingarten.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace paulispec {

Permutation::Permutation(std::span<const int> image) {
    if (image.size() > static_cast<std::size_t>(kMaxPermutationDegree)) {
        throw std::invalid_argument("permutation degree exceeds 8");
    }
    n_ = static_cast<int>(image.size());
    std::uint32_t seen = 0;
    for (int i = 0; i < n_; ++i) {
        const int v = image[static_cast<std::size_t>(i)];
        if (v < 0 || v >= n_ || (seen >> v & 1U)) {
            throw std::invalid_argument("permutation image is not a bijection");
        }
        seen |= 1U << v;
        image_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
    }
    recount();
}

Permutation::Permutation(std::initializer_list<int> image)
    : Permutation(std::span<const int>(image.begin(), image.size())) {}

Permutation Permutation::identity(int n) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    return Permutation(img);
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>> &cycles) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const auto &c : cycles) {
        for (std::size_t j = 0; j < c.size(); ++j) {
            const int a = c[j];
            if (a < 0 || a >= n || used[static_cast<std::size_t>(a)]) {
                throw std::invalid_argument("cycles must be disjoint and in range");
            }
            used[static_cast<std::size_t>(a)] = true;
            img[static_cast<std::size_t>(a)] = c[(j + 1) % c.size()];
        }
    }
    return Permutation(img);
}

void Permutation::recount() {
    cycles_ = 0;
    fixed_points_ = 0;
    fixed_mask_ = 0;
    cycle_type_ = 0;
    even_only_ = n_ > 0;
    std::uint32_t seen = 0;
    for (int i = 0; i < n_; ++i) {
        if (seen >> i & 1U) continue;
        int len = 0;
        for (int j = i; !(seen >> j & 1U); j = image_[static_cast<std::size_t>(j)]) {
            seen |= 1U << j;
            ++len;
        }
        ++cycles_;
        cycle_type_ += CycleTypeKey{1} << (4 * (len - 1));
        if (len == 1) {
            ++fixed_points_;
            fixed_mask_ |= 1U << i;
        }
        if (len % 2 != 0) {
            even_only_ = false;
        }
    }
}

std::vector<int> Permutation::image() const {
    std::vector<int> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = image_[static_cast<std::size_t>(i)];
    return out;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) inv[image_[static_cast<std::size_t>(i)]] = i;
    return Permutation(inv);
}

Permutation operator*(const Permutation &a, const Permutation &b) {
    if (a.n_ != b.n_) {
        throw std::invalid_argument("permutation degree mismatch");
    }
    std::vector<int> img(static_cast<std::size_t>(a.n_));
    for (int i = 0; i < a.n_; ++i) img[static_cast<std::size_t>(i)] = a(b(i));
    return Permutation(img);
}

bool Permutation::operator==(const Permutation &other) const {
    return n_ == other.n_ && std::equal(image_.begin(), image_.begin() + n_, other.image_.begin());
}

std::string Permutation::to_string() const {
    std::ostringstream out;
    std::uint32_t seen = 0;
    for (int i = 0; i < n_; ++i) {
        if (seen >> i & 1U) continue;
        out << '(';
        for (int j = i; !(seen >> j & 1U); j = image_[static_cast<std::size_t>(j)]) {
            seen |= 1U << j;
            if (j != i) out << ' ';
            out << j;
        }
        out << ')';
    }
    return out.str();
}

int cycle_count(const Permutation &sigma) { return sigma.cycles(); }

int common_fixed_points(const Permutation &sigma, const Permutation &pi) {
    if (sigma.degree() != pi.degree()) {
        throw std::invalid_argument("permutation degree mismatch");
    }
    return std::popcount(sigma.fixed_point_mask() & pi.fixed_point_mask());
}

bool even_indicator(const Permutation &sigma) { return sigma.even_cycles_only(); }

int cycle_type_count(CycleTypeKey key, int len) { return static_cast<int>((key >> (4 * (len - 1))) & 0xF); }

CycleTypeKey remove_fixed_points(CycleTypeKey key, int count) {
    if (count < 0 || cycle_type_count(key, 1) < count) {
        throw std::invalid_argument("cannot remove more fixed points than present");
    }
    return key - static_cast<CycleTypeKey>(count);
}

std::size_t lexicographic_rank(const Permutation &sigma) {
    const int n = sigma.degree();
    std::size_t rank = 0;
    for (int i = 0; i < n; ++i) {
        std::size_t smaller = 0;
        for (int j = i + 1; j < n; ++j) {
            if (sigma(j) < sigma(i)) ++smaller;
        }
        rank = rank * static_cast<std::size_t>(n - i) + smaller;
    }
    return rank;
}

std::vector<Permutation> enumerate_group(int n) {
    if (n < 1 || n > kMaxPermutationDegree) {
        throw std::invalid_argument("group degree must lie in [1, 8]");
    }
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

namespace {

SymmetricGroup build_group(int n) {
    SymmetricGroup g;
    g.n = n;
    g.elements = enumerate_group(n);
    const std::size_t m = g.elements.size();
    g.cycle_counts.resize(m);
    g.cycle_types.resize(m);
    g.fixed_masks.resize(m);
    g.even_only.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
        const auto &p = g.elements[a];
        g.cycle_counts[a] = p.cycles();
        g.cycle_types[a] = p.cycle_type();
        g.fixed_masks[a] = p.fixed_point_mask();
        g.even_only[a] = p.even_cycles_only();
    }
    if (n <= kMaxGroupMatrixDegree) {
        g.relative.resize(m * m);
        for (std::size_t a = 0; a < m; ++a) {
            const Permutation inv = g.elements[a].inverse();
            for (std::size_t b = 0; b < m; ++b) {
                g.relative[a * m + b] = static_cast<std::uint32_t>(lexicographic_rank(inv * g.elements[b]));
            }
        }
    }
    return g;
}

void require_matrix_degree(int n) {
    if (n < 1 || n > kMaxGroupMatrixDegree) {
        throw std::invalid_argument("group matrices are supported for 1 <= n <= 6");
    }
}

void require_q(double q) {
    if (!(q >= 1.0) || !std::isfinite(q)) {
        throw std::invalid_argument("q must be a finite value >= 1");
    }
}

void require_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("gamma must lie in [0, 1]");
    }
}

// Class values of Wg^(n)(q), keyed by the cycle type of pi^-1 sigma.
struct ClassTable {
    std::unordered_map<CycleTypeKey, double> values;
    bool pseudo_inverse = false;
};

ClassTable compute_class_table(int n, double q) {
    const SymmetricGroup &g = symmetric_group(n);
    const auto m = static_cast<Eigen::Index>(g.size());
    // Scale by q^-n so that entries lie in (0, 1].
    Eigen::MatrixXd scaled(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) {
            const int c = g.cycle_counts[g.relative_index(static_cast<std::size_t>(a), static_cast<std::size_t>(b))];
            scaled(a, b) = std::pow(q, c - n);
        }
    }
    ClassTable table;
    Eigen::VectorXd row;
    if (q >= static_cast<double>(n)) {
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(scaled);
        Eigen::VectorXd rhs = Eigen::VectorXd::Unit(m, 0);
        row = lu.solve(rhs);
        const Eigen::VectorXd residual = rhs - scaled * row;
        row += lu.solve(residual);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled);
        const Eigen::VectorXd &lambda = eig.eigenvalues();
        const double cutoff = 1e-12 * lambda.cwiseAbs().maxCoeff();
        Eigen::VectorXd inv_lambda(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            inv_lambda(i) = std::abs(lambda(i)) > cutoff ? 1.0 / lambda(i) : 0.0;
        }
        const Eigen::MatrixXd &v = eig.eigenvectors();
        row = v * inv_lambda.asDiagonal() * v.row(0).transpose();
        table.pseudo_inverse = true;
    }
    const double unscale = std::pow(q, -n);
    for (Eigen::Index b = 0; b < m; ++b) {
        table.values.emplace(g.cycle_types[static_cast<std::size_t>(b)], row(b) * unscale);
    }
    return table;
}

class Memo {
   public:
    using Key = std::tuple<int, double, double, int>;

    template <typename T, typename Build>
    std::shared_ptr<const T> get(std::map<Key, std::shared_ptr<const T>> &store, const Key &key, Build build) {
        {
            std::shared_lock lock(mutex_);
            auto it = store.find(key);
            if (it != store.end()) return it->second;
        }
        auto value = std::make_shared<const T>(build());
        std::unique_lock lock(mutex_);
        return store.emplace(key, std::move(value)).first->second;
    }

    std::map<Key, std::shared_ptr<const ClassTable>> classes;
    std::map<Key, std::shared_ptr<const GroupMatrix>> matrices;

   private:
    std::shared_mutex mutex_;
};

Memo &memo() {
    static Memo instance;
    return instance;
}

std::shared_ptr<const ClassTable> class_table(int n, double q) {
    return memo().get(memo().classes, {n, q, 0.0, 0}, [&] { return compute_class_table(n, q); });
}

double binomial(int n, int k) {
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

}  // namespace

const SymmetricGroup &symmetric_group(int n) {
    if (n < 1 || n > kMaxPermutationDegree) {
        throw std::invalid_argument("group degree must lie in [1, 8]");
    }
    static std::once_flag flags[kMaxPermutationDegree];
    static SymmetricGroup groups[kMaxPermutationDegree];
    std::call_once(flags[n - 1], [n] { groups[n - 1] = build_group(n); });
    return groups[n - 1];
}

GroupMatrix gram_matrix(int n, double q) {
    require_matrix_degree(n);
    require_q(q);
    const SymmetricGroup &g = symmetric_group(n);
    const auto m = static_cast<Eigen::Index>(g.size());
    std::vector<double> powers(static_cast<std::size_t>(n + 1));
    for (int c = 0; c <= n; ++c) powers[static_cast<std::size_t>(c)] = std::pow(q, c);
    GroupMatrix out;
    out.n = n;
    out.entries.resize(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) {
            const auto r = g.relative_index(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
            out.entries(a, b) = powers[static_cast<std::size_t>(g.cycle_counts[r])];
        }
    }
    return out;
}

double weingarten_class_value(int n, double q, CycleTypeKey type) {
    if (n == 0) {
        return 1.0;
    }
    require_matrix_degree(n);
    require_q(q);
    const auto table = class_table(n, q);
    auto it = table->values.find(type);
    if (it == table->values.end()) {
        throw std::invalid_argument("cycle type does not belong to S_n");
    }
    return it->second;
}

GroupMatrix weingarten_matrix(int n, double q) { return noisy_weingarten(n, q, 0.0); }

GroupMatrix noisy_weingarten(int n, double q, double gamma) {
    require_matrix_degree(n);
    require_q(q);
    require_gamma(gamma);
    const SymmetricGroup &g = symmetric_group(n);
    const auto m = static_cast<Eigen::Index>(g.size());

    // Tables for every reduced degree n - i that can occur.
    std::vector<std::shared_ptr<const ClassTable>> tables(static_cast<std::size_t>(n + 1));
    GroupMatrix out;
    out.n = n;
    for (int i = 0; i <= n; ++i) {
        const int reduced = n - i;
        if (reduced > 0 && (i == 0 || gamma > 0.0)) {
            tables[static_cast<std::size_t>(reduced)] = class_table(reduced, q);
            out.pseudo_inverse = out.pseudo_inverse || tables[static_cast<std::size_t>(reduced)]->pseudo_inverse;
        }
    }

    std::vector<double> weight(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        weight[static_cast<std::size_t>(i)] = std::pow(gamma / q, i) * std::pow(1.0 - gamma, n - i);
    }

    out.entries.resize(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) {
            const auto r = g.relative_index(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
            const CycleTypeKey type = g.cycle_types[r];
            const int n_f = gamma > 0.0 ? std::popcount(g.fixed_masks[static_cast<std::size_t>(a)] &
                                                        g.fixed_masks[static_cast<std::size_t>(b)])
                                        : 0;
            double acc = 0.0;
            for (int i = 0; i <= n_f; ++i) {
                const double w = binomial(n_f, i) * weight[static_cast<std::size_t>(i)];
                if (w == 0.0) continue;
                const int reduced = n - i;
                const double wg =
                    reduced == 0 ? 1.0 : tables[static_cast<std::size_t>(reduced)]->values.at(remove_fixed_points(type, i));
                acc += w * wg;
            }
            out.entries(a, b) = acc;
        }
    }
    return out;
}

std::shared_ptr<const GroupMatrix> cached_gram_matrix(int n, double q) {
    return memo().get(memo().matrices, {n, q, 0.0, 1}, [&] { return gram_matrix(n, q); });
}

std::shared_ptr<const GroupMatrix> cached_weingarten_matrix(int n, double q) {
    return cached_noisy_weingarten(n, q, 0.0);
}

std::shared_ptr<const GroupMatrix> cached_noisy_weingarten(int n, double q, double gamma) {
    return memo().get(memo().matrices, {n, q, gamma, 2}, [&] { return noisy_weingarten(n, q, gamma); });
}

}  // namespace paulispec
