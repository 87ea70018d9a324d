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

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace paulispec {

/// Largest degree the enumeration supports (8! = 40320 elements).
inline constexpr int kMaxPermutationDegree = 8;
/// Largest degree for which dense n! x n! group matrices are built.
inline constexpr int kMaxGroupMatrixDegree = 6;

/// Multiplicities of cycle lengths 1..n packed into one integer (4 bits per length).
using CycleTypeKey = std::uint64_t;

/// Element of S_n acting on {0, ..., n-1}, with cached cycle statistics.
class Permutation {
   public:
    Permutation() = default;
    /// Throws std::invalid_argument unless `image` is a bijection of {0..n-1}, n <= 8.
    explicit Permutation(std::span<const int> image);
    Permutation(std::initializer_list<int> image);

    static Permutation identity(int n);
    /// Builds a permutation from disjoint cycles, e.g. {{0, 1}, {2, 3}}.
    static Permutation from_cycles(int n, const std::vector<std::vector<int>> &cycles);

    int degree() const { return n_; }
    int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
    std::vector<int> image() const;

    /// #(sigma): number of cycles, fixed points included.
    int cycles() const { return cycles_; }
    int fixed_points() const { return fixed_points_; }
    /// 1_E(sigma): every cycle has even length.
    bool even_cycles_only() const { return even_only_; }
    /// Bit i set iff i is a fixed point.
    std::uint32_t fixed_point_mask() const { return fixed_mask_; }
    CycleTypeKey cycle_type() const { return cycle_type_; }

    Permutation inverse() const;
    /// (a * b)(i) = a(b(i)).
    friend Permutation operator*(const Permutation &a, const Permutation &b);
    bool operator==(const Permutation &other) const;

    std::string to_string() const;

   private:
    void recount();

    int n_ = 0;
    std::array<std::uint8_t, kMaxPermutationDegree> image_{};
    int cycles_ = 0;
    int fixed_points_ = 0;
    bool even_only_ = false;
    std::uint32_t fixed_mask_ = 0;
    CycleTypeKey cycle_type_ = 0;
};

int cycle_count(const Permutation &sigma);
/// |{i : sigma(i) = i = pi(i)}|; throws on degree mismatch.
int common_fixed_points(const Permutation &sigma, const Permutation &pi);
bool even_indicator(const Permutation &sigma);

/// Multiplicity of cycle length `len` in a packed cycle type.
int cycle_type_count(CycleTypeKey key, int len);
CycleTypeKey remove_fixed_points(CycleTypeKey key, int count);

/// Rank of a permutation in lexicographic order of its image (Lehmer code).
std::size_t lexicographic_rank(const Permutation &sigma);

/// All n! permutations in lexicographic order of their images; index 0 is the identity.
std::vector<Permutation> enumerate_group(int n);

/// Enumeration of S_n with the tables the group matrices need.
struct SymmetricGroup {
    int n = 0;
    std::vector<Permutation> elements;
    std::vector<int> cycle_counts;
    std::vector<CycleTypeKey> cycle_types;
    std::vector<std::uint32_t> fixed_masks;
    std::vector<bool> even_only;
    /// relative[a * size + b] = rank(elements[a]^-1 * elements[b]); built for n <= 6.
    std::vector<std::uint32_t> relative;

    std::size_t size() const { return elements.size(); }
    std::size_t relative_index(std::size_t a, std::size_t b) const { return relative[a * size() + b]; }
};

/// Process-wide cached enumeration for 1 <= n <= 8.
const SymmetricGroup &symmetric_group(int n);

/// Dense n! x n! matrix over the fixed enumeration of S_n.
struct GroupMatrix {
    int n = 0;
    Eigen::MatrixXd entries;
    /// True when the Weingarten matrix is a pseudo-inverse (q < n).
    bool pseudo_inverse = false;
};

/// G_{pi,sigma}(q) = q^#(pi^-1 sigma).
GroupMatrix gram_matrix(int n, double q);

/// Wg(q) = G(q)^-1 (LU solve with one refinement step). For q < n, where G is
/// singular, the eigen-decomposition pseudo-inverse with cutoff 1e-12 * max|eig|
/// is returned and flagged.
GroupMatrix weingarten_matrix(int n, double q);

/// Coefficients of a Haar gate followed by a depolarizing channel of rate
/// gamma on its support:
///   sum_i C(n_F, i) (gamma/q)^i (1-gamma)^(n-i) Wg^(n-i)(pi~, sigma~),
/// with n_F the number of common fixed points of pi and sigma.
GroupMatrix noisy_weingarten(int n, double q, double gamma);

/// Wg^(n)(q) evaluated on a cycle type of pi^-1 sigma; n = 0 gives 1.
double weingarten_class_value(int n, double q, CycleTypeKey type);

/// Cached, shared versions; safe for concurrent readers.
std::shared_ptr<const GroupMatrix> cached_gram_matrix(int n, double q);
std::shared_ptr<const GroupMatrix> cached_weingarten_matrix(int n, double q);
std::shared_ptr<const GroupMatrix> cached_noisy_weingarten(int n, double q, double gamma);

}  // namespace paulispec
