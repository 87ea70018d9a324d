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

#include "paulispec/rtn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "paulispec/weingarten.hpp"

namespace paulispec {

namespace {

void require_rtn_k(int k, int d) {
    if (k < 1 || k > 2) {
        throw std::invalid_argument("replica contraction supports k in {1, 2}");
    }
    if (d < 2) {
        throw std::invalid_argument("d must be >= 2");
    }
}

}  // namespace

PlaquetteTensor plaquette_weights(int k, int d, double gamma) {
    require_rtn_k(k, d);
    const int n = 2 * k;
    const auto gram = cached_gram_matrix(n, d);
    const auto wg = cached_noisy_weingarten(n, static_cast<double>(d) * d, gamma);
    const std::size_t m = symmetric_group(n).size();
    PlaquetteTensor out;
    out.k = k;
    out.d = d;
    out.gamma = gamma;
    out.dim = m;
    out.J.assign(m * m * m, 0.0);
    const Eigen::MatrixXd &g = gram->entries;
    const Eigen::MatrixXd &w = wg->entries;
    for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t p = 0; p < m; ++p) {
            // v_delta = G_{delta s} G_{delta p}
            const Eigen::VectorXd v =
                g.col(static_cast<Eigen::Index>(s)).cwiseProduct(g.col(static_cast<Eigen::Index>(p)));
            const Eigen::VectorXd j = w * v;
            for (std::size_t r = 0; r < m; ++r) {
                out.J[(s * m + p) * m + r] = j(static_cast<Eigen::Index>(r));
            }
        }
    }
    return out;
}

BoundaryWeights boundary_weights(int k, int d) {
    require_rtn_k(k, d);
    const SymmetricGroup &g = symmetric_group(2 * k);
    const auto m = static_cast<Eigen::Index>(g.size());
    BoundaryWeights out;
    out.top.resize(m);
    out.bottom_operator.resize(m);
    const double dd = static_cast<double>(d);
    for (Eigen::Index a = 0; a < m; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        const int c = g.cycle_counts[ua];
        const bool even = g.even_only[ua];
        out.top(a) = std::pow(dd, c + (even ? 2 : 0) - 2);
        out.bottom_operator(a) = even ? std::pow(dd, c) : 0.0;
    }
    return out;
}

namespace {

// Site tensor with bonds (dl, dr) and physical dimension p, stored as a
// (dl * dr) x p matrix whose column a is the column-major dl x dr slice.
struct Site {
    Eigen::Index dl = 1;
    Eigen::Index dr = 1;
    Eigen::MatrixXd c;
    bool raw = false;       // physical index runs over overlaps <<delta|O^n>>
    bool pristine = true;   // still the identity permutation

    Eigen::Index phys() const { return c.cols(); }
};

// (dl * p) x dr matrix, row l + dl * a.
Eigen::MatrixXd left_grouped(const Site &s) {
    Eigen::MatrixXd out(s.dl * s.phys(), s.dr);
    for (Eigen::Index a = 0; a < s.phys(); ++a) {
        out.middleRows(s.dl * a, s.dl) = Eigen::Map<const Eigen::MatrixXd>(s.c.col(a).data(), s.dl, s.dr);
    }
    return out;
}

// dl x (p * dr) matrix, column a * dr + r.
Eigen::MatrixXd right_grouped(const Site &s) {
    Eigen::MatrixXd out(s.dl, s.phys() * s.dr);
    for (Eigen::Index a = 0; a < s.phys(); ++a) {
        out.middleCols(s.dr * a, s.dr) = Eigen::Map<const Eigen::MatrixXd>(s.c.col(a).data(), s.dl, s.dr);
    }
    return out;
}

void set_from_left_grouped(Site &s, const Eigen::MatrixXd &m, Eigen::Index p) {
    s.dr = m.cols();
    s.c.resize(s.dl * s.dr, p);
    for (Eigen::Index a = 0; a < p; ++a) {
        Eigen::Map<Eigen::MatrixXd>(s.c.col(a).data(), s.dl, s.dr) = m.middleRows(s.dl * a, s.dl);
    }
}

void set_from_right_grouped(Site &s, const Eigen::MatrixXd &m, Eigen::Index p) {
    s.dl = m.rows();
    s.dr = m.cols() / p;
    s.c.resize(s.dl * s.dr, p);
    for (Eigen::Index a = 0; a < p; ++a) {
        Eigen::Map<Eigen::MatrixXd>(s.c.col(a).data(), s.dl, s.dr) = m.middleCols(s.dr * a, s.dr);
    }
}

// Multiplies the left bond by r (k x dl).
void absorb_left(Site &s, const Eigen::MatrixXd &r) {
    Eigen::MatrixXd out(r.rows() * s.dr, s.phys());
    for (Eigen::Index a = 0; a < s.phys(); ++a) {
        Eigen::Map<Eigen::MatrixXd>(out.col(a).data(), r.rows(), s.dr) =
            r * Eigen::Map<const Eigen::MatrixXd>(s.c.col(a).data(), s.dl, s.dr);
    }
    s.dl = r.rows();
    s.c = std::move(out);
}

// Multiplies the right bond by r (dr x k).
void absorb_right(Site &s, const Eigen::MatrixXd &r) {
    Eigen::MatrixXd out(s.dl * r.cols(), s.phys());
    for (Eigen::Index a = 0; a < s.phys(); ++a) {
        Eigen::Map<Eigen::MatrixXd>(out.col(a).data(), s.dl, r.cols()) =
            Eigen::Map<const Eigen::MatrixXd>(s.c.col(a).data(), s.dl, s.dr) * r;
    }
    s.dr = r.cols();
    s.c = std::move(out);
}

// Boundary state in mixed-canonical form. Non-raw sites use orthonormal
// coordinates of the span of the permutation operators: with G = V diag(l) V^T,
// coordinates are c = Q a for Q = diag(l)^(1/2) V^T restricted to nonzero l.
class BoundaryMps {
   public:
    BoundaryMps(std::size_t n_sites, std::size_t op_site, int k, int d, double gamma, const RtnOptions &opt)
        : opt_(opt) {
        const int n = 2 * k;
        const auto gram = cached_gram_matrix(n, d);
        wg_ = cached_noisy_weingarten(n, static_cast<double>(d) * d, gamma);
        const BoundaryWeights bw = boundary_weights(k, d);
        m_ = static_cast<Eigen::Index>(symmetric_group(n).size());

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram->entries);
        const Eigen::VectorXd &lambda = eig.eigenvalues();
        const double cutoff = 1e-12 * lambda.cwiseAbs().maxCoeff();
        std::vector<Eigen::Index> kept;
        for (Eigen::Index i = 0; i < lambda.size(); ++i) {
            if (lambda(i) > cutoff) kept.push_back(i);
        }
        rp_ = static_cast<Eigen::Index>(kept.size());
        q_.resize(rp_, m_);
        top_.resize(rp_);
        for (Eigen::Index a = 0; a < rp_; ++a) {
            const Eigen::Index i = kept[static_cast<std::size_t>(a)];
            q_.row(a) = std::sqrt(lambda(i)) * eig.eigenvectors().col(i).transpose();
            top_(a) = eig.eigenvectors().col(i).dot(bw.top) / std::sqrt(lambda(i));
        }
        pair_.resize(m_, rp_ * rp_);
        for (Eigen::Index rho = 0; rho < m_; ++rho) {
            for (Eigen::Index b = 0; b < rp_; ++b) {
                for (Eigen::Index a = 0; a < rp_; ++a) {
                    pair_(rho, a + rp_ * b) = q_(a, rho) * q_(b, rho);
                }
            }
        }
        const double raw_norm_sq = bw.bottom_operator.squaredNorm();
        raw_top_ = std::pow(static_cast<double>(d), n - 2) * bw.bottom_operator / raw_norm_sq;

        sites_.resize(n_sites);
        for (std::size_t s = 0; s < n_sites; ++s) {
            Site &site = sites_[s];
            Eigen::VectorXd v;
            if (s == op_site) {
                v = bw.bottom_operator;
                site.raw = true;
                site.pristine = false;
            } else {
                v = q_.col(0);
            }
            const double nv = v.norm();
            log_scale_ += std::log(nv);
            site.c = (v / nv).transpose();
        }
    }

    std::size_t size() const { return sites_.size(); }

    void move_center(std::size_t target) {
        while (center_ < target) {
            Site &s = sites_[center_];
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(left_grouped(s));
            const Eigen::Index rows = s.dl * s.phys();
            const Eigen::Index k = std::min(rows, s.dr);
            const Eigen::MatrixXd qm = qr.householderQ() * Eigen::MatrixXd::Identity(rows, k);
            const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
            set_from_left_grouped(s, qm, s.phys());
            absorb_left(sites_[center_ + 1], r);
            ++center_;
        }
        while (center_ > target) {
            Site &s = sites_[center_];
            const Eigen::MatrixXd x = right_grouped(s);
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(x.transpose());
            const Eigen::Index rows = x.cols();
            const Eigen::Index k = std::min(rows, s.dl);
            const Eigen::MatrixXd qm = qr.householderQ() * Eigen::MatrixXd::Identity(rows, k);
            const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
            set_from_right_grouped(s, qm.transpose(), s.phys());
            absorb_right(sites_[center_ - 1], r.transpose());
            --center_;
        }
    }

    // Applies the gate on (i, i + 1); the orthogonality center ends on the
    // right site if `rightward`, else on the left site.
    void apply_gate(std::size_t i, bool rightward) {
        Site &left = sites_[i];
        Site &right = sites_[i + 1];
        if (opt_.lightcone && left.pristine && right.pristine) {
            return;
        }
        move_center(rightward ? i : i + 1);
        const Eigen::Index dl = left.dl;
        const Eigen::Index dm = left.dr;
        const Eigen::Index dr = right.dr;
        const Eigen::MatrixXd bl = left.raw ? left.c : Eigen::MatrixXd(left.c * q_);
        const Eigen::MatrixXd br = right.raw ? right.c : Eigen::MatrixXd(right.c * q_);

        Eigen::MatrixXd theta(dl * dr, m_);
        for (Eigen::Index delta = 0; delta < m_; ++delta) {
            Eigen::Map<const Eigen::MatrixXd> x(bl.col(delta).data(), dl, dm);
            Eigen::Map<const Eigen::MatrixXd> y(br.col(delta).data(), dm, dr);
            Eigen::Map<Eigen::MatrixXd>(theta.col(delta).data(), dl, dr).noalias() = x * y;
        }
        // p.col(a + rp b) is the dl x dr block of the new two-site state.
        const Eigen::MatrixXd p = (theta * wg_->entries.transpose()) * pair_;
        Eigen::MatrixXd two(dl * rp_, rp_ * dr);
        for (Eigen::Index b = 0; b < rp_; ++b) {
            for (Eigen::Index a = 0; a < rp_; ++a) {
                Eigen::Map<const Eigen::MatrixXd> block(p.col(a + rp_ * b).data(), dl, dr);
                for (Eigen::Index r = 0; r < dr; ++r) {
                    two.block(dl * a, b + rp_ * r, dl, 1) = block.col(r);
                }
            }
        }

        Eigen::BDCSVD<Eigen::MatrixXd> svd(two, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd &sv = svd.singularValues();
        const double total_sq = sv.squaredNorm();
        if (!(total_sq > 0.0)) {
            throw std::domain_error("replica contraction produced a zero state");
        }
        const double s_max = sv(0);
        Eigen::Index keep = 0;
        while (keep < sv.size() && static_cast<std::size_t>(keep) < opt_.chi_mps && sv(keep) > opt_.threshold * s_max) {
            ++keep;
        }
        const double kept_sq = sv.head(keep).squaredNorm();
        const double dropped_sq = std::max(0.0, total_sq - kept_sq);
        if (keep < sv.size() && dropped_sq > 0.0) {
            rel_error_ += std::sqrt(dropped_sq / total_sq);
        }
        const double norm = std::sqrt(kept_sq);
        log_scale_ += std::log(norm);
        const Eigen::VectorXd s = sv.head(keep) / norm;

        Eigen::MatrixXd u = svd.matrixU().leftCols(keep);
        Eigen::MatrixXd vt = svd.matrixV().leftCols(keep).transpose();
        if (rightward) {
            vt = s.asDiagonal() * vt;
        } else {
            u = u * s.asDiagonal();
        }
        left.raw = false;
        left.pristine = false;
        right.raw = false;
        right.pristine = false;
        set_from_left_grouped(left, u, rp_);
        // vt has columns b + rp * r; regroup to a * dr + r.
        Eigen::MatrixXd vg(keep, rp_ * dr);
        for (Eigen::Index r = 0; r < dr; ++r) {
            for (Eigen::Index b = 0; b < rp_; ++b) {
                vg.col(b * dr + r) = vt.col(b + rp_ * r);
            }
        }
        set_from_right_grouped(right, vg, rp_);
        center_ = rightward ? i + 1 : i;
        max_bond_ = std::max(max_bond_, static_cast<std::size_t>(keep));
    }

    RtnResult measure(std::size_t depth) const {
        Eigen::RowVectorXd env = Eigen::RowVectorXd::Ones(1);
        double log_env = 0.0;
        for (const Site &site : sites_) {
            const Eigen::VectorXd flat = site.c * (site.raw ? raw_top_ : top_);
            env = env * Eigen::Map<const Eigen::MatrixXd>(flat.data(), site.dl, site.dr);
            const double s = env.cwiseAbs().maxCoeff();
            if (s > 0.0) {
                env /= s;
                log_env += std::log(s);
            }
        }
        RtnResult r;
        r.depth = depth;
        const double v = env(0);
        r.log_value = log_scale_ + log_env + std::log(std::abs(v));
        r.value = std::copysign(std::exp(r.log_value), v);
        r.truncation_error = std::abs(r.value) * rel_error_;
        r.max_bond = max_bond_;
        r.flagged = r.truncation_error > opt_.error_flag_threshold;
        return r;
    }

   private:
    RtnOptions opt_;
    Eigen::Index m_ = 0;
    Eigen::Index rp_ = 0;
    Eigen::MatrixXd q_;
    Eigen::MatrixXd pair_;
    Eigen::VectorXd top_;
    Eigen::VectorXd raw_top_;
    std::shared_ptr<const GroupMatrix> wg_;
    std::vector<Site> sites_;
    std::size_t center_ = 0;
    double log_scale_ = 0.0;
    double rel_error_ = 0.0;
    std::size_t max_bond_ = 1;
};

}  // namespace

std::vector<RtnResult> contract_brickwork_series(std::size_t n_sites, std::size_t t_max, int k, int d, double gamma,
                                                 const RtnOptions &options) {
    require_rtn_k(k, d);
    if (n_sites < 2) {
        throw std::invalid_argument("replica contraction needs N >= 2");
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("gamma must lie in [0, 1]");
    }
    if (options.chi_mps < 1) {
        throw std::invalid_argument("chi_mps must be >= 1");
    }
    const std::size_t op_site = options.initial_site.value_or(n_sites / 2);
    if (op_site >= n_sites) {
        throw std::invalid_argument("initial site out of range");
    }
    BoundaryMps mps(n_sites, op_site, k, d, gamma, options);
    std::vector<RtnResult> out;
    out.reserve(t_max);
    for (std::size_t layer = 0; layer < t_max; ++layer) {
        std::vector<std::size_t> gates;
        for (std::size_t a = layer % 2; a + 1 < n_sites; a += 2) {
            gates.push_back(a);
        }
        const bool rightward = layer % 2 == 0;
        if (!rightward) {
            std::reverse(gates.begin(), gates.end());
        }
        for (std::size_t a : gates) {
            mps.apply_gate(a, rightward);
        }
        out.push_back(mps.measure(layer + 1));
    }
    return out;
}

RtnResult contract_brickwork(std::size_t n_sites, std::size_t t, int k, int d, double gamma,
                             const RtnOptions &options) {
    if (t < 1) {
        throw std::invalid_argument("depth must be >= 1");
    }
    return contract_brickwork_series(n_sites, t, k, d, gamma, options).back();
}

}  // namespace paulispec
