#include "aldc/qquery.hpp"

#include "aldc/core.hpp"
#include "aldc/rng.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace aldc {

// Shares the orthonormalization route of span_weight: the projection of
// e_i onto the tuple's span has i'th coordinate equal to its own squared
// norm, so the normalized projection automatically has u_i >= 0.
WitnessMatrix witness_matrix(const CodeConfig& code, std::span<const Index> subset,
                             double alpha) {
    code.validate();
    std::vector<char> member(code.n(), 0);
    for (Index v : subset) {
        if (v >= code.n()) throw ParamError("witness_matrix: subset index out of range");
        member[v] = 1;
    }

    WitnessMatrix witness;
    witness.min_diagonal = 1.0;
    for (const auto& m : code.matchings) {
        for (const auto& t : m.tuples) {
            const bool inside = std::all_of(t.begin(), t.end(),
                                            [&](Index j) { return member[j] != 0; });
            if (!inside) continue;
            std::vector<RealVec> vectors;
            for (Index j : t) vectors.push_back(code.points[j]);
            RealVec projection = RealVec::Zero(code.d);
            {
                // projection of e_i onto the span, assembled from an
                // orthonormal basis of the tuple
                std::vector<RealVec> basis;
                const double max_norm = [&] {
                    double mn = 0.0;
                    for (const auto& v : vectors) mn = std::max(mn, v.norm());
                    return mn;
                }();
                const double tol = 1e-10 * max_norm;
                for (const auto& v : vectors) {
                    RealVec r = v;
                    for (int pass = 0; pass < 2; ++pass) {
                        for (const auto& b : basis) r -= b.dot(r) * b;
                    }
                    if (max_norm > 0.0 && r.norm() > tol) basis.push_back(r / r.norm());
                }
                for (const auto& b : basis) projection += b[m.direction] * b;
            }
            const double len = projection.norm();
            if (len < std::max(alpha - 1e-10, 1e-300)) {
                throw PreconditionError("witness_matrix: tuple in direction " +
                                        std::to_string(m.direction) + " has span weight " +
                                        std::to_string(len) + " below alpha");
            }
            witness.directions.push_back(m.direction);
            witness.rows.push_back(projection / len);
            witness.min_diagonal = std::min(witness.min_diagonal, len);
            break;  // one tuple per covered direction
        }
    }
    if (witness.directions.empty()) {
        throw PreconditionError("witness_matrix: subset covers no direction");
    }

    const auto k = static_cast<Eigen::Index>(witness.k());
    witness.restricted.resize(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
        for (Eigen::Index c = 0; c < k; ++c) {
            witness.restricted(r, c) =
                witness.rows[static_cast<std::size_t>(r)][witness.directions[
                    static_cast<std::size_t>(c)]];
        }
    }
    return witness;
}

RankCheck rank_bound_check(const WitnessMatrix& witness, double alpha) {
    for (const auto& row : witness.rows) {
        if (std::abs(row.norm() - 1.0) > 1e-10) {
            throw PreconditionError("rank_bound_check: witness row is not unit length");
        }
    }
    for (Eigen::Index i = 0; i < witness.restricted.rows(); ++i) {
        if (witness.restricted(i, i) < alpha - 1e-10) {
            throw PreconditionError("rank_bound_check: witness diagonal below alpha");
        }
    }
    RankCheck check;
    check.k = static_cast<double>(witness.k());
    check.trace = witness.restricted.trace();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(witness.restricted);
    const auto& sigma = svd.singularValues();
    check.sigma_sum = sigma.sum();
    check.frob_sq = witness.restricted.squaredNorm();
    const double cutoff = static_cast<double>(witness.restricted.rows()) *
                          std::numeric_limits<double>::epsilon() *
                          (sigma.size() > 0 ? sigma.maxCoeff() : 0.0);
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma[i] > cutoff) ++check.rank;
    }
    check.holds = static_cast<double>(check.rank) >= alpha * alpha * check.k - 1e-9;
    return check;
}

std::vector<Index> sample_subset(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m < 1 || m > n) throw ParamError("sample_subset: size must be in [1,n]");
    rng::Engine eng(seed);
    std::vector<Index> pool(n);
    for (std::size_t v = 0; v < n; ++v) pool[v] = v;
    // partial Fisher-Yates: the first m entries are a uniform m-subset
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(eng.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(m);
    return pool;
}

std::size_t covered_direction_count(const CodeConfig& code, std::span<const Index> subset) {
    std::vector<char> member(code.n(), 0);
    for (Index v : subset) member[v] = 1;
    std::size_t covered = 0;
    for (const auto& matching : code.matchings) {
        for (const auto& t : matching.tuples) {
            if (std::all_of(t.begin(), t.end(), [&](Index j) { return member[j] != 0; })) {
                ++covered;
                break;
            }
        }
    }
    return covered;
}

std::size_t subset_direction_count(const CodeConfig& code, std::size_t m,
                                   std::uint64_t seed) {
    return covered_direction_count(code, sample_subset(code.n(), m, seed));
}

std::size_t default_subset_size(const CodeConfig& code) {
    const double delta = code.density();
    if (delta == 0.0) return code.n();
    const double q = static_cast<double>(code.q);
    const double n = static_cast<double>(code.n());
    const double m = std::ceil(std::pow(delta, -1.0 / q) * std::pow(n, (q - 1.0) / q));
    return std::min(code.n(), static_cast<std::size_t>(std::max(1.0, m)));
}

double qquery_bound(double alpha, double delta, int d, int q) {
    if (q == 1) {
        throw ParamError("qquery_bound: q=1 is handled by one_query_bound_check");
    }
    if (q < 1) throw ParamError("qquery_bound: q must be positive");
    if (alpha <= 0.0 || alpha > 1.0) throw ParamError("qquery_bound: alpha must be in (0,1]");
    if (delta <= 0.0 || delta > 1.0) throw ParamError("qquery_bound: delta must be in (0,1]");
    if (d < 1) throw ParamError("qquery_bound: d must be at least 1");
    const double qd = static_cast<double>(q);
    const double base = alpha * alpha * std::pow(delta, 1.0 / qd) * static_cast<double>(d);
    return std::pow(base, qd / (qd - 1.0));
}

}  // namespace aldc
