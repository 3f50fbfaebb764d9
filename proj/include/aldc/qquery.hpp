#pragma once

#include "aldc/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace aldc {

/// One unit row per direction covered by a subset S: the normalized
/// projection of e_i onto the span of a tuple of M_i inside S. Columns are
/// restricted to the covered directions, so diagonal entries equal the
/// tuples' span weights (always nonnegative).
struct WitnessMatrix {
    std::vector<int> directions;   // covered, ascending
    std::vector<RealVec> rows;     // unit vectors in R^d
    Eigen::MatrixXd restricted;    // k x k
    double min_diagonal = 0.0;

    std::size_t k() const { return directions.size(); }
};

/// Builds the witness from the first fully-contained tuple per direction.
/// Throws PreconditionError when no direction is covered or a covered
/// tuple's span weight falls below alpha - 1e-10.
WitnessMatrix witness_matrix(const CodeConfig& code, std::span<const Index> subset,
                             double alpha);

struct RankCheck {
    int rank = 0;
    bool holds = false;     // rank >= alpha^2 k - 1e-9
    double trace = 0.0;     // tr(U) >= alpha k
    double sigma_sum = 0.0;
    double frob_sq = 0.0;   // <= k
    double k = 0.0;
};

/// Numerical rank of the restricted witness plus the chain
/// tr(U)^2 <= (sum sigma)^2 <= r ||U||_F^2 <= r k.
RankCheck rank_bound_check(const WitnessMatrix& witness, double alpha);

/// Uniform m-subset of [0,n) via partial Fisher-Yates.
std::vector<Index> sample_subset(std::size_t n, std::size_t m, std::uint64_t seed);

/// Directions with at least one tuple fully inside `subset`.
std::size_t covered_direction_count(const CodeConfig& code, std::span<const Index> subset);

/// Samples a uniform m-subset of points and counts the directions with at
/// least one tuple fully inside it.
std::size_t subset_direction_count(const CodeConfig& code, std::size_t m,
                                   std::uint64_t seed);

/// Default subset size ceil(delta^(-1/q) n^((q-1)/q)) with constant 1.
std::size_t default_subset_size(const CodeConfig& code);

/// (alpha^2 delta^(1/q) d)^(q/(q-1)); q == 1 is handled by the 1-query
/// spectral bound and raises a ParamError naming it.
double qquery_bound(double alpha, double delta, int d, int q);

}  // namespace aldc
