#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aldc {

/// A point in R^d. Entries are plain 64-bit coordinates.
using RealVec = Eigen::VectorXd;

using Index = std::size_t;

/// A q-tuple of point indices, stored strictly increasing.
using Tuple = std::vector<Index>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A document or config violates a structural invariant.
struct ValidationError : Error {
    using Error::Error;
};

/// Mathematically invalid input (zero vector, nonpositive length, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Bad operation parameter (k too small, d out of range, ...).
struct ParamError : Error {
    using Error::Error;
};

/// Input does not satisfy the operation's precondition.
struct PreconditionError : Error {
    using Error::Error;
};

/// Operation does not apply to this query count.
struct UnsupportedError : Error {
    using Error::Error;
};

/// A randomized search exhausted its sampling budget.
struct SearchError : Error {
    using Error::Error;
};

/// All tuples matched for one direction. Tuples are pairwise disjoint.
struct DirectionMatching {
    int direction = 0;
    std::vector<Tuple> tuples;
};

/// A code configuration: n points in R^d plus per-direction q-matchings.
/// Duplicate points are allowed and kept as distinct indices.
struct CodeConfig {
    int d = 0;
    int q = 0;
    std::vector<RealVec> points;
    std::vector<DirectionMatching> matchings;  // at most one entry per direction

    std::size_t n() const { return points.size(); }

    std::size_t total_tuples() const;

    /// (sum_i |M_i|) / (d*n)
    double density() const;

    /// Matching for `direction`, or nullptr if none present.
    const DirectionMatching* matching_for(int direction) const;

    /// Throws ValidationError on the first violated invariant.
    void validate() const;
};

}  // namespace aldc
