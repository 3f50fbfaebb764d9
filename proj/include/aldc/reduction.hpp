#pragma once

#include "aldc/types.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aldc {

struct ReductionTrace {
    int k = 0;
    double alpha_in = 0.0;
    std::size_t pairs_removed_step1 = 0;  // always <= k*n
    std::size_t zero_points_discarded = 0;
    std::vector<int> sign_choices;        // +1/-1 per surviving pair
    double alpha_out = 0.0;               // sqrt(alpha_in^2 - 1/k)
    double delta_out = 0.0;
    std::size_t n_out = 0;
    bool corollary_hypothesis_ok = true;  // d >= 6/(alpha^2 delta) when k defaulted
    std::string warning;
};

/// Step 1 of the simple-code reduction: for each direction i, drops every
/// pair where coordinate i ranks among the k-1 largest-magnitude entries of
/// either endpoint. Ties rank by (|entry| descending, index ascending).
CodeConfig remove_heavy_pairs(const CodeConfig& code, int k);

/// Full reduction to a simple code: heavy-pair removal, normalization with
/// zero-vector discard, symmetrization, and per-pair sign orientation.
/// `alpha` is the level at which the input verifies; k defaults to
/// ceil(2/alpha^2). Output is simple at sqrt(alpha^2 - 1/k) with density
/// >= delta - k/d and at most 2n points.
std::pair<CodeConfig, ReductionTrace> reduce_to_simple(const CodeConfig& code, double alpha,
                                                       std::optional<int> k = std::nullopt);

struct BucketTrace {
    double c = 1.0;                    // max/min pair length after unit rescale
    int buckets = 1;                   // ceil(log2 c), at least 1
    std::vector<std::size_t> histogram;
    int chosen = 0;                    // most populous dyadic interval
    double scale = 1.0;                // factor applied to every point
    std::size_t pairs_kept = 0;
};

/// Keeps only pairs in the most populous dyadic length interval and
/// rescales so surviving lengths lie in [1,2]. Density shrinks by at most
/// a factor ceil(log2 c).
std::pair<CodeConfig, BucketTrace> bucket_to_2bounded(const CodeConfig& code);

}  // namespace aldc
