#include "aldc/reduction.hpp"

#include "aldc/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aldc {

namespace {

// Coordinates ranked by (|entry| descending, index ascending); entry i is
// heavy iff its rank is below k-1. The rank rule (rather than the 1/sqrt(k)
// threshold) keeps the k*n removal bound exact.
std::vector<char> heavy_mask(const RealVec& v, int k) {
    const int d = static_cast<int>(v.size());
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double va = std::abs(v[a]), vb = std::abs(v[b]);
        if (va != vb) return va > vb;
        return a < b;
    });
    std::vector<char> heavy(d, 0);
    for (int r = 0; r < std::min(k - 1, d); ++r) heavy[order[r]] = 1;
    return heavy;
}

}  // namespace

CodeConfig remove_heavy_pairs(const CodeConfig& code, int k) {
    if (code.q != 2) throw UnsupportedError("remove_heavy_pairs: 2-query codes only");
    if (k < 2) throw ParamError("remove_heavy_pairs: k must be at least 2");
    std::vector<std::vector<char>> heavy;
    heavy.reserve(code.n());
    for (const auto& p : code.points) heavy.push_back(heavy_mask(p, k));

    CodeConfig out = code;
    out.matchings.clear();
    for (const auto& m : code.matchings) {
        DirectionMatching kept;
        kept.direction = m.direction;
        for (const auto& t : m.tuples) {
            if (!heavy[t[0]][m.direction] && !heavy[t[1]][m.direction]) kept.tuples.push_back(t);
        }
        out.matchings.push_back(std::move(kept));
    }
    return out;
}

std::pair<CodeConfig, ReductionTrace> reduce_to_simple(const CodeConfig& code, double alpha,
                                                       std::optional<int> k_opt) {
    if (code.q != 2) throw UnsupportedError("reduce_to_simple: 2-query codes only");
    if (alpha <= 0.0 || alpha > 1.0) throw ParamError("reduce_to_simple: alpha must be in (0,1]");
    const bool defaulted = !k_opt.has_value();
    const int k = defaulted ? static_cast<int>(std::ceil(2.0 / (alpha * alpha))) : *k_opt;
    if (static_cast<double>(k) * alpha * alpha <= 1.0) {
        throw ParamError("reduce_to_simple: need k > 1/alpha^2 (k=" + std::to_string(k) + ")");
    }

    const VerificationReport input_report = verify(code, alpha);
    if (!input_report.verified()) {
        throw PreconditionError("reduce_to_simple: input does not verify at alpha=" +
                                std::to_string(alpha) + " (achieved " +
                                std::to_string(input_report.achieved_alpha) + ")");
    }

    ReductionTrace trace;
    trace.k = k;
    trace.alpha_in = alpha;
    if (defaulted) {
        const double needed = 6.0 / (alpha * alpha * std::max(input_report.density, 1e-300));
        trace.corollary_hypothesis_ok = static_cast<double>(code.d) >= needed;
        if (!trace.corollary_hypothesis_ok) {
            trace.warning = "corollary hypothesis d >= 6/(alpha^2 delta) fails; parameter "
                            "guarantees may be vacuous";
        }
    }

    // Step 1: heavy-pair removal.
    CodeConfig step1 = remove_heavy_pairs(code, k);
    trace.pairs_removed_step1 = code.total_tuples() - step1.total_tuples();

    // Step 2: unit normalization; zero vectors are discarded. No surviving
    // pair can touch one when the input verifies at alpha.
    std::vector<RealVec> survivors;
    std::vector<std::ptrdiff_t> remap(step1.n(), -1);
    for (std::size_t j = 0; j < step1.n(); ++j) {
        const double nrm = step1.points[j].norm();
        if (nrm == 0.0) {
            ++trace.zero_points_discarded;
            continue;
        }
        remap[j] = static_cast<std::ptrdiff_t>(survivors.size());
        survivors.push_back(step1.points[j] / nrm);
    }
    const std::size_t half = survivors.size();

    // Step 3: symmetrize and orient each surviving pair.
    CodeConfig out;
    out.d = code.d;
    out.q = 2;
    out.points = survivors;
    for (const auto& v : survivors) out.points.push_back(-v);

    for (const auto& m : step1.matchings) {
        DirectionMatching oriented;
        oriented.direction = m.direction;
        for (const auto& t : m.tuples) {
            if (remap[t[0]] < 0 || remap[t[1]] < 0) {
                throw PreconditionError(
                    "reduce_to_simple: surviving pair touches a zero vector; input cannot "
                    "verify at the supplied alpha");
            }
            const Index a = static_cast<Index>(remap[t[0]]);
            const Index b = static_cast<Index>(remap[t[1]]);
            const double w_plus = weight(out.points[a] - out.points[b], m.direction);
            const double w_minus = weight(out.points[a] + out.points[b], m.direction);
            const int sign = w_plus >= w_minus ? 1 : -1;
            trace.sign_choices.push_back(sign);
            const Index b_pos = sign > 0 ? b : b + half;  // s*v_b
            const Index b_neg = sign > 0 ? b + half : b;  // -s*v_b
            Tuple first{a, b_pos};
            Tuple second{a + half, b_neg};
            std::sort(first.begin(), first.end());
            std::sort(second.begin(), second.end());
            oriented.tuples.push_back(std::move(first));
            oriented.tuples.push_back(std::move(second));
        }
        out.matchings.push_back(std::move(oriented));
    }

    trace.alpha_out = std::sqrt(alpha * alpha - 1.0 / static_cast<double>(k));
    trace.n_out = out.n();
    trace.delta_out = out.density();
    return {std::move(out), trace};
}

std::pair<CodeConfig, BucketTrace> bucket_to_2bounded(const CodeConfig& code) {
    if (code.q != 2) throw UnsupportedError("bucket_to_2bounded: 2-query codes only");
    if (code.total_tuples() == 0) throw PreconditionError("bucket_to_2bounded: code has no pairs");
    const auto [min_len, max_len] = boundedness(code);

    BucketTrace trace;
    trace.c = max_len / min_len;
    trace.buckets = std::max(1, static_cast<int>(std::ceil(std::log2(trace.c))));
    trace.histogram.assign(static_cast<std::size_t>(trace.buckets), 0);

    auto bucket_of = [&](double len) {
        const double rescaled = len / min_len;  // in [1, c]
        int b = static_cast<int>(std::floor(std::log2(rescaled)));
        return std::clamp(b, 0, trace.buckets - 1);
    };

    for (const auto& m : code.matchings) {
        for (const auto& t : m.tuples) {
            const double len = (code.points[t[1]] - code.points[t[0]]).norm();
            ++trace.histogram[static_cast<std::size_t>(bucket_of(len))];
        }
    }
    trace.chosen = static_cast<int>(std::max_element(trace.histogram.begin(),
                                                     trace.histogram.end()) -
                                    trace.histogram.begin());

    trace.scale = 1.0 / (min_len * std::exp2(static_cast<double>(trace.chosen)));
    CodeConfig out = code;
    for (auto& p : out.points) p *= trace.scale;
    out.matchings.clear();
    for (const auto& m : code.matchings) {
        DirectionMatching kept;
        kept.direction = m.direction;
        for (const auto& t : m.tuples) {
            const double len = (code.points[t[1]] - code.points[t[0]]).norm();
            if (bucket_of(len) == trace.chosen) kept.tuples.push_back(t);
        }
        trace.pairs_kept += kept.tuples.size();
        out.matchings.push_back(std::move(kept));
    }
    return {std::move(out), trace};
}

}  // namespace aldc
