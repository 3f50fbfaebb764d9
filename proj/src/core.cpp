#include "aldc/core.hpp"

#include <algorithm>
#include <cmath>

namespace aldc {

double weight(const RealVec& u, int i) {
    if (i < 0 || i >= u.size()) throw DomainError("weight: direction index out of range");
    const double nrm = u.norm();
    if (nrm == 0.0) throw DomainError("weight: zero vector");
    return std::abs(u[i]) / nrm;
}

namespace {

// Orthonormal basis of span{vectors} via modified Gram-Schmidt with one
// re-orthogonalization pass; columns with residual below
// 1e-10 * max column norm are dropped (rank-revealing threshold).
std::vector<RealVec> orthonormal_span(const std::vector<RealVec>& vectors) {
    double max_norm = 0.0;
    for (const auto& v : vectors) max_norm = std::max(max_norm, v.norm());
    std::vector<RealVec> basis;
    if (max_norm == 0.0) return basis;
    const double tol = 1e-10 * max_norm;
    for (const auto& v : vectors) {
        RealVec r = v;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) r -= b.dot(r) * b;
        }
        const double nrm = r.norm();
        if (nrm > tol) basis.push_back(r / nrm);
    }
    return basis;
}

}  // namespace

SpanWeight span_weight_of(const std::vector<RealVec>& vectors, int i) {
    const auto basis = orthonormal_span(vectors);
    if (basis.empty()) return {0.0, true};
    double sq = 0.0;
    for (const auto& b : basis) sq += b[i] * b[i];
    return {std::min(1.0, std::sqrt(sq)), false};
}

SpanWeight span_weight_detail(const CodeConfig& code, const Tuple& t, int i) {
    if (i < 0 || i >= code.d) throw DomainError("span_weight: direction index out of range");
    std::vector<RealVec> vectors;
    vectors.reserve(t.size());
    for (Index j : t) {
        if (j >= code.n()) throw DomainError("span_weight: point index out of range");
        vectors.push_back(code.points[j]);
    }
    return span_weight_of(vectors, i);
}

double span_weight(const CodeConfig& code, const Tuple& t, int i) {
    return span_weight_detail(code, t, i).value;
}

bool is_simple(const CodeConfig& code, double alpha) {
    if (code.q != 2) throw UnsupportedError("is_simple: defined for 2-query codes only");
    return simple_alpha(code) >= alpha;
}

double simple_alpha(const CodeConfig& code) {
    if (code.q != 2) throw UnsupportedError("simple_alpha: defined for 2-query codes only");
    double min_weight = 1.0;
    for (const auto& m : code.matchings) {
        for (const auto& t : m.tuples) {
            const RealVec diff = code.points[t[1]] - code.points[t[0]];
            const double w = diff.norm() == 0.0 ? 0.0 : weight(diff, m.direction);
            min_weight = std::min(min_weight, w);
        }
    }
    return min_weight;
}

std::pair<double, double> boundedness(const CodeConfig& code) {
    if (code.q != 2) throw UnsupportedError("boundedness: defined for 2-query codes only");
    bool any = false;
    double lo = 0.0, hi = 0.0;
    for (const auto& m : code.matchings) {
        for (const auto& t : m.tuples) {
            const double len = (code.points[t[1]] - code.points[t[0]]).norm();
            if (len == 0.0) {
                throw DomainError("boundedness: degenerate pair {" + std::to_string(t[0]) +
                                  "," + std::to_string(t[1]) + "} in direction " +
                                  std::to_string(m.direction) + " has length 0");
            }
            if (!any) {
                lo = hi = len;
                any = true;
            } else {
                lo = std::min(lo, len);
                hi = std::max(hi, len);
            }
        }
    }
    if (!any) throw PreconditionError("boundedness: code has no matched pairs");
    return {lo, hi};
}

VerificationReport verify(const CodeConfig& code, double alpha_claim) {
    code.validate();
    VerificationReport report;
    report.alpha_claim = alpha_claim;
    report.density = code.density();

    for (const auto& m : code.matchings) {
        for (const auto& t : m.tuples) {
            const SpanWeight sw = span_weight_detail(code, t, m.direction);
            report.per_tuple.push_back({m.direction, t, sw.value, sw.degenerate});
        }
    }
    report.achieved_alpha = 1.0;  // vacuous min
    for (std::size_t idx = 0; idx < report.per_tuple.size(); ++idx) {
        const auto& diag = report.per_tuple[idx];
        report.achieved_alpha = std::min(report.achieved_alpha, diag.span_weight);
        if (diag.span_weight < alpha_claim - VerificationReport::kTolerance) {
            report.flagged.push_back(idx);
        }
    }

    if (code.q == 2) {
        report.simple = is_simple(code, alpha_claim);
        bool any = false;
        for (const auto& m : code.matchings) {
            for (const auto& t : m.tuples) {
                const double len = (code.points[t[1]] - code.points[t[0]]).norm();
                if (!any) {
                    report.length_min = report.length_max = len;
                    any = true;
                } else {
                    report.length_min = std::min(report.length_min, len);
                    report.length_max = std::max(report.length_max, len);
                }
            }
        }
        report.has_pair_lengths = any;
    }
    return report;
}

}  // namespace aldc
