#include "aldc/constructions.hpp"

#include "aldc/core.hpp"
#include "aldc/rng.hpp"

#include <algorithm>

namespace aldc {

CodeConfig hypercube(int d) {
    if (d < 1 || d > 24) {
        throw ParamError("hypercube: d must be in [1,24], got " + std::to_string(d));
    }
    CodeConfig code;
    code.d = d;
    code.q = 2;
    const std::size_t n = std::size_t{1} << d;
    code.points.reserve(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        RealVec v(d);
        for (int i = 0; i < d; ++i) v[i] = static_cast<double>((idx >> i) & 1u);
        code.points.push_back(std::move(v));
    }
    for (int i = 0; i < d; ++i) {
        DirectionMatching m;
        m.direction = i;
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t idx = 0; idx < n; ++idx) {
            if ((idx & bit) == 0) m.tuples.push_back({idx, idx | bit});
        }
        code.matchings.push_back(std::move(m));
    }
    return code;
}

CodeConfig perturbed_hypercube(int d, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw DomainError("perturbed_hypercube: sigma must be nonnegative");
    CodeConfig code = hypercube(d);
    rng::Engine eng(rng::derive(seed, 0));
    for (auto& p : code.points) {
        for (int i = 0; i < d; ++i) p[i] += sigma * eng.normal();
    }
    return code;
}

CodeConfig basis_code(int d) {
    if (d < 1) throw ParamError("basis_code: d must be at least 1");
    CodeConfig code;
    code.d = d;
    code.q = 1;
    for (int i = 0; i < d; ++i) {
        code.points.push_back(RealVec::Unit(d, i));
        code.matchings.push_back({i, {Tuple{static_cast<Index>(i)}}});
    }
    return code;
}

namespace {

// Advances a strictly increasing q-tuple through lexicographic order over
// [0,n); returns false after the last combination.
bool next_combination(Tuple& t, std::size_t n) {
    const std::size_t q = t.size();
    for (std::size_t pos = q; pos-- > 0;) {
        if (t[pos] + (q - pos) < n) {
            ++t[pos];
            for (std::size_t p = pos + 1; p < q; ++p) t[p] = t[p - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

CodeConfig random_code(int d, int n, int q, double alpha_target, std::uint64_t seed) {
    if (d < 1) throw ParamError("random_code: d must be at least 1");
    if (q < 1 || n < q) throw ParamError("random_code: need n >= q >= 1");
    CodeConfig code;
    code.d = d;
    code.q = q;
    rng::Engine points_eng(rng::derive(seed, 0));
    for (int j = 0; j < n; ++j) code.points.push_back(points_eng.unit_sphere(d));

    for (int i = 0; i < d; ++i) {
        DirectionMatching m;
        m.direction = i;
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        std::size_t free_count = static_cast<std::size_t>(n);
        Tuple t(static_cast<std::size_t>(q));
        for (std::size_t p = 0; p < t.size(); ++p) t[p] = p;
        for (bool more = true; more && free_count >= static_cast<std::size_t>(q);
             more = next_combination(t, static_cast<std::size_t>(n))) {
            bool free = true;
            for (Index j : t) {
                if (used[j]) {
                    free = false;
                    break;
                }
            }
            if (!free) continue;
            if (span_weight(code, t, i) >= alpha_target) {
                for (Index j : t) used[j] = 1;
                free_count -= t.size();
                m.tuples.push_back(t);
            }
        }
        code.matchings.push_back(std::move(m));
    }
    return code;
}

}  // namespace aldc
