#include "aldc/reduction.hpp"

#include "aldc/constructions.hpp"
#include "aldc/core.hpp"
#include "aldc/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace aldc;

namespace {

RealVec vec(std::initializer_list<double> values) {
    RealVec v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

CodeConfig random_verified_code(int d, int n, double alpha_target, std::uint64_t seed) {
    return random_code(d, n, 2, alpha_target, seed);
}

}  // namespace

TEST_CASE("remove_heavy_pairs leaves codes with disjoint dominant coordinates alone") {
    // every point dominated by coordinates 4 and 5; matchings in 0..3
    CodeConfig code;
    code.d = 6;
    code.q = 2;
    rng::Engine eng(3);
    for (int j = 0; j < 8; ++j) {
        RealVec v = eng.gaussian(6) * 0.1;
        v[4] = 5.0 + eng.uniform();
        v[5] = 4.0 + eng.uniform();
        code.points.push_back(v);
    }
    for (int i = 0; i < 4; ++i) {
        code.matchings.push_back({i, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}});
    }
    const CodeConfig out = remove_heavy_pairs(code, 3);  // k-1 = 2 heavy coordinates
    CHECK(out.total_tuples() == code.total_tuples());
}

TEST_CASE("remove_heavy_pairs applies the rank rule on the 4-cube") {
    const CodeConfig code = hypercube(4);
    const CodeConfig out = remove_heavy_pairs(code, 2);
    // (0,1,0,0) is point 2; its largest entry is coordinate 1, so every
    // direction-1 pair touching it must be gone
    for (const auto& t : out.matching_for(1)->tuples) {
        CHECK(t[0] != 2);
        CHECK(t[1] != 2);
    }
    CHECK(out.total_tuples() < code.total_tuples());
}

TEST_CASE("remove_heavy_pairs removal count and small-coordinate claim") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const CodeConfig code = random_verified_code(12, 30, 0.25, seed);
        const int k = 2 + static_cast<int>(seed % 4);
        const CodeConfig out = remove_heavy_pairs(code, k);
        const std::size_t removed = code.total_tuples() - out.total_tuples();
        CHECK(removed <= static_cast<std::size_t>(k) * code.n());
        // surviving pairs: |v_i| <= ||v||/sqrt(k)
        for (const auto& m : out.matchings) {
            for (const auto& t : m.tuples) {
                for (Index j : t) {
                    const auto& v = out.points[j];
                    CHECK(std::abs(v[m.direction]) <=
                          v.norm() / std::sqrt(static_cast<double>(k)) * (1.0 + 1e-12));
                }
            }
        }
    }
}

TEST_CASE("surviving pairs are linearly independent when alpha^2 k > 1") {
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        const CodeConfig code = random_verified_code(10, 24, 0.5, seed);
        const int k = 5;  // alpha^2 k = 1.25 > 1
        const CodeConfig out = remove_heavy_pairs(code, k);
        for (const auto& m : out.matchings) {
            for (const auto& t : m.tuples) {
                const auto& a = out.points[t[0]];
                const auto& b = out.points[t[1]];
                const double gram = a.squaredNorm() * b.squaredNorm() - a.dot(b) * a.dot(b);
                CHECK(gram > 1e-12);
            }
        }
    }
}

TEST_CASE("reduce_to_simple on an already-simple unit-norm code") {
    // matched directions are never among the top k-1 = 2 coordinates
    CodeConfig code;
    code.d = 5;
    code.q = 2;
    const double big = 0.65;
    // unit vectors dominated by coordinates 3 and 4, differing in coordinate 0
    const double rest = std::sqrt(1.0 - 2.0 * big * big);
    code.points = {vec({rest, 0, 0, big, big}), vec({-rest, 0, 0, big, big})};
    code.matchings = {{0, {{0, 1}}}};
    code.validate();
    const double alpha = verify(code, 0.0).achieved_alpha;
    REQUIRE(alpha > 0.3);

    const int k = 3;
    auto [out, trace] = reduce_to_simple(code, alpha * 0.999, k);
    CHECK(trace.pairs_removed_step1 == 0);
    CHECK(trace.zero_points_discarded == 0);
    CHECK(out.n() == 2 * code.n());
    CHECK(trace.alpha_out ==
          doctest::Approx(std::sqrt(alpha * 0.999 * alpha * 0.999 - 1.0 / 3.0)));
    CHECK(is_simple(out, trace.alpha_out - 1e-9));
}

TEST_CASE("reduce_to_simple with the corollary default") {
    const CodeConfig code = hypercube(5);
    auto [out, trace] = reduce_to_simple(code, 1.0);
    CHECK(trace.k == 2);
    CHECK(trace.alpha_out == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(is_simple(out, 1.0 / std::sqrt(2.0) - 1e-9));
    CHECK(out.n() <= 2 * code.n());
    CHECK_NOTHROW(out.validate());
}

TEST_CASE("reduce_to_simple parameter and precondition errors") {
    const CodeConfig code = hypercube(3);
    CHECK_THROWS_AS(reduce_to_simple(code, 0.5, 4), ParamError);  // k*alpha^2 = 1
    CHECK_THROWS_AS(reduce_to_simple(perturbed_hypercube(4, 0.2, 1), 1.0), PreconditionError);
    CHECK_THROWS_AS(reduce_to_simple(basis_code(3), 1.0), UnsupportedError);
}

TEST_CASE("reduce_to_simple contract on random codes") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const double alpha = 0.3 + 0.06 * static_cast<double>(seed);
        const CodeConfig code = random_verified_code(20, 40 + 8 * static_cast<int>(seed),
                                                     alpha, seed + 1000);
        const double delta = code.density();
        auto [out, trace] = reduce_to_simple(code, alpha);
        CHECK_NOTHROW(out.validate());
        CHECK(is_simple(out, trace.alpha_out - 1e-9));
        CHECK(out.n() <= 2 * code.n());
        CHECK(out.density() >=
              delta - static_cast<double>(trace.k) / static_cast<double>(code.d) - 1e-12);
        CHECK(trace.pairs_removed_step1 <= static_cast<std::size_t>(trace.k) * code.n());
        CHECK(trace.alpha_out >= alpha / std::sqrt(2.0) - 1e-9);
        // symmetrization doubles every surviving pair
        CHECK(out.total_tuples() + 2 * trace.pairs_removed_step1 == 2 * code.total_tuples());
        // all output points are unit length
        for (const auto& p : out.points) CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("bucket_to_2bounded") {
    // c = 1: unchanged up to global scale
    auto [cube_out, cube_trace] = bucket_to_2bounded(hypercube(3));
    CHECK(cube_trace.buckets == 1);
    CHECK(cube_out.total_tuples() == 12);
    const auto [clo, chi] = boundedness(cube_out);
    CHECK(clo >= 1.0 - 1e-12);
    CHECK(chi <= 2.0 + 1e-12);

    // half the pairs at length 1.5, half at length 3: buckets [1,2) and [2,4)
    CodeConfig mixed;
    mixed.d = 2;
    mixed.q = 2;
    mixed.points = {vec({0, 0}), vec({1.5, 0}), vec({0, 1}), vec({3.0, 1}),
                    vec({0, 2}), vec({1.5, 2}), vec({0, 3}), vec({3.0, 3})};
    mixed.matchings = {{0, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}}};
    mixed.validate();
    auto [mixed_out, mixed_trace] = bucket_to_2bounded(mixed);
    CHECK(mixed_trace.buckets == 1);  // c = 2 exactly -> single bucket
    CHECK(mixed_out.total_tuples() == 4);

    // make the classes uneven: lengths 1, 1.5 vs 3
    CodeConfig uneven = mixed;
    uneven.points[3] = vec({1.0, 1});  // second pair now length 1
    auto [uneven_out, uneven_trace] = bucket_to_2bounded(uneven);
    CHECK(uneven_trace.c == doctest::Approx(3.0));
    CHECK(uneven_trace.buckets == 2);
    CHECK(uneven_trace.chosen == 0);
    CHECK(uneven_out.total_tuples() == 3);
    const auto [ulo, uhi] = boundedness(uneven_out);
    CHECK(ulo >= 1.0 - 1e-12);
    CHECK(uhi <= 2.0 + 1e-12);

    CodeConfig empty;
    empty.d = 2;
    empty.q = 2;
    empty.points = {vec({0, 0})};
    CHECK_THROWS_AS(bucket_to_2bounded(empty), PreconditionError);
}
