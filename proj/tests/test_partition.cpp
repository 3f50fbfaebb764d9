#include "aldc/partition.hpp"

#include "aldc/constructions.hpp"
#include "aldc/core.hpp"
#include "aldc/reduction.hpp"
#include "aldc/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>

using namespace aldc;

namespace {

std::vector<Index> all_vertices(const CodeConfig& code) {
    std::vector<Index> v(code.n());
    std::iota(v.begin(), v.end(), Index{0});
    return v;
}

CodeConfig simple_random_code(int d, int n, double alpha_target, std::uint64_t seed) {
    const CodeConfig raw = random_code(d, n, 2, alpha_target, seed);
    return reduce_to_simple(raw, alpha_target).first;
}

}  // namespace

TEST_CASE("build_graph") {
    const CodeGraph cube = build_graph(hypercube(3));
    CHECK(cube.edges.size() == 12);
    std::map<int, int> per_direction;
    for (const auto& e : cube.edges) ++per_direction[e.dir];
    for (int i = 0; i < 3; ++i) CHECK(per_direction[i] == 4);

    CodeConfig empty;
    empty.d = 2;
    empty.q = 2;
    empty.points = {RealVec::Zero(2), RealVec::Ones(2)};
    empty.matchings = {{0, {}}};
    CHECK(build_graph(empty).edges.empty());

    // the same pair in two matchings yields labeled parallel edges
    CodeConfig parallel = empty;
    parallel.matchings = {{0, {{0, 1}}}, {1, {{0, 1}}}};
    const CodeGraph pg = build_graph(parallel);
    REQUIRE(pg.edges.size() == 2);
    CHECK(pg.edges[0].dir == 0);
    CHECK(pg.edges[1].dir == 1);

    CHECK_THROWS_AS(build_graph(basis_code(3)), UnsupportedError);
}

TEST_CASE("sample_axis_cut separates a d=1 pair with probability one") {
    CodeConfig code;
    code.d = 1;
    code.q = 2;
    code.points = {RealVec::Constant(1, 0.0), RealVec::Constant(1, 1.0)};
    code.matchings = {{0, {{0, 1}}}};
    const CodeGraph graph = build_graph(code);
    const auto vertices = all_vertices(code);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Cut cut = sample_axis_cut(graph, code, vertices, seed);
        REQUIRE(cut.cut_edges.size() == 1);
        CHECK(cut.right_direction_count == 1);
        CHECK(cut.s1.size() == 1);
        CHECK(cut.s2.size() == 1);
    }
}

TEST_CASE("hypercube cuts are always in the right direction") {
    const CodeConfig code = hypercube(4);
    const CodeGraph graph = build_graph(code);
    const auto vertices = all_vertices(code);
    std::size_t cable = 0;
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        const Cut cut = sample_axis_cut(graph, code, vertices, seed);
        CHECK(cut.right_direction_count == cut.cut_edges.size());
        cable += cut.cut_edges.size();
    }
    CHECK(cable > 0);
}

TEST_CASE("per-edge cut probabilities match the plane geometry") {
    // on a fixed subset, Pr[edge cut] = (1/d) sum_i |u_i| / (hi_i - lo_i)
    const CodeConfig code = simple_random_code(4, 10, 0.35, 21);
    const CodeGraph graph = build_graph(code);
    if (graph.edges.empty()) return;
    const auto vertices = all_vertices(code);

    RealVec lo = code.points[0], hi = code.points[0];
    for (const auto& p : code.points) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const std::size_t trials = 40000;
    std::vector<std::size_t> cut_count(graph.edges.size(), 0);
    std::vector<std::size_t> right_count(graph.edges.size(), 0);
    for (std::uint64_t seed = 0; seed < trials; ++seed) {
        const Cut cut = sample_axis_cut(graph, code, vertices, seed);
        for (std::size_t e : cut.cut_edges) {
            ++cut_count[e];
            if (graph.edges[e].dir == cut.direction) ++right_count[e];
        }
    }
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        const auto& edge = graph.edges[e];
        const RealVec u = code.points[edge.v] - code.points[edge.u];
        double p_cut = 0.0;
        for (int i = 0; i < code.d; ++i) {
            if (hi[i] > lo[i]) p_cut += std::abs(u[i]) / (hi[i] - lo[i]);
        }
        p_cut /= static_cast<double>(code.d);
        const double p_right =
            std::abs(u[edge.dir]) / (hi[edge.dir] - lo[edge.dir]) / static_cast<double>(code.d);
        const double freq_cut = static_cast<double>(cut_count[e]) / trials;
        const double freq_right = static_cast<double>(right_count[e]) / trials;
        const double sigma = std::sqrt(p_cut * (1 - p_cut) / trials) + 1e-9;
        CHECK(std::abs(freq_cut - p_cut) < 5 * sigma);
        CHECK(std::abs(freq_right - p_right) < 5 * sigma);
        // the right-direction share dominates alpha/sqrt(d) of the cut rate
        const double alpha = simple_alpha(code);
        CHECK(freq_right >= alpha / std::sqrt(code.d) * freq_cut - 5 * sigma);
    }
}

TEST_CASE("find_good_cut") {
    const CodeConfig code = hypercube(6);
    const CodeGraph graph = build_graph(code);
    const auto vertices = all_vertices(code);
    const double ratio = 2.0 * std::sqrt(6.0);
    const Cut cut = find_good_cut(graph, code, vertices, ratio, 0, 99);
    CHECK(cut.nontrivial());
    CHECK(cut.right_direction_count >= 1);
    CHECK(static_cast<double>(cut.cut_edges.size()) <=
          ratio * static_cast<double>(cut.min_side()) + 1e-9);

    // edgeless subset: arbitrary nontrivial split with no cut edges
    std::vector<Index> isolated = {0, 3, 5, 6};  // no axis pairs among these
    const Cut trivial = find_good_cut(graph, code, isolated, ratio, 0, 7);
    CHECK(trivial.nontrivial());
    CHECK(trivial.cut_edges.empty());

    // two points joined by a single direction-0 edge
    std::vector<Index> pair = {0, 1};
    const Cut two = find_good_cut(graph, code, pair, ratio, 0, 13);
    CHECK(two.s1.size() == 1);
    CHECK(two.s2.size() == 1);
    CHECK(two.cut_edges.size() == 1);
}

TEST_CASE("recursive certificate on the 8-cube") {
    const CodeConfig code = hypercube(8);
    const CutCertificate cert = recursive_cut_certificate(code, 0, 1);
    CHECK(cert.verified);
    CHECK(cert.total_edges == 1024);
    CHECK(cert.c_param == doctest::Approx(2.0 * std::sqrt(8.0)));
    CHECK(cert.edge_budget == doctest::Approx(std::sqrt(8.0) * 256.0 * 8.0));
    CHECK(static_cast<double>(cert.total_edges) <= cert.edge_budget);
    // every edge is cut exactly once over the recursion
    std::size_t cut_sum = 0;
    for (const auto& node : cert.nodes) {
        cut_sum += node.cut_edge_count;
        CHECK(node.ok);
    }
    CHECK(cut_sum == cert.total_edges);
}

TEST_CASE("certificate trivial cases") {
    CodeConfig single;
    single.d = 2;
    single.q = 2;
    single.points = {RealVec::Zero(2)};
    const CutCertificate cert = recursive_cut_certificate(single, 0, 5);
    CHECK(cert.verified);
    CHECK(cert.total_edges == 0);
    CHECK(cert.nodes.empty());
}

TEST_CASE("certificates verify on random simple codes") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const CodeConfig code = simple_random_code(12, 40, 0.4, seed);
        const CutCertificate cert = recursive_cut_certificate(code, 0, seed + 17);
        CHECK(cert.verified);
        std::size_t cut_sum = 0;
        for (const auto& node : cert.nodes) cut_sum += node.cut_edge_count;
        CHECK(cut_sum == cert.total_edges);
    }
}

TEST_CASE("certificates are reproducible for a fixed seed") {
    const CodeConfig code = simple_random_code(10, 30, 0.4, 3);
    const CutCertificate a = recursive_cut_certificate(code, 0, 42);
    const CutCertificate b = recursive_cut_certificate(code, 0, 42);
    REQUIRE(a.nodes.size() == b.nodes.size());
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        CHECK(a.nodes[i].subset_size == b.nodes[i].subset_size);
        CHECK(a.nodes[i].cut_edge_count == b.nodes[i].cut_edge_count);
        CHECK(a.nodes[i].direction == b.nodes[i].direction);
    }
}

TEST_CASE("general_bound") {
    CHECK(general_bound(1.0, 0.5, 64) == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(general_bound(1.0, 0.0, 64) == 1.0);
    CHECK(general_bound(1.0, 1.0, 100) == doctest::Approx(1024.0).epsilon(1e-12));
    CHECK(general_bound(1.0, 0.5, 64, false) ==
          doctest::Approx(std::exp2(0.25 / std::sqrt(2.0) * 8.0)).epsilon(1e-12));
    CHECK_THROWS_AS(general_bound(0.0, 0.5, 4), ParamError);
}

TEST_CASE("hypercube edge accounting against the aggregate bound") {
    for (int d = 2; d <= 10; d += 2) {
        const CodeConfig code = hypercube(d);
        const CodeGraph graph = build_graph(code);
        CHECK(graph.edges.size() ==
              static_cast<std::size_t>(d) * (std::size_t{1} << (d - 1)));
        const double n = static_cast<double>(code.n());
        const double lhs = code.density() * d * n;
        const double rhs = std::sqrt(static_cast<double>(d)) * n * std::log2(n);
        CHECK(lhs <= rhs + 1e-9);
    }
}
